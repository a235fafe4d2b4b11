#include "qtrio/scalar.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "qtrio/errors.hpp"

namespace qtrio {

namespace {
thread_local unsigned g_precision_bits = 256;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}
}  // namespace

unsigned set_float_precision_bits(unsigned bits) {
  if (bits < 24) bits = 24;
  g_precision_bits = bits;
  // boost counts decimal digits; round up so we never fall below `bits`.
  unsigned digits10 = static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2;
  BigFloat::default_precision(digits10);
  return digits10;
}

unsigned float_precision_bits() { return g_precision_bits; }

BigFloat to_bigfloat(const Rational& v) { return BigFloat(v); }

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  if (s.empty()) throw ConfigError("empty rational literal");
  if (s.find('@') != std::string_view::npos || s.find('.') != std::string_view::npos ||
      s.find('e') != std::string_view::npos || s.find('E') != std::string_view::npos)
    throw ConfigError("expected rational literal \"p/q\", got decimal: " +
                      std::string(text));
  bool neg = false;
  if (s.front() == '+' || s.front() == '-') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view num = s, den = "1";
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den))
    throw ConfigError("malformed rational literal: " + std::string(text));
  BigInt n{std::string(num)}, d{std::string(den)};
  if (d.is_zero()) throw ConfigError("zero denominator in: " + std::string(text));
  Rational r = Rational(n) / Rational(d);
  return neg ? Rational(-r) : r;
}

std::string to_string(const Rational& v) { return v.str(); }

std::string to_string(const BigFloat& v) {
  std::ostringstream os;
  os << v.str(0, std::ios_base::scientific) << "@" << g_precision_bits << "b";
  return os.str();
}

BigFloat parse_bigfloat(std::string_view text) {
  std::string s(text);
  if (auto at = s.find('@'); at != std::string::npos) s = s.substr(0, at);
  if (s.empty()) throw ConfigError("empty float literal");
  try {
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find('E') == std::string::npos)
      return BigFloat(parse_rational(s));
    return BigFloat(s);
  } catch (const std::exception&) {
    throw ConfigError("malformed float literal: " + std::string(text));
  }
}

}  // namespace qtrio
