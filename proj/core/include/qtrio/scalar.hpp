#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <string_view>

namespace qtrio {

// Exact field element: arbitrary-precision rational, always in canonical
// form (gcd(|num|, den) = 1, den > 0; GMP maintains this). Expression
// templates are off so generic code can treat arithmetic results as values.
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

// High-precision binary float for limit-convergence studies. Precision is a
// process-wide (thread-local) setting, see set_float_precision_bits.
using BigFloat =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                  boost::multiprecision::et_off>;

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
};

template <>
struct scalar_traits<BigFloat> {
  static constexpr bool exact = false;
};

inline bool is_zero(const Rational& v) { return v.is_zero(); }
inline bool is_zero(const BigFloat& v) { return v.is_zero(); }

template <class S>
S from_int(long v) {
  return S(v);
}

/// Integer power with negative exponents allowed (base must be nonzero then).
template <class S>
S pow_int(const S& base, long e) {
  if (e == 0) return S(1);
  bool invert = e < 0;
  unsigned long n = invert ? static_cast<unsigned long>(-e)
                           : static_cast<unsigned long>(e);
  S acc(1);
  S b = base;
  while (n > 0) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  if (invert) return S(1) / acc;
  return acc;
}

/// Sets the working precision for BigFloat to at least `bits` bits.
/// Returns the decimal-digit precision actually configured.
unsigned set_float_precision_bits(unsigned bits);
unsigned float_precision_bits();

BigFloat to_bigfloat(const Rational& v);

/// Parses "p/q" (or "p") in lowest terms; accepts any integer pair and
/// canonicalizes. Also accepts decimal strings with a "@<bits>b" annotation,
/// which are rejected here (rationals only) with a descriptive error.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& v);

/// Decimal string annotated with the precision it was computed at,
/// e.g. "1.25e-6@256b".
std::string to_string(const BigFloat& v);

/// Parses a decimal string, ignoring a trailing "@<bits>b" annotation.
BigFloat parse_bigfloat(std::string_view text);

}  // namespace qtrio
