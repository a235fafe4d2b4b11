#include "qtrio/tableio.hpp"

#include <functional>
#include <ostream>

#include "json.hpp"
#include "qtrio/limits.hpp"
#include "qtrio/trio.hpp"
#include "qtrio/wilson.hpp"

namespace qtrio {

namespace {

Rational field(const nlohmann::json& p, const char* key) {
  if (!p.contains(key))
    throw ConfigError(std::string("table params: missing field ") + key);
  return parse_rational(p.at(key).get<std::string>());
}

int int_field(const nlohmann::json& p, const char* key) {
  if (!p.contains(key))
    throw ConfigError(std::string("table params: missing field ") + key);
  return p.at(key).get<int>();
}

struct Grid {
  int n_lo = 0, n_hi = 0, x_lo = 0, x_hi = 0;
};

Grid read_grid(const nlohmann::json& doc, int N) {
  Grid g{0, N, 0, N};
  if (doc.contains("grid")) {
    const auto& gr = doc["grid"];
    if (gr.contains("n")) {
      g.n_lo = gr["n"].at(0).get<int>();
      g.n_hi = gr["n"].at(1).get<int>();
    }
    if (gr.contains("x")) {
      g.x_lo = gr["x"].at(0).get<int>();
      g.x_hi = gr["x"].at(1).get<int>();
    }
  }
  return g;
}

template <class Eval>
void emit(std::ostream& os, const Grid& g, Eval eval) {
  os << "n,x,value\n";
  for (int n = g.n_lo; n <= g.n_hi; ++n)
    for (int x = g.x_lo; x <= g.x_hi; ++x) os << n << "," << x << "," << eval(n, x) << "\n";
}

std::string fmt(const Rational& v, Mode mode) {
  if (mode == Mode::Exact) return to_string(v);
  return to_string(to_bigfloat(v));
}

}  // namespace

void render_table(const std::string& fn, const std::string& params_json,
                  Mode mode, unsigned float_bits, std::ostream& os) {
  if (mode == Mode::Float) set_float_precision_bits(float_bits);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(params_json);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("table params are not valid JSON: ") + e.what());
  }
  const nlohmann::json& p = doc.contains("params") ? doc["params"] : doc;
  const int N = int_field(p, "N");
  Grid g = read_grid(doc, N);
  Rational q = field(p, "q");

  auto exact_or_float = [&](const std::function<Rational(int, int)>& exact_eval,
                            const std::function<BigFloat(int, int)>& float_eval) {
    if (mode == Mode::Exact)
      emit(os, g, [&](int n, int x) { return to_string(exact_eval(n, x)); });
    else
      emit(os, g, [&](int n, int x) { return to_string(float_eval(n, x)); });
  };

  if (fn == "qracah") {
    Rational alpha = field(p, "alpha"), beta = field(p, "beta"),
             delta = field(p, "delta");
    Rational gamma = p.contains("gamma") ? field(p, "gamma") : pow_int(q, -(N + 1));
    QRacahParams qp(alpha, beta, gamma, delta, q, N);
    exact_or_float([&](int n, int x) { return qp.eval(n, x); },
                   [&](int n, int x) {
                     return qr_eval(to_bigfloat(alpha), to_bigfloat(beta),
                                    to_bigfloat(gamma), to_bigfloat(delta),
                                    to_bigfloat(q), n, x);
                   });
  } else if (fn == "wilson") {
    if (p.contains("a")) {
      WilsonParams<Rational> wp(field(p, "a"), field(p, "b"), field(p, "c"),
                                field(p, "e"), field(p, "f"), q, N);
      exact_or_float([&](int n, int x) { return wilson_eval(wp, n, x); },
                     [&](int n, int x) {
                       WilsonParams<BigFloat> wf(
                           to_bigfloat(wp.a), to_bigfloat(wp.b), to_bigfloat(wp.c),
                           to_bigfloat(wp.e), to_bigfloat(wp.f), to_bigfloat(q), N);
                       return wilson_eval(wf, n, x);
                     });
    } else {
      ParameterSet ps(q, field(p, "alpha"), field(p, "beta"), field(p, "delta"),
                      field(p, "s"), N);
      WilsonParams<Rational> wp = wilson_from_trio(ps);
      exact_or_float([&](int n, int x) { return wilson_eval(wp, n, x); },
                     [&](int n, int x) {
                       WilsonParams<BigFloat> wf(
                           to_bigfloat(wp.a), to_bigfloat(wp.b), to_bigfloat(wp.c),
                           to_bigfloat(wp.e), to_bigfloat(wp.f), to_bigfloat(q), N);
                       return wilson_eval(wf, n, x);
                     });
    }
  } else if (fn == "w" || fn == "w-partner") {
    ParameterSet ps(q, field(p, "alpha"), field(p, "beta"), field(p, "delta"),
                    field(p, "s"), N);
    TrioRealization tr = build_realization(ps);
    bool partner = fn == "w-partner";
    emit(os, g, [&](int n, int x) {
      Rational v = partner ? overlap_w_partner(tr, n, x) : overlap_w(tr, n, x);
      return fmt(v, mode);
    });
  } else if (fn == "r1") {
    R1Params<Rational> rp(field(p, "beta"), field(p, "delta"), field(p, "s"), q, N);
    exact_or_float([&](int n, int x) { return r1_eval(rp, n, x); },
                   [&](int n, int x) {
                     R1Params<BigFloat> rf(to_bigfloat(rp.beta), to_bigfloat(rp.delta),
                                           to_bigfloat(rp.s), to_bigfloat(q), N);
                     return r1_eval(rf, n, x);
                   });
  } else if (fn == "h1") {
    Rational beta = field(p, "beta"), delta = field(p, "delta");
    Rational gamma = pow_int(q, -(N + 1));
    exact_or_float(
        [&](int n, int x) { return h1_eval(beta, gamma, delta, q, n, x); },
        [&](int n, int x) {
          return h1_eval(to_bigfloat(beta), to_bigfloat(gamma), to_bigfloat(delta),
                         to_bigfloat(q), n, x);
        });
  } else if (fn == "r3") {
    Rational sigma = field(p, "sigma"), delta = field(p, "delta");
    Rational gamma = pow_int(q, -(N + 1));
    exact_or_float(
        [&](int n, int x) { return r3_eval(sigma, delta, gamma, q, n, x); },
        [&](int n, int x) {
          return r3_eval(to_bigfloat(sigma), to_bigfloat(delta), to_bigfloat(gamma),
                         to_bigfloat(q), n, x);
        });
  } else {
    throw ConfigError("unknown table function: " + fn);
  }
}

}  // namespace qtrio
