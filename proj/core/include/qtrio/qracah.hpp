#pragma once

#include <array>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qtrio/errors.hpp"
#include "qtrio/qseries.hpp"
#include "qtrio/scalar.hpp"

namespace qtrio {

/// lambda(x; a) = q^{-x} + a q^{x+1}.
template <class S>
S qr_lambda(const S& a, const S& q, int x) {
  return pow_int(q, -x) + a * pow_int(q, x + 1);
}

/// Recurrence coefficients of the q-Racah family at parameters (a, b, c, d).
/// B is returned through the closure A + B + C = 1 + cd q.
template <class S>
S qr_A(const S& a, const S& b, const S& c, const S& d, const S& q, int n) {
  S qn1 = pow_int(q, n + 1);
  S num = (S(1) - a * qn1) * (S(1) - a * b * qn1) * (S(1) - b * d * qn1) * (S(1) - c * qn1);
  S den = (S(1) - a * b * pow_int(q, 2 * n + 1)) * (S(1) - a * b * pow_int(q, 2 * n + 2));
  return num / den;
}

template <class S>
S qr_C(const S& a, const S& b, const S& c, const S& d, const S& q, int n) {
  S qn = pow_int(q, n);
  S num = q * (S(1) - qn) * (S(1) - b * qn) * (c - a * b * qn) * (d - a * qn);
  S den = (S(1) - a * b * pow_int(q, 2 * n)) * (S(1) - a * b * pow_int(q, 2 * n + 1));
  return num / den;
}

template <class S>
S qr_B(const S& a, const S& b, const S& c, const S& d, const S& q, int n) {
  return S(1) + c * d * q - qr_A(a, b, c, d, q, n) - qr_C(a, b, c, d, q, n);
}

/// Normalized orthogonality weight Omega_{n;(a,b,c,d)}.
template <class S>
S qr_omega(const S& a, const S& b, const S& c, const S& d, const S& q, int n) {
  S num = q_pochhammer_multi<S>({a * q, c * q, b * d * q, a * b * q}, q, n);
  S den = q_pochhammer_multi<S>({q, a * b * q / c, a * q / d, b * q}, q, n);
  S scale = (S(1) - a * b * pow_int(q, 2 * n + 1)) /
            (pow_int(c * d * q, n) * (S(1) - a * b * q));
  return num / den * scale;
}

enum class Truncation { Alpha, BetaDelta, Gamma };

/// Detects which truncation condition holds for (a, b, c, d); requires
/// exactly one unless `allow_any` (then the first match wins).
template <class S>
Truncation qr_truncation(const S& a, const S& b, const S& c, const S& d,
                         const S& q, int N, bool require_unique = true) {
  S t = pow_int(q, -(N + 1));
  bool ta = (a == t), tbd = (b * d == t), tc = (c == t);
  int hits = int(ta) + int(tbd) + int(tc);
  if (hits == 0)
    throw GenericityError("no truncation condition holds at N = " + std::to_string(N));
  if (require_unique && hits > 1)
    throw GenericityError("multiple truncation conditions hold simultaneously");
  if (ta) return Truncation::Alpha;
  if (tbd) return Truncation::BetaDelta;
  return Truncation::Gamma;
}

/// Global orthogonality constant M_{(a,b,c,d)} for the matching truncation.
template <class S>
S qr_M(const S& a, const S& b, const S& c, const S& d, const S& q, int N,
       Truncation which) {
  switch (which) {
    case Truncation::Alpha:
      return q_pochhammer_multi<S>({c * q / b, d * q}, q, N) /
             q_pochhammer_multi<S>({S(1) / b, c * d * q * q}, q, N);
    case Truncation::BetaDelta:
      return q_pochhammer_multi<S>({a * b * q / c, b * q}, q, N) /
             q_pochhammer_multi<S>({a * b * q * q, b / c}, q, N);
    case Truncation::Gamma:
    default:
      return q_pochhammer_multi<S>({a * q / d, b * q}, q, N) /
             q_pochhammer_multi<S>({a * b * q * q, S(1) / d}, q, N);
  }
}

template <class S>
S qr_M(const S& a, const S& b, const S& c, const S& d, const S& q, int N) {
  return qr_M(a, b, c, d, q, N, qr_truncation(a, b, c, d, q, N, false));
}

/// q-Racah polynomial R_n(x; a, b, c, d) as a terminating 4phi3 at z = q.
template <class S>
S qr_eval(const S& a, const S& b, const S& c, const S& d, const S& q, int n, int x) {
  auto spec = PhiSpec<S>::terminating(
      n,
      {a * b * pow_int(q, n + 1), pow_int(q, -x), c * d * pow_int(q, x + 1)},
      {a * q, b * d * q, c * q}, q, q);
  return phi(spec);
}

/// Dual q-Hahn polynomial as a terminating 3phi2 at z = q.
template <class S>
S dual_qhahn_eval(const S& a, const S& b, const S& c, const S& q, int n, int x) {
  auto spec = PhiSpec<S>::terminating(
      n, {pow_int(q, -x), a * b * pow_int(q, x + 1)}, {a * q, c * q}, q, q);
  return phi(spec);
}

/// r_n(x) = (q^{-x};q)_n (cd q^{x+1})^n / (aq, cq, dq;q)_n, the beta -> 0
/// family. Vanishes exactly for n > x.
template <class S>
S r_limit_eval(const S& a, const S& c, const S& d, const S& q, int n, int x) {
  S den = q_pochhammer_multi<S>({a * q, c * q, d * q}, q, n);
  if (is_zero(den)) throw PoleError(-1, n, "pole: (aq,cq,dq;q)_n vanishes");
  S num = q_pochhammer(pow_int(q, -x), q, n) * pow_int(c * d * pow_int(q, x + 1), n);
  return num / den;
}

namespace detail {

class FactorScan {
 public:
  void require_nonzero(const Rational& value, const std::string& name) const {
    if (value.is_zero()) throw GenericityError(name);
  }
  void require_nonzero(const Rational& value, const char* pattern, int index) const {
    if (value.is_zero()) {
      std::ostringstream os;
      os << pattern << index;
      throw GenericityError(os.str());
    }
  }
};

/// Denominator factors of Omega_{.;(a,b,c,d)} over n = 0..N, plus the two
/// scale factors. Names carry the slot expressions, not values.
inline void scan_omega_factors(const FactorScan& scan, const Rational& a,
                               const Rational& b, const Rational& c,
                               const Rational& d, const Rational& q, int N,
                               const std::string& tag) {
  scan.require_nonzero(Rational(1) - a * b * q, "1 - a*b*q " + tag);
  scan.require_nonzero(c * d, "c*d " + tag);
  for (int j = 1; j <= N; ++j) {
    scan.require_nonzero(Rational(1) - pow_int(q, j), "1 - q^" + std::to_string(j));
    scan.require_nonzero(Rational(1) - a * b * pow_int(q, j) / c,
                         "1 - a*b*q^" + std::to_string(j) + "/c " + tag);
    scan.require_nonzero(Rational(1) - a * pow_int(q, j) / d,
                         "1 - a*q^" + std::to_string(j) + "/d " + tag);
    scan.require_nonzero(Rational(1) - b * pow_int(q, j),
                         "1 - b*q^" + std::to_string(j) + " " + tag);
  }
}

}  // namespace detail

/// Injectivity of x -> q^{-x} + a q^{x+1} on {0..N}: a q^m != 1 for
/// m = 2..2N.
template <class S>
struct EigenvalueMap {
  S a;
  S q;
  int N = 0;

  EigenvalueMap(S a_, S q_, int N_) : a(std::move(a_)), q(std::move(q_)), N(N_) {
    if constexpr (scalar_traits<S>::exact) {
      for (int m = 2; m <= 2 * N; ++m)
        if (a * pow_int(q, m) == S(1))
          throw GenericityError("eigenvalue map not injective: a*q^" +
                                std::to_string(m) + " = 1");
    }
  }

  S operator()(int x) const { return qr_lambda(a, q, x); }
};

/// Validated q-Racah parameter tuple: exactly one truncation condition holds
/// and every denominator appearing in A, B, C, Omega, M over the index range
/// is nonzero.
struct QRacahParams {
  Rational alpha, beta, gamma, delta, q;
  int N;
  Truncation truncation;

  QRacahParams(Rational alpha_, Rational beta_, Rational gamma_, Rational delta_,
               Rational q_, int N_)
      : alpha(std::move(alpha_)),
        beta(std::move(beta_)),
        gamma(std::move(gamma_)),
        delta(std::move(delta_)),
        q(std::move(q_)),
        N(N_),
        truncation(qr_truncation(alpha, beta, gamma, delta, q, N)) {
    detail::FactorScan scan;
    scan.require_nonzero(q, "q");
    scan.require_nonzero(Rational(1) - q, "1 - q");
    scan.require_nonzero(Rational(1) + q, "1 + q");
    scan.require_nonzero(alpha, "alpha");
    scan.require_nonzero(beta, "beta");
    scan.require_nonzero(gamma, "gamma");
    scan.require_nonzero(delta, "delta");
    for (int m = 0; m <= 2 * N + 2; ++m)
      scan.require_nonzero(Rational(1) - alpha * beta * pow_int(q, m),
                           "1 - alpha*beta*q^", m);
    detail::scan_omega_factors(scan, alpha, beta, gamma, delta, q, N, "(rho)");
    detail::scan_omega_factors(scan, gamma, delta, alpha, beta, q, N, "(rho')");
    for (int m = 0; m <= 2 * N + 2; ++m)
      scan.require_nonzero(Rational(1) - gamma * delta * pow_int(q, m),
                           "1 - gamma*delta*q^", m);
    // M denominators of the matching branch.
    Rational m_den = [&] {
      switch (truncation) {
        case Truncation::Alpha:
          return q_pochhammer_multi<Rational>({Rational(1) / beta, gamma * delta * q * q}, q, N);
        case Truncation::BetaDelta:
          return q_pochhammer_multi<Rational>({alpha * beta * q * q, beta / gamma}, q, N);
        case Truncation::Gamma:
        default:
          return q_pochhammer_multi<Rational>({alpha * beta * q * q, Rational(1) / delta}, q, N);
      }
    }();
    scan.require_nonzero(m_den, "M denominator Pochhammers");
    // The recurrence convention needs the coefficient of R_{N+1} to vanish
    // under the truncation condition; verified, not assumed.
    if (!qr_A(alpha, beta, gamma, delta, q, N).is_zero())
      throw GenericityError("A_N does not vanish under the truncation condition");
  }

  Rational eval(int n, int x) const { return qr_eval(alpha, beta, gamma, delta, q, n, x); }

  /// (A_n, B_n, C_n); B through the closure identity.
  std::array<Rational, 3> abc(int n) const {
    Rational a = qr_A(alpha, beta, gamma, delta, q, n);
    Rational c = qr_C(alpha, beta, gamma, delta, q, n);
    return {a, Rational(1) + gamma * delta * q - a - c, c};
  }

  /// (Omega_n, M) with M for the matching truncation branch.
  std::pair<Rational, Rational> weights(int n) const {
    return {qr_omega(alpha, beta, gamma, delta, q, n),
            qr_M(alpha, beta, gamma, delta, q, N, truncation)};
  }

  QRacahParams dual() const { return {gamma, delta, alpha, beta, q, N}; }

  /// lambda(x; gamma delta) R_n(x) - [A_n R_{n+1}(x) + B_n R_n(x) + C_n R_{n-1}(x)],
  /// with R_{-1} := 0 and the R_{N+1} term dropped against A_N = 0.
  Rational recurrence_residual(int n, int x) const {
    auto [a, b, c] = abc(n);
    Rational lhs = qr_lambda(gamma * delta, q, x) * eval(n, x);
    Rational rhs = b * eval(n, x);
    if (n + 1 <= N) rhs += a * eval(n + 1, x);
    if (n >= 1) rhs += c * eval(n - 1, x);
    return lhs - rhs;
  }

  /// lambda(n; alpha beta) R_n(x) - [A_x(rho') R_n(x+1) + B_x(rho') R_n(x)
  /// + C_x(rho') R_n(x-1)]; the dual relation, transported by the duality swap.
  Rational difference_residual(int n, int x) const {
    QRacahParams d = dual();
    auto [a, b, c] = d.abc(x);
    Rational lhs = qr_lambda(alpha * beta, q, n) * eval(n, x);
    Rational rhs = b * eval(n, x);
    if (x + 1 <= N) rhs += a * eval(n, x + 1);
    if (x >= 1) rhs += c * eval(n, x - 1);
    return lhs - rhs;
  }

  /// (R_n(x; rho), R_x(n; rho')); the duality contract says they are equal.
  std::pair<Rational, Rational> duality_pair(int n, int x) const {
    return {eval(n, x), dual().eval(x, n)};
  }
};

}  // namespace qtrio
