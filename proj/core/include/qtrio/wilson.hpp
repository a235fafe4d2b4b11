#pragma once

#include <utility>
#include <vector>

#include "qtrio/errors.hpp"
#include "qtrio/params.hpp"
#include "qtrio/qracah.hpp"
#include "qtrio/qseries.hpp"
#include "qtrio/scalar.hpp"

namespace qtrio {

/// Parameters (a, b, c, d, e, f) of the Wilson rational family with
/// d = q^{N+1} derived and the balancing condition b c d e f = 1.
template <class S>
struct WilsonParams {
  S a, b, c, e, f, q;
  int N = 0;
  S d;

  WilsonParams(S a_, S b_, S c_, S e_, S f_, S q_, int N_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), e(std::move(e_)),
        f(std::move(f_)), q(std::move(q_)), N(N_), d(pow_int(q, N + 1)) {
    if constexpr (scalar_traits<S>::exact) {
      if (b * c * d * e * f != S(1))
        throw GenericityError("Wilson balancing b*c*d*e*f = 1 fails");
      if (a == S(1)) throw GenericityError("1 - a (very-well-poised factor)");
      scan_grid_poles();
    }
  }

  WilsonParams swapped_bc() const { return WilsonParams(a, c, b, e, f, q, N); }

 private:
  /// Every 10phi9 denominator Pochhammer over the (n, x) grid must be
  /// nonzero. The factors are geometric ladders, so scanning base * q^m over
  /// the reachable exponent window covers the grid.
  void scan_grid_poles() const {
    const S one(1);
    auto scan = [&](const S& base, int lo, int hi, const char* name) {
      for (int m = lo; m <= hi; ++m)
        if (base * pow_int(q, m) == one)
          throw GenericityError(std::string("Wilson pole ladder: ") + name +
                                " at q^" + std::to_string(m));
    };
    // lower parameters: a q^{n+1}, (a/b) q^{-n}, a q^{x+1}, (a/c) q^{-x},
    // q/d = q^{-N}, q/e, q/f, each advanced by q^j, j < n <= N.
    scan(a, 1, 2 * N + 1, "a*q^m");
    scan(a / b, -N, N - 1, "(a/b)*q^m");
    scan(a / c, -N, N - 1, "(a/c)*q^m");
    scan(q / e, 0, N - 1, "(q/e)*q^m");
    scan(q / f, 0, N - 1, "(q/f)*q^m");
    // (q/d) q^j = q^{j-N} != 1 for j < N automatically, but scan anyway in
    // case q is a root of unity.
    scan(q / d, 0, N - 1, "(q/d)*q^m");
  }
};

/// W_n(x; a,b,c,d,e,f): terminating very-well-poised 10phi9 at z = q,
/// terminating at k = n through the q^{-n} numerator parameter.
template <class S>
S wilson_eval(const WilsonParams<S>& p, int n, int x) {
  std::vector<S> tail = {pow_int(p.q, -n),      p.b * pow_int(p.q, n + 1),
                         pow_int(p.q, -x),      p.c * pow_int(p.q, x + 1),
                         p.a * p.d,             p.a * p.e,
                         p.a * p.f};
  return very_well_poised_phi(p.a, tail, p.q, n);
}

/// The six coefficients of the three-term recurrence GEVP, indexed
/// (n+1,n), (n,n), (n-1,n) on each side.
template <class S>
struct GevpCoeffs {
  S z_up, z_diag, z_dn;
  S x_up, x_diag, x_dn;
};

template <class S>
GevpCoeffs<S> wilson_gevp_coeffs(const WilsonParams<S>& p, int n) {
  const S one(1);
  const S &a = p.a, &b = p.b, &c = p.c, &d = p.d, &e = p.e, &f = p.f, &q = p.q;
  S ra = one / d, rb = b * d, rc = one / e, rd = f / d;
  S A = qr_A(ra, rb, rc, rd, q, n);
  S C = qr_C(ra, rb, rc, rd, q, n);
  S B = one + rc * rd * q - A - C;
  S qn = pow_int(q, n), qn1 = pow_int(q, n + 1);

  GevpCoeffs<S> co;
  co.z_up = A * (a - b * qn1) * (f - qn1) / ((one - a * qn1) * (one - b * f * qn1));
  co.z_dn = C * (one - a * qn) * (one - b * f * qn) / ((a - b * qn) * (f - qn));
  co.z_diag = B - a * f - q * b * c * f / a;
  co.x_up = A * (a - b * qn1) * (f - qn1) * (c - a * qn) / (a * qn * (one - b * f * qn1));
  co.x_dn = C * (one - a * qn) * (one - b * f * qn) * (a - b * c * qn1) /
            (a * b * qn * (f - qn));
  co.x_diag = S(0) - co.x_up - co.x_dn;
  return co;
}

/// LHS - RHS of the recurrence GEVP with spectral factor
/// lambda(x; c) - 1 - c q, under W_{-1} := 0; at n = N the (n+1, n)
/// coefficients must vanish by truncation (verified here in exact mode).
template <class S>
S wilson_gevp_residual(const WilsonParams<S>& p, int n, int x) {
  GevpCoeffs<S> co = wilson_gevp_coeffs(p, n);
  S spectral = qr_lambda(p.c, p.q, x) - S(1) - p.c * p.q;
  S w0 = wilson_eval(p, n, x);
  S lhs = co.x_diag * w0;
  S rhs = co.z_diag * w0;
  if (n + 1 <= p.N) {
    S w_up = wilson_eval(p, n + 1, x);
    lhs += co.x_up * w_up;
    rhs += co.z_up * w_up;
  } else if constexpr (scalar_traits<S>::exact) {
    if (!is_zero(co.x_up) || !is_zero(co.z_up))
      throw GenericityError("Wilson GEVP boundary coefficients at n = N do not vanish");
  }
  if (n >= 1) {
    S w_dn = wilson_eval(p, n - 1, x);
    lhs += co.x_dn * w_dn;
    rhs += co.z_dn * w_dn;
  }
  return lhs - spectral * rhs;
}

/// Difference GEVP residual via duality transport: the recurrence relation
/// of the b <-> c swapped family read at the transposed point is a
/// difference relation in x for W_n(x).
template <class S>
S wilson_difference_gevp_residual(const WilsonParams<S>& p, int n, int x) {
  return wilson_gevp_residual(p.swapped_bc(), x, n);
}

/// (alpha, beta, gamma, delta, s) -> (a, b, c, d, e, f)
/// = (alpha gamma s q, gamma delta, alpha gamma/(beta delta), 1/gamma,
///    1/alpha, beta/gamma); d = 1/gamma = q^{N+1} when gamma = q^{-N-1}.
template <class S>
WilsonParams<S> wilson_from_trio_values(const S& q, const S& alpha, const S& beta,
                                        const S& delta, const S& s, int N) {
  S gamma = pow_int(q, -(N + 1));
  return WilsonParams<S>(alpha * gamma * s * q, gamma * delta,
                         alpha * gamma / (beta * delta), S(1) / alpha,
                         beta / gamma, q, N);
}

inline WilsonParams<Rational> wilson_from_trio(const ParameterSet& ps) {
  return wilson_from_trio_values(ps.q, ps.alpha, ps.beta, ps.delta, ps.s, ps.N);
}

/// GEVP coefficients in the trio variables (the recurrence side written with
/// the swapped q-Racah family (gamma, delta, alpha, beta) and the
/// sigma-shifted diagonal).
template <class S>
GevpCoeffs<S> trio_wilson_gevp_coeffs(const S& q, const S& alpha, const S& beta,
                                      const S& delta, const S& s, int N, int n) {
  const S one(1);
  S gamma = pow_int(q, -(N + 1));
  S A = qr_A(gamma, delta, alpha, beta, q, n);
  S C = qr_C(gamma, delta, alpha, beta, q, n);
  S B = one + alpha * beta * q - A - C;
  S qn = pow_int(q, n), qn1 = pow_int(q, n + 1), qnm = pow_int(q, n - 1);
  S ags = alpha * gamma * s;
  S bds = beta * delta * s;

  GevpCoeffs<S> co;
  co.z_up = A * q * (alpha * s - delta * qn) * (beta - gamma * qn1) /
            ((one - ags * pow_int(q, n + 2)) * (one - beta * delta * qn1));
  co.z_dn = C * (one - ags * qn1) * (one - beta * delta * qn) /
            (q * (alpha * s - delta * qnm) * (beta - gamma * qn));
  co.z_diag = B - alpha * beta * s * q - one / s;
  co.x_up = A * (alpha * s - delta * qn) * (beta - gamma * qn1) * (one - bds * qn1) /
            (bds * qn * (one - beta * delta * qn1));
  co.x_dn = C * (one - ags * qn1) * (one - beta * delta * qn) * (beta * s - gamma * qn) /
            (bds * qn * (beta - gamma * qn));
  co.x_diag = S(0) - co.x_up - co.x_dn;
  return co;
}

inline GevpCoeffs<Rational> trio_wilson_gevp_coeffs(const ParameterSet& ps, int n) {
  return trio_wilson_gevp_coeffs(ps.q, ps.alpha, ps.beta, ps.delta, ps.s, ps.N, n);
}

/// LHS - RHS of the trio-variable recurrence GEVP with spectral factor
/// (1 - q^x)(q^{-x} - alpha gamma q / (beta delta)).
template <class S>
S trio_wilson_gevp_residual(const S& q, const S& alpha, const S& beta,
                            const S& delta, const S& s, int N, int n, int x) {
  WilsonParams<S> wp = wilson_from_trio_values(q, alpha, beta, delta, s, N);
  GevpCoeffs<S> co = trio_wilson_gevp_coeffs(q, alpha, beta, delta, s, N, n);
  S gamma = pow_int(q, -(N + 1));
  S spectral = (S(1) - pow_int(q, x)) *
               (pow_int(q, -x) - alpha * gamma * q / (beta * delta));
  S w0 = wilson_eval(wp, n, x);
  S lhs = co.x_diag * w0;
  S rhs = co.z_diag * w0;
  if (n + 1 <= N) {
    S w_up = wilson_eval(wp, n + 1, x);
    lhs += co.x_up * w_up;
    rhs += co.z_up * w_up;
  } else if constexpr (scalar_traits<S>::exact) {
    if (!is_zero(co.x_up) || !is_zero(co.z_up))
      throw GenericityError("trio GEVP boundary coefficients at n = N do not vanish");
  }
  if (n >= 1) {
    S w_dn = wilson_eval(wp, n - 1, x);
    lhs += co.x_dn * w_dn;
    rhs += co.z_dn * w_dn;
  }
  return lhs - spectral * rhs;
}

inline Rational trio_wilson_gevp_residual(const ParameterSet& ps, int n, int x) {
  return trio_wilson_gevp_residual(ps.q, ps.alpha, ps.beta, ps.delta, ps.s, ps.N, n, x);
}

/// Difference GEVP in trio variables via the delta -> alpha/(beta delta)
/// duality ("exchanging the variable x and the degree n").
inline Rational trio_wilson_difference_residual(const ParameterSet& ps, int n, int x) {
  ParameterSet dual(ps.q, ps.alpha, ps.beta, ps.deltaT, ps.s, ps.N);
  return trio_wilson_gevp_residual(dual, x, n);
}

}  // namespace qtrio
