#pragma once

#include <tuple>
#include <vector>

#include "qtrio/matrix.hpp"
#include "qtrio/params.hpp"
#include "qtrio/qracah.hpp"
#include "qtrio/report.hpp"
#include "qtrio/wilson.hpp"

namespace qtrio {

/// Racah relation residual: the q-Racah polynomial at parameters
/// (c/b, b d, c, a/(b d)) minus the prefactored sum of products of
/// polynomials at (a, b, c, a/(b d)) and (a, b, c, d). Exactly zero.
template <class S>
S racah_relation_residual(const S& a, const S& b, const S& d, const S& q, int N,
                          int n, int x) {
  const S one(1);
  S c = pow_int(q, -(N + 1));
  S dt = a / (b * d);
  S lhs = qr_eval(c / b, b * d, c, dt, q, n, x);
  S pref = q_pochhammer(d * pow_int(q, -x) / a, q, x) /
           q_pochhammer(c * q / b, q, x) *
           q_pochhammer(pow_int(q, -n) / (b * d), q, n) /
           q_pochhammer(c * q / b, q, n) * q_pochhammer(b * q, q, N) *
           pow_int(a * q, N) / q_pochhammer(a * b * q * q, q, N);
  S acc(0);
  for (int i = 0; i <= N; ++i) {
    S u = q_pochhammer_multi<S>({a * q, a * b * q}, q, i) *
          q_pochhammer(pow_int(q, -i) / c, q, i) /
          q_pochhammer_multi<S>({q, a * b * q / c, b * q}, q, i) *
          (one - a * b * pow_int(q, 2 * i + 1)) /
          ((one - a * b * q) * pow_int(a * q, i));
    acc += u * qr_eval(a, b, c, dt, q, i, x) * qr_eval(a, b, c, d, q, i, n);
  }
  return lhs - pref * acc;
}

/// Parameters of the alpha -> 0 rational family; gamma = q^{-N-1} derived.
template <class S>
struct R1Params {
  S beta, delta, s, q;
  int N = 0;
  S gamma;

  R1Params(S beta_, S delta_, S s_, S q_, int N_)
      : beta(std::move(beta_)), delta(std::move(delta_)), s(std::move(s_)),
        q(std::move(q_)), N(N_), gamma(pow_int(q, -(N + 1))) {
    if constexpr (scalar_traits<S>::exact) {
      const S one(1);
      auto scan = [&](const S& base, int lo, int hi, const char* name) {
        for (int m = lo; m <= hi; ++m)
          if (base * pow_int(q, m) == one)
            throw GenericityError(std::string(name) + " at q^" + std::to_string(m));
      };
      if (is_zero(beta) || is_zero(delta) || is_zero(s))
        throw GenericityError("beta, delta, s must be nonzero");
      scan(gamma / beta, 1, N, "1 - gamma*q^m/beta");
      scan(beta * delta * s, -N - 1, N, "1 - beta*delta*s*q^m");
      scan(gamma * delta, 0, 2 * N + 2, "1 - gamma*delta*q^m");
      scan(beta * delta, 1, N + 1, "1 - beta*delta*q^m");
    }
  }
};

/// The terminating 4phi3 of the alpha -> 0 family.
template <class S>
S r1_eval(const R1Params<S>& p, int n, int x) {
  auto spec = PhiSpec<S>::terminating(
      n,
      {p.gamma * p.delta * pow_int(p.q, n + 1), pow_int(p.q, -x),
       p.gamma * p.s * p.q},
      {p.gamma * p.q, p.gamma * p.q / p.beta,
       p.beta * p.delta * p.s * pow_int(p.q, 1 - x)},
      p.q, p.q);
  return phi(spec);
}

/// Dual q-Hahn sum route for the same function.
template <class S>
S r1_sum_route(const R1Params<S>& p, int n, int x) {
  const S one(1);
  const S& q = p.q;
  S pref = q_pochhammer(pow_int(q, -n) / (p.beta * p.delta), q, n) /
           (q_pochhammer(one / (p.beta * p.delta * p.s), q, x) *
            q_pochhammer(p.gamma * q / p.beta, q, n));
  S acc(0);
  for (int i = p.N - x; i <= p.N; ++i) {
    int k = i + x - p.N;
    S term = q_pochhammer(pow_int(q, i + 1) / p.s, q, p.N - i) *
             q_pochhammer_multi<S>(
                 {pow_int(q, -x), p.beta * p.delta * pow_int(q, p.N - x + 1)}, q, k) /
             (q_pochhammer(q, q, k) *
              pow_int(p.beta * p.delta * p.s * pow_int(q, -x), k));
    acc += term * dual_qhahn_eval(p.beta * p.delta, p.gamma / p.beta, p.gamma, q, i, n);
  }
  return pref * acc;
}

/// Recurrence GEVP coefficients of the alpha -> 0 family; spectral factor
/// (q^{-x} - 1).
template <class S>
GevpCoeffs<S> r1_gevp_coeffs(const R1Params<S>& p, int n) {
  const S one(1);
  const S &q = p.q, &b = p.beta, &d = p.delta, &s = p.s, &g = p.gamma;
  S qn = pow_int(q, n), qn1 = pow_int(q, n + 1);
  S d2a = one - g * d * pow_int(q, 2 * n + 1), d2b = one - g * d * pow_int(q, 2 * n + 2);
  S d2c = one - g * d * pow_int(q, 2 * n);
  GevpCoeffs<S> co;
  co.z_up = S(0) - d * qn1 * (b - g * qn1) * (one - g * qn1) * (one - g * d * qn1) /
            (d2a * d2b);
  co.z_dn = q * g * (one - d * qn) * (one - qn) * (one - d * b * qn) / (d2c * d2a);
  co.z_diag = (s - one) / s -
              (one - g * qn1) * (one - g * d * qn1) * (one - b * d * qn1) / (d2a * d2b) +
              g * d * qn1 * (one - qn) * (one - d * qn) * (b - g * qn) / (d2c * d2a);
  co.x_up = S(0) - (b - g * qn1) * (one - b * d * s * qn1) * (one - g * qn1) *
            (one - g * d * qn1) / (b * s * d2a * d2b);
  co.x_dn = q * g * (one - d * b * qn) * (g * qn - b * s) * (one - qn) * (one - d * qn) /
            (b * s * d2c * d2a);
  co.x_diag = S(0) - co.x_up - co.x_dn;
  return co;
}

template <class S>
S r1_recurrence_residual(const R1Params<S>& p, int n, int x) {
  GevpCoeffs<S> co = r1_gevp_coeffs(p, n);
  S spectral = pow_int(p.q, -x) - S(1);
  S w0 = r1_eval(p, n, x);
  S lhs = co.x_diag * w0;
  S rhs = co.z_diag * w0;
  if (n + 1 <= p.N) {
    S w_up = r1_eval(p, n + 1, x);
    lhs += co.x_up * w_up;
    rhs += co.z_up * w_up;
  } else if constexpr (scalar_traits<S>::exact) {
    if (!is_zero(co.x_up) || !is_zero(co.z_up))
      throw GenericityError("R1 boundary coefficients at n = N do not vanish");
  }
  if (n >= 1) {
    S w_dn = r1_eval(p, n - 1, x);
    lhs += co.x_dn * w_dn;
    rhs += co.z_dn * w_dn;
  }
  return lhs - spectral * rhs;
}

/// Two-term difference relation (the R_I structure: no x+1 term on the
/// spectral side); spectral factor (1 - q^n)(q^{-n} - gamma delta q).
template <class S>
S r1_difference_residual(const R1Params<S>& p, int n, int x) {
  const S one(1);
  const S &q = p.q, &b = p.beta, &d = p.delta, &s = p.s, &g = p.gamma;
  S qx = pow_int(q, x);
  S zt_diag = g * q * qx - one / s;
  S xt_up = (one - g * q * qx) * (b * d * s - qx) * (b - g * q * qx) / (b * s * qx);
  S spectral = (one - pow_int(q, n)) * (pow_int(q, -n) - g * d * q);
  S w0 = r1_eval(p, n, x);
  S lhs = S(0);
  S rhs = zt_diag * w0;
  S xt_dn(0), zt_dn(0);
  if (x >= 1) {
    S qxm = pow_int(q, x - 1);
    zt_dn = (one - qx) * (b * d - g * qx) / (b * d * s - qxm);
    xt_dn = (one - qx) * (b * d - g * qx) * (b * s - g * qx) / (b * s * qxm);
    S w_dn = r1_eval(p, n, x - 1);
    lhs += xt_dn * w_dn;
    rhs += zt_dn * w_dn;
  }
  S xt_diag = S(0) - xt_up - xt_dn;
  lhs += xt_diag * w0;
  if (x + 1 <= p.N) {
    lhs += xt_up * r1_eval(p, n, x + 1);
  } else if constexpr (scalar_traits<S>::exact) {
    // (1 - gamma q^{x+1}) = 0 at x = N: the boundary coefficient vanishes.
    if (!is_zero(xt_up))
      throw GenericityError("R1 difference boundary coefficient at x = N does not vanish");
  }
  return lhs - spectral * rhs;
}

template <class S>
S h1_eval(const S& beta, const S& gamma, const S& delta, const S& q, int n, int x) {
  auto spec = PhiSpec<S>::terminating(
      n, {gamma * delta * pow_int(q, n + 1), pow_int(q, -x)},
      {gamma * q, beta * delta * pow_int(q, 1 - x)}, q, q);
  return phi(spec);
}

/// value, recurrence residual, difference residual of the 3phi2 family
/// obtained from the alpha -> 0 family by beta -> beta/s, s -> 0. gamma must
/// be q^{-N-1}; N is recovered from the grid via the caller's indices, so the
/// boundary coefficients vanish structurally.
template <class S>
std::tuple<S, S, S> h1_eval_and_residuals(const S& beta, const S& gamma,
                                          const S& delta, const S& q, int N,
                                          int n, int x) {
  const S one(1);
  S value = h1_eval(beta, gamma, delta, q, n, x);

  // Recurrence side, spectral factor (q^{-x} - 1).
  S qn = pow_int(q, n), qn1 = pow_int(q, n + 1);
  S d2a = one - gamma * delta * pow_int(q, 2 * n + 1);
  S d2b = one - gamma * delta * pow_int(q, 2 * n + 2);
  S d2c = one - gamma * delta * pow_int(q, 2 * n);
  S z_up = S(0) - (one - gamma * delta * qn1) * (one - gamma * qn1) * beta * delta * qn1 /
           (d2b * d2a);
  S z_dn = S(0) - (one - delta * qn) * (one - qn) * gamma * delta * beta * qn1 /
           (d2a * d2c);
  S z_diag = S(0) - z_up - z_dn - one;
  S x_up = S(0) - (one - gamma * delta * qn1) * (one - gamma * qn1) *
           (one - beta * delta * qn1) / (d2b * d2a);
  S x_dn = (one - delta * qn) * (one - qn) * (beta - gamma * qn) * delta * gamma * qn1 /
           (d2a * d2c);
  S x_diag = S(0) - x_up - x_dn;

  S spectral_rec = pow_int(q, -x) - one;
  S lhs = x_diag * value;
  S rhs = z_diag * value;
  if (n + 1 <= N) {
    S up = h1_eval(beta, gamma, delta, q, n + 1, x);
    lhs += x_up * up;
    rhs += z_up * up;
  } else if constexpr (scalar_traits<S>::exact) {
    if (!is_zero(x_up) || !is_zero(z_up))
      throw GenericityError("h1 recurrence boundary coefficients at n = N do not vanish");
  }
  if (n >= 1) {
    S dn = h1_eval(beta, gamma, delta, q, n - 1, x);
    lhs += x_dn * dn;
    rhs += z_dn * dn;
  }
  S rec_residual = lhs - spectral_rec * rhs;

  // Difference side, spectral factor (1 - q^n)(q^{-n} - gamma delta q); the
  // Z side has only the (x, x) and (x, x-1) terms, with Z_{x,x} = -1.
  S qx = pow_int(q, x);
  S xt_up = (beta * delta - qx) * (pow_int(q, -x) - gamma * q);
  S xt_dn(0), zt_dn(0);
  if (x >= 1) {
    xt_dn = delta * q * (beta - gamma * qx) * (pow_int(q, -x) - one);
    zt_dn = beta * delta * (one - qx) / (beta * delta - pow_int(q, x - 1));
  }
  S xt_diag = S(0) - xt_up - xt_dn;
  S spectral_diff = (one - qn) * (pow_int(q, -n) - gamma * delta * q);
  S dlhs = xt_diag * value;
  S drhs = S(0) - value;  // Zt_{x,x} = -1
  if (x >= 1) {
    S dn = h1_eval(beta, gamma, delta, q, n, x - 1);
    dlhs += xt_dn * dn;
    drhs += zt_dn * dn;
  }
  if (x + 1 <= N) {
    dlhs += xt_up * h1_eval(beta, gamma, delta, q, n, x + 1);
  } else if constexpr (scalar_traits<S>::exact) {
    if (!is_zero(xt_up))
      throw GenericityError("h1 difference boundary coefficient at x = N does not vanish");
  }
  S diff_residual = dlhs - spectral_diff * drhs;

  return {value, rec_residual, diff_residual};
}

/// Z-representation matrix of the h1 difference relation: lower bidiagonal,
/// constant diagonal -1, generically nonzero subdiagonal; single eigenvalue
/// with rank(Z + I) = N, hence not diagonalizable.
DenseMatrix<Rational> h1_z_matrix(const Rational& beta, const Rational& delta,
                                  const Rational& q, int N);

/// Balanced 4phi3 limit family with free parameter sigma: the alpha -> 0
/// limit of the Wilson function at alpha = beta, s = sigma/alpha, written
/// through Watson's transformation of the very-well-poised 8phi7. The
/// parameter shifts here are pinned by exact agreement with the termwise
/// limit series on full grids.
template <class S>
S r3_eval(const S& sigma, const S& delta, const S& gamma, const S& q, int n, int x) {
  S pref_num = q_pochhammer_multi<S>(
      {gamma * sigma * q * q, pow_int(q, -n) / delta}, q, n);
  S pref_den = q_pochhammer_multi<S>(
      {sigma * pow_int(q, 1 - n) / delta, gamma * q}, q, n);
  if (is_zero(pref_den)) throw PoleError(-1, n, "pole: r3 prefactor denominator");
  auto spec = PhiSpec<S>::terminating(
      n,
      {gamma * delta * pow_int(q, n + 1), sigma * q, sigma * delta * q},
      {gamma * sigma * pow_int(q, x + 2), sigma * delta * pow_int(q, 1 - x), delta * q},
      q, q);
  return pref_num / pref_den * phi(spec);
}

/// Eigenvalue-sequence compatibility for reduced pairs.
struct ReducedSequences {
  std::vector<Rational> xi;
  std::vector<Rational> lambda;

  ReducedSequences(std::vector<Rational> xi_, std::vector<Rational> lambda_);
};

enum class ReducedForm { QRed, LRed, Other };

struct ReducedClassification {
  bool compatible = false;
  ReducedForm form = ReducedForm::Other;
};

/// Scans (lambda_x - lambda_i)(xi_x - xi_{i+1}) = (xi_x - xi_i)(lambda_{x-1}
/// - lambda_i) over 1 <= x <= N, 0 <= i < x, and fingerprints the sequences
/// by exact finite differences (affine) or constant difference ratios with
/// reciprocal ratios between the two lists (geometric).
ReducedClassification reduced_compatibility_check(const ReducedSequences& seqs);

struct ReducedLp {
  DenseMatrix<Rational> Z, V, P;
};

/// Z diagonal with q^{-i}, V upper bidiagonal, coordinates P(i, n) = r_i(n);
/// verifies both eigen-actions and the zeta-product coordinates.
ReducedLp build_reduced_lp(const Rational& alpha, const Rational& delta,
                           const Rational& q, int N, VerificationReport* report);

/// Three-rung float ladder: errors at t, t/10, t/100 must drop by at least
/// `min_factor` per rung.
struct LadderResult {
  std::vector<BigFloat> errors;
  bool converged = false;
};

LadderResult ladder_racah_limit(const ParameterSet& ps, unsigned bits);
LadderResult ladder_r1_limit(const ParameterSet& ps, unsigned bits);
LadderResult ladder_r3_limit(const ParameterSet& ps, unsigned bits);
LadderResult ladder_rn_limit(const ParameterSet& ps, unsigned bits);

}  // namespace qtrio
