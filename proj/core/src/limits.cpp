#include "qtrio/limits.hpp"

#include <functional>

namespace qtrio {

namespace {

void require_distinct(const std::vector<Rational>& v, const char* name) {
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] == v[j])
        throw ConfigError(std::string("ReducedSequences: ") + name +
                          " entries are not pairwise distinct");
}

}  // namespace

ReducedSequences::ReducedSequences(std::vector<Rational> xi_,
                                   std::vector<Rational> lambda_)
    : xi(std::move(xi_)), lambda(std::move(lambda_)) {
  if (xi.size() != lambda.size() || xi.size() < 2)
    throw ConfigError("ReducedSequences: need two lists of equal length >= 2");
  require_distinct(xi, "xi");
  require_distinct(lambda, "lambda");
}

ReducedClassification reduced_compatibility_check(const ReducedSequences& seqs) {
  ReducedClassification out;
  const int n = static_cast<int>(seqs.xi.size()) - 1;

  out.compatible = true;
  for (int x = 1; x <= n && out.compatible; ++x)
    for (int i = 0; i < x && out.compatible; ++i) {
      Rational lhs = (seqs.lambda[x] - seqs.lambda[i]) * (seqs.xi[x] - seqs.xi[i + 1]);
      Rational rhs = (seqs.xi[x] - seqs.xi[i]) * (seqs.lambda[x - 1] - seqs.lambda[i]);
      if (lhs != rhs) out.compatible = false;
    }

  // Fingerprint: consecutive differences of a geometric-progression sequence
  // a0 + a1 q^x have constant ratio q; affine sequences have ratio 1. The
  // q-red pattern pairs reciprocal ratios.
  if (n >= 2) {
    auto diff_ratio_constant = [&](const std::vector<Rational>& v, Rational& ratio) {
      std::vector<Rational> d;
      for (std::size_t k = 0; k + 1 < v.size(); ++k) d.push_back(v[k + 1] - v[k]);
      ratio = d[1] / d[0];
      for (std::size_t k = 0; k + 1 < d.size(); ++k)
        if (d[k + 1] != ratio * d[k]) return false;
      return true;
    };
    Rational r_xi, r_lam;
    bool g_xi = diff_ratio_constant(seqs.xi, r_xi);
    bool g_lam = diff_ratio_constant(seqs.lambda, r_lam);
    if (g_xi && g_lam) {
      if (r_xi == Rational(1) && r_lam == Rational(1))
        out.form = ReducedForm::LRed;
      else if (r_xi * r_lam == Rational(1) && r_xi != Rational(1))
        out.form = ReducedForm::QRed;
    }
  }
  return out;
}

ReducedLp build_reduced_lp(const Rational& alpha, const Rational& delta,
                           const Rational& q, int N, VerificationReport* report) {
  const Rational one(1);
  Rational gamma = pow_int(q, -(N + 1));
  for (int m = 1; m <= N; ++m) {
    if (alpha * pow_int(q, m) == one)
      throw GenericityError("1 - alpha*q^" + std::to_string(m));
    if (delta * pow_int(q, m) == one)
      throw GenericityError("1 - delta*q^" + std::to_string(m));
    if (pow_int(q, m) == one)
      throw GenericityError("1 - q^" + std::to_string(m));
  }
  if (gamma.is_zero() || delta.is_zero()) throw GenericityError("gamma*delta");

  const int n1 = N + 1;
  ReducedLp lp{DenseMatrix<Rational>(n1, n1), DenseMatrix<Rational>(n1, n1),
               DenseMatrix<Rational>(n1, n1)};
  for (int i = 0; i < n1; ++i) {
    lp.Z(i, i) = pow_int(q, -i);
    lp.V(i, i) = gamma * delta * pow_int(q, i + 1);
    if (i >= 1)
      lp.V(i - 1, i) = (one - alpha * pow_int(q, i)) * (one - delta * pow_int(q, i)) *
                       (one - gamma * pow_int(q, i));
    for (int n = 0; n < n1; ++n)
      lp.P(i, n) = r_limit_eval(alpha, gamma, delta, q, i, n);
  }

  if (report) {
    CheckResult base;
    base.N = N;
    base.params = {{"alpha", to_string(alpha)},
                   {"delta", to_string(delta)},
                   {"q", to_string(q)},
                   {"gamma", to_string(gamma)}};
    auto add = [&](const char* anchor, const char* identity, bool pass,
                   const Rational& residual) {
      CheckResult r = base;
      r.anchor = anchor;
      r.identity = identity;
      r.pass = pass;
      r.max_residual = to_string(residual);
      report->push_back(std::move(r));
    };

    // V v_n = gamma delta q^{n+1} v_n.
    DenseMatrix<Rational> vp = lp.V * lp.P;
    DenseMatrix<Rational> vexp = lp.P;
    for (int n = 0; n < n1; ++n) {
      Rational ln = gamma * delta * pow_int(q, n + 1);
      for (int i = 0; i < n1; ++i) vexp(i, n) *= ln;
    }
    DenseMatrix<Rational> vres = vp - vexp;
    add("limits.reduced.v-eigen", "V acts diagonally on the r-basis",
        vres.is_zero(), vres.max_abs());

    // Z v_n = (1 - q^{-n}) v_{n-1} + q^{-n} v_n.
    DenseMatrix<Rational> zp = lp.Z * lp.P;
    DenseMatrix<Rational> zexp(n1, n1);
    for (int n = 0; n < n1; ++n)
      for (int i = 0; i < n1; ++i) {
        Rational v = pow_int(q, -n) * lp.P(i, n);
        if (n >= 1) v += (one - pow_int(q, -n)) * lp.P(i, n - 1);
        zexp(i, n) = v;
      }
    DenseMatrix<Rational> zres = zp - zexp;
    add("limits.reduced.z-bidiagonal", "Z acts lower-bidiagonally on the r-basis",
        zres.is_zero(), zres.max_abs());

    BandProfile pv = band_predicates(lp.V);
    BandProfile pz = band_predicates(lp.Z);
    add("limits.reduced.band-shapes",
        "V irreducible upper bidiagonal, Z multiplicity-free diagonal",
        pv.irreducible_upper_bidiagonal && pz.multiplicity_free_diagonal,
        Rational(0));

    // zeta-product coordinates reproduce the r-coordinates.
    Rational worst(0);
    for (int x = 0; x < n1; ++x) {
      Rational lam_x = gamma * delta * pow_int(q, x + 1);
      Rational zeta(1);
      for (int i = 0; i <= x; ++i) {
        Rational res = zeta - lp.P(i, x);
        if (res < Rational(0)) res = -res;
        if (res > worst) worst = res;
        if (i < x) {
          Rational lam_i = gamma * delta * pow_int(q, i + 1);
          Rational a_i = (one - alpha * pow_int(q, i + 1)) *
                         (one - delta * pow_int(q, i + 1)) *
                         (one - gamma * pow_int(q, i + 1));
          zeta *= (lam_x - lam_i) / a_i;
        }
      }
    }
    add("limits.reduced.zeta-coordinates",
        "zeta-product route reproduces the r-coordinates", worst.is_zero(), worst);

    // r_n(x) = 0 for n > x.
    bool vanish = true;
    for (int i = 0; i < n1; ++i)
      for (int n = 0; n < i; ++n)
        if (!lp.P(i, n).is_zero()) vanish = false;
    add("limits.reduced.vanishing", "r_n(x) = 0 for n > x", vanish, Rational(0));
  }
  return lp;
}

DenseMatrix<Rational> h1_z_matrix(const Rational& beta, const Rational& delta,
                                  const Rational& q, int N) {
  const Rational one(1);
  DenseMatrix<Rational> z(N + 1, N + 1);
  for (int x = 0; x <= N; ++x) {
    z(x, x) = Rational(-1);
    if (x >= 1)
      z(x, x - 1) = beta * delta * (one - pow_int(q, x)) /
                    (beta * delta - pow_int(q, x - 1));
  }
  return z;
}

namespace {

BigFloat rel_err(const BigFloat& approx, const BigFloat& reference) {
  BigFloat d = approx - reference;
  if (d < BigFloat(0)) d = -d;
  BigFloat r = reference < BigFloat(0) ? BigFloat(-reference) : reference;
  if (r.is_zero()) return d;
  return d / r;
}

LadderResult run_ladder(const std::function<BigFloat(const Rational&)>& err_at,
                        unsigned bits) {
  set_float_precision_bits(bits);
  LadderResult lr;
  Rational t(1, 1000);
  for (int rung = 0; rung < 3; ++rung) {
    lr.errors.push_back(err_at(t));
    t /= 10;
  }
  lr.converged = true;
  for (int r = 1; r < 3; ++r) {
    const BigFloat& prev = lr.errors[static_cast<std::size_t>(r - 1)];
    const BigFloat& cur = lr.errors[static_cast<std::size_t>(r)];
    if (!(cur >= BigFloat(0)) || !(prev >= BigFloat(0))) lr.converged = false;
    else if (prev.is_zero()) lr.converged = lr.converged && cur.is_zero();
    else if (!(cur * BigFloat(5) <= prev)) lr.converged = false;
  }
  return lr;
}

}  // namespace

LadderResult ladder_racah_limit(const ParameterSet& ps, unsigned bits) {
  set_float_precision_bits(bits);
  // Exact target: the q-Racah polynomial the Wilson function collapses to.
  const Rational rho1_a = ps.gamma / ps.beta;
  const Rational rho1_b = ps.beta * ps.delta;
  DenseMatrix<BigFloat> target(ps.N + 1, ps.N + 1);
  for (int n = 0; n <= ps.N; ++n)
    for (int x = 0; x <= ps.N; ++x)
      target(n, x) = to_bigfloat(
          qr_eval(rho1_a, rho1_b, ps.gamma, ps.deltaT, ps.q, n, x));

  return run_ladder(
      [&](const Rational& t) {
        BigFloat q = to_bigfloat(ps.q), a = to_bigfloat(ps.alpha),
                 b = to_bigfloat(ps.beta), d = to_bigfloat(ps.delta),
                 s = to_bigfloat(t);
        WilsonParams<BigFloat> wp = wilson_from_trio_values(q, a, b, d, s, ps.N);
        BigFloat worst(0);
        for (int n = 0; n <= ps.N; ++n)
          for (int x = 0; x <= ps.N; ++x) {
            BigFloat e = rel_err(wilson_eval(wp, n, x), target(n, x));
            if (e > worst) worst = e;
          }
        return worst;
      },
      bits);
}

LadderResult ladder_r1_limit(const ParameterSet& ps, unsigned bits) {
  set_float_precision_bits(bits);
  R1Params<Rational> rp(ps.beta, ps.delta, ps.s, ps.q, ps.N);
  DenseMatrix<BigFloat> target(ps.N + 1, ps.N + 1);
  for (int n = 0; n <= ps.N; ++n)
    for (int x = 0; x <= ps.N; ++x) target(n, x) = to_bigfloat(r1_eval(rp, n, x));

  return run_ladder(
      [&](const Rational& t) {
        BigFloat q = to_bigfloat(ps.q), b = to_bigfloat(ps.beta),
                 d = to_bigfloat(ps.delta), s = to_bigfloat(ps.s),
                 a = to_bigfloat(t);
        WilsonParams<BigFloat> wp = wilson_from_trio_values(q, a, b, d, s, ps.N);
        BigFloat worst(0);
        for (int n = 0; n <= ps.N; ++n)
          for (int x = 0; x <= ps.N; ++x) {
            BigFloat e = rel_err(wilson_eval(wp, n, x), target(n, x));
            if (e > worst) worst = e;
          }
        return worst;
      },
      bits);
}

LadderResult ladder_r3_limit(const ParameterSet& ps, unsigned bits) {
  set_float_precision_bits(bits);
  const Rational& sigma = ps.s;
  DenseMatrix<BigFloat> target(ps.N + 1, ps.N + 1);
  for (int n = 0; n <= ps.N; ++n)
    for (int x = 0; x <= ps.N; ++x)
      target(n, x) = to_bigfloat(r3_eval(sigma, ps.delta, ps.gamma, ps.q, n, x));

  return run_ladder(
      [&](const Rational& t) {
        BigFloat q = to_bigfloat(ps.q), d = to_bigfloat(ps.delta),
                 a = to_bigfloat(t), s = to_bigfloat(sigma / t);
        WilsonParams<BigFloat> wp = wilson_from_trio_values(q, a, a, d, s, ps.N);
        BigFloat worst(0);
        for (int n = 0; n <= ps.N; ++n)
          for (int x = 0; x <= ps.N; ++x) {
            BigFloat e = rel_err(wilson_eval(wp, n, x), target(n, x));
            if (e > worst) worst = e;
          }
        return worst;
      },
      bits);
}

LadderResult ladder_rn_limit(const ParameterSet& ps, unsigned bits) {
  set_float_precision_bits(bits);
  DenseMatrix<BigFloat> target(ps.N + 1, ps.N + 1);
  for (int n = 0; n <= ps.N; ++n)
    for (int x = n; x <= ps.N; ++x)
      target(n, x) =
          to_bigfloat(r_limit_eval(ps.alpha, ps.gamma, ps.delta, ps.q, n, x));

  return run_ladder(
      [&](const Rational& t) {
        BigFloat q = to_bigfloat(ps.q), a = to_bigfloat(ps.alpha),
                 g = to_bigfloat(ps.gamma), b = to_bigfloat(t),
                 dd = to_bigfloat(ps.delta / t);
        BigFloat worst(0);
        for (int n = 0; n <= ps.N; ++n)
          for (int x = n; x <= ps.N; ++x) {
            BigFloat approx = pow_int(b, n) * qr_eval(a, b, g, dd, q, n, x);
            BigFloat e = rel_err(approx, target(n, x));
            if (e > worst) worst = e;
          }
        return worst;
      },
      bits);
}

}  // namespace qtrio
