#include "qtrio/trio.hpp"

#include <algorithm>
#include <chrono>

namespace qtrio {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

CheckResult check(const ParameterSet& ps, std::string anchor, std::string identity,
                  bool pass, const Rational& residual, double elapsed_ms) {
  CheckResult r;
  r.anchor = std::move(anchor);
  r.identity = std::move(identity);
  r.params = ps.fingerprint();
  r.N = ps.N;
  r.pass = pass;
  r.max_residual = to_string(residual);
  r.elapsed_ms = elapsed_ms;
  return r;
}

CheckResult matrix_check(const ParameterSet& ps, std::string anchor,
                         std::string identity, const RMatrix& residual,
                         double elapsed_ms) {
  bool pass = residual.is_zero();
  return check(ps, std::move(anchor), std::move(identity), pass,
               residual.max_abs(), elapsed_ms);
}

CheckResult flag_check(const ParameterSet& ps, std::string anchor,
                       std::string identity, bool pass, double elapsed_ms) {
  return check(ps, std::move(anchor), std::move(identity), pass,
               pass ? Rational(0) : Rational(1), elapsed_ms);
}

/// nu-ladder prefactor of the vt-basis coordinates:
/// phi_i = prod_{k=1}^{i} nu_k = (bds)^i (q/s, q a/d;q)_i / (bdq, absq;q)_i.
Rational vt_prefactor(const ParameterSet& ps, int i) {
  Rational num = pow_int(ps.beta * ps.delta * ps.s, i) *
                 q_pochhammer_multi<Rational>(
                     {ps.q / ps.s, ps.q * ps.alpha / ps.delta}, ps.q, i);
  Rational den = q_pochhammer_multi<Rational>(
      {ps.beta * ps.delta * ps.q, ps.alpha * ps.beta * ps.s * ps.q}, ps.q, i);
  return num / den;
}

}  // namespace

TrioRealization build_realization(const ParameterSet& ps) {
  const int n1 = ps.N + 1;
  const Rational &a = ps.alpha, &b = ps.beta, &d = ps.delta, &q = ps.q;
  const Rational &g = ps.gamma, &dt = ps.deltaT;

  TrioRealization tr{ps,
                     RMatrix(n1, n1), RMatrix(n1, n1), RMatrix(n1, n1),
                     RMatrix(n1, n1), RMatrix(n1, n1), RMatrix(n1, n1),
                     RMatrix(n1, n1)};

  for (int i = 0; i < n1; ++i) tr.Z_z(i, i) = ps.zeta(i);

  for (int i = 0; i < n1; ++i) {
    tr.V_z(i, i) = qr_B(a, b, g, d, q, i);
    tr.Vt_z(i, i) = qr_B(a, b, g, dt, q, i);
    if (i + 1 < n1) {
      tr.V_z(i + 1, i) = qr_C(a, b, g, d, q, i + 1);
      tr.Vt_z(i + 1, i) = qr_C(a, b, g, dt, q, i + 1) * ps.nu(i + 1);
    }
    if (i >= 1) {
      tr.V_z(i - 1, i) = qr_A(a, b, g, d, q, i - 1);
      tr.Vt_z(i - 1, i) = qr_A(a, b, g, dt, q, i - 1) / ps.nu(i);
    }
  }

  const Rational m_v = qr_M(g, d, a, b, q, ps.N, Truncation::Alpha);
  const Rational m_vt = qr_M(g, dt, a, b, q, ps.N, Truncation::Alpha);
  for (int i = 0; i < n1; ++i) {
    Rational pref = vt_prefactor(ps, i);
    Rational om_i_v = qr_omega(a, b, g, d, q, i);
    Rational om_i_vt = qr_omega(a, b, g, dt, q, i);
    for (int n = 0; n < n1; ++n) {
      Rational rv = qr_eval(a, b, g, d, q, i, n);
      Rational rvt = qr_eval(a, b, g, dt, q, i, n);
      tr.P_v(i, n) = rv;
      tr.P_vt(i, n) = pref * rvt;
      tr.D_v(i, n) = m_v * qr_omega(g, d, a, b, q, n) * om_i_v * rv;
      tr.D_vt(i, n) = m_vt * qr_omega(g, dt, a, b, q, n) * om_i_vt / pref * rvt;
    }
  }
  return tr;
}

VerificationReport verify_trio_axioms(const TrioRealization& tr) {
  const ParameterSet& ps = tr.ps;
  VerificationReport rep;
  auto t0 = Clock::now();

  RMatrix vtz = mul_tridiag(tr.Vt_z, tr.Z_z);
  RMatrix zv = mul_tridiag(tr.Z_z, tr.V_z);

  RMatrix v_in_v = conjugate(tr.D_v, tr.V_z, tr.P_v);
  RMatrix z_in_v = conjugate(tr.D_v, tr.Z_z, tr.P_v);
  RMatrix vtz_in_v = conjugate(tr.D_v, vtz, tr.P_v);
  RMatrix vt_in_v = conjugate(tr.D_v, tr.Vt_z, tr.P_v);

  RMatrix vt_in_vt = conjugate(tr.D_vt, tr.Vt_z, tr.P_vt);
  RMatrix z_in_vt = conjugate(tr.D_vt, tr.Z_z, tr.P_vt);
  RMatrix zv_in_vt = conjugate(tr.D_vt, zv, tr.P_vt);

  auto bp = [](const RMatrix& m) { return band_predicates(m); };

  rep.push_back(flag_check(ps, "trio.axioms.v.V-diag",
                           "V diagonal multiplicity-free in the v-basis",
                           bp(v_in_v).multiplicity_free_diagonal, ms_since(t0)));
  rep.push_back(flag_check(ps, "trio.axioms.v.Z-tridiag",
                           "Z tridiagonal in the v-basis", bp(z_in_v).tridiagonal,
                           0));
  rep.push_back(flag_check(ps, "trio.axioms.v.VtZ-tridiag",
                           "Vt*Z tridiagonal in the v-basis",
                           bp(vtz_in_v).tridiagonal, 0));
  rep.push_back(flag_check(ps, "trio.axioms.vt.Vt-diag",
                           "Vt diagonal multiplicity-free in the vt-basis",
                           bp(vt_in_vt).multiplicity_free_diagonal, 0));
  rep.push_back(flag_check(ps, "trio.axioms.vt.Z-tridiag",
                           "Z tridiagonal in the vt-basis", bp(z_in_vt).tridiagonal,
                           0));
  rep.push_back(flag_check(ps, "trio.axioms.vt.ZV-tridiag",
                           "Z*V tridiagonal in the vt-basis",
                           bp(zv_in_vt).tridiagonal, 0));

  // Irreducibility clauses.
  rep.push_back(flag_check(ps, "trio.axioms.v.Z-irreducible",
                           "Z irreducible tridiagonal in the v-basis",
                           bp(z_in_v).irreducible_tridiagonal, 0));
  rep.push_back(flag_check(ps, "trio.axioms.vt.Z-irreducible",
                           "Z irreducible tridiagonal in the vt-basis",
                           bp(z_in_vt).irreducible_tridiagonal, 0));
  rep.push_back(flag_check(ps, "trio.axioms.z.V-irreducible",
                           "V irreducible tridiagonal in the z-basis",
                           bp(tr.V_z).irreducible_tridiagonal, 0));
  rep.push_back(flag_check(ps, "trio.axioms.z.Vt-irreducible",
                           "Vt irreducible tridiagonal in the z-basis",
                           bp(tr.Vt_z).irreducible_tridiagonal, 0));
  rep.push_back(flag_check(ps, "trio.axioms.z.Z-diag",
                           "Z diagonal multiplicity-free in the z-basis",
                           bp(tr.Z_z).multiplicity_free_diagonal, 0));

  // Negative probe: Vt is generically a full matrix in the v-basis. This is
  // what separates the trio from a Leonard triple.
  rep.push_back(flag_check(ps, "trio.axioms.v.Vt-full",
                           "Vt NOT tridiagonal in the v-basis (expected full)",
                           !bp(vt_in_v).tridiagonal, 0));

  // Reordering n -> N-n preserves the shapes.
  {
    BandProfile pv = bp(v_in_v.reversed());
    BandProfile pz = bp(z_in_v.reversed());
    BandProfile px = bp(vtz_in_v.reversed());
    rep.push_back(flag_check(
        ps, "trio.axioms.reordering",
        "basis reversal preserves diagonal/tridiagonal shapes",
        pv.multiplicity_free_diagonal && pz.tridiagonal && px.tridiagonal, 0));
  }

  // Duality pairings used by every conjugation above.
  const int n1 = ps.N + 1;
  RMatrix id = RMatrix::identity(n1);
  rep.push_back(matrix_check(ps, "trio.axioms.duality-pairing-v",
                             "D_v^T P_v = I", tr.D_v.transpose() * tr.P_v - id, 0));
  rep.push_back(matrix_check(ps, "trio.axioms.duality-pairing-vt",
                             "D_vt^T P_vt = I",
                             tr.D_vt.transpose() * tr.P_vt - id, 0));

  // (V, Z0, I) with (V, Z0) the plain q-Racah LP is itself a trio.
  {
    VerificationReport sub;
    GenericLp lp = generic_lp_from_family(qracah_lp_data(ps), &sub);
    bool ok = all_passed(sub);
    RMatrix v_diag = conjugate(lp.D, lp.V, lp.P);
    RMatrix z0_in_v = conjugate(lp.D, lp.Z, lp.P);
    BandProfile pv = bp(v_diag), pz = bp(z0_in_v), pzz = bp(lp.Z), pvz = bp(lp.V);
    // (i) v-basis: V diag multiplicity-free, I and Z0*I tridiagonal;
    // (ii) z-basis: Z0 diag multiplicity-free, I and I*V tridiagonal.
    ok = ok && pv.multiplicity_free_diagonal && pz.tridiagonal &&
         pzz.multiplicity_free_diagonal && pvz.tridiagonal;
    rep.push_back(flag_check(ps, "trio.axioms.lp-identity-triple",
                             "(V, Z0, I) satisfies the trio axioms", ok, 0));
  }

  return rep;
}

VerificationReport verify_heun_relations(const TrioRealization& tr,
                                         const HeunConstants& hc) {
  const ParameterSet& ps = tr.ps;
  const Rational one(1);
  const Rational& q = ps.q;
  VerificationReport rep;
  auto t0 = Clock::now();

  const int n1 = ps.N + 1;
  RMatrix id = RMatrix::identity(n1);
  RMatrix zv = mul_tridiag(tr.Z_z, tr.V_z);
  RMatrix vz = mul_tridiag(tr.V_z, tr.Z_z);
  RMatrix zvt = mul_tridiag(tr.Z_z, tr.Vt_z);
  RMatrix vtz = mul_tridiag(tr.Vt_z, tr.Z_z);

  auto qcomm = [&](const RMatrix& xy, const RMatrix& yx) {
    RMatrix r = xy;
    r -= q * yx;
    return r;
  };
  RMatrix zv_q = qcomm(zv, vz);   // [Z,V]_q
  RMatrix vz_q = qcomm(vz, zv);   // [V,Z]_q
  RMatrix zvt_q = qcomm(zvt, vtz);
  RMatrix vtz_q = qcomm(vtz, zvt);

  const Rational inv1q2 = one / (one - q * q);
  const Rational &a = ps.alpha, &b = ps.beta, &d = ps.delta, &s = ps.s;

  {
    RMatrix rhs = hc.h0 * id + hc.cV * tr.V_z +
                  inv1q2 * (a * q * s / d * zv_q + one / (b * d * s) * vz_q);
    rep.push_back(matrix_check(ps, "trio.heun.vtz",
                               "Vt*Z Heun relation over (V, Z)", vtz - rhs,
                               ms_since(t0)));
  }
  {
    RMatrix rhs = hc.h5 * id + hc.cVt * tr.Vt_z +
                  inv1q2 * (d / (s * a) * zvt_q + q * b * d * s * vtz_q);
    rep.push_back(matrix_check(ps, "trio.heun.zv",
                               "Z*V Heun relation over (Vt, Z)", zv - rhs, 0));
  }
  {
    RMatrix lhs = mul_tridiag(tr.Z_z, tr.Vt_z);
    lhs += hc.rho * tr.Vt_z;
    RMatrix rhs = hc.h0T * id + hc.cVshift * tr.V_z +
                  inv1q2 * (s * a / d * zv_q + q / (b * d * s) * vz_q);
    rep.push_back(matrix_check(ps, "trio.heun.shifted-zvt",
                               "(Z + rho I)*Vt Heun relation", lhs - rhs, 0));
  }
  {
    RMatrix lhs = mul_tridiag(tr.V_z, tr.Z_z);
    lhs += hc.rho * tr.V_z;
    RMatrix rhs = hc.h5T * id + hc.cVtshift * tr.Vt_z +
                  inv1q2 * (q * d / (s * a) * zvt_q + s * b * d * vtz_q);
    rep.push_back(matrix_check(ps, "trio.heun.shifted-vz",
                               "V*(Z + rho I) Heun relation", lhs - rhs, 0));
  }

  // Constant terms recomputed from the general two-psi form.
  {
    Rational dT = ps.deltaT;
    Rational psi_p = heun_psi(a, b, ps.gamma, d, q);
    Rational psi_t = heun_psi(ps.alphaT, ps.betaT, ps.gamma, dT, q);
    Rational common = (d * hc.h34 * hc.h34 + q * dT);
    Rational h0_gen = psi_t - common / (d * hc.h34 * (one + q)) * psi_p;
    Rational h5_gen = psi_p - common / (dT * hc.h34 * (one + q)) * psi_t;
    bool ok = (h0_gen == hc.h0) && (h5_gen == hc.h5);
    rep.push_back(check(ps, "trio.heun.h-consistency",
                        "h0/h5 general form matches the closed expressions", ok,
                        ok ? Rational(0) : (h0_gen - hc.h0) + (h5_gen - hc.h5), 0));
  }

  // Entrywise action of Vt*Z on v_n via the Heun expansion coefficients.
  {
    RMatrix x_v = conjugate(tr.D_v, vtz, tr.P_v);
    RMatrix expect(n1, n1);
    for (int n = 0; n < n1; ++n) {
      Rational an = qr_A(ps.gamma, d, a, b, q, n);
      Rational bn = qr_B(ps.gamma, d, a, b, q, n) + ps.sigma;
      Rational cn = qr_C(ps.gamma, d, a, b, q, n);
      Rational ln = ps.lambda_v(n);
      expect(n, n) = hc.h0 + hc.h2 * ln + (hc.h3 + hc.h4) * ln * bn;
      if (n + 1 < n1) expect(n + 1, n) = (hc.h3 * ps.lambda_v(n + 1) + hc.h4 * ln) * an;
      if (n >= 1) expect(n - 1, n) = (hc.h3 * ps.lambda_v(n - 1) + hc.h4 * ln) * cn;
    }
    rep.push_back(matrix_check(ps, "trio.heun.vtz-action-v",
                               "Vt*Z action on v_n matches the Heun expansion",
                               x_v - expect, 0));
  }
  // Entrywise action of Z*V on vt_x.
  {
    RMatrix xt = conjugate(tr.D_vt, zv, tr.P_vt);
    RMatrix expect(n1, n1);
    for (int x = 0; x < n1; ++x) {
      Rational ax = qr_A(ps.gamma, ps.deltaT, a, b, q, x);
      Rational bx = qr_B(ps.gamma, ps.deltaT, a, b, q, x) + ps.sigma;
      Rational cx = qr_C(ps.gamma, ps.deltaT, a, b, q, x);
      Rational lx = ps.lambda_vt(x);
      expect(x, x) = hc.h5 + hc.h7 * lx + (hc.h8 + hc.h9) * lx * bx;
      if (x + 1 < n1) expect(x + 1, x) = (hc.h8 * ps.lambda_vt(x + 1) + hc.h9 * lx) * ax;
      if (x >= 1) expect(x - 1, x) = (hc.h8 * ps.lambda_vt(x - 1) + hc.h9 * lx) * cx;
    }
    rep.push_back(matrix_check(ps, "trio.heun.zv-action-vt",
                               "Z*V action on vt_x matches the Heun expansion",
                               xt - expect, 0));
  }

  return rep;
}

VerificationReport verify_constraint_equations(const ParameterSet& ps) {
  VerificationReport rep;
  auto t0 = Clock::now();
  HeunConstants hc = HeunConstants::from(ps);
  const Rational one(1);
  const Rational &a = ps.alpha, &b = ps.beta, &d = ps.delta, &s = ps.s, &q = ps.q;
  const Rational &g = ps.gamma, &dt = ps.deltaT;

  auto abc = [&](const Rational& dd, int i) {
    return std::array<Rational, 3>{qr_A(a, b, g, dd, q, i), qr_B(a, b, g, dd, q, i),
                                   qr_C(a, b, g, dd, q, i)};
  };

  Rational worst(0);
  auto track = [&](const Rational& r) {
    Rational ar = r < Rational(0) ? Rational(-r) : r;
    if (ar > worst) worst = ar;
  };

  for (int i = 0; i <= ps.N; ++i) {
    Rational zi = ps.zeta(i);
    auto [Ai, Bi, Ci] = abc(d, i);
    auto [At, Bt, Ct] = abc(dt, i);
    // diagonal families
    track(zi * Bt - (hc.h0 + (hc.h2 + (hc.h3 + hc.h4) * zi) * Bi));
    track(zi * Bi - (hc.h5 + (hc.h7 + (hc.h8 + hc.h9) * zi) * Bt));
    if (i + 1 <= ps.N) {
      Rational zi1 = ps.zeta(i + 1);
      Rational cp = qr_C(a, b, g, d, q, i + 1);
      Rational cpt = qr_C(a, b, g, dt, q, i + 1);
      Rational nu1 = ps.nu(i + 1);
      track(zi * cpt * nu1 - (hc.h2 + hc.h3 * zi + hc.h4 * zi1) * cp);
      track(zi1 * cp - (hc.h7 + hc.h8 * zi + hc.h9 * zi1) * cpt * nu1);
    }
    if (i >= 1) {
      Rational zim = ps.zeta(i - 1);
      Rational am = qr_A(a, b, g, d, q, i - 1);
      Rational amt = qr_A(a, b, g, dt, q, i - 1);
      Rational nui = ps.nu(i);
      track(zi * amt / nui - (hc.h2 + hc.h3 * zi + hc.h4 * zim) * am);
      track(zim * am - (hc.h7 + hc.h8 * zi + hc.h9 * zim) * amt / nui);
    }
  }
  rep.push_back(check(ps, "trio.constraints.coefficient-families",
                      "all six z-basis coefficient constraint families vanish",
                      worst.is_zero(), worst, ms_since(t0)));

  // Product-form identity in q^i with mu2 = s, mu7 = 1/(a b s).
  {
    Rational mu2 = s, mu7 = one / (a * b * s);
    Rational worst2(0);
    for (int i = 0; i <= ps.N; ++i) {
      Rational qi = pow_int(q, i);
      Rational lhs = (qi - s * q) * (qi - s) * (a * b * s * qi - one) *
                     (a * b * s * q * qi - one) / (s * s);
      Rational rhs = (qi - mu2) * (qi - mu7) * (a * b * mu2 * hc.h34 * qi - hc.h43) *
                     (a * b * mu7 * hc.h89 * qi - hc.h98) / (mu2 * mu7);
      Rational r = lhs - rhs;
      if (r < Rational(0)) r = -r;
      if (r > worst2) worst2 = r;
    }
    rep.push_back(check(ps, "trio.constraints.product-identity",
                        "factored eigenvalue product identity vanishes on the grid",
                        worst2.is_zero(), worst2, 0));
  }

  // Four-root multiset equality.
  {
    Rational mu2 = s, mu7 = one / (a * b * s);
    std::vector<Rational> lhs = {s * q, s, one / (a * b * s), one / (a * b * s * q)};
    std::vector<Rational> rhs = {
        mu2, mu7, dt * q / (hc.h34 * hc.h34 * a * b * d * mu2),
        d * hc.h34 * hc.h34 / (a * b * dt * mu7 * q)};
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    bool ok = lhs == rhs;
    rep.push_back(flag_check(ps, "trio.constraints.root-multiset",
                             "four-root multisets coincide", ok, 0));
  }

  // Nonvanishing of the spectral combinations (rechecked; the constructor
  // already enforces them).
  {
    bool ok = true;
    for (int n = 0; ok && n + 1 <= ps.N; ++n) {
      Rational combo = hc.h3 * ps.lambda_v(n + 1) + hc.h4 * ps.lambda_v(n);
      for (int x = 0; x <= ps.N; ++x)
        if (combo == ps.lambda_vt(x)) ok = false;
    }
    for (int x = 0; ok && x + 1 <= ps.N; ++x) {
      Rational combo = hc.h8 * ps.lambda_vt(x) + hc.h9 * ps.lambda_vt(x + 1);
      for (int n = 0; n <= ps.N; ++n)
        if (combo == ps.lambda_v(n)) ok = false;
    }
    rep.push_back(flag_check(ps, "trio.constraints.nonvanishing",
                             "spectral combinations stay off the eigenvalue grids",
                             ok, 0));
  }

  return rep;
}

Rational overlap_w(const TrioRealization& tr, int n, int x) {
  Rational acc(0);
  for (int i = 0; i <= tr.ps.N; ++i) acc += tr.D_vt(i, x) * tr.P_v(i, n);
  return acc;
}

Rational overlap_w_partner(const TrioRealization& tr, int n, int x) {
  Rational acc(0);
  for (int i = 0; i <= tr.ps.N; ++i) acc += tr.D_v(i, n) * tr.P_vt(i, x);
  return acc;
}

RMatrix overlap_matrix(const TrioRealization& tr) {
  return tr.D_vt.transpose() * tr.P_v;
}

RMatrix overlap_partner_matrix(const TrioRealization& tr) {
  return tr.D_v.transpose() * tr.P_vt;
}

Rational overlap_w_sum_route(const ParameterSet& ps, int n, int x) {
  const Rational &a = ps.alpha, &b = ps.beta, &d = ps.delta, &q = ps.q;
  const Rational &g = ps.gamma, &dt = ps.deltaT;
  Rational acc(0);
  for (int i = 0; i <= ps.N; ++i)
    acc += qr_omega(a, b, g, a * ps.s, q, i) * qr_eval(a, b, g, dt, q, i, x) *
           qr_eval(a, b, g, d, q, i, n);
  return qr_M(g, dt, a, b, q, ps.N, Truncation::Alpha) *
         qr_omega(g, dt, a, b, q, x) * acc;
}

Rational overlap_w00_closed_form(const ParameterSet& ps) {
  const Rational one(1);
  Rational num = q_pochhammer_multi<Rational>(
      {ps.q * ps.beta * ps.delta, one / (ps.alpha * ps.s)}, ps.q, ps.N);
  Rational den = q_pochhammer_multi<Rational>(
      {ps.beta * ps.delta / ps.alpha, ps.q / ps.s}, ps.q, ps.N);
  return num / den;
}

VerificationReport verify_biorthogonality(const TrioRealization& tr) {
  const ParameterSet& ps = tr.ps;
  VerificationReport rep;
  auto t0 = Clock::now();
  RMatrix w = overlap_matrix(tr);
  RMatrix wt = overlap_partner_matrix(tr);
  RMatrix id = RMatrix::identity(ps.N + 1);
  rep.push_back(matrix_check(ps, "trio.biorthogonality.sum-x",
                             "sum_x w_m(x) wt_n(x) = delta_mn", wt * w - id,
                             ms_since(t0)));
  rep.push_back(matrix_check(ps, "trio.biorthogonality.sum-n",
                             "sum_n w_n(x) wt_n(y) = delta_xy", w * wt - id, 0));
  return rep;
}

VerificationReport verify_gevp_from_matrices(const TrioRealization& tr) {
  const ParameterSet& ps = tr.ps;
  const Rational one(1);
  const Rational &a = ps.alpha, &b = ps.beta, &d = ps.delta, &s = ps.s, &q = ps.q;
  const Rational &g = ps.gamma, &dt = ps.deltaT;
  VerificationReport rep;
  auto t0 = Clock::now();
  const int n1 = ps.N + 1;
  HeunConstants hc = HeunConstants::from(ps);

  RMatrix vtz = mul_tridiag(tr.Vt_z, tr.Z_z);
  RMatrix zv = mul_tridiag(tr.Z_z, tr.V_z);
  RMatrix x_m = conjugate(tr.D_v, vtz, tr.P_v);
  RMatrix z_m = conjugate(tr.D_v, tr.Z_z, tr.P_v);
  RMatrix xt_m = conjugate(tr.D_vt, zv, tr.P_vt);
  RMatrix zt_m = conjugate(tr.D_vt, tr.Z_z, tr.P_vt);

  {
    bool tri = band_predicates(x_m).tridiagonal && band_predicates(z_m).tridiagonal &&
               band_predicates(xt_m).tridiagonal && band_predicates(zt_m).tridiagonal;
    rep.push_back(flag_check(ps, "trio.gevp.assembled-tridiagonal",
                             "assembled coefficient matrices are tridiagonal", tri,
                             ms_since(t0)));
  }

  RMatrix w = overlap_matrix(tr);  // w(x, n)

  // Recurrence: W X = diag(lambdaT) W Z entrywise over (x, n).
  {
    RMatrix lhs = w * x_m;
    RMatrix rhs = w * z_m;
    for (int x = 0; x < n1; ++x) {
      Rational lx = ps.lambda_vt(x);
      for (int n = 0; n < n1; ++n) rhs(x, n) *= lx;
    }
    rep.push_back(matrix_check(ps, "trio.gevp.recurrence",
                               "recurrence GEVP residual grid", lhs - rhs, 0));
  }
  // Difference: Xt W = Zt W diag(lambda) over (x, n).
  {
    RMatrix lhs = xt_m * w;
    RMatrix rhs = zt_m * w;
    for (int n = 0; n < n1; ++n) {
      Rational ln = ps.lambda_v(n);
      for (int x = 0; x < n1; ++x) rhs(x, n) *= ln;
    }
    rep.push_back(matrix_check(ps, "trio.gevp.difference",
                               "difference GEVP residual grid", lhs - rhs, 0));
  }

  // Z entries against the script recurrence family; X entries against the
  // dressed closed forms.
  {
    RMatrix z_exp(n1, n1), x_exp(n1, n1);
    for (int n = 0; n < n1; ++n) {
      Rational an = qr_A(g, d, a, b, q, n);
      Rational bn = qr_B(g, d, a, b, q, n) + ps.sigma;
      Rational cn = qr_C(g, d, a, b, q, n);
      z_exp(n, n) = bn;
      if (n + 1 < n1) z_exp(n + 1, n) = an;
      if (n >= 1) z_exp(n - 1, n) = cn;
      Rational ln = ps.lambda_v(n);
      x_exp(n, n) = hc.h0 - a / d * (one + q) * ln -
                    ps.sigma * ln / (b * d * (one + q)) * qr_B(g, d, a, b, q, n);
      if (n + 1 < n1)
        x_exp(n + 1, n) =
            one / (q * b * d * s) *
            qr_lambda(a * b * g * d * s * s * q * q, q, n) * an;
      if (n >= 1)
        x_exp(n - 1, n) = a * s * q / d *
                          qr_lambda(g * d / (a * b * q * q * s * s), q, n) * cn;
    }
    rep.push_back(matrix_check(ps, "trio.gevp.z-closed-form",
                               "assembled Z entries match the script family",
                               z_m - z_exp, 0));
    rep.push_back(matrix_check(ps, "trio.gevp.x-closed-form",
                               "assembled Vt*Z entries match the dressed forms",
                               x_m - x_exp, 0));
  }
  {
    RMatrix zt_exp(n1, n1), xt_exp(n1, n1);
    for (int x = 0; x < n1; ++x) {
      Rational ax = qr_A(g, dt, a, b, q, x);
      Rational bx = qr_B(g, dt, a, b, q, x) + ps.sigma;
      Rational cx = qr_C(g, dt, a, b, q, x);
      zt_exp(x, x) = bx;
      if (x + 1 < n1) zt_exp(x + 1, x) = ax;
      if (x >= 1) zt_exp(x - 1, x) = cx;
      Rational lx = ps.lambda_vt(x);
      xt_exp(x, x) = hc.h5 - (one + q) * b * d * lx -
                     ps.sigma * d * lx / (a * (one + q)) * qr_B(g, dt, a, b, q, x);
      if (x + 1 < n1)
        xt_exp(x + 1, x) =
            b * d * s * qr_lambda(g / (b * b * d * s * s), q, x) * ax;
      if (x >= 1)
        xt_exp(x - 1, x) = d / (a * s) * qr_lambda(a * a * g * s * s / d, q, x) * cx;
    }
    rep.push_back(matrix_check(ps, "trio.gevp.zt-closed-form",
                               "assembled dual Z entries match the script family",
                               zt_m - zt_exp, 0));
    rep.push_back(matrix_check(ps, "trio.gevp.xt-closed-form",
                               "assembled Z*V entries match the dressed forms",
                               xt_m - xt_exp, 0));
  }

  return rep;
}

VerificationReport verify_summation_formula(const ParameterSet& ps) {
  const Rational one(1);
  const Rational &a = ps.alpha, &b = ps.beta, &d = ps.delta, &s = ps.s, &q = ps.q;
  const Rational &g = ps.gamma;
  VerificationReport rep;
  auto t0 = Clock::now();

  WilsonParams<Rational> wp = wilson_from_trio(ps);
  const Rational m_const = qr_M(g, a * s, a, b, q, ps.N, Truncation::Alpha);
  const Rational abs_q = a * b * s * q;

  ParameterSet dual(ps.q, ps.alpha, ps.beta, ps.deltaT, ps.s, ps.N);
  WilsonParams<Rational> wp_dual = wilson_from_trio(dual);

  Rational worst(0);
  bool dual_ok = true;
  for (int n = 0; n <= ps.N; ++n) {
    Rational pref_n = q_pochhammer_multi<Rational>(
                          {b * d * q, a * g * s * q * q}, q, n) /
                      (q_pochhammer_multi<Rational>(
                           {d / (a * s), g * q / b}, q, n) *
                       pow_int(abs_q, n));
    for (int x = 0; x <= ps.N; ++x) {
      Rational pref_x = q_pochhammer_multi<Rational>(
                            {a * q / d, a * g * s * q * q}, q, x) /
                        (q_pochhammer_multi<Rational>(
                             {one / (b * d * s), g * q / b}, q, x) *
                         pow_int(abs_q, x));
      Rational acc(0);
      for (int i = 0; i <= ps.N; ++i)
        acc += qr_omega(a, b, g, a * s, q, i) *
               qr_eval(a, b, g, ps.deltaT, q, i, x) * qr_eval(a, b, g, d, q, i, n);
      Rational lhs = wilson_eval(wp, n, x);
      Rational res = lhs - pref_x * pref_n * m_const * acc;
      if (res < Rational(0)) res = -res;
      if (res > worst) worst = res;
    }
    // x = 0 column against the n = 0 row of the dual parameter family.
    if (wilson_eval(wp, n, 0) != wilson_eval(wp_dual, 0, n)) dual_ok = false;
  }
  rep.push_back(check(ps, "trio.summation.two-route",
                      "Wilson eval equals the weighted double q-Racah sum",
                      worst.is_zero(), worst, ms_since(t0)));
  rep.push_back(flag_check(ps, "trio.summation.duality-column",
                           "x = 0 column matches the n = 0 dual row", dual_ok, 0));

  // n = 0, x = 0 corner against the closed form.
  {
    TrioRealization tr = build_realization(ps);
    Rational lhs = overlap_w(tr, 0, 0);
    Rational rhs = overlap_w00_closed_form(ps);
    rep.push_back(check(ps, "trio.summation.w00",
                        "w_0(0) equals its closed form", lhs == rhs, lhs - rhs, 0));
  }
  return rep;
}

GenericLpData qracah_lp_data(const ParameterSet& ps) {
  GenericLpData data;
  data.N = ps.N;
  const Rational &a = ps.alpha, &b = ps.beta, &d = ps.delta, &q = ps.q;
  const Rational& g = ps.gamma;
  Rational m_v = qr_M(a, b, g, d, q, ps.N, Truncation::Gamma);
  for (int i = 0; i <= ps.N; ++i) {
    data.xi.push_back(qr_lambda(a * b, q, i));
    data.lambda.push_back(qr_lambda(g * d, q, i));
    data.rec_A.push_back(qr_A(a, b, g, d, q, i));
    data.rec_B.push_back(qr_B(a, b, g, d, q, i));
    data.rec_C.push_back(qr_C(a, b, g, d, q, i));
    data.diff_A.push_back(qr_A(g, d, a, b, q, i));
    data.diff_B.push_back(qr_B(g, d, a, b, q, i));
    data.diff_C.push_back(qr_C(g, d, a, b, q, i));
    data.point_weight.push_back(qr_omega(g, d, a, b, q, i));
    data.norm.push_back(Rational(1) / (m_v * qr_omega(a, b, g, d, q, i)));
  }
  data.P = [a, b, g, d, q](int i, int n) { return qr_eval(a, b, g, d, q, i, n); };
  return data;
}

GenericLp generic_lp_from_family(const GenericLpData& data,
                                 VerificationReport* report) {
  const int n1 = data.N + 1;
  for (int n = 0; n + 1 <= data.N; ++n) {
    if (data.rec_A[n].is_zero())
      throw NondegeneracyError("recurrence coefficient A_" + std::to_string(n) +
                               " vanishes");
    if (data.rec_C[n + 1].is_zero())
      throw NondegeneracyError("recurrence coefficient C_" + std::to_string(n + 1) +
                               " vanishes");
  }

  GenericLp lp{RMatrix(n1, n1), RMatrix(n1, n1), RMatrix(n1, n1), RMatrix(n1, n1)};
  for (int i = 0; i < n1; ++i) {
    lp.Z(i, i) = data.xi[i];
    lp.V(i, i) = data.rec_B[i];
    if (i + 1 < n1) lp.V(i + 1, i) = data.rec_C[i + 1];
    if (i >= 1) lp.V(i - 1, i) = data.rec_A[i - 1];
    for (int n = 0; n < n1; ++n) {
      Rational p = data.P(i, n);
      lp.P(i, n) = p;
      lp.D(i, n) = data.point_weight[n] / data.norm[i] * p;
    }
  }

  if (report) {
    CheckResult base;
    base.N = data.N;
    auto add = [&](const char* anchor, const char* identity, const RMatrix& residual) {
      CheckResult r = base;
      r.anchor = anchor;
      r.identity = identity;
      r.pass = residual.is_zero();
      r.max_residual = to_string(residual.max_abs());
      report->push_back(std::move(r));
    };
    // V v_n = lambda_n v_n.
    RMatrix vp = lp.V * lp.P;
    RMatrix expect = lp.P;
    for (int n = 0; n < n1; ++n)
      for (int i = 0; i < n1; ++i) expect(i, n) *= data.lambda[n];
    add("trio.generic-lp.eigen", "V acts diagonally on the assembled basis",
        vp - expect);
    // Z v_n = diffA_n v_{n+1} + diffB_n v_n + diffC_n v_{n-1}.
    RMatrix zp = lp.Z * lp.P;
    RMatrix zexp(n1, n1);
    for (int n = 0; n < n1; ++n)
      for (int i = 0; i < n1; ++i) {
        Rational v = data.diff_B[n] * lp.P(i, n);
        if (n + 1 < n1) v += data.diff_A[n] * lp.P(i, n + 1);
        if (n >= 1) v += data.diff_C[n] * lp.P(i, n - 1);
        zexp(i, n) = v;
      }
    add("trio.generic-lp.tridiagonal-action", "Z acts tridiagonally with the difference family",
        zp - zexp);
    add("trio.generic-lp.duality-pairing", "D^T P = I",
        lp.D.transpose() * lp.P - RMatrix::identity(n1));
  }
  return lp;
}

bool admits_rational_interpolant(const std::vector<Rational>& nodes,
                                 const std::vector<Rational>& values, int deg) {
  const int rows = static_cast<int>(nodes.size());
  const int cols = 2 * (deg + 1);
  DenseMatrix<Rational> m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    Rational p(1);
    for (int j = 0; j <= deg; ++j) {
      m(i, j) = p;
      m(i, deg + 1 + j) = -values[static_cast<std::size_t>(i)] * p;
      p *= nodes[static_cast<std::size_t>(i)];
    }
  }
  auto basis = nullspace(m);
  auto usable = [&](const std::vector<Rational>& v) {
    // Q must be nonzero at every node (then P/Q reproduces all values).
    for (int i = 0; i < rows; ++i) {
      Rational qv(0), p(1);
      for (int j = 0; j <= deg; ++j) {
        qv += v[static_cast<std::size_t>(deg + 1 + j)] * p;
        p *= nodes[static_cast<std::size_t>(i)];
      }
      if (qv.is_zero()) return false;
    }
    return true;
  };
  for (const auto& v : basis)
    if (usable(v)) return true;
  if (basis.size() > 1) {
    // Try deterministic combinations in case single basis vectors degenerate.
    for (int w = 1; w <= 4; ++w) {
      std::vector<Rational> combo(static_cast<std::size_t>(cols), Rational(0));
      Rational weight(1);
      for (const auto& v : basis) {
        for (std::size_t j = 0; j < combo.size(); ++j) combo[j] += weight * v[j];
        weight *= Rational(w + 1);
      }
      if (usable(combo)) return true;
    }
  }
  return false;
}

}  // namespace qtrio
