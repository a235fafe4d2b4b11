#include "qtrio/suites.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "qtrio/limits.hpp"
#include "qtrio/trio.hpp"
#include "qtrio/wilson.hpp"

namespace qtrio {

namespace {

using Clock = std::chrono::steady_clock;

CheckResult make(const ParameterSet& ps, std::string anchor, std::string identity,
                 bool pass, const Rational& residual, double elapsed_ms = 0.0) {
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

Rational rabs(const Rational& v) { return v < Rational(0) ? Rational(-v) : v; }

class MaxTracker {
 public:
  void feed(const Rational& residual) {
    Rational a = rabs(residual);
    if (a > worst_) worst_ = a;
  }
  void feed_flag(bool ok) {
    if (!ok) feed(Rational(1));
  }
  const Rational& worst() const { return worst_; }
  bool zero() const { return worst_.is_zero(); }

 private:
  Rational worst_ = Rational(0);
};

VerificationReport suite_qaskey(const std::vector<ParameterSet>& battery,
                                const SuiteOptions&) {
  VerificationReport rep;
  for (const ParameterSet& ps : battery) {
    auto t0 = Clock::now();
    QRacahParams p(ps.alpha, ps.beta, ps.gamma, ps.delta, ps.q, ps.N);
    QRacahParams pd = p.dual();
    const int n1 = ps.N + 1;

    RMatrix vals(n1, n1);
    for (int n = 0; n < n1; ++n)
      for (int x = 0; x < n1; ++x) vals(n, x) = p.eval(n, x);

    {
      MaxTracker t;
      Rational m = p.weights(0).second;
      for (int mm = 0; mm < n1; ++mm)
        for (int n = 0; n < n1; ++n) {
          Rational acc(0);
          for (int x = 0; x < n1; ++x)
            acc += qr_omega(ps.gamma, ps.delta, ps.alpha, ps.beta, ps.q, x) *
                   vals(mm, x) * vals(n, x);
          Rational expect = mm == n ? Rational(1) / (m * p.weights(n).first) : Rational(0);
          t.feed(acc - expect);
        }
      rep.push_back(make(ps, "qaskey.orthogonality",
                         "q-Racah orthogonality Gram matrix", t.zero(), t.worst(),
                         std::chrono::duration<double, std::milli>(Clock::now() - t0)
                             .count()));
    }
    {
      MaxTracker t;
      Rational m = p.weights(0).second;
      for (int x = 0; x < n1; ++x)
        for (int y = 0; y < n1; ++y) {
          Rational acc(0);
          for (int n = 0; n < n1; ++n)
            acc += vals(n, x) * vals(n, y) * m * p.weights(n).first;
          acc *= qr_omega(ps.gamma, ps.delta, ps.alpha, ps.beta, ps.q, x);
          t.feed(acc - (x == y ? Rational(1) : Rational(0)));
        }
      rep.push_back(make(ps, "qaskey.closure", "q-Racah closure to identity",
                         t.zero(), t.worst()));
    }
    {
      MaxTracker t;
      for (int n = 0; n < n1; ++n)
        for (int x = 0; x < n1; ++x) t.feed(p.recurrence_residual(n, x));
      rep.push_back(make(ps, "qaskey.recurrence", "q-Racah recurrence residual grid",
                         t.zero(), t.worst()));
    }
    {
      MaxTracker t;
      for (int n = 0; n < n1; ++n)
        for (int x = 0; x < n1; ++x) t.feed(p.difference_residual(n, x));
      rep.push_back(make(ps, "qaskey.difference", "q-Racah difference residual grid",
                         t.zero(), t.worst()));
    }
    {
      MaxTracker t;
      for (int n = 0; n < n1; ++n)
        for (int x = 0; x < n1; ++x) {
          auto [l, r] = p.duality_pair(n, x);
          t.feed(l - r);
        }
      // duality transports the recurrence into the dual difference relation
      for (int n = 0; n < n1; ++n)
        for (int x = 0; x < n1; ++x) t.feed(pd.recurrence_residual(x, n));
      rep.push_back(
          make(ps, "qaskey.duality", "q-Racah duality on the full grid", t.zero(), t.worst()));
    }
    {
      Rational lhs = qr_M(ps.gamma, ps.deltaT, ps.alpha, ps.beta, ps.q, ps.N,
                          Truncation::Alpha);
      Rational acc(0);
      for (int i = 0; i < n1; ++i)
        acc += qr_omega(ps.alpha, ps.beta, ps.gamma, ps.alpha * ps.s, ps.q, i);
      Rational res = lhs * acc - overlap_w00_closed_form(ps);
      rep.push_back(make(ps, "qaskey.weight-sum",
                         "specialized weight sum equals the closed form",
                         res.is_zero(), res));
    }
    {
      MaxTracker t;
      const Rational one(1);
      for (int n = 0; n < n1; ++n)
        for (int x = 0; x < n1; ++x) {
          Rational r = r_limit_eval(ps.alpha, ps.gamma, ps.delta, ps.q, n, x);
          if (n > x) t.feed(r);
          // recurrence in n (boundary n = N handled by the vanishing factor)
          Rational lhs = ps.gamma * ps.delta * pow_int(ps.q, x + 1) * r;
          Rational rhs = ps.gamma * ps.delta * pow_int(ps.q, n + 1) * r;
          Rational fac = (one - ps.alpha * pow_int(ps.q, n + 1)) *
                         (one - ps.delta * pow_int(ps.q, n + 1)) *
                         (one - ps.gamma * pow_int(ps.q, n + 1));
          if (n + 1 <= ps.N)
            rhs += fac * r_limit_eval(ps.alpha, ps.gamma, ps.delta, ps.q, n + 1, x);
          else
            t.feed_flag(fac.is_zero());
          t.feed(lhs - rhs);
          // difference in x
          Rational dl = pow_int(ps.q, -n) * r;
          Rational dr = pow_int(ps.q, -x) * r;
          if (x >= 1)
            dr += (one - pow_int(ps.q, -x)) *
                  r_limit_eval(ps.alpha, ps.gamma, ps.delta, ps.q, n, x - 1);
          t.feed(dl - dr);
        }
      rep.push_back(make(ps, "qaskey.r-limit",
                         "beta -> 0 family: vanishing, recurrence, difference",
                         t.zero(), t.worst()));
    }
  }
  return rep;
}

VerificationReport suite_wilson(const std::vector<ParameterSet>& battery,
                                const SuiteOptions&) {
  VerificationReport rep;
  for (const ParameterSet& ps : battery) {
    auto t0 = Clock::now();
    WilsonParams<Rational> wp = wilson_from_trio(ps);
    WilsonParams<Rational> wps = wp.swapped_bc();
    const int n1 = ps.N + 1;

    {
      MaxTracker t;
      for (int n = 0; n < n1; ++n)
        for (int x = 0; x < n1; ++x)
          t.feed(wilson_eval(wp, n, x) - wilson_eval(wps, x, n));
      rep.push_back(make(ps, "wilson.duality", "W_n(x) = W_x(n) with b <-> c",
                         t.zero(), t.worst(),
                         std::chrono::duration<double, std::milli>(Clock::now() - t0)
                             .count()));
    }
    {
      MaxTracker t;
      for (int n = 0; n < n1; ++n)
        for (int x = 0; x < n1; ++x) t.feed(wilson_gevp_residual(wp, n, x));
      rep.push_back(make(ps, "wilson.gevp-recurrence",
                         "recurrence GEVP residual grid", t.zero(), t.worst()));
    }
    {
      MaxTracker t;
      for (int n = 0; n < n1; ++n)
        for (int x = 0; x < n1; ++x)
          t.feed(wilson_difference_gevp_residual(wp, n, x));
      rep.push_back(make(ps, "wilson.gevp-difference",
                         "difference GEVP residual grid (duality transport)",
                         t.zero(), t.worst()));
    }
    {
      MaxTracker t;
      for (int n = 0; n < n1; ++n)
        for (int x = 0; x < n1; ++x) t.feed(trio_wilson_gevp_residual(ps, n, x));
      rep.push_back(make(ps, "wilson.trio-gevp-recurrence",
                         "trio-variable recurrence GEVP residual grid", t.zero(),
                         t.worst()));
    }
    {
      MaxTracker t;
      for (int n = 0; n < n1; ++n)
        for (int x = 0; x < n1; ++x)
          t.feed(trio_wilson_difference_residual(ps, n, x));
      rep.push_back(make(ps, "wilson.trio-gevp-difference",
                         "trio-variable difference GEVP residual grid", t.zero(),
                         t.worst()));
    }
    {
      MaxTracker t;
      for (int n = 0; n < n1; ++n) {
        GevpCoeffs<Rational> lhs = trio_wilson_gevp_coeffs(ps, n);
        GevpCoeffs<Rational> rhs = wilson_gevp_coeffs(wp, n);
        t.feed(lhs.z_up - rhs.z_up);
        t.feed(lhs.z_diag - rhs.z_diag);
        t.feed(lhs.z_dn - rhs.z_dn);
        t.feed(lhs.x_up - rhs.x_up);
        t.feed(lhs.x_diag - rhs.x_diag);
        t.feed(lhs.x_dn - rhs.x_dn);
      }
      rep.push_back(make(ps, "wilson.coeff-substitution",
                         "trio-variable GEVP coefficients match the generic tables",
                         t.zero(), t.worst()));
    }
    if (ps.N >= 4) {
      bool ok = true;
      std::vector<Rational> nodes;
      for (int x = 0; x < n1; ++x) nodes.push_back(qr_lambda(wp.c, wp.q, x));
      for (int n = 0; n < n1 && ok; ++n) {
        std::vector<Rational> values;
        for (int x = 0; x < n1; ++x) values.push_back(wilson_eval(wp, n, x));
        if (!admits_rational_interpolant(nodes, values, n)) ok = false;
        if (n >= 1 && 2 * n <= n1 && admits_rational_interpolant(nodes, values, n - 1))
          ok = false;
      }
      rep.push_back(make(ps, "wilson.rational-degree",
                         "W_n is a type (n, n) rational of the spectral variable",
                         ok, ok ? Rational(0) : Rational(1)));
    }
  }
  return rep;
}

VerificationReport suite_trio_axioms(const std::vector<ParameterSet>& battery,
                                     const SuiteOptions&) {
  VerificationReport rep;
  for (const ParameterSet& ps : battery) {
    TrioRealization tr = build_realization(ps);
    VerificationReport sub = verify_trio_axioms(tr);
    rep.insert(rep.end(), sub.begin(), sub.end());
  }
  return rep;
}

VerificationReport suite_heun(const std::vector<ParameterSet>& battery,
                              const SuiteOptions&) {
  VerificationReport rep;
  for (const ParameterSet& ps : battery) {
    TrioRealization tr = build_realization(ps);
    HeunConstants hc = HeunConstants::from(ps);
    VerificationReport sub = verify_heun_relations(tr, hc);
    rep.insert(rep.end(), sub.begin(), sub.end());
    VerificationReport cons = verify_constraint_equations(ps);
    rep.insert(rep.end(), cons.begin(), cons.end());
  }
  return rep;
}

VerificationReport suite_gevp(const std::vector<ParameterSet>& battery,
                              const SuiteOptions&) {
  VerificationReport rep;
  for (const ParameterSet& ps : battery) {
    TrioRealization tr = build_realization(ps);
    VerificationReport sub = verify_gevp_from_matrices(tr);
    rep.insert(rep.end(), sub.begin(), sub.end());
  }
  return rep;
}

VerificationReport suite_summation(const std::vector<ParameterSet>& battery,
                                   const SuiteOptions&) {
  VerificationReport rep;
  for (const ParameterSet& ps : battery) {
    VerificationReport sub = verify_summation_formula(ps);
    rep.insert(rep.end(), sub.begin(), sub.end());
  }
  return rep;
}

VerificationReport suite_biorthogonality(const std::vector<ParameterSet>& battery,
                                         const SuiteOptions&) {
  VerificationReport rep;
  for (const ParameterSet& ps : battery) {
    TrioRealization tr = build_realization(ps);
    VerificationReport sub = verify_biorthogonality(tr);
    rep.insert(rep.end(), sub.begin(), sub.end());
    // w_0(0) corner and both sum routes
    Rational w00 = overlap_w(tr, 0, 0);
    Rational closed = overlap_w00_closed_form(ps);
    rep.push_back(make(ps, "trio.overlap.w00", "w_0(0) closed form",
                       w00 == closed, w00 - closed));
    MaxTracker t;
    for (int n = 0; n <= ps.N; ++n)
      for (int x = 0; x <= ps.N; ++x)
        t.feed(overlap_w(tr, n, x) - overlap_w_sum_route(ps, n, x));
    rep.push_back(make(ps, "trio.overlap.two-route",
                       "matrix route equals the weighted-sum route", t.zero(),
                       t.worst()));
  }
  return rep;
}

VerificationReport suite_racah_relation(const std::vector<ParameterSet>& battery,
                                        const SuiteOptions& opt) {
  VerificationReport rep;
  for (const ParameterSet& ps : battery) {
    auto t0 = Clock::now();
    MaxTracker t;
    for (int n = 0; n <= ps.N; ++n)
      for (int x = 0; x <= ps.N; ++x)
        t.feed(racah_relation_residual(ps.alpha, ps.beta, ps.delta, ps.q, ps.N, n, x));
    rep.push_back(make(ps, "limits.racah-relation",
                       "Racah relation residual grid", t.zero(), t.worst(),
                       std::chrono::duration<double, std::milli>(Clock::now() - t0)
                           .count()));
    if (opt.mode == Mode::Float) {
      LadderResult lr = ladder_racah_limit(ps, opt.float_bits);
      CheckResult c = make(ps, "limits.ladder.racah-s",
                           "s -> 0 ladder: error drops at least 5x per decade",
                           lr.converged, Rational(0));
      c.max_residual = to_string(lr.errors.back());
      rep.push_back(std::move(c));
    }
  }
  return rep;
}

VerificationReport suite_r1(const std::vector<ParameterSet>& battery,
                            const SuiteOptions& opt) {
  VerificationReport rep;
  for (const ParameterSet& ps : battery) {
    R1Params<Rational> rp(ps.beta, ps.delta, ps.s, ps.q, ps.N);
    const int n1 = ps.N + 1;
    {
      MaxTracker t;
      for (int n = 0; n < n1; ++n)
        for (int x = 0; x < n1; ++x)
          t.feed(r1_eval(rp, n, x) - r1_sum_route(rp, n, x));
      rep.push_back(make(ps, "limits.r1.two-route",
                         "4phi3 route equals the dual q-Hahn sum route", t.zero(),
                         t.worst()));
    }
    {
      MaxTracker t;
      for (int n = 0; n < n1; ++n)
        for (int x = 0; x < n1; ++x) t.feed(r1_recurrence_residual(rp, n, x));
      rep.push_back(make(ps, "limits.r1.recurrence",
                         "recurrence GEVP residual grid", t.zero(), t.worst()));
    }
    {
      MaxTracker t;
      for (int n = 0; n < n1; ++n)
        for (int x = 0; x < n1; ++x) t.feed(r1_difference_residual(rp, n, x));
      rep.push_back(make(ps, "limits.r1.difference",
                         "two-term difference relation residual grid", t.zero(),
                         t.worst()));
    }
    if (opt.mode == Mode::Float) {
      LadderResult lr = ladder_r1_limit(ps, opt.float_bits);
      CheckResult c = make(ps, "limits.ladder.r1-alpha",
                           "alpha -> 0 ladder: error drops at least 5x per decade",
                           lr.converged, Rational(0));
      c.max_residual = to_string(lr.errors.back());
      rep.push_back(std::move(c));
    }
  }
  return rep;
}

VerificationReport suite_h1(const std::vector<ParameterSet>& battery,
                            const SuiteOptions&) {
  VerificationReport rep;
  for (const ParameterSet& ps : battery) {
    MaxTracker t;
    for (int n = 0; n <= ps.N; ++n)
      for (int x = 0; x <= ps.N; ++x) {
        auto [value, rec, diff] =
            h1_eval_and_residuals(ps.beta, ps.gamma, ps.delta, ps.q, ps.N, n, x);
        if (n == 0) t.feed(value - Rational(1));
        t.feed(rec);
        t.feed(diff);
      }
    rep.push_back(make(ps, "limits.h1.residuals",
                       "3phi2 family recurrence and difference residual grids",
                       t.zero(), t.worst()));

    DenseMatrix<Rational> z = h1_z_matrix(ps.beta, ps.delta, ps.q, ps.N);
    DenseMatrix<Rational> zpi = z + RMatrix::identity(ps.N + 1);
    bool sub_nonzero = true;
    for (int x = 1; x <= ps.N; ++x)
      if (z(x, x - 1).is_zero()) sub_nonzero = false;
    bool diag_const = true;
    for (int x = 0; x <= ps.N; ++x)
      if (z(x, x) != Rational(-1)) diag_const = false;
    int rk = rank(zpi);
    // lower triangular with constant diagonal -1: single eigenvalue, and
    // rank(Z + I) = N > 0 obstructs diagonalizability
    bool ok = sub_nonzero && diag_const && rk == ps.N;
    CheckResult c = make(ps, "limits.h1.non-diagonalizable",
                         "Z has single eigenvalue -1 with rank(Z+I) = N", ok,
                         ok ? Rational(0) : Rational(1));
    rep.push_back(std::move(c));
  }
  return rep;
}

VerificationReport suite_r3(const std::vector<ParameterSet>& battery,
                            const SuiteOptions& opt) {
  VerificationReport rep;
  for (const ParameterSet& ps : battery) {
    MaxTracker t;
    for (int x = 0; x <= ps.N; ++x)
      t.feed(r3_eval(ps.s, ps.delta, ps.gamma, ps.q, 0, x) - Rational(1));
    rep.push_back(make(ps, "limits.r3.degree-zero", "R3_0(x) = 1 on the grid",
                       t.zero(), t.worst()));
    if (opt.mode == Mode::Float) {
      LadderResult lr = ladder_r3_limit(ps, opt.float_bits);
      CheckResult c = make(ps, "limits.ladder.r3-alpha",
                           "alpha -> 0 ladder at s = sigma/alpha", lr.converged,
                           Rational(0));
      c.max_residual = to_string(lr.errors.back());
      rep.push_back(std::move(c));
    }
  }
  return rep;
}

VerificationReport suite_reduced(const std::vector<ParameterSet>& battery,
                                 const SuiteOptions& opt) {
  VerificationReport rep;
  for (const ParameterSet& ps : battery) {
    // classifier on the eigenvalue pair of the beta -> 0 reduced pair
    std::vector<Rational> xi, lam;
    for (int x = 0; x <= ps.N; ++x) {
      xi.push_back(pow_int(ps.q, -x));
      lam.push_back(ps.gamma * ps.delta * pow_int(ps.q, x + 1));
    }
    auto cls = reduced_compatibility_check(ReducedSequences(xi, lam));
    rep.push_back(make(ps, "limits.reduced.classifier-qred",
                       "reduced eigenvalues classified compatible q-red",
                       cls.compatible && cls.form == ReducedForm::QRed,
                       Rational(0)));

    VerificationReport sub;
    build_reduced_lp(ps.alpha, ps.delta, ps.q, ps.N, &sub);
    for (CheckResult& c : sub) {
      c.params = ps.fingerprint();
      rep.push_back(std::move(c));
    }

    if (opt.mode == Mode::Float) {
      LadderResult lr = ladder_rn_limit(ps, opt.float_bits);
      CheckResult c = make(ps, "limits.ladder.rn-beta",
                           "beta -> 0 ladder for the reduced family", lr.converged,
                           Rational(0));
      c.max_residual = to_string(lr.errors.back());
      rep.push_back(std::move(c));
    }
  }

  // battery-independent classifier probes
  {
    ParameterSet ref = battery.front();
    const Rational q = ref.q;
    std::vector<Rational> xi, lam, lam_mixed;
    for (int x = 0; x <= 4; ++x) {
      xi.push_back(Rational(x));
      lam.push_back(Rational(x));
    }
    auto lred = reduced_compatibility_check(ReducedSequences(xi, lam));
    xi.clear();
    lam.clear();
    for (int x = 0; x <= 4; ++x) {
      xi.push_back(pow_int(q, -x) + pow_int(q, x));
      lam.push_back(Rational(x));
    }
    auto mixed = reduced_compatibility_check(ReducedSequences(xi, lam));
    bool ok = lred.compatible && lred.form == ReducedForm::LRed &&
              !mixed.compatible && mixed.form == ReducedForm::Other;
    CheckResult c;
    c.anchor = "limits.reduced.classifier-probes";
    c.identity = "affine pair classifies l-red; mixed pair is incompatible";
    c.N = 4;
    c.pass = ok;
    c.max_residual = ok ? "0" : "1";
    rep.push_back(std::move(c));
  }
  return rep;
}

}  // namespace

const std::vector<std::string>& all_suite_names() {
  static const std::vector<std::string> names = {
      "qaskey",       "wilson", "trio-axioms", "heun", "gevp",
      "summation",    "biorthogonality", "racah-relation", "r1",
      "h1",           "r3",     "reduced"};
  return names;
}

bool is_suite_name(const std::string& name) {
  for (const std::string& s : all_suite_names())
    if (s == name) return true;
  return false;
}

VerificationReport run_suite(const std::string& name,
                             const std::vector<ParameterSet>& battery,
                             const SuiteOptions& opt) {
  if (battery.empty()) throw ConfigError("empty battery");
  if (name == "qaskey") return suite_qaskey(battery, opt);
  if (name == "wilson") return suite_wilson(battery, opt);
  if (name == "trio-axioms") return suite_trio_axioms(battery, opt);
  if (name == "heun") return suite_heun(battery, opt);
  if (name == "gevp") return suite_gevp(battery, opt);
  if (name == "summation") return suite_summation(battery, opt);
  if (name == "biorthogonality") return suite_biorthogonality(battery, opt);
  if (name == "racah-relation") return suite_racah_relation(battery, opt);
  if (name == "r1") return suite_r1(battery, opt);
  if (name == "h1") return suite_h1(battery, opt);
  if (name == "r3") return suite_r3(battery, opt);
  if (name == "reduced") return suite_reduced(battery, opt);
  throw ConfigError("unknown suite: " + name);
}

int run_verification(const RunConfig& config, std::ostream& log) {
  std::vector<ParameterSet> battery;
  try {
    battery = resolve_battery(config.battery, &log);
  } catch (const GenericityExhausted& e) {
    log << "error: " << e.what() << "\n";
    return 3;
  }

  SuiteOptions opt{config.mode, config.float_bits};
  std::vector<std::future<VerificationReport>> futures;
  futures.reserve(config.suites.size());
  for (const std::string& name : config.suites)
    futures.push_back(std::async(std::launch::async, [&, name] {
      return run_suite(name, battery, opt);
    }));

  VerificationReport all;
  for (auto& f : futures) {
    VerificationReport r = f.get();
    all.insert(all.end(), r.begin(), r.end());
  }

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!config.out_path.empty()) {
    std::string path = config.out_path;
    if (const char* dir = std::getenv("REPORT_DIR");
        dir && !std::filesystem::path(path).is_absolute())
      path = (std::filesystem::path(dir) / path).string();
    if (auto parent = std::filesystem::path(path).parent_path(); !parent.empty())
      std::filesystem::create_directories(parent);
    file.open(path);
    if (!file) {
      log << "error: cannot open output path " << path << "\n";
      return 2;
    }
    out = &file;
  }
  emit_report(*out, all, config.format, config.timings);
  return all_passed(all) ? 0 : 1;
}

}  // namespace qtrio
