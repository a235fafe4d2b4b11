#include "qtrio/battery.hpp"

#include <ostream>
#include <random>

#include "qtrio/limits.hpp"
#include "qtrio/wilson.hpp"

namespace qtrio {

void deep_validate(const ParameterSet& ps) {
  try {
    // q-Racah families on both parameter tuples.
    QRacahParams{ps.alpha, ps.beta, ps.gamma, ps.delta, ps.q, ps.N};
    QRacahParams{ps.alpha, ps.beta, ps.gamma, ps.deltaT, ps.q, ps.N};
    // Dual trio parameters (delta -> alpha/(beta delta)) used by the
    // difference-GEVP transport and the summation duality column.
    ParameterSet dual(ps.q, ps.alpha, ps.beta, ps.deltaT, ps.s, ps.N);
    // Wilson grid poles.
    WilsonParams<Rational> wp = wilson_from_trio(ps);
    wilson_from_trio(dual);
    // Limit families.
    R1Params<Rational> rp(ps.beta, ps.delta, ps.s, ps.q, ps.N);
    EigenvalueMap<Rational>(ps.alpha * ps.beta, ps.q, ps.N);
    EigenvalueMap<Rational>(ps.gamma * ps.delta, ps.q, ps.N);
    EigenvalueMap<Rational>(ps.gamma * ps.deltaT, ps.q, ps.N);
    // The sigma := s specialization of the balanced 4phi3 family, and the
    // Wilson route the float ladder takes towards it, need window scans the
    // grid probes below cannot reach.
    const Rational one(1);
    for (int m = -(ps.N + 1); m <= ps.N + 1; ++m) {
      if (ps.s * ps.delta * pow_int(ps.q, m) == one)
        throw GenericityError("1 - sigma*delta*q^" + std::to_string(m));
      if (ps.s * pow_int(ps.q, m) / ps.delta == one)
        throw GenericityError("1 - sigma*q^" + std::to_string(m) + "/delta");
    }
    // Full-grid probes of every scalar family a suite may evaluate; any
    // remaining pole surfaces here as a PoleError and triggers a resample.
    for (int n = 0; n <= ps.N; ++n)
      for (int x = 0; x <= ps.N; ++x) {
        wilson_eval(wp, n, x);
        r1_eval(rp, n, x);
        r1_sum_route(rp, n, x);
        r1_recurrence_residual(rp, n, x);
        r1_difference_residual(rp, n, x);
        r3_eval(ps.s, ps.delta, ps.gamma, ps.q, n, x);
        h1_eval_and_residuals(ps.beta, ps.gamma, ps.delta, ps.q, ps.N, n, x);
        racah_relation_residual(ps.alpha, ps.beta, ps.delta, ps.q, ps.N, n, x);
      }
    build_reduced_lp(ps.alpha, ps.delta, ps.q, ps.N, nullptr);
  } catch (const PoleError& e) {
    throw GenericityError(e.what());
  } catch (const std::overflow_error& e) {
    throw GenericityError(std::string("unnamed denominator vanished: ") + e.what());
  }
}

namespace {

Rational sample_rational(std::mt19937_64& rng, int height) {
  std::uniform_int_distribution<int> num(-height, height);
  std::uniform_int_distribution<int> den(1, height);
  int n = 0;
  do {
    n = num(rng);
  } while (n == 0);
  return Rational(n, den(rng));
}

}  // namespace

std::vector<ParameterSet> resolve_battery(const BatterySpec& spec, std::ostream* log) {
  std::vector<ParameterSet> out;
  std::mt19937_64 rng(spec.seed);

  auto sample_slot = [&](const Rational& q, int N,
                         std::optional<ExplicitEntry> first) -> ParameterSet {
    for (int attempt = 0; attempt < spec.max_resample; ++attempt) {
      try {
        ExplicitEntry e;
        if (first && attempt == 0) {
          e = *first;
        } else {
          e.q = q;
          e.N = N;
          e.alpha = sample_rational(rng, spec.height);
          e.beta = sample_rational(rng, spec.height);
          e.delta = sample_rational(rng, spec.height);
          e.s = sample_rational(rng, spec.height);
        }
        ParameterSet ps(e.q, e.alpha, e.beta, e.delta, e.s, e.N);
        deep_validate(ps);
        return ps;
      } catch (const GenericityError& ge) {
        if (log)
          (*log) << "[battery] resampling after " << ge.what() << "\n";
      }
    }
    throw GenericityExhausted("battery: no generic parameter set found after " +
                              std::to_string(spec.max_resample) + " attempts");
  };

  for (const ExplicitEntry& e : spec.explicit_sets)
    out.push_back(sample_slot(e.q, e.N, e));

  for (int k = 0; k < spec.count; ++k) {
    const Rational& q = spec.q_choices[k % spec.q_choices.size()];
    int N = spec.N_choices[(k / spec.q_choices.size()) % spec.N_choices.size()];
    out.push_back(sample_slot(q, N, std::nullopt));
  }
  return out;
}

}  // namespace qtrio
