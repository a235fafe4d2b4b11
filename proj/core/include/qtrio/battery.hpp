#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "qtrio/params.hpp"

namespace qtrio {

struct ExplicitEntry {
  Rational q, alpha, beta, delta, s;
  int N = 0;
};

/// Parameter battery: explicit literals and/or a seeded random spec drawing
/// (alpha, beta, delta, s) from small-height rationals. Entries failing
/// genericity are resampled (logged) up to max_resample attempts each.
struct BatterySpec {
  std::uint64_t seed = 20260809;
  int count = 0;
  std::vector<Rational> q_choices = {Rational(3, 5), Rational(2, 7)};
  std::vector<int> N_choices = {2, 3, 4, 5};
  int height = 8;
  int max_resample = 32;
  std::vector<ExplicitEntry> explicit_sets;
};

/// Deterministic given the spec (seeded PRNG, sequential sampling). Each
/// produced set passes the full deep validation used by the suites. Throws
/// GenericityExhausted when a slot cannot be filled.
std::vector<ParameterSet> resolve_battery(const BatterySpec& spec, std::ostream* log);

/// Runs every constructor/scan a suite may touch for this parameter set, so
/// later suite evaluation cannot hit an unnamed pole. Throws GenericityError.
void deep_validate(const ParameterSet& ps);

}  // namespace qtrio
