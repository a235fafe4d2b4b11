#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qtrio/config.hpp"
#include "qtrio/params.hpp"
#include "qtrio/report.hpp"

namespace qtrio {

struct SuiteOptions {
  Mode mode = Mode::Exact;
  unsigned float_bits = 256;
};

const std::vector<std::string>& all_suite_names();
bool is_suite_name(const std::string& name);

/// Runs one named suite over the battery. Pure up to report content; safe to
/// run suites concurrently.
VerificationReport run_suite(const std::string& name,
                             const std::vector<ParameterSet>& battery,
                             const SuiteOptions& opt);

/// Full orchestration: battery resolution (with logged resampling), suites
/// (concurrent), report emission. Returns the CLI exit code contract:
/// 0 pass, 1 identity failure, 2 config error, 3 genericity exhausted.
int run_verification(const RunConfig& config, std::ostream& log);

}  // namespace qtrio
