#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace qtrio {

/// One verified identity: a stable machine key (`anchor`), a human-readable
/// name, the parameter fingerprint, pass/fail, and the largest residual seen
/// (exact "p/q" in rational mode, annotated decimal in float mode). In
/// rational mode pass means the residual is bit-exact zero.
struct CheckResult {
  std::string identity;
  std::string anchor;
  std::map<std::string, std::string> params;
  int N = 0;
  bool pass = false;
  std::string max_residual;
  double elapsed_ms = 0.0;
};

using VerificationReport = std::vector<CheckResult>;

enum class ReportFormat { Json, Csv, Markdown };

/// Serializes sorted by (anchor, params) so concurrent suite execution
/// cannot change the bytes. Timings are emitted as 0 unless `with_timings`,
/// keeping identical runs byte-identical.
void emit_report(std::ostream& os, const VerificationReport& report,
                 ReportFormat format, bool with_timings);

bool all_passed(const VerificationReport& report);

}  // namespace qtrio
