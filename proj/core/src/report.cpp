#include "qtrio/report.hpp"

#include <algorithm>
#include <ostream>

#include "json.hpp"

namespace qtrio {

namespace {

VerificationReport sorted(VerificationReport report) {
  std::sort(report.begin(), report.end(), [](const CheckResult& a, const CheckResult& b) {
    if (a.anchor != b.anchor) return a.anchor < b.anchor;
    return a.params < b.params;
  });
  return report;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string params_inline(const CheckResult& r) {
  std::string out;
  for (const auto& [k, v] : r.params) {
    if (!out.empty()) out += ";";
    out += k + "=" + v;
  }
  return out;
}

}  // namespace

bool all_passed(const VerificationReport& report) {
  for (const CheckResult& r : report)
    if (!r.pass) return false;
  return true;
}

void emit_report(std::ostream& os, const VerificationReport& report,
                 ReportFormat format, bool with_timings) {
  VerificationReport rep = sorted(report);
  switch (format) {
    case ReportFormat::Json: {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const CheckResult& r : rep) {
        nlohmann::ordered_json obj;
        obj["identity"] = r.identity;
        obj["anchor"] = r.anchor;
        obj["params"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : r.params) obj["params"][k] = v;
        obj["N"] = r.N;
        obj["status"] = r.pass ? "pass" : "fail";
        obj["max_residual"] = r.max_residual;
        obj["elapsed_ms"] = with_timings ? r.elapsed_ms : 0.0;
        arr.push_back(std::move(obj));
      }
      os << arr.dump(2) << "\n";
      break;
    }
    case ReportFormat::Csv: {
      os << "identity,anchor,N,status,max_residual,elapsed_ms,params\n";
      for (const CheckResult& r : rep) {
        os << csv_escape(r.identity) << "," << csv_escape(r.anchor) << "," << r.N
           << "," << (r.pass ? "pass" : "fail") << "," << csv_escape(r.max_residual)
           << "," << (with_timings ? r.elapsed_ms : 0.0) << ","
           << csv_escape(params_inline(r)) << "\n";
      }
      break;
    }
    case ReportFormat::Markdown: {
      os << "| identity | anchor | N | status | residual |\n";
      os << "|---|---|---|---|---|\n";
      for (const CheckResult& r : rep) {
        // residuals are rendered only when nonzero, keeping pass rows compact
        std::string resid = r.pass ? "" : r.max_residual;
        os << "| " << r.identity << " | " << r.anchor << " | " << r.N << " | "
           << (r.pass ? "pass" : "fail") << " | " << resid << " |\n";
      }
      break;
    }
  }
}

}  // namespace qtrio
