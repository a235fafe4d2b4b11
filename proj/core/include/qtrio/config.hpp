#pragma once

#include <string>
#include <vector>

#include "qtrio/battery.hpp"
#include "qtrio/report.hpp"

namespace qtrio {

enum class Mode { Exact, Float };

struct RunConfig {
  Mode mode = Mode::Exact;
  unsigned float_bits = 256;
  BatterySpec battery;
  std::vector<std::string> suites;
  std::string out_path;  // empty = stdout
  ReportFormat format = ReportFormat::Json;
  bool timings = false;
};

/// Parses the JSON run configuration; throws ConfigError on malformed
/// rational strings, empty suite lists, or unknown suite names.
RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

Mode parse_mode(const std::string& text, unsigned* bits);
ReportFormat parse_format(const std::string& text);

}  // namespace qtrio
