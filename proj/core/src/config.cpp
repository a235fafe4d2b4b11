#include "qtrio/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qtrio/errors.hpp"
#include "qtrio/suites.hpp"

namespace qtrio {

Mode parse_mode(const std::string& text, unsigned* bits) {
  if (text == "exact") return Mode::Exact;
  if (text.rfind("float:", 0) == 0) {
    int b = 0;
    try {
      b = std::stoi(text.substr(6));
    } catch (const std::exception&) {
      throw ConfigError("malformed mode: " + text);
    }
    if (b < 24) throw ConfigError("float precision too small: " + text);
    if (bits) *bits = static_cast<unsigned>(b);
    return Mode::Float;
  }
  throw ConfigError("unknown mode: " + text + " (want exact | float:<bits>)");
}

ReportFormat parse_format(const std::string& text) {
  if (text == "json") return ReportFormat::Json;
  if (text == "csv") return ReportFormat::Csv;
  if (text == "md" || text == "markdown" || text == "markdown-table")
    return ReportFormat::Markdown;
  throw ConfigError("unknown format: " + text + " (want json | csv | md)");
}

RunConfig parse_config_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  RunConfig cfg;
  if (doc.contains("mode")) cfg.mode = parse_mode(doc["mode"].get<std::string>(), &cfg.float_bits);

  if (!doc.contains("suites") || !doc["suites"].is_array() || doc["suites"].empty())
    throw ConfigError("config needs a non-empty \"suites\" list");
  for (const auto& s : doc["suites"]) {
    std::string name = s.get<std::string>();
    if (!is_suite_name(name)) throw ConfigError("unknown suite: " + name);
    cfg.suites.push_back(name);
  }

  if (doc.contains("battery")) {
    const auto& b = doc["battery"];
    if (b.contains("seed")) cfg.battery.seed = b["seed"].get<std::uint64_t>();
    if (b.contains("count")) cfg.battery.count = b["count"].get<int>();
    if (b.contains("height")) cfg.battery.height = b["height"].get<int>();
    if (b.contains("max_resample"))
      cfg.battery.max_resample = b["max_resample"].get<int>();
    if (b.contains("q")) {
      cfg.battery.q_choices.clear();
      for (const auto& qs : b["q"])
        cfg.battery.q_choices.push_back(parse_rational(qs.get<std::string>()));
      if (cfg.battery.q_choices.empty()) throw ConfigError("battery.q is empty");
    }
    if (b.contains("N")) {
      cfg.battery.N_choices.clear();
      for (const auto& n : b["N"]) cfg.battery.N_choices.push_back(n.get<int>());
      if (cfg.battery.N_choices.empty()) throw ConfigError("battery.N is empty");
    }
    if (b.contains("explicit")) {
      for (const auto& e : b["explicit"]) {
        ExplicitEntry entry;
        entry.q = parse_rational(e.at("q").get<std::string>());
        entry.alpha = parse_rational(e.at("alpha").get<std::string>());
        entry.beta = parse_rational(e.at("beta").get<std::string>());
        entry.delta = parse_rational(e.at("delta").get<std::string>());
        entry.s = parse_rational(e.at("s").get<std::string>());
        entry.N = e.at("N").get<int>();
        cfg.battery.explicit_sets.push_back(std::move(entry));
      }
    }
  }
  if (cfg.battery.count == 0 && cfg.battery.explicit_sets.empty())
    throw ConfigError("battery is empty: set battery.count or battery.explicit");

  if (doc.contains("output")) {
    const auto& o = doc["output"];
    if (o.contains("path")) cfg.out_path = o["path"].get<std::string>();
    if (o.contains("format")) cfg.format = parse_format(o["format"].get<std::string>());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace qtrio
