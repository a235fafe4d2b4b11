#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qtrio/config.hpp"
#include "qtrio/errors.hpp"
#include "qtrio/suites.hpp"
#include "qtrio/tableio.hpp"

namespace {

int run_verify(const std::string& config_path, const std::string& mode_flag,
               const std::string& out_flag, const std::string& format_flag,
               bool timings) {
  qtrio::RunConfig cfg = qtrio::load_config(config_path);
  if (!mode_flag.empty()) cfg.mode = qtrio::parse_mode(mode_flag, &cfg.float_bits);
  if (!out_flag.empty()) cfg.out_path = out_flag;
  if (!format_flag.empty()) cfg.format = qtrio::parse_format(format_flag);
  cfg.timings = timings;
  return qtrio::run_verification(cfg, std::cerr);
}

int run_table(const std::string& fn, const std::string& params_path,
              const std::string& out_flag, const std::string& mode_flag) {
  std::ifstream in(params_path);
  if (!in) throw qtrio::ConfigError("cannot open params file: " + params_path);
  std::ostringstream buf;
  buf << in.rdbuf();

  qtrio::Mode mode = qtrio::Mode::Exact;
  unsigned bits = 256;
  if (!mode_flag.empty()) mode = qtrio::parse_mode(mode_flag, &bits);

  if (out_flag.empty()) {
    qtrio::render_table(fn, buf.str(), mode, bits, std::cout);
  } else {
    std::ofstream out(out_flag);
    if (!out) throw qtrio::ConfigError("cannot open output path: " + out_flag);
    qtrio::render_table(fn, buf.str(), mode, bits, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification of Leonard-trio operator identities"};
  app.require_subcommand(1);

  std::string config_path, mode_flag, out_flag, format_flag;
  bool timings = false;
  CLI::App* verify = app.add_subcommand("verify", "run identity suites from a config");
  verify->add_option("--config", config_path, "JSON run configuration")->required();
  verify->add_option("--mode", mode_flag, "exact | float:<bits>");
  verify->add_option("--out", out_flag, "output path (default stdout)");
  verify->add_option("--format", format_flag, "json | csv | md");
  verify->add_flag("--timings", timings, "emit wall times (non-reproducible bytes)");

  std::string fn, params_path, table_out, table_mode;
  CLI::App* table = app.add_subcommand("table", "emit an (n, x) value table");
  table->add_option("--fn", fn, "qracah | wilson | w | w-partner | r1 | h1 | r3")
      ->required();
  table->add_option("--params", params_path, "JSON parameter file")->required();
  table->add_option("--out", table_out, "output path (default stdout)");
  table->add_option("--mode", table_mode, "exact | float:<bits>");

  try {
    app.parse(argc, argv);
    if (verify->parsed())
      return run_verify(config_path, mode_flag, out_flag, format_flag, timings);
    if (table->parsed()) return run_table(fn, params_path, table_out, table_mode);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const qtrio::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qtrio::GenericityExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
