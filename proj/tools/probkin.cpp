// probkin <mode> --config <path> [--out <path>] [--format csv|json]
//         [--step <real>] [--t-final <real>] [--sweep <field>=<start>:<stop>:<count>]

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "probkin/run.hpp"

using namespace probkin;
using namespace probkin::cli;

int main(int argc, char** argv) {
  CLI::App app{"Probability-representation kinetics for qubits, qudits and oscillators"};
  std::string mode_text;
  std::string config_path;
  std::string sweep_text;
  Overrides overrides;

  app.add_option("mode", mode_text, "map | evolve | gksl | channel | qudit | oscillator")
      ->required()
      ->check(CLI::IsMember({"map", "evolve", "gksl", "channel", "qudit", "oscillator"}));
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", overrides.out, "trajectory output path");
  app.add_option("--format", overrides.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--step", overrides.step, "RK4 step / sampling grid step");
  app.add_option("--t-final", overrides.t_final, "final time");
  app.add_option("--sweep", sweep_text, "<field>=<start>:<stop>:<count>");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitSchema;
  }

  const Mode mode = *parse_mode(mode_text);
  try {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw Error(Errc::IoError, "cannot read config '" + config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();

    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(Errc::SchemaError, std::string("document: ") + e.what());
    }
    apply_overrides(doc, overrides);

    if (!sweep_text.empty()) return run_sweep(doc, mode, SweepSpec::parse(sweep_text), std::cerr);
    return run(parse_config(doc, mode), std::cerr);
  } catch (const Error& e) {
    std::cerr << "probkin " << mode_text << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}
