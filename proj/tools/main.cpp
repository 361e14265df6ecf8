#include "beamsolid/scenario.hpp"

#include <CLI11.hpp>

#include <exception>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Coupled beam-solid equilibrium and stability analysis"};

  std::string config_path;
  app.add_option("config", config_path, "scenario configuration file (JSON)")
      ->required();

  bool flag_solve = false, flag_stability = false, flag_export = false;
  int levels = 0;
  std::string out_dir;
  app.add_flag("--solve", flag_solve, "solve the coupled system");
  app.add_flag("--stability", flag_stability, "run the stability analysis");
  app.add_flag("--export", flag_export, "write MatrixMarket dumps");
  app.add_option("--levels", levels, "number of refinement levels");
  app.add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    beamsolid::ScenarioConfig config = beamsolid::parse_config(config_path);
    // Command-line switches win over the configuration file.
    if (flag_solve) config.do_solve = true;
    if (flag_stability) config.do_stability = true;
    if (flag_export) config.do_export = true;
    if (levels > 0) config.refinement_levels = levels;
    if (!out_dir.empty()) config.output_directory = out_dir;

    const beamsolid::RunResult result = beamsolid::run(config);
    for (const auto& failure : result.failures) {
      std::cout << "FAIL " << failure << "\n";
    }
    if (result.exit_code == 0) {
      std::cout << "OK levels=" << result.levels.size() << "\n";
    }
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
