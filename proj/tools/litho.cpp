// litho <scenario> --config <path> [--set key=value ...] --out-dir <path>

#include <iostream>

#include "CLI11.hpp"
#include "qlitho/cli/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Segmented-lens multiphoton interference lithography simulator"};
  std::string scenario, config, out_dir;
  std::vector<std::string> overrides;
  app.add_option("scenario", scenario, "spot2seg | spotMseg | suppress | delay-scan | penalty-table | oracle-check | fit")
      ->required();
  app.add_option("--config", config, "INI configuration file")->required();
  app.add_option("--set", overrides, "override a config value, section.key=value")->allow_extra_args(false);
  app.add_option("--out-dir", out_dir, "directory for CSV and SVG outputs")->required();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qlitho::cli::kExitInvalid;
  }
  return qlitho::cli::run(scenario, config, overrides, out_dir, std::cout, std::cerr);
}
