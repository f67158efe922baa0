#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qlitho/cli/config.hpp"

namespace qlitho::cli {

enum ExitCode : int { kExitOk = 0, kExitInvalid = 1, kExitNotConverged = 2 };

/// Runs one scenario and writes its CSV (and SVG) files into out_dir.
/// Returns kExitNotConverged when an optimizer or check is flagged; the
/// outputs are written regardless. Errors propagate as exceptions.
int run_scenario(const ScenarioConfig& config, const std::string& out_dir, std::ostream& out);

/// Full command: load the config, run, map exceptions to exit codes.
int run(const std::string& scenario, const std::string& config_path, const std::vector<std::string>& overrides,
        const std::string& out_dir, std::ostream& out, std::ostream& err);

}  // namespace qlitho::cli
