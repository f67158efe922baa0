#pragma once

// Scenario configuration for the litho command: an INI file with sections,
// overridden key by key from the command line.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qlitho::cli {

inline const std::vector<std::string> kScenarioNames{"spot2seg",      "spotMseg",     "suppress", "delay-scan",
                                                     "penalty-table", "oracle-check", "fit"};

/// Every length in meters, every time in seconds.
struct ScenarioConfig {
  std::string scenario;

  double wavelength = 778e-9;
  double focal_length = 0.1;
  double aperture = 0.01;

  int order = 2;
  int segments = 2;
  std::string tuning = "bright";  // bright | dark | none
  std::vector<double> delays;     // explicit per-segment delays, used when tuning = none
  double pulse_duration = 100e-15;

  std::string policy = "fixed-total";  // fixed-total | fixed-per-segment
  std::string profile = "uniform";     // uniform | gaussian-gap
  double waist = 0.0;
  double gap = 0.0;

  std::size_t samples = 4096;
  double focal_extent = 40.0;  // in one-photon spot widths

  double suppress_amplitude = 0.3;

  std::size_t scan_points = 257;
  double scan_periods = 2.0;

  std::vector<int> penalty_segments{1, 2, 4};
  std::vector<int> penalty_orders{1, 2, 4};

  std::vector<double> separations{0.0, 2.0, 8.0, 10.0, 12.0};  // in pulse durations

  std::string fit_data;  // empty: synthetic data
  std::string fit_truth = "separated";
  double fit_waist = 1e-3;
  double fit_gap = 1e-4;
  double fit_phase = 3.141592653589793;
  double fit_kappa_guess = 0.9;  // initial kappa relative to the optics value
  double fit_noise = 0.05;
  std::uint64_t fit_seed = 1;
  std::size_t fit_points = 200;
  double fit_window = 200e-6;

  bool svg = true;

  /// Every key with its final value, sorted, for output headers.
  std::vector<std::pair<std::string, std::string>> resolved;
};

/// Reads INI text, applies "section.key=value" overrides and checks the
/// result. Unknown sections or keys are rejected.
ScenarioConfig parse_config(const std::string& scenario, std::istream& ini, const std::vector<std::string>& overrides);
ScenarioConfig load_config(const std::string& scenario, const std::string& path,
                           const std::vector<std::string>& overrides);

}  // namespace qlitho::cli
