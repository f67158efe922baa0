#pragma once

// Segmented-lens configurations: the lens aperture is split into
// non-overlapping segments, each carrying its own copy of the pulse with its
// own delay, optionally followed by a side-lobe suppression pulse made of
// two tilted plane waves.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qlitho/excitation.hpp"
#include "qlitho/grid.hpp"
#include "qlitho/intensity.hpp"
#include "qlitho/metrics.hpp"

namespace qlitho {

enum class EnergyPolicy { FixedTotal, FixedPerSegment };
enum class TuneMode { Bright, Dark };
enum class Tuning { None, Bright, Dark };

/// Illumination profile across the lens before segmentation.
struct ApertureProfile {
  enum class Kind { Uniform, GaussianWithGap };
  Kind kind = Kind::Uniform;
  double waist = 0.0;
  double gap = 0.0;

  static ApertureProfile uniform() { return {}; }
  static ApertureProfile gaussian_with_gap(double waist, double gap) { return {Kind::GaussianWithGap, waist, gap}; }
};

struct Segment {
  double lo;
  double hi;
  Complex amplitude{1.0, 0.0};
  double delay = 0.0;
};

/// Third pulse focusing onto two offset spots s1 and s2.
struct SuppressionPulse {
  double s1;
  double s2;
  Complex amplitude;
  double delay;
};

struct ScenarioGrids {
  Grid1D lens;
  Grid1D focal;
};

/// Lens grid over the aperture and a focal grid of 40 spot widths, both n samples.
ScenarioGrids default_grids(const OpticalParams& optics, std::size_t n = 4096, double focal_extent_in_spots = 40.0);

struct SegmentedLensConfig {
  OpticalParams optics;
  ExcitationOrder order;
  std::vector<Segment> segments;
  ScenarioGrids grids;
  EnergyPolicy policy = EnergyPolicy::FixedTotal;
  ApertureProfile profile{};
  std::optional<SuppressionPulse> suppression{};
  Tuning tuning = Tuning::None;
  double pulse_duration = 100e-15;
  /// Require every pair of pulses to be at least kSeparationInDurations apart.
  bool enforce_separation = false;
};

/// Delays closer than this many pulse durations count as overlapping.
inline constexpr double kSeparationInDurations = 8.0;

void validate(const SegmentedLensConfig& config);

/// Full aperture as one segment.
SegmentedLensConfig single_aperture_config(const OpticalParams& optics, ExcitationOrder order,
                                           std::optional<ScenarioGrids> grids = std::nullopt);

/// Halves [-D/2, 0) with delay 0 and [0, D/2) with the given delay.
SegmentedLensConfig two_segment_config(const OpticalParams& optics, ExcitationOrder order, double delay,
                                       std::optional<ScenarioGrids> grids = std::nullopt);

/// M equal abutting segments spanning the aperture.
SegmentedLensConfig m_segment_config(const OpticalParams& optics, ExcitationOrder order, int segments,
                                     std::span<const double> delays,
                                     std::optional<ScenarioGrids> grids = std::nullopt);

/// Lens-plane field of the suppression pulse over the full aperture.
ComplexField suppression_lens_field(const Grid1D& lens_grid, const OpticalParams& optics,
                                    const SuppressionPulse& pulse);

/// Lens fields and delays after the energy policy, suppression pulse last.
std::vector<PulseContribution> pulse_contributions(const SegmentedLensConfig& config);

/// Excitation amplitude on the optical axis, evaluated exactly at x = 0.
Complex central_amplitude(const SegmentedLensConfig& config);
double central_intensity(const SegmentedLensConfig& config);

struct TuneResult {
  double delay = 0.0;
  double central_intensity = 0.0;
  bool degenerate = false;
};

/// Finds the offset delta in [0, quantum period) that maximizes (bright) or
/// minimizes (dark) the on-axis excitation when segment k is delayed by
/// k * delta. Grid scan, then golden-section to 1e-4 of the period.
TuneResult tune_delay(const SegmentedLensConfig& config, TuneMode mode);

/// Sets segment k's delay to k * delta.
SegmentedLensConfig with_delay_offset(SegmentedLensConfig config, double delta);

/// tune_delay followed by with_delay_offset; records the tuning.
SegmentedLensConfig tuned(SegmentedLensConfig config, TuneMode mode);

/// Adds whole quantum periods to the delays so consecutive pulses are at
/// least min_gap apart. Quantum phases are unchanged.
SegmentedLensConfig with_separated_delays(SegmentedLensConfig config, double min_gap);

struct SpotResult {
  IntensityProfile intensity;  // peak-normalized
  IntensityProfile reference;  // peak-normalized one-photon spot of the same optics
  IntensityProfile raw;
  ComplexField amplitude;      // excitation amplitude A(x)
  SpotMetrics metrics;
  SegmentedLensConfig config;
};

SpotResult run_spot(const SegmentedLensConfig& config);

/// Base two-segment config plus a suppression pulse aimed at s1 and s2.
SegmentedLensConfig suppression_pulse_config(const SegmentedLensConfig& base, double s1, double s2, Complex amplitude,
                                             double delay);

/// I_1(0) / I_M(0) for two bright-tuned, fixed-total configs.
double measured_penalty(const SegmentedLensConfig& config_m, const SegmentedLensConfig& config_1);

}  // namespace qlitho
