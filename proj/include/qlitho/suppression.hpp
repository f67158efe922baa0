#pragma once

// Side-lobe suppression with one extra pulse whose two tilted plane waves
// focus onto the side lobes, and the forward residual of a configuration
// against a desired target spot.

#include <vector>

#include "qlitho/intensity.hpp"
#include "qlitho/scenarios.hpp"
#include "qlitho/simplex.hpp"

namespace qlitho {

struct SuppressionParams {
  double s1 = 0.0;
  double s2 = 0.0;
  double amp = 0.0;    // real, >= 0; relative to unit segment amplitude
  double phase = 0.0;  // quantum phase N * omega0 * delay, in [0, 2 pi)
  double delay = 0.0;  // delay equivalent of phase, in [0, quantum period)
};

/// Peak-normalized maximum outside |x| <= exclusion.
double side_lobe_objective(const IntensityProfile& spot, double exclusion);

/// Half-width of the main lobe measured to its outer local minima.
double main_lobe_half_extent(const IntensityProfile& spot);

struct SuppressionOptions {
  SimplexOptions simplex{};
  /// Allowed relative change of the main-lobe FWHM before the objective is penalized.
  double width_tolerance = 0.08;
  double width_penalty = 10.0;
};

struct SuppressionResult {
  SuppressionParams params;
  double objective = 0.0;  // side-lobe level at params
  double baseline = 0.0;   // side-lobe level without the extra pulse
  double exclusion = 0.0;
  bool converged = false;
  int iterations = 0;
  std::vector<double> history;
};

/// Starting point: both foci on the base spot's largest side lobe, phase set
/// so the added amplitude opposes the side lobe there.
SuppressionParams default_suppression_init(const SegmentedLensConfig& base, double amp = 0.3);

/// Symmetric (s2 = -s1 = s) simplex search over (s, amp, phase).
SuppressionResult optimize_suppression(const SegmentedLensConfig& base, const SuppressionParams& init,
                                       const SuppressionOptions& options = {});

/// Base config with the optimized pulse attached.
SegmentedLensConfig apply_suppression(const SegmentedLensConfig& base, const SuppressionParams& params);

struct TargetResidual {
  IntensityProfile target;
  IntensityProfile achieved;
  double residual;
};

/// ||achieved - target||_2 / ||target||_2 with both spots peak-normalized.
TargetResidual residual_to_target(const SegmentedLensConfig& config, const IntensityProfile& target);

}  // namespace qlitho
