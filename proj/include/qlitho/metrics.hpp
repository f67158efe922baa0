#pragma once

// Spot descriptors: main-lobe FWHM, first zero, side lobes, and the
// intensity penalty of splitting one pulse into M segments.

#include <cstddef>

#include "qlitho/intensity.hpp"

namespace qlitho {

/// Relative level below which a walk down the main lobe stops even without
/// reaching a local minimum (lobe-free spots such as a Gaussian).
inline constexpr double kLobeFloor = 1e-14;

/// Index range of the central lobe. Bounds are the adjacent local minima.
struct MainLobe {
  std::size_t peak_first;  // first sample of the peak run
  std::size_t peak_last;   // last sample of the peak run
  std::size_t left;
  std::size_t right;
  double peak_position;
  bool plateau;  // three or more samples share the maximum
};

MainLobe find_main_lobe(const IntensityProfile& profile);

struct FwhmMeasurement {
  double width;
  double left;
  double right;
  bool plateau;
};

FwhmMeasurement measure_fwhm(const IntensityProfile& profile);
double fwhm_main_lobe(const IntensityProfile& profile);

/// Distance from the peak to the right-hand lobe boundary.
double first_zero(const IntensityProfile& profile);

struct SideLobe {
  bool found = false;
  double level = 0.0;     // relative to the global maximum
  double position = 0.0;  // focal coordinate
  double distance = 0.0;  // |position - peak position|
};

/// Largest local maximum outside the main lobe, ties toward the peak.
SideLobe largest_side_lobe(const IntensityProfile& profile);

/// 1 / sqrt(N): width gain from the nonlinearity alone.
double contrast_only_width(int order);

/// FWHM of reference^N divided by FWHM of reference.
double contrast_only_fwhm_ratio(const IntensityProfile& reference, int order);

/// M^(2(N-1)).
double penalty_factor(int segments, int order);

struct SpotMetrics {
  double fwhm_main = 0.0;
  double fwhm_ratio_vs_reference = 0.0;
  double first_zero = 0.0;
  double side_lobe_peak = 0.0;
  double side_lobe_position = 0.0;
  double side_lobe_distance = 0.0;
  double central_intensity_raw = 0.0;
  double penalty_vs_single_aperture = 0.0;
  bool plateau = false;
};

/// central_raw and single_aperture_raw are on-axis raw intensities of the
/// spot and of the unsegmented aperture at the same order.
SpotMetrics compute_spot_metrics(const IntensityProfile& spot, const IntensityProfile& reference, double central_raw,
                                 double single_aperture_raw);

}  // namespace qlitho
