#pragma once

// Cross-section model for a Gaussian beam with a narrow central gap whose two
// halves reach the focus either overlapped in time (ordinary interference)
// or separated (interference through the medium), plus a least-squares
// fitter for measured line profiles.
//
// The focal axis scale is expressed through kappa, the phase slope at the
// spot center of the focused right half-beam. kappa = 2 pi xbar / (lambda f)
// with xbar the amplitude-weighted centroid of that half.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qlitho/grid.hpp"
#include "qlitho/intensity.hpp"
#include "qlitho/simplex.hpp"

namespace qlitho {

enum class Regime { Overlapped, Separated };

struct FitModelParams {
  double waist = 1e-3;
  double gap = 1e-4;
  double kappa = 1.0;
  Regime regime = Regime::Separated;
  ExcitationOrder order{2};
  /// Relative phase of the right half; pi gives a dark spot.
  double phase = 0.0;
  double center_offset = 0.0;
  double background = 0.0;
  double scale = 1.0;
};

void validate(const FitModelParams& params);

/// Lens samples across 8 waists used by the model.
inline constexpr std::size_t kModelLensSamples = 1024;

Grid1D model_lens_grid(double waist);

/// Amplitude-weighted centroid of the x > 0 half of the gapped Gaussian.
double half_beam_centroid(double waist, double gap);

double kappa_from_optics(double waist, double gap, const OpticalParams& optics);

/// Period of the interference term at the spot center:
/// pi / kappa overlapped, pi / (N kappa) separated.
double fringe_period(const FitModelParams& params);

/// background + scale * I(x - center_offset), with I normalized to the
/// on-axis value of the bright spot.
IntensityProfile model_cross_section(const FitModelParams& params, const Grid1D& grid);

struct CrossSection {
  std::vector<double> positions;
  std::vector<double> intensities;
  double pixel_pitch = 0.0;
};

void validate(const CrossSection& data);

/// Two numeric columns (position_m, intensity); '#' starts a comment line.
CrossSection read_cross_section(std::istream& in);
CrossSection read_cross_section_file(const std::string& path);

/// Model on a uniform grid plus additive Gaussian noise with standard
/// deviation noise_fraction * peak. Deterministic for a given seed.
CrossSection synthetic_cross_section(const FitModelParams& truth, const Grid1D& grid, double noise_fraction,
                                     std::uint64_t seed);

enum FitParam : unsigned {
  kFitWaist = 1u << 0,
  kFitGap = 1u << 1,
  kFitKappa = 1u << 2,
  kFitPhase = 1u << 3,
  kFitCenter = 1u << 4,
  kFitBackground = 1u << 5,
  kFitScale = 1u << 6,
};

struct FitResult {
  FitModelParams params;
  double residual = 0.0;  // ||model - data|| / ||data||
  bool converged = false;
  int iterations = 0;
  std::vector<double> history;
};

FitResult fit_cross_section(const CrossSection& data, const FitModelParams& init, unsigned free_mask,
                            const SimplexOptions& options = {});

/// Model values at the data positions.
std::vector<double> model_at(const FitModelParams& params, std::span<const double> positions);

}  // namespace qlitho
