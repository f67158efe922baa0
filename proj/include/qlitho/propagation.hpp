#pragma once

// Ideal thin-lens Fourier transform from the lens plane to the back focal
// plane, paraxial regime:
//
//   E(x_f) = 1/sqrt(lambda f) * sum_l eps(x_l) exp(-i 2 pi x_l x_f / (lambda f)) dx_l
//
// The prefactor makes the transform energy preserving.

#include <cstddef>
#include <string>

#include "qlitho/grid.hpp"
#include "qlitho/intensity.hpp"

namespace qlitho {

struct FocalField {
  ComplexField field;
  std::string source_label;
};

/// Minimum focal samples per one-photon spot width lambda f / D.
inline constexpr double kMinSamplesPerSpot = 8.0;

/// Production transform (chirp-z, O(n log n)).
FocalField focus(const ComplexField& lens_field, const OpticalParams& optics, const Grid1D& focal_grid,
                 std::string label = {});

/// Reference transform by direct quadrature, O(n_lens * n_focal).
FocalField focus_quadrature(const ComplexField& lens_field, const OpticalParams& optics, const Grid1D& focal_grid,
                            std::string label = {});

/// Unchecked chirp-z transform for an arbitrary lambda*f product. Used by
/// models that rescale the focal axis; prefer focus().
ComplexField lens_transform(const ComplexField& lens_field, double lambda_f, const Grid1D& focal_grid);

/// Focal amplitude at a single point by direct quadrature.
Complex focal_amplitude_at(const ComplexField& lens_field, const OpticalParams& optics, double x_f);

/// lambda f / D.
double one_photon_width(const OpticalParams& optics);
double one_photon_width(double wavelength, double focal_length, double aperture);

/// Lens grid spanning exactly the aperture [-D/2, D/2].
Grid1D aperture_grid(const OpticalParams& optics, std::size_t n = 4096);

/// Focal grid centered on axis spanning extent_in_spots * lambda f / D.
Grid1D focal_grid_for(const OpticalParams& optics, std::size_t n = 4096, double extent_in_spots = 40.0);

/// |focus(full uniform aperture)|^2, peak-normalized. The lens grid has as
/// many samples as the focal grid unless given explicitly.
IntensityProfile diffraction_limited_spot(const OpticalParams& optics, const Grid1D& focal_grid);
IntensityProfile diffraction_limited_spot(const OpticalParams& optics, const Grid1D& focal_grid,
                                          const Grid1D& lens_grid);

}  // namespace qlitho
