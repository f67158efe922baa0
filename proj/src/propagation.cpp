#include "qlitho/propagation.hpp"

#include <cmath>
#include <numbers>

#include "chirp_z.hpp"
#include "qlitho/errors.hpp"

namespace qlitho {
namespace {

void check_focus_inputs(const OpticalParams& optics, const Grid1D& focal_grid) {
  if (optics.aperture() / optics.focal_length() > OpticalParams::kMaxApertureRatio)
    throw ValidationError("paraxial limit violated: D/f must not exceed 0.2");
  if (focal_grid.spacing() * kMinSamplesPerSpot > one_photon_width(optics) * (1.0 + 1e-12))
    throw ValidationError("focal grid too coarse: fewer than 8 samples per lambda f / D");
}

double transform_alpha(const OpticalParams& optics) { return 2.0 * std::numbers::pi / optics.lambda_f(); }

}  // namespace

FocalField focus(const ComplexField& lens_field, const OpticalParams& optics, const Grid1D& focal_grid,
                 std::string label) {
  check_focus_inputs(optics, focal_grid);
  return {lens_transform(lens_field, optics.lambda_f(), focal_grid), std::move(label)};
}

ComplexField lens_transform(const ComplexField& lens_field, double lambda_f, const Grid1D& focal_grid) {
  if (!(lambda_f > 0.0)) throw ValidationError("lambda * f must be positive");
  const Grid1D& lens = lens_field.grid();
  auto values = detail::chirp_z(lens_field.values(), lens.coordinate(0), lens.spacing(), focal_grid.coordinate(0),
                                focal_grid.spacing(), focal_grid.size(), 2.0 * std::numbers::pi / lambda_f);
  const double scale = lens.spacing() / std::sqrt(lambda_f);
  for (auto& v : values) v *= scale;
  return ComplexField(focal_grid, std::move(values));
}

FocalField focus_quadrature(const ComplexField& lens_field, const OpticalParams& optics, const Grid1D& focal_grid,
                            std::string label) {
  check_focus_inputs(optics, focal_grid);
  ComplexField out(focal_grid);
  for (std::size_t m = 0; m < focal_grid.size(); ++m)
    out[m] = focal_amplitude_at(lens_field, optics, focal_grid.coordinate(m));
  return {std::move(out), std::move(label)};
}

Complex focal_amplitude_at(const ComplexField& lens_field, const OpticalParams& optics, double x_f) {
  const Grid1D& lens = lens_field.grid();
  const double alpha = transform_alpha(optics);
  Complex sum{0.0, 0.0};
  for (std::size_t l = 0; l < lens.size(); ++l) {
    const Complex v = lens_field[l];
    if (v == Complex{}) continue;
    sum += v * std::polar(1.0, -alpha * lens.coordinate(l) * x_f);
  }
  return sum * (lens.spacing() / std::sqrt(optics.lambda_f()));
}

double one_photon_width(const OpticalParams& optics) { return optics.lambda_f() / optics.aperture(); }

double one_photon_width(double wavelength, double focal_length, double aperture) {
  if (!(wavelength > 0.0) || !(focal_length > 0.0) || !(aperture > 0.0))
    throw ValidationError("wavelength, focal length and aperture must be positive");
  return wavelength * focal_length / aperture;
}

Grid1D aperture_grid(const OpticalParams& optics, std::size_t n) { return Grid1D(0.0, optics.aperture(), n); }

Grid1D focal_grid_for(const OpticalParams& optics, std::size_t n, double extent_in_spots) {
  return Grid1D(0.0, extent_in_spots * one_photon_width(optics), n);
}

IntensityProfile diffraction_limited_spot(const OpticalParams& optics, const Grid1D& focal_grid) {
  return diffraction_limited_spot(optics, focal_grid, aperture_grid(optics, focal_grid.size()));
}

IntensityProfile diffraction_limited_spot(const OpticalParams& optics, const Grid1D& focal_grid,
                                          const Grid1D& lens_grid) {
  const double half = 0.5 * optics.aperture();
  auto lens = uniform_segment_field(lens_grid, -half, half, 1.0);
  const auto focal = focus(lens.field, optics, focal_grid, "reference");
  std::vector<double> values(focal_grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = std::norm(focal.field[i]);
  return IntensityProfile(focal_grid, std::move(values)).peak_normalized();
}

}  // namespace qlitho
