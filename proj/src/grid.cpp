#include "qlitho/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qlitho/errors.hpp"

namespace qlitho {

Grid1D::Grid1D(double center, double extent, std::size_t n) : center_(center), extent_(extent), n_(n) {
  if (n < 2) throw ValidationError("grid needs at least 2 samples");
  if (!(extent > 0.0) || !std::isfinite(extent)) throw ValidationError("grid extent must be positive");
  if (!std::isfinite(center)) throw ValidationError("grid center must be finite");
}

std::size_t Grid1D::nearest_index(double x) const {
  const double pos = std::floor((x - lower()) / spacing());
  if (pos <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(pos), n_ - 1);
}

std::vector<double> Grid1D::coordinates() const {
  std::vector<double> xs(n_);
  for (std::size_t i = 0; i < n_; ++i) xs[i] = coordinate(i);
  return xs;
}

Grid1D make_grid(double center, double extent, std::size_t n) { return Grid1D(center, extent, n); }

ComplexField::ComplexField(Grid1D grid) : grid_(grid), values_(grid.size()) {}

ComplexField::ComplexField(Grid1D grid, std::vector<Complex> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw ValidationError("field length does not match grid size");
}

ComplexField& ComplexField::operator+=(const ComplexField& other) {
  if (!(grid_ == other.grid_)) throw ValidationError("cannot add fields on different grids");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

ComplexField& ComplexField::operator*=(Complex factor) {
  for (auto& v : values_) v *= factor;
  return *this;
}

ComplexField operator+(ComplexField lhs, const ComplexField& rhs) { return lhs += rhs; }

ComplexField operator*(Complex factor, ComplexField field) { return field *= factor; }

double energy(const ComplexField& field) {
  double sum = 0.0;
  for (const auto& v : field.values()) sum += std::norm(v);
  return sum * field.grid().spacing();
}

ShapedField uniform_segment_field(const Grid1D& grid, double lo, double hi, Complex amplitude) {
  if (!(lo < hi)) throw ValidationError("segment needs lo < hi");
  ComplexField field(grid);
  bool any = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.coordinate(i);
    if (x >= lo && x < hi) {
      field[i] = amplitude;
      any = true;
    }
  }
  return {std::move(field), !any};
}

ShapedField gaussian_with_gap_field(const Grid1D& grid, double waist, double gap, Complex amplitude) {
  if (!(waist > 0.0)) throw ValidationError("waist must be positive");
  if (gap < 0.0) throw ValidationError("gap must be non-negative");
  ComplexField field(grid);
  if (gap >= grid.extent()) return {std::move(field), true};
  const double half_gap = 0.5 * gap;
  bool any = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.coordinate(i);
    if (gap == 0.0 || std::abs(x) > half_gap) {
      field[i] = amplitude * std::exp(-(x * x) / (waist * waist));
      any = true;
    }
  }
  return {std::move(field), !any};
}

ComplexField gaussian_field(const Grid1D& grid, double waist, Complex amplitude) {
  if (!(waist > 0.0)) throw ValidationError("waist must be positive");
  ComplexField field(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.coordinate(i);
    field[i] = amplitude * std::exp(-(x * x) / (waist * waist));
  }
  return field;
}

OpticalParams::OpticalParams(double wavelength, double focal_length, double aperture, double light_speed)
    : wavelength_(wavelength), focal_length_(focal_length), aperture_(aperture), light_speed_(light_speed) {
  if (!(wavelength > 0.0) || !(focal_length > 0.0) || !(aperture > 0.0) || !(light_speed > 0.0))
    throw ValidationError("wavelength, focal length, aperture and light speed must be positive");
  if (aperture / focal_length > kMaxApertureRatio)
    throw ValidationError("paraxial limit violated: D/f must not exceed 0.2");
}

OpticalParams OpticalParams::dimensionless(double aperture) { return OpticalParams(1.0, 1.0, aperture, 1.0); }

double OpticalParams::omega0() const { return 2.0 * std::numbers::pi * light_speed_ / wavelength_; }

OpticalParams default_optics() { return OpticalParams(778e-9, 0.1, 0.01); }

ExcitationOrder::ExcitationOrder(int n) : n_(n) {
  if (n < 1) throw ValidationError("excitation order must be >= 1");
}

}  // namespace qlitho
