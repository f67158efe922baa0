#pragma once

// Sample axes, complex fields and optical parameters shared by every stage
// of the simulator. All quantities are SI (meters, seconds, rad/s) unless
// an OpticalParams is built in dimensionless mode.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qlitho {

using Complex = std::complex<double>;

/// Uniform axis with samples at bin centers:
/// x_i = center - extent/2 + (i + 1/2) * spacing.
class Grid1D {
 public:
  Grid1D(double center, double extent, std::size_t n);

  double center() const { return center_; }
  double extent() const { return extent_; }
  std::size_t size() const { return n_; }
  double spacing() const { return extent_ / static_cast<double>(n_); }
  double lower() const { return center_ - 0.5 * extent_; }
  double upper() const { return center_ + 0.5 * extent_; }

  double coordinate(std::size_t i) const {
    return lower() + (static_cast<double>(i) + 0.5) * spacing();
  }
  /// Index of the bin containing x, clamped to [0, n-1].
  std::size_t nearest_index(double x) const;
  std::vector<double> coordinates() const;

  bool operator==(const Grid1D&) const = default;

 private:
  double center_;
  double extent_;
  std::size_t n_;
};

Grid1D make_grid(double center, double extent, std::size_t n);

class ComplexField {
 public:
  explicit ComplexField(Grid1D grid);
  ComplexField(Grid1D grid, std::vector<Complex> values);

  const Grid1D& grid() const { return grid_; }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }
  Complex operator[](std::size_t i) const { return values_[i]; }
  Complex& operator[](std::size_t i) { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  ComplexField& operator+=(const ComplexField& other);
  ComplexField& operator*=(Complex factor);

 private:
  Grid1D grid_;
  std::vector<Complex> values_;
};

ComplexField operator+(ComplexField lhs, const ComplexField& rhs);
ComplexField operator*(Complex factor, ComplexField field);

/// Sum |values|^2 * spacing.
double energy(const ComplexField& field);

/// A constructed lens-plane field plus a flag raised when the requested
/// support missed the grid entirely.
struct ShapedField {
  ComplexField field;
  bool empty_support = false;
};

/// Flat-top amplitude on lo <= x < hi (bin centers decide membership).
ShapedField uniform_segment_field(const Grid1D& grid, double lo, double hi, Complex amplitude);

/// amplitude * exp(-x^2 / waist^2) outside the central gap |x| <= gap/2.
ShapedField gaussian_with_gap_field(const Grid1D& grid, double waist, double gap, Complex amplitude);

/// amplitude * exp(-x^2 / waist^2) with no gap.
ComplexField gaussian_field(const Grid1D& grid, double waist, Complex amplitude);

/// Wavelength, focal length and aperture of the focusing lens.
///
/// In physical mode the carrier is omega0 = 2 pi c / lambda with c the
/// vacuum speed of light. Dimensionless mode sets c = 1.
class OpticalParams {
 public:
  static constexpr double kSpeedOfLight = 299792458.0;
  static constexpr double kMaxApertureRatio = 0.2;

  OpticalParams(double wavelength, double focal_length, double aperture,
                double light_speed = kSpeedOfLight);

  /// lambda = f = 1, c = 1.
  static OpticalParams dimensionless(double aperture);

  double wavelength() const { return wavelength_; }
  double focal_length() const { return focal_length_; }
  double aperture() const { return aperture_; }
  double light_speed() const { return light_speed_; }
  double omega0() const;
  double lambda_f() const { return wavelength_ * focal_length_; }

  bool operator==(const OpticalParams&) const = default;

 private:
  double wavelength_;
  double focal_length_;
  double aperture_;
  double light_speed_;
};

/// Desk-scale defaults: 778 nm, f = 0.1 m, D = 1 cm.
OpticalParams default_optics();

/// Number of photons N absorbed in the lithographic transition.
class ExcitationOrder {
 public:
  explicit ExcitationOrder(int n);
  int value() const { return n_; }
  bool operator==(const ExcitationOrder&) const = default;

 private:
  int n_;
};

/// One temporally isolated pulse: its lens-plane field and arrival delay.
struct PulseContribution {
  ComplexField lens_field;
  double delay = 0.0;
  std::string label;
};

}  // namespace qlitho
