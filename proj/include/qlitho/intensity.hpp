#pragma once

#include <span>
#include <vector>

#include "qlitho/grid.hpp"

namespace qlitho {

enum class Normalization { Raw, PeakNormalized };

/// Non-negative excitation intensity sampled on a focal grid.
class IntensityProfile {
 public:
  IntensityProfile(Grid1D grid, std::vector<double> values, Normalization norm = Normalization::Raw);

  const Grid1D& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }
  Normalization normalization() const { return norm_; }

  double peak() const;
  /// Copy scaled so that the maximum is exactly 1. Throws on an all-zero profile.
  IntensityProfile peak_normalized() const;

 private:
  Grid1D grid_;
  std::vector<double> values_;
  Normalization norm_;
};

}  // namespace qlitho
