#include "qlitho/intensity.hpp"

#include <algorithm>
#include <cmath>

#include "qlitho/errors.hpp"

namespace qlitho {

IntensityProfile::IntensityProfile(Grid1D grid, std::vector<double> values, Normalization norm)
    : grid_(grid), values_(std::move(values)), norm_(norm) {
  if (values_.size() != grid_.size()) throw ValidationError("intensity length does not match grid size");
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("intensity values must be finite and non-negative");
  }
}

double IntensityProfile::peak() const { return *std::max_element(values_.begin(), values_.end()); }

IntensityProfile IntensityProfile::peak_normalized() const {
  const double p = peak();
  if (!(p > 0.0)) throw ValidationError("cannot peak-normalize an all-zero profile");
  std::vector<double> scaled(values_.size());
  std::transform(values_.begin(), values_.end(), scaled.begin(), [p](double v) { return v / p; });
  return IntensityProfile(grid_, std::move(scaled), Normalization::PeakNormalized);
}

}  // namespace qlitho
