#include "qlitho/metrics.hpp"

#include <cmath>
#include <limits>

#include "qlitho/errors.hpp"

namespace qlitho {
namespace {

double crossing(const IntensityProfile& p, std::size_t a, std::size_t b, double level) {
  const double xa = p.grid().coordinate(a);
  const double xb = p.grid().coordinate(b);
  const double va = p[a], vb = p[b];
  if (va == vb) return 0.5 * (xa + xb);
  return xa + (level - va) / (vb - va) * (xb - xa);
}

}  // namespace

MainLobe find_main_lobe(const IntensityProfile& profile) {
  const std::size_t n = profile.size();
  std::size_t imax = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (profile[i] > profile[imax]) imax = i;
  }
  const double peak = profile[imax];
  if (!(peak > 0.0)) throw ValidationError("profile has no positive peak");

  const double tie = 1e-12 * peak;
  std::size_t first = imax, last = imax;
  while (first > 0 && peak - profile[first - 1] <= tie) --first;
  while (last + 1 < n && peak - profile[last + 1] <= tie) ++last;
  if (first == 0 || last == n - 1) throw ValidationError("main peak touches the grid edge");

  const double floor = kLobeFloor * peak;
  std::size_t left = first;
  while (left > 0 && profile[left - 1] <= profile[left] && profile[left] > floor) --left;
  std::size_t right = last;
  while (right + 1 < n && profile[right + 1] <= profile[right] && profile[right] > floor) ++right;

  const double pos = 0.5 * (profile.grid().coordinate(first) + profile.grid().coordinate(last));
  return {first, last, left, right, pos, last - first + 1 >= 3};
}

FwhmMeasurement measure_fwhm(const IntensityProfile& profile) {
  const MainLobe lobe = find_main_lobe(profile);
  const double half = 0.5 * profile.peak();

  std::size_t i = lobe.peak_first;
  while (i > lobe.left && profile[i] >= half) --i;
  if (profile[i] >= half) throw NumericalError("main lobe never drops to half maximum on the left");
  const double left = crossing(profile, i, i + 1, half);

  std::size_t j = lobe.peak_last;
  while (j < lobe.right && profile[j] >= half) ++j;
  if (profile[j] >= half) throw NumericalError("main lobe never drops to half maximum on the right");
  const double right = crossing(profile, j - 1, j, half);

  return {right - left, left, right, lobe.plateau};
}

double fwhm_main_lobe(const IntensityProfile& profile) { return measure_fwhm(profile).width; }

double first_zero(const IntensityProfile& profile) {
  const MainLobe lobe = find_main_lobe(profile);
  return profile.grid().coordinate(lobe.right) - lobe.peak_position;
}

SideLobe largest_side_lobe(const IntensityProfile& profile) {
  const MainLobe lobe = find_main_lobe(profile);
  const double peak = profile.peak();
  SideLobe best;
  auto consider = [&](std::size_t i) {
    const bool rising = i == 0 || profile[i] >= profile[i - 1];
    const bool falling = i + 1 == profile.size() || profile[i] > profile[i + 1];
    if (!(rising && falling) || i == 0 || i + 1 == profile.size()) return;
    const double level = profile[i] / peak;
    const double x = profile.grid().coordinate(i);
    const double dist = std::abs(x - lobe.peak_position);
    if (!best.found || level > best.level || (level == best.level && dist < best.distance)) {
      best = {true, level, x, dist};
    }
  };
  for (std::size_t i = 0; i < lobe.left; ++i) consider(i);
  for (std::size_t i = lobe.right + 1; i < profile.size(); ++i) consider(i);
  return best;
}

double contrast_only_width(int order) {
  if (order < 1) throw ValidationError("order must be >= 1");
  return 1.0 / std::sqrt(static_cast<double>(order));
}

double contrast_only_fwhm_ratio(const IntensityProfile& reference, int order) {
  if (order < 1) throw ValidationError("order must be >= 1");
  std::vector<double> powered(reference.size());
  for (std::size_t i = 0; i < powered.size(); ++i) powered[i] = std::pow(reference[i], order);
  const IntensityProfile nth(reference.grid(), std::move(powered));
  return fwhm_main_lobe(nth) / fwhm_main_lobe(reference);
}

double penalty_factor(int segments, int order) {
  if (segments < 1 || order < 1) throw ValidationError("segments and order must be >= 1");
  return std::pow(static_cast<double>(segments), 2.0 * (order - 1));
}

SpotMetrics compute_spot_metrics(const IntensityProfile& spot, const IntensityProfile& reference, double central_raw,
                                 double single_aperture_raw) {
  SpotMetrics m;
  const auto fw = measure_fwhm(spot);
  m.fwhm_main = fw.width;
  m.plateau = fw.plateau;
  m.fwhm_ratio_vs_reference = fw.width / fwhm_main_lobe(reference);
  m.first_zero = first_zero(spot);
  const auto side = largest_side_lobe(spot);
  m.side_lobe_peak = side.level;
  m.side_lobe_position = side.position;
  m.side_lobe_distance = side.distance;
  m.central_intensity_raw = central_raw;
  m.penalty_vs_single_aperture = central_raw > 0.0 ? single_aperture_raw / central_raw : std::numeric_limits<double>::infinity();
  return m;
}

}  // namespace qlitho
