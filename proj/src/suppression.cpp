#include "qlitho/suppression.hpp"

#include <cmath>
#include <numbers>

#include "qlitho/errors.hpp"
#include "qlitho/metrics.hpp"
#include "qlitho/propagation.hpp"

namespace qlitho {
namespace {

constexpr double kRejected = 1e6;

struct BaseSpot {
  ComplexField amplitude;
  IntensityProfile intensity;
};

BaseSpot base_spot(const SegmentedLensConfig& base) {
  if (base.segments.size() != 2 || base.suppression)
    throw ValidationError("suppression needs a two-segment base configuration without an extra pulse");
  auto spot = run_spot(base);
  return {std::move(spot.amplitude), std::move(spot.raw)};
}

Complex power(Complex z, int n) {
  Complex r{1.0, 0.0};
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

IntensityProfile combine(const ComplexField& base_amplitude, const FocalField& extra, int order, double phase) {
  const Complex rot = std::polar(1.0, phase);
  std::vector<double> values(base_amplitude.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = std::norm(base_amplitude[i] + rot * power(extra.field[i], order));
  return IntensityProfile(base_amplitude.grid(), std::move(values));
}

double wrap_phase(double phase) {
  const double two_pi = 2.0 * std::numbers::pi;
  return phase - two_pi * std::floor(phase / two_pi);
}

}  // namespace

double side_lobe_objective(const IntensityProfile& spot, double exclusion) {
  const double peak = spot.peak();
  if (!(peak > 0.0)) throw ValidationError("spot has no positive peak");
  bool any = false;
  double worst = 0.0;
  for (std::size_t i = 0; i < spot.size(); ++i) {
    if (std::abs(spot.grid().coordinate(i)) <= exclusion) continue;
    any = true;
    worst = std::max(worst, spot[i] / peak);
  }
  if (!any) throw ValidationError("exclusion window covers the whole grid");
  return worst;
}

double main_lobe_half_extent(const IntensityProfile& spot) {
  const auto lobe = find_main_lobe(spot);
  return std::max(std::abs(spot.grid().coordinate(lobe.left)), std::abs(spot.grid().coordinate(lobe.right)));
}

SuppressionParams default_suppression_init(const SegmentedLensConfig& base, double amp) {
  const auto spot = base_spot(base);
  const auto side = largest_side_lobe(spot.intensity);
  const double s = side.found ? side.distance : 2.0 * one_photon_width(base.optics);

  const SuppressionPulse probe{-s, s, amp, 0.0};
  const auto lens = suppression_lens_field(base.grids.lens, base.optics, probe);
  const Complex extra = power(focal_amplitude_at(lens, base.optics, s), base.order.value());
  const std::size_t i = base.grids.focal.nearest_index(s);
  const double phase = wrap_phase(std::arg(spot.amplitude[i]) + std::numbers::pi - std::arg(extra));

  const double omega_a = phase_config(base.optics, base.order).omega_a();
  return {-s, s, amp, phase, phase / omega_a};
}

SuppressionResult optimize_suppression(const SegmentedLensConfig& base, const SuppressionParams& init,
                                       const SuppressionOptions& options) {
  const auto spot = base_spot(base);
  const int order = base.order.value();
  const double d1 = one_photon_width(base.optics);
  const double exclusion = main_lobe_half_extent(spot.intensity);
  const double width0 = fwhm_main_lobe(spot.intensity);
  const double baseline = side_lobe_objective(spot.intensity, exclusion);
  const Grid1D& focal_grid = base.grids.focal;

  auto decode = [&](std::span<const double> p) {
    SuppressionParams q;
    q.s2 = std::abs(p[0]) * d1;
    q.s1 = -q.s2;
    q.amp = std::abs(p[1]);
    q.phase = wrap_phase(p[2] * std::numbers::pi);
    return q;
  };
  auto evaluate = [&](const SuppressionParams& q, double* side_out) {
    if (q.s2 > focal_grid.upper()) return kRejected;
    const SuppressionPulse pulse{q.s1, q.s2, q.amp, 0.0};
    const auto extra = focus(suppression_lens_field(base.grids.lens, base.optics, pulse), base.optics, focal_grid);
    const auto total = combine(spot.amplitude, extra, order, q.phase);
    const double side = side_lobe_objective(total, exclusion);
    if (side_out) *side_out = side;
    double width = 0.0;
    try {
      width = fwhm_main_lobe(total);
    } catch (const std::exception&) {
      return kRejected;
    }
    const double excess = std::max(0.0, std::abs(width / width0 - 1.0) - options.width_tolerance);
    return side + options.width_penalty * excess;
  };

  const std::vector<double> start{std::abs(init.s2 - init.s1) * 0.5 / d1, init.amp, init.phase / std::numbers::pi};
  const std::vector<double> steps{0.1, 0.1, 0.25};
  const auto fit = nelder_mead([&](std::span<const double> p) { return evaluate(decode(p), nullptr); }, start, steps,
                               options.simplex);

  SuppressionResult result;
  result.baseline = baseline;
  result.exclusion = exclusion;
  result.converged = fit.converged;
  result.iterations = fit.iterations;
  result.history = fit.history;
  result.params = decode(fit.x);
  double side = 0.0;
  const double penalized = evaluate(result.params, &side);
  if (!(penalized <= baseline)) {
    result.params = SuppressionParams{init.s1, init.s2, 0.0, 0.0, 0.0};
    side = baseline;
  }
  result.objective = side;
  result.params.delay = result.params.phase / phase_config(base.optics, base.order).omega_a();
  return result;
}

SegmentedLensConfig apply_suppression(const SegmentedLensConfig& base, const SuppressionParams& params) {
  return suppression_pulse_config(base, params.s1, params.s2, params.amp, params.delay);
}

TargetResidual residual_to_target(const SegmentedLensConfig& config, const IntensityProfile& target) {
  if (!(target.peak() > 0.0)) throw ValidationError("target spot is identically zero");
  if (!(target.grid() == config.grids.focal)) throw ValidationError("target must share the focal grid");
  auto achieved = run_spot(config).intensity;
  auto normalized = target.peak_normalized();
  double diff = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < achieved.size(); ++i) {
    diff += (achieved[i] - normalized[i]) * (achieved[i] - normalized[i]);
    norm += normalized[i] * normalized[i];
  }
  return {std::move(normalized), std::move(achieved), std::sqrt(diff / norm)};
}

}  // namespace qlitho
