#include "qlitho/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qlitho/errors.hpp"
#include "qlitho/propagation.hpp"

namespace qlitho {
namespace {

constexpr std::size_t kScanPoints = 128;
constexpr double kTuneTolerance = 1e-4;

ComplexField profile_field(const SegmentedLensConfig& config) {
  const Grid1D& lens = config.grids.lens;
  const double half = 0.5 * config.optics.aperture();
  ComplexField field = uniform_segment_field(lens, -half, half, 1.0).field;
  if (config.profile.kind == ApertureProfile::Kind::GaussianWithGap) {
    const auto g = gaussian_with_gap_field(lens, config.profile.waist, config.profile.gap, 1.0);
    for (std::size_t i = 0; i < lens.size(); ++i) field[i] *= g.field[i];
  }
  return field;
}

ComplexField masked(const ComplexField& field, double lo, double hi) {
  ComplexField out(field.grid());
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double x = field.grid().coordinate(i);
    if (x >= lo && x < hi) out[i] = field[i];
  }
  return out;
}

double wrap(double value, double period) { return value - period * std::floor(value / period); }

// Golden-section maximization of f on [a, b].
template <typename F>
double golden_max(F&& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (std::abs(b - a) > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

ScenarioGrids default_grids(const OpticalParams& optics, std::size_t n, double focal_extent_in_spots) {
  return {aperture_grid(optics, n), focal_grid_for(optics, n, focal_extent_in_spots)};
}

void validate(const SegmentedLensConfig& config) {
  if (config.segments.empty()) throw ValidationError("configuration has no segments");
  const double half = 0.5 * config.optics.aperture();
  const double slack = 1e-12 * config.optics.aperture();
  auto sorted = config.segments;
  std::sort(sorted.begin(), sorted.end(), [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& s = sorted[i];
    if (!(s.lo < s.hi)) throw ValidationError("segment needs lo < hi");
    if (s.lo < -half - slack || s.hi > half + slack) throw ValidationError("segment extends beyond the aperture");
    if (i > 0 && s.lo < sorted[i - 1].hi - slack) throw ValidationError("segments overlap");
  }
  if (config.profile.kind == ApertureProfile::Kind::GaussianWithGap &&
      (!(config.profile.waist > 0.0) || config.profile.gap < 0.0))
    throw ValidationError("gaussian profile needs waist > 0 and gap >= 0");
  if (!(config.pulse_duration > 0.0)) throw ValidationError("pulse duration must be positive");
  if (config.suppression) {
    const auto& f = config.grids.focal;
    for (double s : {config.suppression->s1, config.suppression->s2}) {
      if (s < f.lower() || s > f.upper()) throw ValidationError("suppression offset lies outside the focal grid");
    }
  }
  if (config.enforce_separation) {
    std::vector<double> delays;
    for (const auto& s : config.segments) delays.push_back(s.delay);
    if (config.suppression) delays.push_back(config.suppression->delay);
    std::sort(delays.begin(), delays.end());
    for (std::size_t i = 1; i < delays.size(); ++i) {
      if (delays[i] - delays[i - 1] < kSeparationInDurations * config.pulse_duration)
        throw ValidationError("pulses are not separated by at least 8 pulse durations");
    }
  }
}

SegmentedLensConfig single_aperture_config(const OpticalParams& optics, ExcitationOrder order,
                                           std::optional<ScenarioGrids> grids) {
  const double half = 0.5 * optics.aperture();
  return {optics, order, {Segment{-half, half}}, grids.value_or(default_grids(optics))};
}

SegmentedLensConfig two_segment_config(const OpticalParams& optics, ExcitationOrder order, double delay,
                                       std::optional<ScenarioGrids> grids) {
  const double half = 0.5 * optics.aperture();
  SegmentedLensConfig config{optics, order, {Segment{-half, 0.0, 1.0, 0.0}, Segment{0.0, half, 1.0, delay}},
                             grids.value_or(default_grids(optics))};
  return config;
}

SegmentedLensConfig m_segment_config(const OpticalParams& optics, ExcitationOrder order, int segments,
                                     std::span<const double> delays, std::optional<ScenarioGrids> grids) {
  if (segments < 2) throw ValidationError("m-segment configuration needs M >= 2");
  if (delays.size() != static_cast<std::size_t>(segments)) throw ValidationError("one delay per segment is required");
  const double d = optics.aperture();
  SegmentedLensConfig config{optics, order, {}, grids.value_or(default_grids(optics))};
  for (int k = 0; k < segments; ++k) {
    // Edges are computed from k / M so the last segment ends exactly at D/2.
    const double lo = d * (static_cast<double>(k) / segments - 0.5);
    const double hi = d * (static_cast<double>(k + 1) / segments - 0.5);
    config.segments.push_back(Segment{lo, hi, 1.0, delays[static_cast<std::size_t>(k)]});
  }
  return config;
}

ComplexField suppression_lens_field(const Grid1D& lens_grid, const OpticalParams& optics,
                                    const SuppressionPulse& pulse) {
  const double half = 0.5 * optics.aperture();
  const double alpha = 2.0 * std::numbers::pi / optics.lambda_f();
  ComplexField field(lens_grid);
  for (std::size_t i = 0; i < lens_grid.size(); ++i) {
    const double x = lens_grid.coordinate(i);
    if (x < -half || x >= half) continue;
    field[i] = pulse.amplitude * (std::polar(1.0, alpha * x * pulse.s1) + std::polar(1.0, alpha * x * pulse.s2));
  }
  return field;
}

std::vector<PulseContribution> pulse_contributions(const SegmentedLensConfig& config) {
  validate(config);
  const ComplexField full = profile_field(config);
  const double full_energy = energy(full);

  std::vector<PulseContribution> out;
  double total = 0.0;
  for (std::size_t k = 0; k < config.segments.size(); ++k) {
    const auto& s = config.segments[k];
    ComplexField f = masked(full, s.lo, s.hi);
    f *= s.amplitude;
    if (config.policy == EnergyPolicy::FixedPerSegment) {
      const double e = energy(f);
      if (e > 0.0) f *= std::abs(s.amplitude) * std::sqrt(full_energy / e);
    }
    total += energy(f);
    out.push_back({std::move(f), s.delay, "segment " + std::to_string(k)});
  }
  if (config.policy == EnergyPolicy::FixedTotal && total > 0.0) {
    const double scale = std::sqrt(full_energy / total);
    if (scale != 1.0) {
      for (auto& c : out) c.lens_field *= scale;
    }
  }
  if (config.suppression) {
    out.push_back({suppression_lens_field(config.grids.lens, config.optics, *config.suppression),
                   config.suppression->delay, "suppression"});
  }
  return out;
}

namespace {

std::vector<Complex> central_fields(const std::vector<PulseContribution>& contribs, const OpticalParams& optics) {
  std::vector<Complex> out;
  for (const auto& c : contribs) out.push_back(focal_amplitude_at(c.lens_field, optics, 0.0));
  return out;
}

std::vector<double> delays_of(const std::vector<PulseContribution>& contribs) {
  std::vector<double> out;
  for (const auto& c : contribs) out.push_back(c.delay);
  return out;
}

}  // namespace

Complex central_amplitude(const SegmentedLensConfig& config) {
  const auto contribs = pulse_contributions(config);
  const auto fields = central_fields(contribs, config.optics);
  const auto delays = delays_of(contribs);
  return separated_amplitude(fields, delays, phase_config(config.optics, config.order));
}

double central_intensity(const SegmentedLensConfig& config) { return std::norm(central_amplitude(config)); }

TuneResult tune_delay(const SegmentedLensConfig& config, TuneMode mode) {
  const auto contribs = pulse_contributions(config);
  const auto phase = phase_config(config.optics, config.order);
  const auto fields = central_fields(contribs, config.optics);
  const std::size_t nseg = config.segments.size();
  const double period = phase.quantum_period();

  std::vector<double> delays = delays_of(contribs);
  const double sign = mode == TuneMode::Bright ? 1.0 : -1.0;
  auto central = [&](double delta) {
    for (std::size_t k = 0; k < nseg; ++k) delays[k] = static_cast<double>(k) * delta;
    return std::norm(separated_amplitude(fields, delays, phase));
  };

  std::vector<double> scan(kScanPoints);
  for (std::size_t i = 0; i < kScanPoints; ++i) scan[i] = central(period * static_cast<double>(i) / kScanPoints);
  const auto [lo_it, hi_it] = std::minmax_element(scan.begin(), scan.end());
  if (!(*hi_it > 0.0) || *hi_it - *lo_it <= 1e-12 * *hi_it) return {0.0, central(0.0), true};

  const std::size_t best = static_cast<std::size_t>((mode == TuneMode::Bright ? hi_it : lo_it) - scan.begin());
  const double step = period / kScanPoints;
  const double start = period * static_cast<double>(best) / kScanPoints;
  double delta = golden_max([&](double d) { return sign * central(d); }, start - step, start + step,
                            kTuneTolerance * period);
  if (sign * central(delta) < sign * scan[best]) delta = start;

  // Two contributions: A(psi) = c0 + c1 exp(i psi) has closed-form extrema,
  // which also makes a dark spot cancel to rounding error.
  if (contribs.size() == 2 && std::abs(fields[0]) > 0.0 && std::abs(fields[1]) > 0.0) {
    const double n = config.order.value();
    double psi = n * (std::arg(fields[0]) - std::arg(fields[1]));
    if (mode == TuneMode::Dark) psi += std::numbers::pi;
    delta = psi / phase.omega_a();
  }
  delta = wrap(delta, period);
  return {delta, central(delta), false};
}

SegmentedLensConfig with_delay_offset(SegmentedLensConfig config, double delta) {
  for (std::size_t k = 0; k < config.segments.size(); ++k) config.segments[k].delay = static_cast<double>(k) * delta;
  return config;
}

SegmentedLensConfig tuned(SegmentedLensConfig config, TuneMode mode) {
  const auto result = tune_delay(config, mode);
  config = with_delay_offset(std::move(config), result.delay);
  config.tuning = mode == TuneMode::Bright ? Tuning::Bright : Tuning::Dark;
  return config;
}

SegmentedLensConfig with_separated_delays(SegmentedLensConfig config, double min_gap) {
  const double period = phase_config(config.optics, config.order).quantum_period();
  double previous = -std::numeric_limits<double>::infinity();
  auto place = [&](double& delay) {
    if (std::isfinite(previous) && delay < previous + min_gap)
      delay += period * std::ceil((previous + min_gap - delay) / period);
    previous = delay;
  };
  for (auto& s : config.segments) place(s.delay);
  if (config.suppression) place(config.suppression->delay);
  return config;
}

SpotResult run_spot(const SegmentedLensConfig& config) {
  const auto contribs = pulse_contributions(config);
  const auto phase = phase_config(config.optics, config.order);

  std::vector<DelayedField> focal;
  for (const auto& c : contribs)
    focal.push_back({focus(c.lens_field, config.optics, config.grids.focal, c.label), c.delay});
  ComplexField amplitude = excitation_amplitude_separated(focal, phase);
  std::vector<double> values(amplitude.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = std::norm(amplitude[i]);
  IntensityProfile raw(config.grids.focal, std::move(values));

  auto reference = diffraction_limited_spot(config.optics, config.grids.focal, config.grids.lens);

  SegmentedLensConfig single = config;
  const double half = 0.5 * config.optics.aperture();
  single.segments = {Segment{-half, half}};
  single.suppression.reset();
  single.enforce_separation = false;
  single.policy = EnergyPolicy::FixedTotal;

  const double central = central_intensity(config);
  const double single_central = central_intensity(single);
  auto normalized = raw.peak_normalized();
  auto metrics = compute_spot_metrics(normalized, reference, central, single_central);
  return {std::move(normalized), std::move(reference), std::move(raw), std::move(amplitude), metrics, config};
}

SegmentedLensConfig suppression_pulse_config(const SegmentedLensConfig& base, double s1, double s2, Complex amplitude,
                                             double delay) {
  if (base.segments.size() != 2) throw ValidationError("suppression pulse needs a two-segment base configuration");
  const auto& f = base.grids.focal;
  for (double s : {s1, s2}) {
    if (s < f.lower() || s > f.upper()) throw ValidationError("suppression offset lies outside the focal grid");
  }
  SegmentedLensConfig config = base;
  config.suppression = SuppressionPulse{s1, s2, amplitude, delay};
  return config;
}

double measured_penalty(const SegmentedLensConfig& config_m, const SegmentedLensConfig& config_1) {
  if (config_m.tuning == Tuning::Dark || config_1.tuning == Tuning::Dark)
    throw ValidationError("penalty is defined for bright-tuned configurations only");
  if (config_m.policy != EnergyPolicy::FixedTotal || config_1.policy != EnergyPolicy::FixedTotal)
    throw ValidationError("penalty is defined under the fixed-total energy policy");
  const double im = central_intensity(config_m);
  if (!(im > 0.0)) throw NumericalError("segmented configuration has no on-axis excitation");
  return central_intensity(config_1) / im;
}

}  // namespace qlitho
