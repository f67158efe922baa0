#include "qlitho/excitation.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "qlitho/errors.hpp"

namespace qlitho {
namespace {

Complex ipow(Complex z, int n) {
  Complex r{1.0, 0.0};
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

const Grid1D& shared_grid(std::span<const FocalField* const> fields) {
  if (fields.empty()) throw ValidationError("at least one contribution is required");
  const Grid1D& g = fields.front()->field.grid();
  for (const auto* f : fields) {
    if (!(f->field.grid() == g)) throw ValidationError("contributions must share one focal grid");
  }
  return g;
}

}  // namespace

double QuantumPhaseConfig::quantum_period() const { return 2.0 * std::numbers::pi / omega_a(); }

QuantumPhaseConfig phase_config(const OpticalParams& optics, ExcitationOrder order) {
  return {optics.omega0(), order};
}

Complex separated_amplitude(std::span<const Complex> amplitudes, std::span<const double> delays,
                            const QuantumPhaseConfig& phase) {
  const int n = phase.order.value();
  Complex sum{};
  for (std::size_t k = 0; k < amplitudes.size(); ++k)
    sum += std::polar(1.0, phase.omega_a() * delays[k]) * ipow(amplitudes[k], n);
  return sum;
}

Complex overlapped_amplitude(std::span<const Complex> amplitudes, std::span<const double> phases,
                             const QuantumPhaseConfig& phase) {
  Complex field{};
  for (std::size_t k = 0; k < amplitudes.size(); ++k) field += std::polar(1.0, phases[k]) * amplitudes[k];
  return ipow(field, phase.order.value());
}

ComplexField excitation_amplitude_separated(std::span<const DelayedField> contribs, const QuantumPhaseConfig& phase) {
  std::vector<const FocalField*> ptrs;
  for (const auto& c : contribs) ptrs.push_back(&c.focal);
  const Grid1D& grid = shared_grid(ptrs);

  std::vector<double> delays;
  for (const auto& c : contribs) delays.push_back(c.delay);
  std::vector<Complex> amps(contribs.size());
  ComplexField out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t k = 0; k < contribs.size(); ++k) amps[k] = contribs[k].focal.field[i];
    out[i] = separated_amplitude(amps, delays, phase);
  }
  return out;
}

IntensityProfile excitation_intensity_separated(std::span<const DelayedField> contribs,
                                                const QuantumPhaseConfig& phase) {
  const auto amp = excitation_amplitude_separated(contribs, phase);
  std::vector<double> values(amp.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = std::norm(amp[i]);
  return IntensityProfile(amp.grid(), std::move(values));
}

IntensityProfile excitation_intensity_overlapped(std::span<const FocalField> fields, const QuantumPhaseConfig& phase,
                                                 std::span<const double> relative_phases) {
  std::vector<const FocalField*> ptrs;
  for (const auto& f : fields) ptrs.push_back(&f);
  const Grid1D& grid = shared_grid(ptrs);
  if (relative_phases.size() != fields.size()) throw ValidationError("one relative phase per field is required");

  std::vector<Complex> amps(fields.size());
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t k = 0; k < fields.size(); ++k) amps[k] = fields[k].field[i];
    values[i] = std::norm(overlapped_amplitude(amps, relative_phases, phase));
  }
  return IntensityProfile(grid, std::move(values));
}

double envelope_power_integral(double duration, int order) {
  return duration * std::sqrt(std::numbers::pi / static_cast<double>(order));
}

Complex single_pulse_response(const TemporalPulse& pulse, const QuantumPhaseConfig& phase) {
  const int n = phase.order.value();
  return ipow(pulse.amplitude, n) * std::polar(1.0, phase.omega_a() * pulse.delay) *
         envelope_power_integral(pulse.duration, n);
}

Complex time_domain_oracle(std::span<const TemporalPulse> pulses, const QuantumPhaseConfig& phase,
                           std::optional<TimeWindow> window) {
  if (pulses.empty()) throw ValidationError("oracle needs at least one pulse");
  for (const auto& p : pulses) {
    if (!(p.duration > 0.0)) throw ValidationError("pulse duration must be positive");
  }

  // exp(-r^2) = floor at r = sqrt(-ln floor).
  const double reach = std::sqrt(-std::log(kOracleEnvelopeFloor));
  double need_lo = pulses.front().delay, need_hi = pulses.front().delay;
  double t_max = 0.0;
  for (const auto& p : pulses) {
    need_lo = std::min(need_lo, p.delay - reach * p.duration);
    need_hi = std::max(need_hi, p.delay + reach * p.duration);
    t_max = std::max(t_max, p.duration);
  }
  TimeWindow w = window.value_or(TimeWindow{need_lo - 2.0 * t_max, need_hi + 2.0 * t_max});
  if (!(w.start <= need_lo && w.stop >= need_hi))
    throw ValidationError("integration window does not cover every pulse to the envelope floor");

  const int n = phase.order.value();
  const double omega0 = phase.omega0;
  const double omega_a = phase.omega_a();
  auto integrand = [&](double t) {
    Complex field{};
    for (const auto& p : pulses) {
      const double s = (t - p.delay) / p.duration;
      field += p.amplitude * std::exp(-s * s) * std::polar(1.0, -omega0 * (t - p.delay));
    }
    return ipow(field, n) * std::polar(1.0, omega_a * t);
  };

  // Break the window at every pulse center so each panel holds at most one
  // envelope edge.
  std::vector<double> breaks{w.start, w.stop};
  for (const auto& p : pulses) {
    for (double r : {-reach, 0.0, reach}) {
      const double b = p.delay + r * p.duration;
      if (b > w.start && b < w.stop) breaks.push_back(b);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  using Integrator = boost::math::quadrature::gauss_kronrod<double, 61>;
  Complex total{};
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double err = 0.0;
    total += Integrator::integrate(integrand, breaks[i], breaks[i + 1], 12, 1e-13, &err);
  }
  return total;
}

}  // namespace qlitho
