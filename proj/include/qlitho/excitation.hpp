#pragma once

// N-photon excitation of a narrow transition by a train of pulses.
//
// Temporally separated pulses excite the transition independently and the
// long-lived excitation amplitudes interfere with the quantum phase
// N * omega0 * tau:
//
//   A(x) = sum_k exp(i N omega0 tau_k) E_k(x)^N,   I(x) = |A(x)|^2.
//
// Overlapping pulses instead add as fields before the N-th power is taken.

#include <optional>
#include <span>
#include <vector>

#include "qlitho/grid.hpp"
#include "qlitho/intensity.hpp"
#include "qlitho/propagation.hpp"

namespace qlitho {

/// Carrier frequency and order; the transition sits at omega_A = N * omega0.
struct QuantumPhaseConfig {
  double omega0;
  ExcitationOrder order;

  double omega_a() const { return order.value() * omega0; }
  /// Delay change that advances the quantum phase by 2 pi.
  double quantum_period() const;
};

QuantumPhaseConfig phase_config(const OpticalParams& optics, ExcitationOrder order);

struct DelayedField {
  FocalField focal;
  double delay = 0.0;
};

/// exp(i N omega0 tau) * a^N summed over contributions for one sample.
Complex separated_amplitude(std::span<const Complex> amplitudes, std::span<const double> delays,
                            const QuantumPhaseConfig& phase);

/// (sum_k exp(i phi_k) a_k)^N for one sample.
Complex overlapped_amplitude(std::span<const Complex> amplitudes, std::span<const double> phases,
                             const QuantumPhaseConfig& phase);

/// Per-sample excitation amplitude A(x) in the separated regime.
ComplexField excitation_amplitude_separated(std::span<const DelayedField> contribs, const QuantumPhaseConfig& phase);

IntensityProfile excitation_intensity_separated(std::span<const DelayedField> contribs,
                                                const QuantumPhaseConfig& phase);

IntensityProfile excitation_intensity_overlapped(std::span<const FocalField> fields, const QuantumPhaseConfig& phase,
                                                 std::span<const double> relative_phases);

/// Gaussian pulse a * exp(-(t - tau)^2 / T^2) on the carrier omega0.
struct TemporalPulse {
  double duration = 100e-15;
  Complex amplitude{1.0, 0.0};
  double delay = 0.0;
};

struct TimeWindow {
  double start;
  double stop;
};

/// Envelope decay that the integration window must reach at both ends.
inline constexpr double kOracleEnvelopeFloor = 1e-12;

/// Resonant N-th order response by adaptive quadrature in the time domain:
///
///   integral [sum_k a_k g(t - tau_k) exp(-i omega0 (t - tau_k))]^N exp(i omega_A t) dt
///
/// With no window the integral runs over every pulse +- 7 durations.
Complex time_domain_oracle(std::span<const TemporalPulse> pulses, const QuantumPhaseConfig& phase,
                           std::optional<TimeWindow> window = std::nullopt);

/// Closed form of the single-pulse response: a^N exp(i N omega0 tau) T sqrt(pi / N).
Complex single_pulse_response(const TemporalPulse& pulse, const QuantumPhaseConfig& phase);

/// T sqrt(pi / N), the time integral of g^N.
double envelope_power_integral(double duration, int order);

}  // namespace qlitho
