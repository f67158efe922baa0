#include <cmath>
#include <numbers>
#include <random>

#include "approx.hpp"
#include "doctest.h"
#include "qlitho/errors.hpp"
#include "qlitho/excitation.hpp"

using namespace qlitho;

namespace {

const QuantumPhaseConfig kPhase2{default_optics().omega0(), ExcitationOrder(2)};

FocalField tilted(const Grid1D& g, Complex amp, double kappa) {
  ComplexField f(g);
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = amp * std::polar(1.0, kappa * g.coordinate(i));
  return {std::move(f), "tilted"};
}

FocalField random_focal(const Grid1D& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexField f(g);
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = {n(rng), n(rng)};
  return {std::move(f), "random"};
}

double first_zero_right(const IntensityProfile& p) {
  // First sample right of the origin where the profile turns from falling to rising.
  std::size_t i = p.grid().nearest_index(0.0) + 1;
  while (i + 1 < p.size() && !(p[i] <= p[i - 1] && p[i] <= p[i + 1])) ++i;
  return p.grid().coordinate(i);
}

}  // namespace

TEST_CASE("quantum phase config") {
  CHECK(kPhase2.omega_a() == 2 * kPhase2.omega0);
  CHECK(kPhase2.quantum_period() * kPhase2.omega_a() == approx(2 * std::numbers::pi));
}

TEST_CASE("single separated contribution gives |E|^(2N) for any delay") {
  const Grid1D g(0.0, 1.0, 64);
  const auto e = random_focal(g, 5);
  for (int n : {1, 2, 4}) {
    const QuantumPhaseConfig q{kPhase2.omega0, ExcitationOrder(n)};
    for (double tau : {0.0, 1.234e-15, -7e-13}) {
      const std::vector<DelayedField> c{{e, tau}};
      const auto I = excitation_intensity_separated(c, q);
      for (std::size_t i = 0; i < g.size(); ++i)
        REQUIRE(I[i] == approx(std::pow(std::norm(e.field[i]), n)).epsilon(1e-12));
    }
  }
}

TEST_CASE("identical fields with a pi quantum phase cancel") {
  const Grid1D g(0.0, 1.0, 64);
  const auto e = random_focal(g, 9);
  const double tau = std::numbers::pi / (2 * kPhase2.omega0);
  const std::vector<DelayedField> c{{e, 0.0}, {e, tau}};
  const auto I = excitation_intensity_separated(c, kPhase2);
  for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(I[i] <= 1e-28 * std::pow(std::norm(e.field[i]), 2));
}

TEST_CASE("opposite tilts give half-period fringes in the separated regime") {
  const Grid1D g(0.0, 40.0, 4000);
  const double kappa = 1.3;
  const Complex amp{0.8, 0.3};
  const auto a = tilted(g, amp, kappa), b = tilted(g, amp, -kappa);
  const std::vector<DelayedField> c{{a, 0.0}, {b, 0.0}};
  const auto sep = excitation_intensity_separated(c, kPhase2);
  // |E^2 e^{2i k x} + E^2 e^{-2i k x}|^2 = 4 |E|^4 cos^2(2 k x).
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.coordinate(i);
    REQUIRE(sep[i] == approx(4 * std::pow(std::norm(amp), 2) * std::pow(std::cos(2 * kappa * x), 2))
                          .epsilon(1e-10)
                          .scale(1.0));
  }

  const std::vector<FocalField> fields{a, b};
  const std::vector<double> zero{0.0, 0.0};
  const auto over1 = excitation_intensity_overlapped(fields, {kPhase2.omega0, ExcitationOrder(1)}, zero);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.coordinate(i);
    REQUIRE(over1[i] == approx(4 * std::norm(amp) * std::pow(std::cos(kappa * x), 2)).epsilon(1e-10).scale(1.0));
  }

  // Zeros at pi/(2k) overlapped vs pi/(4k) separated: fringe period halves.
  const auto over2 = excitation_intensity_overlapped(fields, kPhase2, zero);
  const double z_over = first_zero_right(over2);
  const double z_sep = first_zero_right(sep);
  CHECK(z_over == approx(std::numbers::pi / (2 * kappa)).epsilon(2 * g.spacing()));
  CHECK(z_sep / z_over == approx(0.5).epsilon(0.01));
}

TEST_CASE("single overlapped field equals the separated result") {
  const Grid1D g(0.0, 1.0, 32);
  const auto e = random_focal(g, 17);
  const std::vector<FocalField> f{e};
  const std::vector<double> ph{0.7};
  const std::vector<DelayedField> c{{e, 3e-15}};
  const auto over = excitation_intensity_overlapped(f, kPhase2, ph);
  const auto sep = excitation_intensity_separated(c, kPhase2);
  for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(over[i] == approx(sep[i]).epsilon(1e-12));
}

TEST_CASE("separated intensity invariants") {
  const Grid1D g(0.0, 1.0, 48);
  const auto e1 = random_focal(g, 1), e2 = random_focal(g, 2), e3 = random_focal(g, 3);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-5e-15, 5e-15);
  for (int trial = 0; trial < 20; ++trial) {
    const double t1 = u(rng), t2 = u(rng), t3 = u(rng), shift = 40 * u(rng);
    for (int n : {1, 2, 4}) {
      const QuantumPhaseConfig q{kPhase2.omega0, ExcitationOrder(n)};
      const std::vector<DelayedField> base{{e1, t1}, {e2, t2}, {e3, t3}};
      const std::vector<DelayedField> shifted{{e1, t1 + shift}, {e2, t2 + shift}, {e3, t3 + shift}};
      const std::vector<DelayedField> wrapped{{e1, t1}, {e2, t2 + 3 * q.quantum_period()}, {e3, t3}};
      const auto I0 = excitation_intensity_separated(base, q);
      const auto I1 = excitation_intensity_separated(shifted, q);
      const auto I2 = excitation_intensity_separated(wrapped, q);
      for (std::size_t i = 0; i < g.size(); ++i) {
        REQUIRE(I0[i] >= 0.0);
        REQUIRE(I1[i] == approx(I0[i]).epsilon(1e-9));
        REQUIRE(I2[i] == approx(I0[i]).epsilon(1e-9));
      }
      if (n == 1) {
        const std::vector<FocalField> fields{e1, e2, e3};
        const std::vector<double> phases{q.omega0 * t1, q.omega0 * t2, q.omega0 * t3};
        const auto over = excitation_intensity_overlapped(fields, q, phases);
        for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(over[i] == approx(I0[i]).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("excitation input validation") {
  const auto a = random_focal(Grid1D(0.0, 1.0, 16), 1);
  const auto b = random_focal(Grid1D(0.0, 2.0, 16), 2);
  const std::vector<DelayedField> mixed{{a, 0.0}, {b, 0.0}};
  CHECK_THROWS_AS(excitation_intensity_separated(mixed, kPhase2), ValidationError);
  CHECK_THROWS_AS(excitation_intensity_separated(std::span<const DelayedField>{}, kPhase2), ValidationError);
  const std::vector<FocalField> fields{a, b};
  const std::vector<double> ph{0.0, 0.0};
  CHECK_THROWS_AS(excitation_intensity_overlapped(fields, kPhase2, ph), ValidationError);
  CHECK_THROWS_AS((QuantumPhaseConfig{1.0, ExcitationOrder(0)}), ValidationError);
}

TEST_CASE("time-domain oracle: single pulse matches the Gaussian moment integral") {
  for (int n : {1, 2, 4}) {
    const QuantumPhaseConfig q{kPhase2.omega0, ExcitationOrder(n)};
    const double T = 100e-15;
    Complex first{};
    for (double tau : {0.0, 0.37e-15, 2.5e-12}) {
      const std::vector<TemporalPulse> p{{T, Complex{0.6, 0.8}, tau}};
      const Complex got = time_domain_oracle(p, q);
      // Oracle-of-the-oracle: a^N exp(i N w0 tau) * integral exp(-N t^2 / T^2) dt = a^N e^{..} T sqrt(pi/N).
      const Complex expected = std::pow(Complex{0.6, 0.8}, n) * std::polar(1.0, n * q.omega0 * tau) * T *
                               std::sqrt(std::numbers::pi / n);
      REQUIRE(std::abs(got - expected) <= 1e-9 * std::abs(expected));
      REQUIRE(std::abs(single_pulse_response(p[0], q) - expected) <= 1e-12 * std::abs(expected));
      if (tau == 0.0) first = got;
      REQUIRE(std::abs(got) == approx(std::abs(first)).epsilon(1e-9));
    }
  }
}

TEST_CASE("time-domain oracle: separated pulses lose their mixed terms") {
  const double T = 100e-15;
  const double norm = envelope_power_integral(T, 2);
  const Complex a1{1.0, 0.2}, a2{-0.4, 0.9};
  for (double tau2 : {10 * T, 10 * T + 0.3e-15, 12 * T + 0.77e-15}) {
    const std::vector<TemporalPulse> p{{T, a1, 0.0}, {T, a2, tau2}};
    const Complex got = time_domain_oracle(p, kPhase2) / norm;
    const std::vector<Complex> amps{a1, a2};
    const std::vector<double> delays{0.0, tau2};
    const Complex law = separated_amplitude(amps, delays, kPhase2);
    CHECK(std::norm(got) == approx(std::norm(law)).epsilon(1e-6));
  }
}

TEST_CASE("time-domain oracle: overlapped pulses keep their mixed terms") {
  const double T = 100e-15;
  const double norm = envelope_power_integral(T, 2);
  const Complex a1{1.0, 0.2}, a2{-0.4, 0.9};
  const std::vector<TemporalPulse> p{{T, a1, 0.0}, {T, a2, 0.0}};
  const Complex got = time_domain_oracle(p, kPhase2) / norm;
  const std::vector<Complex> amps{a1, a2};
  const std::vector<double> phases{0.0, 0.0};
  CHECK(std::abs(got - overlapped_amplitude(amps, phases, kPhase2)) <= 1e-9 * std::abs(got));
  const std::vector<double> delays{0.0, 0.0};
  CHECK(std::abs(got - separated_amplitude(amps, delays, kPhase2)) > 0.1 * std::abs(got));
}

TEST_CASE("time-domain oracle rejects a short window") {
  const std::vector<TemporalPulse> p{{100e-15, 1.0, 0.0}};
  CHECK_THROWS_AS(time_domain_oracle(p, kPhase2, TimeWindow{-200e-15, 200e-15}), ValidationError);
  CHECK_NOTHROW(time_domain_oracle(p, kPhase2, TimeWindow{-1e-12, 1e-12}));
}
