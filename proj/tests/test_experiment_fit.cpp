#include <cmath>
#include <numbers>
#include <sstream>

#include "approx.hpp"
#include "doctest.h"
#include "qlitho/errors.hpp"
#include "qlitho/experiment_fit.hpp"
#include "qlitho/metrics.hpp"
#include "qlitho/propagation.hpp"
#include "qlitho/scenarios.hpp"

using namespace qlitho;

namespace {

const OpticalParams kOptics = default_optics();

FitModelParams truth(Regime regime, int order, double phase) {
  FitModelParams p;
  p.waist = 1e-3;
  p.gap = 1e-4;
  p.kappa = kappa_from_optics(p.waist, p.gap, kOptics);
  p.regime = regime;
  p.order = ExcitationOrder(order);
  p.phase = phase;
  p.background = 0.02;
  p.scale = 1.0;
  return p;
}

const Grid1D kCamera(0.0, 200e-6, 200);

// Distance between the two maxima flanking the center of a dark profile.
double lobe_spacing(const IntensityProfile& p) {
  const std::size_t mid = p.size() / 2;
  std::size_t r = mid;
  while (r + 1 < p.size() && p[r + 1] >= p[r]) ++r;
  std::size_t l = mid - 1;
  while (l > 0 && p[l - 1] >= p[l]) --l;
  return p.grid().coordinate(r) - p.grid().coordinate(l);
}

}  // namespace

TEST_CASE("fringe period and kappa") {
  const auto p = truth(Regime::Separated, 2, 0.0);
  auto q = p;
  q.regime = Regime::Overlapped;
  CHECK(fringe_period(p) / fringe_period(q) == approx(0.5));
  // Half of a gapless Gaussian has its amplitude centroid at w / sqrt(pi).
  // Midpoint sampling of the half beam leaves an O(spacing^2) error.
  CHECK(half_beam_centroid(1e-3, 0.0) == approx(1e-3 / std::sqrt(std::numbers::pi)).epsilon(1e-5));
  CHECK(half_beam_centroid(1e-3, 4e-4) > half_beam_centroid(1e-3, 0.0));
}

TEST_CASE("gapless overlapped one-photon model is a focused Gaussian") {
  FitModelParams p;
  p.waist = 1e-3;
  p.gap = 0.0;
  p.kappa = 3e4;
  p.regime = Regime::Overlapped;
  p.order = ExcitationOrder(1);
  // lambda f = 2 pi xbar / kappa with xbar = w / sqrt(pi); focal waist lambda f / (pi w).
  const double wf = 2.0 / (std::sqrt(std::numbers::pi) * p.kappa);
  const auto m = model_cross_section(p, kCamera);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double x = kCamera.coordinate(i);
    REQUIRE(std::abs(m[i] - std::exp(-2 * x * x / (wf * wf))) <= 1e-5);
  }
}

TEST_CASE("dark separated model halves the lobe spacing") {
  const auto sep = model_cross_section(truth(Regime::Separated, 2, std::numbers::pi), Grid1D(0.0, 200e-6, 4000));
  const auto over = model_cross_section(truth(Regime::Overlapped, 2, std::numbers::pi), Grid1D(0.0, 200e-6, 4000));
  const double bg = 0.02;
  CHECK(std::abs(sep[sep.size() / 2] - bg) <= 1e-3);
  const double ratio = lobe_spacing(sep) / lobe_spacing(over);
  MESSAGE("lobe spacing ratio separated/overlapped = " << ratio);
  CHECK(ratio > 0.45);
  CHECK(ratio < 0.65);
}

TEST_CASE("bright separated model matches the scenario run") {
  const double w = 1e-3, gap = 1e-4;
  // Aperture equal to the model lens window so both sample the same lens grid.
  const OpticalParams optics(778e-9, 0.1, 8 * w);
  auto cfg = two_segment_config(optics, ExcitationOrder(2), 0.0, default_grids(optics, kModelLensSamples));
  cfg.profile = ApertureProfile::gaussian_with_gap(w, gap);
  cfg = tuned(cfg, TuneMode::Bright);
  const auto spot = run_spot(cfg);
  const double center = central_intensity(cfg);

  FitModelParams p;
  p.waist = w;
  p.gap = gap;
  p.kappa = kappa_from_optics(w, gap, optics);
  p.regime = Regime::Separated;
  p.order = ExcitationOrder(2);
  const auto m = model_cross_section(p, cfg.grids.focal);
  for (std::size_t i = 0; i < m.size(); ++i) REQUIRE(std::abs(m[i] - spot.raw[i] / center) <= 1e-9);
}

TEST_CASE("scale and background act linearly") {
  auto p = truth(Regime::Separated, 2, 0.0);
  p.background = 0.0;
  const auto one = model_cross_section(p, kCamera);
  p.scale = 3.5;
  p.background = 0.1;
  const auto many = model_cross_section(p, kCamera);
  for (std::size_t i = 0; i < one.size(); ++i) REQUIRE(many[i] - 0.1 == approx(3.5 * one[i]).epsilon(1e-12).scale(1e-12));
  const auto at = model_at(p, kCamera.coordinates());
  for (std::size_t i = 0; i < one.size(); ++i) REQUIRE(at[i] == approx(many[i]).epsilon(1e-12));
  const std::vector<double> scattered{-3e-5, 1e-6, 2.2e-5};
  const auto pts = model_at(p, scattered);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto single = model_cross_section(p, Grid1D(scattered[i], 1e-7, 2));
    REQUIRE(pts[i] == approx(0.5 * (single[0] + single[1])).epsilon(1e-4));
  }
}

TEST_CASE("noise-free self-fit recovers the parameters") {
  const auto t = truth(Regime::Separated, 2, std::numbers::pi);
  const auto data = synthetic_cross_section(t, kCamera, 0.0, 1);
  auto init = t;
  init.kappa *= 1.1;
  init.center_offset = 3e-6;
  init.background = 0.05;
  init.scale = 0.8;
  const SimplexOptions tight{4000, 1e-8, 2};
  const auto r = fit_cross_section(data, init, kFitKappa | kFitCenter | kFitBackground | kFitScale, tight);
  CHECK(r.residual < 1e-6);
  CHECK(r.params.kappa == approx(t.kappa).epsilon(1e-3));
  CHECK(r.params.scale == approx(t.scale).epsilon(1e-3));
  CHECK(r.params.background == approx(t.background).epsilon(1e-3));
  CHECK(std::abs(r.params.center_offset) <= 1e-3 * fringe_period(t));
  for (std::size_t i = 1; i < r.history.size(); ++i) REQUIRE(r.history[i] <= r.history[i - 1]);
}

TEST_CASE("noisy fits recover the fringe period and halve it") {
  const unsigned mask = kFitKappa | kFitCenter | kFitBackground | kFitScale;
  double periods[2]{};
  int k = 0;
  for (Regime regime : {Regime::Overlapped, Regime::Separated}) {
    const auto t = truth(regime, 2, std::numbers::pi);
    const auto data = synthetic_cross_section(t, kCamera, 0.05, 2024);
    auto init = t;
    init.kappa *= 0.9;
    init.scale = 1.2;
    const auto r = fit_cross_section(data, init, mask);
    CHECK(fringe_period(r.params) == approx(fringe_period(t)).epsilon(0.02));
    periods[k++] = fringe_period(r.params);
  }
  CHECK(periods[1] / periods[0] == approx(0.5).epsilon(0.02));
}

TEST_CASE("the wrong regime fits much worse") {
  const unsigned mask = kFitKappa | kFitCenter | kFitBackground | kFitScale;
  const auto t = truth(Regime::Overlapped, 2, std::numbers::pi);
  const auto data = synthetic_cross_section(t, kCamera, 0.05, 7);
  const auto matched = fit_cross_section(data, t, mask);
  auto wrong = t;
  wrong.regime = Regime::Separated;
  const auto mismatched = fit_cross_section(data, wrong, mask);
  MESSAGE("matched " << matched.residual << " mismatched " << mismatched.residual);
  CHECK(mismatched.residual >= 5 * matched.residual);
}

TEST_CASE("cross-section input") {
  std::istringstream in("# x_m intensity\n-1e-6, 0.5\n0.0 1.0\n\n# mid comment\n1e-6\t0.25\n");
  const auto d = read_cross_section(in);
  REQUIRE(d.positions.size() == 3);
  CHECK(d.intensities[2] == 0.25);
  CHECK(d.pixel_pitch == approx(1e-6));

  std::istringstream bad("0 1\nabc 2\n");
  CHECK_THROWS_AS(read_cross_section(bad), ValidationError);
  std::istringstream unsorted("0 1\n-1 2\n");
  CHECK_THROWS_AS(read_cross_section(unsorted), ValidationError);
  CHECK_THROWS_AS(read_cross_section_file("/nonexistent/profile.txt"), ValidationError);

  CrossSection flat{kCamera.coordinates(), std::vector<double>(kCamera.size(), 1.0), kCamera.spacing()};
  CHECK_THROWS_AS(fit_cross_section(flat, truth(Regime::Separated, 2, 0.0), kFitScale), ValidationError);
  CrossSection few{{0, 1, 2}, {0, 1, 0}, 1.0};
  CHECK_THROWS_AS(fit_cross_section(few, truth(Regime::Separated, 2, 0.0), kFitScale), ValidationError);
  auto p = truth(Regime::Separated, 2, 0.0);
  p.scale = 0.0;
  CHECK_THROWS_AS(validate(p), ValidationError);
}

TEST_CASE("synthetic data is reproducible") {
  const auto t = truth(Regime::Separated, 2, 0.0);
  const auto a = synthetic_cross_section(t, kCamera, 0.05, 11);
  const auto b = synthetic_cross_section(t, kCamera, 0.05, 11);
  const auto c = synthetic_cross_section(t, kCamera, 0.05, 12);
  CHECK(a.intensities == b.intensities);
  CHECK(a.intensities != c.intensities);
}
