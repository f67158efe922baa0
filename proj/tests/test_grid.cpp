#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "approx.hpp"
#include "doctest.h"
#include "qlitho/errors.hpp"
#include "qlitho/grid.hpp"

using namespace qlitho;

TEST_CASE("make_grid coordinate mapping") {
  const auto g = make_grid(0.0, 1e-2, 4);
  CHECK(g.coordinate(0) == approx(-3.75e-3));
  CHECK(g.coordinate(1) == approx(-1.25e-3));
  CHECK(g.coordinate(2) == approx(1.25e-3));
  CHECK(g.coordinate(3) == approx(3.75e-3));

  CHECK(make_grid(0.0, 1e-2, 4096).spacing() == 2.44140625e-6);

  const auto shifted = make_grid(5e-3, 1e-2, 2);
  CHECK(shifted.coordinate(0) == approx(2.5e-3));
  CHECK(shifted.coordinate(1) == approx(7.5e-3));
}

TEST_CASE("make_grid rejects bad input") {
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 1), ValidationError);
  CHECK_THROWS_AS(make_grid(0.0, 0.0, 8), ValidationError);
  CHECK_THROWS_AS(make_grid(0.0, -1.0, 8), ValidationError);
}

TEST_CASE("index to coordinate to index round trip") {
  for (std::size_t n : {2u, 3u, 17u, 1024u, 4096u}) {
    for (double center : {0.0, -3.3e-4, 7.0}) {
      const auto g = make_grid(center, 2.5e-3, n);
      for (std::size_t i = 0; i < n; ++i) REQUIRE(g.nearest_index(g.coordinate(i)) == i);
      for (std::size_t i = 1; i < n; ++i) REQUIRE(g.coordinate(i) > g.coordinate(i - 1));
    }
  }
}

TEST_CASE("uniform_segment_field energies") {
  const double d = 0.01;
  const auto g = make_grid(0.0, 2 * d, 4096);
  CHECK(energy(uniform_segment_field(g, -d / 2, d / 2, 1.0).field) == approx(d).epsilon(1e-12));
  CHECK(energy(uniform_segment_field(g, -d / 2, 0.0, 1.0).field) == approx(d / 2).epsilon(1e-12));

  const auto disjoint = uniform_segment_field(g, 5 * d, 6 * d, 1.0);
  CHECK(disjoint.empty_support);
  CHECK(energy(disjoint.field) == 0.0);
  CHECK_THROWS_AS(uniform_segment_field(g, 1.0, 1.0, 1.0), ValidationError);
}

TEST_CASE("boundary bins follow their centers") {
  // Bin centers at +-0.25, +-0.75; an edge at 0 splits them cleanly.
  const auto g = make_grid(0.0, 2.0, 4);
  const auto half = uniform_segment_field(g, 0.0, 1.0, 1.0).field;
  CHECK(half[1] == Complex{0.0});
  CHECK(half[2] == Complex{1.0});
}

TEST_CASE("gaussian_with_gap_field") {
  const double w = 1e-3;
  const auto g = make_grid(0.0, 10 * w, 4096);

  const auto pure = gaussian_with_gap_field(g, w, 0.0, 2.0).field;
  const auto reference = gaussian_field(g, w, 2.0);
  for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(pure[i] == reference[i]);

  // Value at x = 0 on a grid with a sample there.
  const auto odd = make_grid(0.0, 10 * w, 4097);
  CHECK(std::abs(gaussian_with_gap_field(odd, w, 0.0, 2.0).field[2048] - Complex{2.0}) < 1e-15);

  const auto gapped = gaussian_with_gap_field(g, w, 2 * w, 1.0).field;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(g.coordinate(i)) <= w) REQUIRE(gapped[i] == Complex{0.0});
  }

  const auto swallowed = gaussian_with_gap_field(g, w, 20 * w, 1.0);
  CHECK(swallowed.empty_support);
  CHECK(energy(swallowed.field) == 0.0);
}

TEST_CASE("gaussian energy matches quadrature and closed form") {
  const double w = 1e-3;
  const double amp = 1.7;
  // Independent oracle: adaptive quadrature of amp^2 exp(-2 x^2 / w^2).
  const double oracle = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [&](double x) { return amp * amp * std::exp(-2 * x * x / (w * w)); }, -12 * w, 12 * w, 15, 1e-14);
  const double closed = amp * amp * w * std::sqrt(std::numbers::pi / 2);
  CHECK(oracle == approx(closed).epsilon(1e-12));

  const auto g = make_grid(0.0, 12 * w, 4096);
  CHECK(energy(gaussian_with_gap_field(g, w, 0.0, amp).field) == approx(oracle).epsilon(1e-6));
}

TEST_CASE("energy basics") {
  const auto g = make_grid(0.0, 1.0, 64);
  CHECK(energy(ComplexField(g)) == 0.0);

  // Global phase rotation leaves energy unchanged.
  auto f = gaussian_field(g, 0.2, Complex{0.3, -1.1});
  const double e = energy(f);
  for (double phi : {0.1, 1.0, 2.5, -3.0}) {
    CHECK(energy(std::polar(1.0, phi) * f) == approx(e).epsilon(1e-14));
  }
}

TEST_CASE("optical parameters") {
  const auto o = default_optics();
  CHECK(o.omega0() * o.wavelength() == approx(2 * std::numbers::pi * OpticalParams::kSpeedOfLight));
  CHECK_THROWS_AS(OpticalParams(778e-9, 0.1, 0.03), ValidationError);
  CHECK_THROWS_AS(OpticalParams(-1.0, 0.1, 0.01), ValidationError);
  const auto dl = OpticalParams::dimensionless(0.1);
  CHECK(dl.lambda_f() == 1.0);
  CHECK(dl.omega0() == approx(2 * std::numbers::pi));
  CHECK_THROWS_AS(ExcitationOrder(0), ValidationError);
  CHECK(ExcitationOrder(4).value() == 4);
}

TEST_CASE("field arithmetic requires matching grids") {
  ComplexField a(make_grid(0.0, 1.0, 8));
  ComplexField b(make_grid(0.0, 2.0, 8));
  CHECK_THROWS_AS(a += b, ValidationError);
  CHECK_THROWS_AS(ComplexField(make_grid(0.0, 1.0, 8), std::vector<Complex>(3)), ValidationError);
}
