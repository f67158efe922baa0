#include "qlitho/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qlitho/errors.hpp"

namespace qlitho {
namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

struct Vertex {
  std::vector<double> x;
  double f;
};

double scaled_diameter(const std::vector<Vertex>& simplex, const std::vector<double>& steps) {
  double d = 0.0;
  for (std::size_t i = 1; i < simplex.size(); ++i) {
    for (std::size_t j = 0; j < steps.size(); ++j)
      d = std::max(d, std::abs(simplex[i].x[j] - simplex[0].x[j]) / std::abs(steps[j]));
  }
  return d;
}

// One full descent from `start`; appends to result.history.
void descend(const Objective& f, const std::vector<double>& start, const std::vector<double>& steps,
             const SimplexOptions& options, SimplexResult& result) {
  const std::size_t n = start.size();
  std::vector<Vertex> simplex;
  simplex.push_back({start, f(start)});
  for (std::size_t j = 0; j < n; ++j) {
    auto x = start;
    x[j] += steps[j];
    simplex.push_back({x, f(x)});
  }
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };

  auto affine = [&](const std::vector<double>& centroid, const std::vector<double>& worst, double t) {
    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = centroid[j] + t * (worst[j] - centroid[j]);
    return x;
  };

  result.converged = false;
  while (result.iterations < options.max_iterations) {
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    if (scaled_diameter(simplex, steps) < options.x_tolerance) {
      result.converged = true;
      break;
    }
    ++result.iterations;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i].x[j] / static_cast<double>(n);
    }
    Vertex& worst = simplex[n];

    auto xr = affine(centroid, worst.x, -kReflect);
    const double fr = f(xr);
    if (fr < simplex[0].f) {
      auto xe = affine(centroid, worst.x, -kExpand);
      const double fe = f(xe);
      worst = fe < fr ? Vertex{std::move(xe), fe} : Vertex{std::move(xr), fr};
    } else if (fr < simplex[n - 1].f) {
      worst = {std::move(xr), fr};
    } else {
      const bool outside = fr < worst.f;
      auto xc = affine(centroid, outside ? xr : worst.x, kContract);
      const double fc = f(xc);
      if (fc < (outside ? fr : worst.f)) {
        worst = {std::move(xc), fc};
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          for (std::size_t j = 0; j < n; ++j)
            simplex[i].x[j] = simplex[0].x[j] + kShrink * (simplex[i].x[j] - simplex[0].x[j]);
          simplex[i].f = f(simplex[i].x);
        }
      }
    }
    const double best = std::min_element(simplex.begin(), simplex.end(), by_value)->f;
    result.history.push_back(result.history.empty() ? best : std::min(best, result.history.back()));
  }
  std::stable_sort(simplex.begin(), simplex.end(), by_value);
  if (result.x.empty() || simplex[0].f < result.value) {
    result.x = simplex[0].x;
    result.value = simplex[0].f;
  }
}

}  // namespace

SimplexResult nelder_mead(const Objective& f, std::vector<double> start, std::vector<double> steps,
                          const SimplexOptions& options) {
  if (start.empty() || start.size() != steps.size()) throw ValidationError("start and steps must match in size");
  if (std::any_of(steps.begin(), steps.end(), [](double s) { return s == 0.0; }))
    throw ValidationError("simplex steps must be non-zero");

  SimplexResult result;
  descend(f, start, steps, options, result);
  for (int r = 0; r < options.restarts && result.converged; ++r) {
    const double before = result.value;
    descend(f, result.x, steps, options, result);
    if (!(result.value < before)) break;
  }
  return result;
}

}  // namespace qlitho
