#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qlitho {

struct SimplexOptions {
  int max_iterations = 2000;
  /// Stop when every vertex lies within this many step-scales of the best.
  double x_tolerance = 1e-4;
  /// Fresh simplexes built around the converged point.
  int restarts = 2;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Best objective after each iteration; never increases.
  std::vector<double> history;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead downhill simplex. `steps` sets both the initial simplex and
/// the per-parameter scale used by the convergence test.
SimplexResult nelder_mead(const Objective& f, std::vector<double> start, std::vector<double> steps,
                          const SimplexOptions& options = {});

}  // namespace qlitho
