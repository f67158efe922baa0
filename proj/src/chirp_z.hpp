#pragma once

#include <complex>
#include <span>
#include <vector>

namespace qlitho::detail {

/// Evaluates out[m] = sum_l in[l] * exp(-i * alpha * (x0 + l*dx) * (u0 + m*du))
/// for m = 0..count-1 with Bluestein's chirp-z algorithm (three FFTs).
std::vector<std::complex<double>> chirp_z(std::span<const std::complex<double>> in, double x0, double dx,
                                          double u0, double du, std::size_t count, double alpha);

}  // namespace qlitho::detail
