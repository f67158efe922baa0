#include "chirp_z.hpp"

#include <fftw3.h>

#include <cstdint>
#include <mutex>

namespace qlitho::detail {
namespace {

// The FFTW planner is not re-entrant; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftwBuffer {
 public:
  explicit FftwBuffer(std::size_t n) : n_(n), data_(fftw_alloc_complex(n)) {
    for (std::size_t i = 0; i < n; ++i) data_[i][0] = data_[i][1] = 0.0;
  }
  ~FftwBuffer() { fftw_free(data_); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  fftw_complex* get() { return data_; }
  std::complex<double> at(std::size_t i) const { return {data_[i][0], data_[i][1]}; }
  void set(std::size_t i, std::complex<double> v) {
    data_[i][0] = v.real();
    data_[i][1] = v.imag();
  }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  fftw_complex* data_;
};

class FftwPlan {
 public:
  FftwPlan(FftwBuffer& buf, int sign) {
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(buf.size()), buf.get(), buf.get(), sign, FFTW_ESTIMATE);
  }
  ~FftwPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;

  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::complex<double> chirp(double half_beta, std::int64_t k) {
  return std::polar(1.0, half_beta * static_cast<double>(k * k));
}

}  // namespace

std::vector<std::complex<double>> chirp_z(std::span<const std::complex<double>> in, double x0, double dx,
                                          double u0, double du, std::size_t count, double alpha) {
  const std::size_t n_in = in.size();
  std::vector<std::complex<double>> out(count);
  if (n_in == 0 || count == 0) return out;

  // x*u = x0*u0 + x0*du*m + u0*dx*l + dx*du*l*m, and l*m = (l^2 + m^2 - (m-l)^2)/2.
  const double half_beta = 0.5 * alpha * dx * du;
  const std::size_t size = next_pow2(n_in + count - 1);

  FftwBuffer y(size);
  FftwBuffer h(size);
  FftwPlan fwd_y(y, FFTW_FORWARD);
  FftwPlan fwd_h(h, FFTW_FORWARD);
  FftwPlan inv_y(y, FFTW_BACKWARD);

  for (std::size_t l = 0; l < n_in; ++l) {
    const auto li = static_cast<std::int64_t>(l);
    const double lin = alpha * u0 * dx * static_cast<double>(l);
    y.set(l, in[l] * std::polar(1.0, -lin) * std::conj(chirp(half_beta, li)));
  }
  for (std::size_t k = 0; k < count; ++k) h.set(k, chirp(half_beta, static_cast<std::int64_t>(k)));
  for (std::size_t k = 1; k < n_in; ++k) h.set(size - k, chirp(half_beta, static_cast<std::int64_t>(k)));

  fwd_y.execute();
  fwd_h.execute();
  for (std::size_t i = 0; i < size; ++i) y.set(i, y.at(i) * h.at(i));
  inv_y.execute();

  const double inv_size = 1.0 / static_cast<double>(size);
  for (std::size_t m = 0; m < count; ++m) {
    const double lin = alpha * (x0 * u0 + x0 * du * static_cast<double>(m));
    out[m] = y.at(m) * inv_size * std::polar(1.0, -lin) *
             std::conj(chirp(half_beta, static_cast<std::int64_t>(m)));
  }
  return out;
}

}  // namespace qlitho::detail
