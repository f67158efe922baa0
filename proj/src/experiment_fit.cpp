#include "qlitho/experiment_fit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "qlitho/errors.hpp"
#include "qlitho/excitation.hpp"
#include "qlitho/propagation.hpp"

namespace qlitho {
namespace {

constexpr double kModelLensExtentInWaists = 8.0;
constexpr double kUniformTolerance = 1e-6;
constexpr double kRejected = 1e6;

struct HalfBeams {
  ComplexField left;
  ComplexField right;
};

HalfBeams split_beam(const FitModelParams& p) {
  const Grid1D lens = model_lens_grid(p.waist);
  const auto beam = gaussian_with_gap_field(lens, p.waist, p.gap, 1.0);
  if (beam.empty_support) throw ValidationError("gap removes the whole beam");
  HalfBeams halves{ComplexField(lens), ComplexField(lens)};
  for (std::size_t i = 0; i < lens.size(); ++i) {
    if (lens.coordinate(i) < 0.0)
      halves.left[i] = beam.field[i];
    else
      halves.right[i] = beam.field[i];
  }
  return halves;
}

double centroid(const ComplexField& half) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < half.size(); ++i) {
    const double a = std::abs(half[i]);
    num += a * half.grid().coordinate(i);
    den += a;
  }
  if (!(den > 0.0)) throw ValidationError("half beam is empty");
  return num / den;
}

Complex power(Complex z, int n) {
  Complex r{1.0, 0.0};
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

bool is_uniform(std::span<const double> xs) {
  const double pitch = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double expected = xs.front() + pitch * static_cast<double>(i);
    if (std::abs(xs[i] - expected) > kUniformTolerance * pitch) return false;
  }
  return true;
}

}  // namespace

void validate(const FitModelParams& p) {
  if (!(p.waist > 0.0)) throw ValidationError("waist must be positive");
  if (!(p.gap >= 0.0)) throw ValidationError("gap must be non-negative");
  if (!(p.kappa > 0.0)) throw ValidationError("kappa must be positive");
  if (!(p.scale > 0.0)) throw ValidationError("scale must be positive");
  if (!(p.background >= 0.0)) throw ValidationError("background must be non-negative");
}

Grid1D model_lens_grid(double waist) { return Grid1D(0.0, kModelLensExtentInWaists * waist, kModelLensSamples); }

double half_beam_centroid(double waist, double gap) {
  FitModelParams p;
  p.waist = waist;
  p.gap = gap;
  return centroid(split_beam(p).right);
}

double kappa_from_optics(double waist, double gap, const OpticalParams& optics) {
  return 2.0 * std::numbers::pi * half_beam_centroid(waist, gap) / optics.lambda_f();
}

double fringe_period(const FitModelParams& p) {
  const double beat = p.regime == Regime::Separated ? p.order.value() : 1.0;
  return std::numbers::pi / (beat * p.kappa);
}

IntensityProfile model_cross_section(const FitModelParams& p, const Grid1D& grid) {
  validate(p);
  const auto halves = split_beam(p);
  const double lambda_f = 2.0 * std::numbers::pi * centroid(halves.right) / p.kappa;
  const Grid1D shifted(grid.center() - p.center_offset, grid.extent(), grid.size());

  const FocalField left{lens_transform(halves.left, lambda_f, shifted), "left half"};
  const FocalField right{lens_transform(halves.right, lambda_f, shifted), "right half"};
  const int n = p.order.value();
  // Unit carrier: the quantum phase of a delay tau is then N * tau.
  const QuantumPhaseConfig quantum{1.0, p.order};

  IntensityProfile raw = [&] {
    if (p.regime == Regime::Separated) {
      const std::vector<DelayedField> contribs{{left, 0.0}, {right, p.phase / n}};
      return excitation_intensity_separated(contribs, quantum);
    }
    const std::vector<FocalField> fields{left, right};
    const std::vector<double> phases{0.0, p.phase};
    return excitation_intensity_overlapped(fields, quantum, phases);
  }();

  // On-axis bright value: both halves in phase at x = 0.
  Complex center{};
  for (std::size_t i = 0; i < halves.right.size(); ++i) center += halves.right[i];
  center *= halves.right.grid().spacing() / std::sqrt(lambda_f);
  const double norm = p.regime == Regime::Separated ? std::norm(2.0 * power(center, n))
                                                    : std::norm(power(2.0 * center, n));

  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = p.background + p.scale * raw[i] / norm;
  return IntensityProfile(grid, std::move(values));
}

std::vector<double> model_at(const FitModelParams& p, std::span<const double> positions) {
  if (positions.size() < 2) throw ValidationError("need at least two positions");
  if (is_uniform(positions)) {
    const double pitch = (positions.back() - positions.front()) / static_cast<double>(positions.size() - 1);
    const Grid1D grid(0.5 * (positions.front() + positions.back()), pitch * static_cast<double>(positions.size()),
                      positions.size());
    const auto profile = model_cross_section(p, grid);
    return {profile.values().begin(), profile.values().end()};
  }
  // Irregular sampling: evaluate each position on its own two-sample grid.
  std::vector<double> out;
  out.reserve(positions.size());
  const double h = 1e-3 * fringe_period(p);
  for (double x : positions) {
    const auto profile = model_cross_section(p, Grid1D(x + 0.5 * h, 2.0 * h, 2));
    out.push_back(profile[0]);
  }
  return out;
}

void validate(const CrossSection& data) {
  if (data.positions.size() != data.intensities.size())
    throw ValidationError("positions and intensities differ in length");
  for (std::size_t i = 1; i < data.positions.size(); ++i) {
    if (!(data.positions[i] > data.positions[i - 1])) throw ValidationError("positions must be strictly increasing");
  }
  for (double v : data.intensities) {
    if (!std::isfinite(v)) throw ValidationError("intensities must be finite");
  }
}

CrossSection read_cross_section(std::istream& in) {
  CrossSection data;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x = 0.0, v = 0.0;
    if (!(row >> x >> v)) throw ValidationError("malformed cross-section line: " + line);
    data.positions.push_back(x);
    data.intensities.push_back(v);
  }
  validate(data);
  if (data.positions.size() >= 2)
    data.pixel_pitch = (data.positions.back() - data.positions.front()) / static_cast<double>(data.positions.size() - 1);
  return data;
}

CrossSection read_cross_section_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open cross-section file: " + path);
  return read_cross_section(in);
}

CrossSection synthetic_cross_section(const FitModelParams& truth, const Grid1D& grid, double noise_fraction,
                                     std::uint64_t seed) {
  const auto clean = model_cross_section(truth, grid);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, noise_fraction * clean.peak());
  CrossSection data;
  data.positions = grid.coordinates();
  data.pixel_pitch = grid.spacing();
  for (double v : clean.values()) data.intensities.push_back(noise_fraction > 0.0 ? v + noise(rng) : v);
  return data;
}

FitResult fit_cross_section(const CrossSection& data, const FitModelParams& init, unsigned free_mask,
                            const SimplexOptions& options) {
  validate(data);
  validate(init);
  if (data.positions.size() < 10) throw ValidationError("fit needs at least 10 data points");
  const auto [lo, hi] = std::minmax_element(data.intensities.begin(), data.intensities.end());
  if (*hi - *lo <= 1e-12 * std::max(std::abs(*hi), std::abs(*lo))) throw ValidationError("data are constant");
  if (free_mask == 0) throw ValidationError("no free parameters");

  const double range = *hi - *lo;
  double data_norm = 0.0;
  for (double v : data.intensities) data_norm += v * v;

  struct Slot {
    FitParam flag;
    double FitModelParams::*member;
    double scale;
    double step;
  };
  const double length_scale = init.waist;
  const std::vector<Slot> all{
      {kFitWaist, &FitModelParams::waist, init.waist, 0.05},
      {kFitGap, &FitModelParams::gap, init.gap > 0.0 ? init.gap : 0.1 * length_scale, 0.05},
      {kFitKappa, &FitModelParams::kappa, init.kappa, 0.05},
      {kFitPhase, &FitModelParams::phase, std::numbers::pi, 0.1},
      {kFitCenter, &FitModelParams::center_offset, fringe_period(init), 0.1},
      {kFitBackground, &FitModelParams::background, range, 0.05},
      {kFitScale, &FitModelParams::scale, init.scale, 0.05},
  };
  std::vector<Slot> slots;
  for (const auto& s : all) {
    if (free_mask & s.flag) slots.push_back(s);
  }

  auto decode = [&](std::span<const double> p) {
    FitModelParams q = init;
    for (std::size_t j = 0; j < slots.size(); ++j) {
      double v = p[j] * slots[j].scale;
      if (slots[j].flag != kFitPhase && slots[j].flag != kFitCenter) v = std::abs(v);
      q.*(slots[j].member) = v;
    }
    return q;
  };
  auto objective = [&](std::span<const double> p) {
    const auto q = decode(p);
    std::vector<double> model;
    try {
      model = model_at(q, data.positions);
    } catch (const std::exception&) {
      return kRejected;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < model.size(); ++i) {
      const double r = model[i] - data.intensities[i];
      sum += r * r;
    }
    return sum / data_norm;
  };

  std::vector<double> start, steps;
  for (const auto& s : slots) {
    start.push_back(init.*(s.member) / s.scale);
    steps.push_back(s.step);
  }
  const auto fit = nelder_mead(objective, start, steps, options);

  FitResult result;
  result.params = decode(fit.x);
  result.residual = std::sqrt(fit.value);
  result.converged = fit.converged;
  result.iterations = fit.iterations;
  for (double h : fit.history) result.history.push_back(std::sqrt(h));
  return result;
}

}  // namespace qlitho
