#include "qlitho/cli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fmt/ranges.h>

#include "qlitho/cli/output.hpp"
#include "qlitho/errors.hpp"
#include "qlitho/experiment_fit.hpp"
#include "qlitho/propagation.hpp"
#include "qlitho/scenarios.hpp"
#include "qlitho/suppression.hpp"

namespace qlitho::cli {
namespace {

namespace fs = std::filesystem;

constexpr double kMicron = 1e6;
constexpr double kFemto = 1e15;
constexpr double kOracleTolerance = 1e-4;

class Writer {
 public:
  Writer(const ScenarioConfig& c, const std::string& dir, std::ostream& out) : c_(c), dir_(dir), out_(out) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw ValidationError("cannot create output directory " + dir + ": " + ec.message());
    provenance_.emplace_back("scenario", c.scenario);
    provenance_.insert(provenance_.end(), c.resolved.begin(), c.resolved.end());
  }

  void csv(const std::string& stem, const Table& t) {
    const auto path = (dir_ / (stem + ".csv")).string();
    emit_csv(t, provenance_, path);
    fmt::print(out_, "wrote {}\n", path);
  }

  void svg(const std::string& stem, const Plot& p) {
    if (!c_.svg) return;
    const auto path = (dir_ / (stem + ".svg")).string();
    emit_svg(p, path);
    fmt::print(out_, "wrote {}\n", path);
  }

  void metric(const std::string& key, double value) { fmt::print(out_, "{}={:.6g}\n", key, value); }
  void note(const std::string& key, const std::string& value) { fmt::print(out_, "{}={}\n", key, value); }

 private:
  const ScenarioConfig& c_;
  fs::path dir_;
  std::ostream& out_;
  Provenance provenance_;
};

OpticalParams optics_of(const ScenarioConfig& c) { return OpticalParams(c.wavelength, c.focal_length, c.aperture); }

std::vector<double> scaled(std::span<const double> v, double factor) {
  std::vector<double> out(v.begin(), v.end());
  for (auto& x : out) x *= factor;
  return out;
}

std::vector<double> values(const IntensityProfile& p) { return {p.values().begin(), p.values().end()}; }

constexpr double kPlotHalfWidthInSpots = 6.0;

// Plots show the central +-6 spot widths; the CSV keeps the whole grid.
Series cropped(std::string label, std::span<const double> x, std::span<const double> y, double half,
               Series::Style style) {
  Series s{std::move(label), {}, {}, style};
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > half) continue;
    s.x.push_back(x[i] * kMicron);
    s.y.push_back(y[i]);
  }
  return s;
}

SegmentedLensConfig untuned_config(const ScenarioConfig& c, int segments, int order) {
  const auto optics = optics_of(c);
  const auto grids = default_grids(optics, c.samples, c.focal_extent);
  const ExcitationOrder n(order);
  SegmentedLensConfig cfg = [&] {
    if (segments == 1) return single_aperture_config(optics, n, grids);
    if (segments == 2) return two_segment_config(optics, n, 0.0, grids);
    const std::vector<double> zero(static_cast<std::size_t>(segments), 0.0);
    return m_segment_config(optics, n, segments, zero, grids);
  }();
  cfg.policy = c.policy == "fixed-per-segment" ? EnergyPolicy::FixedPerSegment : EnergyPolicy::FixedTotal;
  if (c.profile == "gaussian-gap") cfg.profile = ApertureProfile::gaussian_with_gap(c.waist, c.gap);
  cfg.pulse_duration = c.pulse_duration;
  return cfg;
}

SegmentedLensConfig lens_config(const ScenarioConfig& c, int segments) {
  auto cfg = untuned_config(c, segments, c.order);
  if (c.tuning == "none") {
    for (std::size_t k = 0; k < c.delays.size(); ++k) cfg.segments[k].delay = c.delays[k];
    return cfg;
  }
  if (segments == 1) return cfg;
  return tuned(cfg, c.tuning == "dark" ? TuneMode::Dark : TuneMode::Bright);
}

void report_spot(Writer& w, const SpotResult& s, const OpticalParams& optics) {
  const auto& m = s.metrics;
  w.metric("one_photon_width_m", one_photon_width(optics));
  w.metric("fwhm_m", m.fwhm_main);
  w.metric("fwhm_ratio", m.fwhm_ratio_vs_reference);
  w.metric("first_zero_m", m.first_zero);
  w.metric("side_lobe_peak", m.side_lobe_peak);
  w.metric("side_lobe_distance_m", m.side_lobe_distance);
  w.metric("central_intensity", m.central_intensity_raw);
  w.metric("penalty_vs_single_aperture", m.penalty_vs_single_aperture);
  if (m.plateau) w.note("warning", "main lobe has a flat top");
}

Table spot_metrics_table(const SpotResult& s, const SegmentedLensConfig& cfg) {
  const auto& m = s.metrics;
  Table t;
  t.add("fwhm_m", {m.fwhm_main});
  t.add("fwhm_ratio", {m.fwhm_ratio_vs_reference});
  t.add("first_zero_m", {m.first_zero});
  t.add("side_lobe_peak", {m.side_lobe_peak});
  t.add("side_lobe_position_m", {m.side_lobe_position});
  t.add("side_lobe_distance_m", {m.side_lobe_distance});
  t.add("central_intensity", {m.central_intensity_raw});
  t.add("penalty_vs_single_aperture", {m.penalty_vs_single_aperture});
  t.add("delay_offset_s", {cfg.segments.size() > 1 ? cfg.segments[1].delay - cfg.segments[0].delay : 0.0});
  return t;
}

int spot(const ScenarioConfig& c, Writer& w, int segments) {
  const auto cfg = lens_config(c, segments);
  const auto s = run_spot(cfg);
  const auto x = cfg.grids.focal.coordinates();

  Table t;
  t.add("x_f_m", x);
  t.add("I_quantum_norm", values(s.intensity));
  t.add("I_reference_norm", values(s.reference));
  w.csv(c.scenario, t);
  w.csv(c.scenario + "_metrics", spot_metrics_table(s, cfg));
  report_spot(w, s, cfg.optics);

  const double half = kPlotHalfWidthInSpots * one_photon_width(cfg.optics);
  w.svg(c.scenario, {fmt::format("{} segments, N = {}", cfg.segments.size(), c.order), "focal position x (µm)",
                     "normalized excitation",
                     {cropped(fmt::format("N = {} interference", c.order), x, values(s.intensity), half,
                              Series::Style::Solid),
                      cropped("one-photon reference", x, values(s.reference), half, Series::Style::Dashed)}});
  return kExitOk;
}

int suppress(const ScenarioConfig& c, Writer& w) {
  auto base = untuned_config(c, 2, c.order);
  base = tuned(base, TuneMode::Bright);
  const auto before = run_spot(base);
  const auto init = default_suppression_init(base, c.suppress_amplitude);
  const auto r = optimize_suppression(base, init);
  const auto after = run_spot(apply_suppression(base, r.params));
  const auto x = base.grids.focal.coordinates();

  Table t;
  t.add("x_f_m", x);
  t.add("I_suppressed_norm", values(after.intensity));
  t.add("I_unsuppressed_norm", values(before.intensity));
  t.add("I_reference_norm", values(before.reference));
  w.csv("suppress", t);

  Table p;
  p.add("s1_m", {r.params.s1});
  p.add("s2_m", {r.params.s2});
  p.add("amplitude", {r.params.amp});
  p.add("phase_rad", {r.params.phase});
  p.add("delay_s", {r.params.delay});
  p.add("side_lobe_baseline", {r.baseline});
  p.add("side_lobe_suppressed", {r.objective});
  p.add("fwhm_ratio_before", {before.metrics.fwhm_ratio_vs_reference});
  p.add("fwhm_ratio_after", {after.metrics.fwhm_ratio_vs_reference});
  p.add("iterations", {static_cast<double>(r.iterations)});
  w.csv("suppress_params", p);

  w.metric("side_lobe_baseline", r.baseline);
  w.metric("side_lobe_suppressed", r.objective);
  w.metric("suppression_factor", r.objective > 0.0 ? r.baseline / r.objective : std::numeric_limits<double>::infinity());
  w.metric("fwhm_ratio_before", before.metrics.fwhm_ratio_vs_reference);
  w.metric("fwhm_ratio_after", after.metrics.fwhm_ratio_vs_reference);
  w.metric("offset_m", std::abs(r.params.s1));
  w.metric("amplitude", r.params.amp);
  w.metric("phase_rad", r.params.phase);

  const double half = kPlotHalfWidthInSpots * one_photon_width(base.optics);
  w.svg("suppress",
        {fmt::format("side-lobe suppression, N = {}", c.order), "focal position x (µm)", "normalized excitation",
         {cropped("with suppression pulse", x, values(after.intensity), half, Series::Style::Solid),
          cropped("two segments only", x, values(before.intensity), half, Series::Style::Dashed),
          cropped("one-photon reference", x, values(before.reference), half, Series::Style::Dashed)}});
  if (!r.converged) {
    w.note("warning", "suppression optimizer did not converge");
    return kExitNotConverged;
  }
  return kExitOk;
}

int delay_scan(const ScenarioConfig& c, Writer& w) {
  const auto base = untuned_config(c, std::max(c.segments, 2), c.order);
  const double period = phase_config(base.optics, base.order).quantum_period();
  std::vector<double> delays(c.scan_points), raw(c.scan_points);
  for (std::size_t i = 0; i < c.scan_points; ++i) {
    delays[i] = c.scan_periods * period * static_cast<double>(i) / static_cast<double>(c.scan_points - 1);
    raw[i] = central_intensity(with_delay_offset(base, delays[i]));
  }
  const double peak = *std::max_element(raw.begin(), raw.end());
  if (!(peak > 0.0)) throw NumericalError("central excitation vanishes for every delay");

  Table t;
  t.add("delay_s", delays);
  t.add("I_center_norm", scaled(raw, 1.0 / peak));
  t.add("I_center_raw", raw);
  w.csv("delay-scan", t);
  w.metric("quantum_period_s", period);
  w.metric("contrast", (peak - *std::min_element(raw.begin(), raw.end())) / peak);
  w.svg("delay-scan", {fmt::format("on-axis excitation vs segment delay, N = {}", c.order), "delay offset (fs)",
                       "normalized I(0)",
                       {{"I(0)", scaled(delays, kFemto), scaled(raw, 1.0 / peak), Series::Style::Solid}}});
  return kExitOk;
}

int penalty_table(const ScenarioConfig& c, Writer& w) {
  std::vector<double> ms, ns, measured, formula, error;
  double worst = 0.0;
  for (int n : c.penalty_orders) {
    auto single = untuned_config(c, 1, n);
    for (int m : c.penalty_segments) {
      auto cfg = m == 1 ? single : tuned(untuned_config(c, m, n), TuneMode::Bright);
      const double got = measured_penalty(cfg, single);
      const double want = penalty_factor(m, n);
      ms.push_back(m);
      ns.push_back(n);
      measured.push_back(got);
      formula.push_back(want);
      error.push_back(std::abs(got / want - 1.0));
      worst = std::max(worst, error.back());
      w.note(fmt::format("penalty_M{}_N{}", m, n), fmt::format("{:.6g} (formula {:.6g})", got, want));
    }
  }
  Table t;
  t.add("M", ms);
  t.add("N", ns);
  t.add("penalty_measured", measured);
  t.add("penalty_formula", formula);
  t.add("relative_error", error);
  w.csv("penalty-table", t);
  w.metric("max_relative_error", worst);
  return kExitOk;
}

int oracle_check(const ScenarioConfig& c, Writer& w) {
  const auto cfg = untuned_config(c, 2, c.order);
  const auto contribs = pulse_contributions(cfg);
  const std::vector<Complex> amps{focal_amplitude_at(contribs[0].lens_field, cfg.optics, 0.0),
                                  focal_amplitude_at(contribs[1].lens_field, cfg.optics, 0.0)};
  const auto phase = phase_config(cfg.optics, cfg.order);
  const double T = c.pulse_duration;
  const double norm = envelope_power_integral(T, c.order);

  std::vector<double> seps, oracle, sep_law, over_law, dev_sep, dev_over;
  double worst = 0.0;
  for (double s : c.separations) {
    const std::vector<TemporalPulse> pulses{{T, amps[0], 0.0}, {T, amps[1], s * T}};
    const double io = std::norm(time_domain_oracle(pulses, phase) / norm);
    const std::vector<double> delays{0.0, s * T};
    const std::vector<double> phases{0.0, phase.omega0 * s * T};
    const double is = std::norm(separated_amplitude(amps, delays, phase));
    const double iv = std::norm(overlapped_amplitude(amps, phases, phase));
    seps.push_back(s);
    oracle.push_back(io);
    sep_law.push_back(is);
    over_law.push_back(iv);
    dev_sep.push_back(std::abs(is - io) / io);
    dev_over.push_back(std::abs(iv - io) / io);
    if (s >= kSeparationInDurations) worst = std::max(worst, dev_sep.back());
    if (s == 0.0) worst = std::max(worst, dev_over.back());
  }
  Table t;
  t.add("separation_durations", seps);
  t.add("I_oracle", oracle);
  t.add("I_separated_law", sep_law);
  t.add("I_overlapped_law", over_law);
  t.add("deviation_separated", dev_sep);
  t.add("deviation_overlapped", dev_over);
  w.csv("oracle-check", t);
  w.metric("max_relative_deviation", worst);
  if (worst > kOracleTolerance) {
    w.note("warning", fmt::format("spectral law deviates from the time-domain integral by more than {}",
                                  kOracleTolerance));
    return kExitNotConverged;
  }
  return kExitOk;
}

int fit(const ScenarioConfig& c, Writer& w) {
  const auto optics = optics_of(c);
  FitModelParams truth;
  truth.waist = c.fit_waist;
  truth.gap = c.fit_gap;
  truth.kappa = kappa_from_optics(c.fit_waist, c.fit_gap, optics);
  truth.order = ExcitationOrder(c.order);
  truth.phase = c.fit_phase;
  truth.regime = c.fit_truth == "overlapped" ? Regime::Overlapped : Regime::Separated;

  const CrossSection data =
      c.fit_data.empty()
          ? synthetic_cross_section(truth, Grid1D(0.0, c.fit_window, c.fit_points), c.fit_noise, c.fit_seed)
          : read_cross_section_file(c.fit_data);

  auto init = truth;
  init.kappa *= c.fit_kappa_guess;
  init.scale = *std::max_element(data.intensities.begin(), data.intensities.end());
  if (!(init.scale > 0.0)) throw ValidationError("cross section has no positive sample");
  const unsigned mask = kFitKappa | kFitCenter | kFitBackground | kFitScale;

  Table t;
  t.add("x_m", data.positions);
  t.add("I_data", data.intensities);
  std::vector<Series> series{{"data", scaled(data.positions, kMicron), data.intensities, Series::Style::Points}};
  bool converged = true;
  double best = std::numeric_limits<double>::infinity();
  std::string preferred;
  Table params;
  std::vector<double> col_residual, col_kappa, col_period, col_center, col_background, col_scale;
  for (Regime regime : {Regime::Separated, Regime::Overlapped}) {
    const std::string name = regime == Regime::Separated ? "separated" : "overlapped";
    auto start = init;
    start.regime = regime;
    const auto r = fit_cross_section(data, start, mask);
    converged = converged && r.converged;
    const auto model = model_at(r.params, data.positions);
    t.add("I_fit_" + name, model);
    series.push_back({name + " fit", scaled(data.positions, kMicron), model,
                      regime == Regime::Separated ? Series::Style::Solid : Series::Style::Dashed});
    w.metric("residual_" + name, r.residual);
    w.metric("fringe_period_" + name + "_m", fringe_period(r.params));
    w.metric("kappa_" + name, r.params.kappa);
    col_residual.push_back(r.residual);
    col_kappa.push_back(r.params.kappa);
    col_period.push_back(fringe_period(r.params));
    col_center.push_back(r.params.center_offset);
    col_background.push_back(r.params.background);
    col_scale.push_back(r.params.scale);
    if (r.residual < best) best = r.residual, preferred = name;
  }
  w.note("preferred_regime", preferred);
  params.add("regime_is_separated", {1.0, 0.0});
  params.add("residual", col_residual);
  params.add("kappa_rad_per_m", col_kappa);
  params.add("fringe_period_m", col_period);
  params.add("center_offset_m", col_center);
  params.add("background", col_background);
  params.add("scale", col_scale);
  w.csv("fit", t);
  w.csv("fit_params", params);
  w.svg("fit", {"cross section and model fits", "position x (µm)", "intensity", series});
  if (!converged) {
    w.note("warning", "fit did not converge");
    return kExitNotConverged;
  }
  return kExitOk;
}

}  // namespace

int run_scenario(const ScenarioConfig& c, const std::string& out_dir, std::ostream& out) {
  Writer w(c, out_dir, out);
  if (c.scenario == "spot2seg") return spot(c, w, 2);
  if (c.scenario == "spotMseg") return spot(c, w, c.segments);
  if (c.scenario == "suppress") return suppress(c, w);
  if (c.scenario == "delay-scan") return delay_scan(c, w);
  if (c.scenario == "penalty-table") return penalty_table(c, w);
  if (c.scenario == "oracle-check") return oracle_check(c, w);
  if (c.scenario == "fit") return fit(c, w);
  throw ValidationError(fmt::format("unknown scenario '{}'; valid scenarios: {}", c.scenario,
                                    fmt::join(kScenarioNames, ", ")));
}

int run(const std::string& scenario, const std::string& config_path, const std::vector<std::string>& overrides,
        const std::string& out_dir, std::ostream& out, std::ostream& err) {
  try {
    if (std::find(kScenarioNames.begin(), kScenarioNames.end(), scenario) == kScenarioNames.end())
      throw ValidationError(fmt::format("unknown scenario '{}'; valid scenarios: {}", scenario,
                                        fmt::join(kScenarioNames, ", ")));
    const auto config = load_config(scenario, config_path, overrides);
    return run_scenario(config, out_dir, out);
  } catch (const ValidationError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitInvalid;
  } catch (const NumericalError& e) {
    fmt::print(err, "numerical failure: {}\n", e.what());
    return kExitNotConverged;
  }
}

}  // namespace qlitho::cli
