#include "qlitho/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "qlitho/errors.hpp"

namespace qlitho::cli {
namespace {

namespace pt = boost::property_tree;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  T value{};
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc{} || end != t.data() + t.size())
    throw ValidationError(fmt::format("{}: cannot read '{}' as a number", key, text));
  return value;
}

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!trim(item).empty()) out.push_back(parse_number<T>(key, item));
  }
  return out;
}

template <class T>
void assign(const std::string& key, const std::string& text, T& target) {
  if constexpr (std::is_same_v<T, std::string>) {
    target = trim(text);
  } else if constexpr (std::is_same_v<T, bool>) {
    const auto t = trim(text);
    if (t == "true" || t == "1" || t == "yes") target = true;
    else if (t == "false" || t == "0" || t == "no") target = false;
    else throw ValidationError(fmt::format("{}: expected true or false, got '{}'", key, text));
  } else if constexpr (std::is_same_v<T, std::vector<double>> || std::is_same_v<T, std::vector<int>>) {
    target = parse_list<typename T::value_type>(key, text);
  } else {
    target = parse_number<T>(key, text);
  }
}

template <class T>
std::string show(const T& v) {
  if constexpr (std::is_same_v<T, std::string>) return v;
  else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
  else if constexpr (std::is_same_v<T, std::vector<double>> || std::is_same_v<T, std::vector<int>>)
    return fmt::format("{}", fmt::join(v, ","));
  else return fmt::format("{}", v);
}

struct Binding {
  std::function<void(ScenarioConfig&, const std::string&)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

template <class T>
Binding make_binding(const std::string& key, T ScenarioConfig::*member) {
  return {[key, member](ScenarioConfig& c, const std::string& text) { assign(key, text, c.*member); },
          [member](const ScenarioConfig& c) { return show(c.*member); }};
}

const std::map<std::string, Binding>& bindings() {
  static const std::map<std::string, Binding> table{
      {"optics.wavelength", make_binding("optics.wavelength", &ScenarioConfig::wavelength)},
      {"optics.focal_length", make_binding("optics.focal_length", &ScenarioConfig::focal_length)},
      {"optics.aperture", make_binding("optics.aperture", &ScenarioConfig::aperture)},
      {"optics.pulse_duration", make_binding("optics.pulse_duration", &ScenarioConfig::pulse_duration)},
      {"excitation.order", make_binding("excitation.order", &ScenarioConfig::order)},
      {"excitation.tuning", make_binding("excitation.tuning", &ScenarioConfig::tuning)},
      {"excitation.delays", make_binding("excitation.delays", &ScenarioConfig::delays)},
      {"lens.segments", make_binding("lens.segments", &ScenarioConfig::segments)},
      {"lens.policy", make_binding("lens.policy", &ScenarioConfig::policy)},
      {"lens.profile", make_binding("lens.profile", &ScenarioConfig::profile)},
      {"lens.waist", make_binding("lens.waist", &ScenarioConfig::waist)},
      {"lens.gap", make_binding("lens.gap", &ScenarioConfig::gap)},
      {"grid.samples", make_binding("grid.samples", &ScenarioConfig::samples)},
      {"grid.focal_extent", make_binding("grid.focal_extent", &ScenarioConfig::focal_extent)},
      {"suppress.amplitude", make_binding("suppress.amplitude", &ScenarioConfig::suppress_amplitude)},
      {"scan.points", make_binding("scan.points", &ScenarioConfig::scan_points)},
      {"scan.periods", make_binding("scan.periods", &ScenarioConfig::scan_periods)},
      {"penalty.segments", make_binding("penalty.segments", &ScenarioConfig::penalty_segments)},
      {"penalty.orders", make_binding("penalty.orders", &ScenarioConfig::penalty_orders)},
      {"oracle.separations", make_binding("oracle.separations", &ScenarioConfig::separations)},
      {"fit.data", make_binding("fit.data", &ScenarioConfig::fit_data)},
      {"fit.truth", make_binding("fit.truth", &ScenarioConfig::fit_truth)},
      {"fit.waist", make_binding("fit.waist", &ScenarioConfig::fit_waist)},
      {"fit.gap", make_binding("fit.gap", &ScenarioConfig::fit_gap)},
      {"fit.phase", make_binding("fit.phase", &ScenarioConfig::fit_phase)},
      {"fit.kappa_guess", make_binding("fit.kappa_guess", &ScenarioConfig::fit_kappa_guess)},
      {"fit.noise", make_binding("fit.noise", &ScenarioConfig::fit_noise)},
      {"fit.seed", make_binding("fit.seed", &ScenarioConfig::fit_seed)},
      {"fit.points", make_binding("fit.points", &ScenarioConfig::fit_points)},
      {"fit.window", make_binding("fit.window", &ScenarioConfig::fit_window)},
      {"output.svg", make_binding("output.svg", &ScenarioConfig::svg)},
  };
  return table;
}

void require_one_of(const std::string& key, const std::string& value, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (value == a) return;
  }
  throw ValidationError(fmt::format("{}: '{}' is not one of {}", key, value, fmt::join(allowed, ", ")));
}

void check(const ScenarioConfig& c) {
  if (std::find(kScenarioNames.begin(), kScenarioNames.end(), c.scenario) == kScenarioNames.end())
    throw ValidationError(fmt::format("unknown scenario '{}'; valid scenarios: {}", c.scenario,
                                      fmt::join(kScenarioNames, ", ")));
  require_one_of("excitation.tuning", c.tuning, {"bright", "dark", "none"});
  require_one_of("lens.policy", c.policy, {"fixed-total", "fixed-per-segment"});
  require_one_of("lens.profile", c.profile, {"uniform", "gaussian-gap"});
  require_one_of("fit.truth", c.fit_truth, {"separated", "overlapped"});
  if (c.order < 1) throw ValidationError("excitation.order must be >= 1");
  if (c.segments < 1) throw ValidationError("lens.segments must be >= 1");
  if (c.tuning == "none" && !c.delays.empty() && c.delays.size() != static_cast<std::size_t>(c.segments))
    throw ValidationError("excitation.delays needs one value per segment");
  if (c.samples < 16) throw ValidationError("grid.samples must be >= 16");
  if (!(c.focal_extent > 0.0)) throw ValidationError("grid.focal_extent must be positive");
  if (c.scan_points < 2) throw ValidationError("scan.points must be >= 2");
  if (!(c.scan_periods > 0.0)) throw ValidationError("scan.periods must be positive");
  if (c.fit_noise < 0.0) throw ValidationError("fit.noise must be non-negative");
  if (c.fit_points < 10) throw ValidationError("fit.points must be >= 10");
  if (!(c.fit_window > 0.0)) throw ValidationError("fit.window must be positive");
  if (!(c.fit_kappa_guess > 0.0)) throw ValidationError("fit.kappa_guess must be positive");
}

}  // namespace

ScenarioConfig parse_config(const std::string& scenario, std::istream& ini, const std::vector<std::string>& overrides) {
  pt::ptree tree;
  try {
    pt::read_ini(ini, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ValidationError("override must look like section.key=value: " + o);
    tree.put(trim(o.substr(0, eq)), trim(o.substr(eq + 1)));
  }

  ScenarioConfig config;
  config.scenario = scenario;
  const auto& table = bindings();
  for (const auto& [section, keys] : tree) {
    if (keys.empty()) throw ValidationError("config key outside a section: " + section);
    for (const auto& [key, value] : keys) {
      const auto it = table.find(section + "." + key);
      if (it == table.end()) throw ValidationError("unknown config key: " + section + "." + key);
      it->second.set(config, value.data());
    }
  }
  check(config);
  for (const auto& [key, binding] : table) config.resolved.emplace_back(key, binding.get(config));
  return config;
}

ScenarioConfig load_config(const std::string& scenario, const std::string& path,
                           const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file: " + path);
  return parse_config(scenario, in, overrides);
}

}  // namespace qlitho::cli
