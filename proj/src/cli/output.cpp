#include "qlitho/cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "qlitho/errors.hpp"

namespace qlitho::cli {

void Table::add(std::string name, std::vector<double> values) {
  names.push_back(std::move(name));
  columns.push_back(std::move(values));
}

const std::vector<double>& Table::column(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw ValidationError("no column named " + name);
  return columns[static_cast<std::size_t>(it - names.begin())];
}

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
  if (!out) throw ValidationError("failed writing " + path);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

// 1-2-5 tick step covering the range in about five intervals.
double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0}) {
    if (raw <= m * mag) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

std::string format_csv(const Table& table, const Provenance& provenance) {
  if (table.names.empty() || table.rows() == 0) throw ValidationError("refusing to write an empty table");
  if (table.names.size() != table.columns.size()) throw ValidationError("table names and columns differ");
  for (const auto& c : table.columns) {
    if (c.size() != table.rows()) throw ValidationError("table columns differ in length");
  }
  fmt::memory_buffer buf;
  for (const auto& [k, v] : provenance) fmt::format_to(std::back_inserter(buf), "# {} = {}\n", k, v);
  for (std::size_t j = 0; j < table.names.size(); ++j)
    fmt::format_to(std::back_inserter(buf), "{}{}", j ? "," : "", table.names[j]);
  buf.push_back('\n');
  for (std::size_t i = 0; i < table.rows(); ++i) {
    for (std::size_t j = 0; j < table.columns.size(); ++j)
      fmt::format_to(std::back_inserter(buf), "{}{:.17g}", j ? "," : "", table.columns[j][i]);
    buf.push_back('\n');
  }
  return fmt::to_string(buf);
}

void emit_csv(const Table& table, const Provenance& provenance, const std::string& path) {
  write_file(path, format_csv(table, provenance));
}

Table read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  Table t;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t j = 0;
    while (std::getline(ss, cell, ',')) {
      if (header) {
        t.add(cell, {});
      } else {
        if (j >= t.columns.size()) throw ValidationError("row wider than header in " + path);
        try {
          t.columns[j].push_back(std::stod(cell));
        } catch (const std::exception&) {
          throw ValidationError("non-numeric cell '" + cell + "' in " + path);
        }
      }
      ++j;
    }
    if (!header && j != t.columns.size()) throw ValidationError("short row in " + path);
    header = false;
  }
  return t;
}

std::string format_svg(const Plot& plot) {
  constexpr double W = 780, H = 460, L = 80, R = 230, T = 40, B = 60;
  constexpr double inf = std::numeric_limits<double>::infinity();
  double x0 = inf, x1 = -inf, y0 = inf, y1 = -inf;
  for (const auto& s : plot.series) {
    for (double v : s.x) x0 = std::min(x0, v), x1 = std::max(x1, v);
    for (double v : s.y) y0 = std::min(y0, v), y1 = std::max(y1, v);
  }
  if (!(x1 > x0)) throw ValidationError("plot has no horizontal extent");
  if (!(y1 > y0)) y1 = y0 + 1.0;
  y0 = std::min(y0, 0.0);
  const double pw = W - L - R, ph = H - T - B;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return T + ph - (y - y0) / (y1 - y0) * ph; };

  fmt::memory_buffer b;
  auto out = std::back_inserter(b);
  fmt::format_to(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
                      "viewBox=\"0 0 {} {}\" font-family=\"sans-serif\" font-size=\"12\">\n", W, H, W, H);
  fmt::format_to(out, "<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", W, H);
  fmt::format_to(out, "<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n", L + pw / 2,
                 escape(plot.title));
  fmt::format_to(out, "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", L, T,
                 pw, ph);

  const double xs = nice_step(x1 - x0), ys = nice_step(y1 - y0);
  for (double t = std::ceil(x0 / xs) * xs; t <= x1 + 1e-9 * xs; t += xs) {
    fmt::format_to(out, "<line x1=\"{0:.2f}\" y1=\"{1}\" x2=\"{0:.2f}\" y2=\"{2}\" stroke=\"black\"/>\n", px(t),
                   T + ph, T + ph + 5);
    fmt::format_to(out, "<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">{:.6g}</text>\n", px(t), T + ph + 20,
                   std::abs(t) < 1e-12 * xs ? 0.0 : t);
  }
  for (double t = std::ceil(y0 / ys) * ys; t <= y1 + 1e-9 * ys; t += ys) {
    fmt::format_to(out, "<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"black\"/>\n", L - 5,
                   py(t), L);
    fmt::format_to(out, "<text x=\"{}\" y=\"{:.2f}\" text-anchor=\"end\">{:.6g}</text>\n", L - 8, py(t) + 4,
                   std::abs(t) < 1e-12 * ys ? 0.0 : t);
  }
  fmt::format_to(out, "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", L + pw / 2, H - 15,
                 escape(plot.x_label));
  fmt::format_to(out, "<text x=\"20\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 20 {0})\">{1}</text>\n",
                 T + ph / 2, escape(plot.y_label));

  static const char* colors[] = {"#1f4e9c", "#444444", "#b03a2e", "#2e7d32"};
  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& s = plot.series[k];
    const char* color = colors[k % 4];
    if (s.style == Series::Style::Points) {
      for (std::size_t i = 0; i < s.x.size(); ++i)
        fmt::format_to(out, "<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2\" fill=\"{}\"/>\n", px(s.x[i]), py(s.y[i]),
                       color);
    } else {
      fmt::format_to(out, "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{} points=\"", color,
                     s.style == Series::Style::Dashed ? " stroke-dasharray=\"6,4\"" : "");
      for (std::size_t i = 0; i < s.x.size(); ++i)
        fmt::format_to(out, "{}{:.2f},{:.2f}", i ? " " : "", px(s.x[i]), py(s.y[i]));
      fmt::format_to(out, "\"/>\n");
    }
    const double ly = T + 14 + 18.0 * static_cast<double>(k);
    const double lx = L + pw + 12;
    if (s.style == Series::Style::Points)
      fmt::format_to(out, "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{}\"/>\n", lx + 12, ly - 4, color);
    else
      fmt::format_to(out, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"1.5\"{}/>\n",
                     lx, ly - 4, lx + 24, ly - 4, color,
                     s.style == Series::Style::Dashed ? " stroke-dasharray=\"6,4\"" : "");
    fmt::format_to(out, "<text x=\"{}\" y=\"{}\">{}</text>\n", lx + 30, ly, escape(s.label));
  }
  fmt::format_to(out, "</svg>\n");
  return fmt::to_string(b);
}

void emit_svg(const Plot& plot, const std::string& path) { write_file(path, format_svg(plot)); }

}  // namespace qlitho::cli
