#pragma once

// CSV tables and SVG line plots written by the litho command.

#include <string>
#include <utility>
#include <vector>

namespace qlitho::cli {

/// Column-major numeric table.
struct Table {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  void add(std::string name, std::vector<double> values);
  const std::vector<double>& column(const std::string& name) const;
};

using Provenance = std::vector<std::pair<std::string, std::string>>;

/// "# key = value" lines, a header row, then one row per sample with 17
/// significant digits. Empty or ragged tables and unwritable paths raise
/// ValidationError.
void emit_csv(const Table& table, const Provenance& provenance, const std::string& path);
std::string format_csv(const Table& table, const Provenance& provenance);
Table read_csv(const std::string& path);

struct Series {
  enum class Style { Solid, Dashed, Points };
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  Style style = Style::Solid;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

void emit_svg(const Plot& plot, const std::string& path);
std::string format_svg(const Plot& plot);

}  // namespace qlitho::cli
