#include "tristeer/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "tristeer/io/table.hpp"

namespace tristeer::io {

namespace {

constexpr int width = 820;
constexpr int height = 500;
constexpr int margin_left = 70;
constexpr int margin_right = 190;
constexpr int margin_top = 36;
constexpr int margin_bottom = 52;

const char* palette(size_t i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                 "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                 "#bcbd22", "#17becf", "#393b79", "#ad494a"};
  return colors[i % (sizeof(colors) / sizeof(colors[0]))];
}

std::string tick_label(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4g", value);
  return buffer;
}

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points; // NaN y breaks the line
};

} // namespace

std::string render_svg(const SweepResult& result, const std::string& title) {
  // group rows by (pair, axis2 value) in encounter order
  std::vector<std::pair<ModePair, std::optional<double>>> groups;
  std::map<std::pair<int, double>, size_t> group_index;
  const auto group_of = [&](const SweepRow& row) {
    const std::pair<int, double> key{static_cast<int>(row.pair),
                                     row.axis2.value_or(0.0)};
    const auto it = group_index.find(key);
    if (it != group_index.end()) return it->second;
    group_index.emplace(key, groups.size());
    groups.emplace_back(row.pair, row.axis2);
    return groups.size() - 1;
  };

  std::vector<std::array<Series, 3>> data;
  for (const SweepRow& row : result.rows) {
    const size_t g = group_of(row);
    if (data.size() <= g) data.resize(g + 1);
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    const double ys[3] = {row.stable ? row.e_n : nan, row.stable ? row.g_fwd : nan,
                          row.stable ? row.g_bwd : nan};
    for (int k = 0; k < 3; ++k) data[g][static_cast<size_t>(k)].points.emplace_back(row.axis1, ys[k]);
  }
  static const char* measure_names[3] = {"E_N", "G_fwd", "G_bwd"};
  for (size_t g = 0; g < groups.size(); ++g)
    for (int k = 0; k < 3; ++k) {
      std::ostringstream name;
      name << measure_names[k] << " " << to_string(groups[g].first);
      if (groups[g].second && result.axis2_name)
        name << " " << *result.axis2_name << "=" << tick_label(*groups[g].second);
      data[g][static_cast<size_t>(k)].name = name.str();
    }

  // data ranges over finite points
  double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
  bool first = true;
  for (const auto& group : data)
    for (const auto& series : group)
      for (const auto& [x, y] : series.points) {
        if (std::isnan(y)) continue;
        if (first) {
          x_lo = x_hi = x;
          y_lo = y_hi = y;
          first = false;
        } else {
          x_lo = std::min(x_lo, x); x_hi = std::max(x_hi, x);
          y_lo = std::min(y_lo, y); y_hi = std::max(y_hi, y);
        }
      }
  if (x_hi <= x_lo) x_hi = x_lo + 1;
  if (y_hi <= y_lo) y_hi = y_lo + 1;
  y_hi += 0.05 * (y_hi - y_lo); // headroom

  const double plot_w = width - margin_left - margin_right;
  const double plot_h = height - margin_top - margin_bottom;
  const auto sx = [&](double x) { return margin_left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  const auto sy = [&](double y) { return margin_top + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty())
    svg << "<text x=\"" << margin_left << "\" y=\"22\" font-family=\"sans-serif\" "
           "font-size=\"15\">" << title << "</text>\n";

  // axes and ticks
  svg << "<g stroke=\"black\" fill=\"none\">\n<rect x=\"" << margin_left << "\" y=\""
      << margin_top << "\" width=\"" << plot_w << "\" height=\"" << plot_h << "\"/>\n</g>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  constexpr int nticks = 6;
  for (int i = 0; i < nticks; ++i) {
    const double fx = x_lo + (x_hi - x_lo) * i / (nticks - 1);
    const double fy = y_lo + (y_hi - y_lo) * i / (nticks - 1);
    svg << "<line x1=\"" << sx(fx) << "\" y1=\"" << margin_top + plot_h << "\" x2=\""
        << sx(fx) << "\" y2=\"" << margin_top + plot_h + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << sx(fx) << "\" y=\"" << margin_top + plot_h + 18
        << "\" text-anchor=\"middle\">" << tick_label(fx) << "</text>\n";
    svg << "<line x1=\"" << margin_left - 5 << "\" y1=\"" << sy(fy) << "\" x2=\""
        << margin_left << "\" y2=\"" << sy(fy) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << margin_left - 8 << "\" y=\"" << sy(fy) + 4
        << "\" text-anchor=\"end\">" << tick_label(fy) << "</text>\n";
  }
  svg << "<text x=\"" << margin_left + plot_w / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\">" << result.axis1_name << "</text>\n</g>\n";

  // series
  size_t color = 0;
  std::ostringstream legend;
  int legend_y = margin_top + 10;
  for (const auto& group : data)
    for (const auto& series : group) {
      const char* stroke = palette(color++);
      std::ostringstream path;
      bool open = false;
      for (const auto& [x, y] : series.points) {
        if (std::isnan(y)) {
          if (open) {
            svg << "<polyline fill=\"none\" stroke=\"" << stroke
                << "\" stroke-width=\"1.5\" points=\"" << path.str() << "\"/>\n";
            path.str("");
            open = false;
          }
          continue;
        }
        path << sx(x) << "," << sy(y) << " ";
        open = true;
      }
      if (open)
        svg << "<polyline fill=\"none\" stroke=\"" << stroke
            << "\" stroke-width=\"1.5\" points=\"" << path.str() << "\"/>\n";
      legend << "<line x1=\"" << width - margin_right + 12 << "\" y1=\"" << legend_y
             << "\" x2=\"" << width - margin_right + 34 << "\" y2=\"" << legend_y
             << "\" stroke=\"" << stroke << "\" stroke-width=\"2\"/>"
             << "<text x=\"" << width - margin_right + 40 << "\" y=\"" << legend_y + 4
             << "\" font-family=\"sans-serif\" font-size=\"11\">" << series.name
             << "</text>\n";
      legend_y += 16;
    }
  svg << legend.str() << "</svg>\n";
  return svg.str();
}

} // namespace tristeer::io
