// Persistence diagram as an SVG bar chart: one row per (track, bin), the
// x axis in seconds, bars shaded by bin.

#ifndef TDT_SVG_HPP
#define TDT_SVG_HPP

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tdt/core.hpp"
#include "tdt/temporal.hpp"

namespace tdt::svg {

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string shade(const std::string& bin) {
  if (bin == "black") return "#000000";
  if (bin == "white") return "#ffffff";
  if (bin == "gray") return "#808080";
  return "#4a78b0";
}

}  // namespace detail

inline std::string render_persistence(std::span<const PersistenceInterval> intervals) {
  if (intervals.empty()) throw Error(ErrorKind::empty_diagram, "no persistence intervals to draw");
  constexpr double left = 130.0;
  constexpr double top = 20.0;
  constexpr double plot_w = 480.0;
  constexpr double row_h = 24.0;
  constexpr double bar_h = 14.0;

  std::vector<std::pair<int, std::string>> rows;
  for (const auto& iv : intervals) {
    std::pair<int, std::string> key{iv.track, iv.bin};
    if (std::find(rows.begin(), rows.end(), key) == rows.end()) rows.push_back(key);
  }
  double max_s = 0.0;
  for (const auto& iv : intervals) max_s = std::max(max_s, iv.death_s);
  if (max_s <= 0.0) max_s = 1.0;
  const double scale = plot_w / max_s;
  const double plot_h = row_h * static_cast<double>(rows.size());
  const double width = left + plot_w + 20.0;
  const double height = top + plot_h + 40.0;

  using detail::num;
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width) +
       "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + num(width) + "\" height=\"" + num(height) +
       "\" fill=\"#f4f4f4\"/>\n";

  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double y = top + row_h * static_cast<double>(r) + row_h / 2.0 + 4.0;
    s += "<text x=\"8\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"11\">track " +
         std::to_string(rows[r].first) + " / " + detail::escape(rows[r].second) + "</text>\n";
  }
  for (const auto& iv : intervals) {
    const auto row = static_cast<std::size_t>(
        std::find(rows.begin(), rows.end(), std::pair<int, std::string>{iv.track, iv.bin}) - rows.begin());
    const double x = left + iv.birth_s * scale;
    const double w = std::max((iv.death_s - iv.birth_s) * scale, 1.0);
    const double y = top + row_h * static_cast<double>(row) + (row_h - bar_h) / 2.0;
    s += "<rect class=\"bar\" x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
         "\" height=\"" + num(bar_h) + "\" fill=\"" + detail::shade(iv.bin) +
         "\" stroke=\"#000000\" stroke-width=\"1\"><title>track " + std::to_string(iv.track) + " " +
         detail::escape(iv.bin) + " [" + std::to_string(iv.birth) + ", " + std::to_string(iv.death) +
         "]</title></rect>\n";
  }

  const double axis_y = top + plot_h + 6.0;
  s += "<line x1=\"" + num(left) + "\" y1=\"" + num(axis_y) + "\" x2=\"" + num(left + plot_w) +
       "\" y2=\"" + num(axis_y) + "\" stroke=\"#000000\"/>\n";
  constexpr int ticks = 4;
  for (int k = 0; k <= ticks; ++k) {
    const double sec = max_s * k / ticks;
    const double x = left + sec * scale;
    s += "<line x1=\"" + num(x) + "\" y1=\"" + num(axis_y) + "\" x2=\"" + num(x) + "\" y2=\"" +
         num(axis_y + 4.0) + "\" stroke=\"#000000\"/>\n";
    s += "<text x=\"" + num(x) + "\" y=\"" + num(axis_y + 16.0) +
         "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" + num(sec) + "</text>\n";
  }
  s += "<text x=\"" + num(left + plot_w / 2.0) + "\" y=\"" + num(axis_y + 30.0) +
       "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">elapsed time (s)</text>\n";
  s += "</svg>\n";
  return s;
}

inline void emit_persistence_svg(std::span<const PersistenceInterval> intervals,
                                 const std::filesystem::path& out) {
  const std::string text = render_persistence(intervals);
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error(ErrorKind::invalid_argument, "cannot write " + out.string());
  f << text;
}

}  // namespace tdt::svg

#endif  // TDT_SVG_HPP
