#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "repnet/error.hpp"
#include "repnet/params.hpp"
#include "repnet/state.hpp"

namespace repnet::io {

/// 12 significant digits, the format used for every number written to CSV/SVG.
inline std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

/// R_0..R_L[, Q_0..Q_L][, U_0..U_L]
inline std::string state_header(std::size_t groups, std::size_t levels) {
  static constexpr std::array<char, 3> letter{'R', 'Q', 'U'};
  std::string h;
  for (std::size_t g = 0; g < groups; ++g)
    for (std::size_t k = 0; k < levels; ++k) {
      if (!h.empty()) h += ',';
      h += letter[g];
      h += '_' + std::to_string(k);
    }
  return h;
}

inline void append_state(std::string& row, const CommunityState& s) {
  for (double v : s.data()) {
    row += ',';
    row += num(v);
  }
}

/// Columns: t, state entries, pc, conservation_error.
inline std::string trajectory_csv(std::span<const double> times, std::span<const CommunityState> states,
                                  std::span<const double> pc, std::span<const double> conservation) {
  if (states.empty()) return "t,pc,conservation_error\n";
  std::string out = "t," + state_header(states[0].groups(), states[0].levels()) + ",pc,conservation_error\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::string row = num(times[i]);
    append_state(row, states[i]);
    row += ',' + num(pc[i]) + ',' + num(conservation[i]) + '\n';
    out += row;
  }
  return out;
}

/// Fixed 256-step ramp from blue (0) to yellow (1).
inline std::array<int, 3> ramp_color(double v) {
  const double x = std::clamp(std::isnan(v) ? 0.0 : v, 0.0, 1.0);
  const int step = std::min(255, static_cast<int>(x * 256.0));
  const double f = step / 255.0;
  const std::array<double, 3> lo{33, 50, 160}, hi{250, 225, 40};
  std::array<int, 3> rgb{};
  for (int c = 0; c < 3; ++c) rgb[c] = static_cast<int>(std::lround(lo[c] + f * (hi[c] - lo[c])));
  return rgb;
}

inline std::string hex_color(const std::array<int, 3>& rgb) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

/// Heatmap with one rect per cell; values[i * n2 + j] belongs to axis1 index i
/// (columns, left to right) and axis2 index j (rows, bottom to top). Each rect
/// carries its value in a data-value attribute formatted like the CSV.
inline std::string heatmap_svg(const std::string& title, const std::string& x_label, std::span<const double> xs,
                               const std::string& y_label, std::span<const double> ys, std::span<const double> values) {
  const double cell = 24.0, left = 70.0, top = 40.0;
  const double w = cell * static_cast<double>(xs.size()), h = cell * static_cast<double>(ys.size());
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(left + w + 90) << "\" height=\""
      << num(top + h + 60) << "\">\n";
  svg << "<text x=\"" << num(left) << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << title
      << "</text>\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const double v = values[i * ys.size() + j];
      const double x = left + cell * static_cast<double>(i);
      const double y = top + h - cell * static_cast<double>(j + 1);
      svg << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(cell) << "\" height=\""
          << num(cell) << "\" fill=\"" << hex_color(ramp_color(v)) << "\" data-i=\"" << i << "\" data-j=\"" << j
          << "\" data-value=\"" << num(v) << "\"/>\n";
    }
  }
  const auto tick = [&](double pos, bool horizontal, double value) {
    if (horizontal)
      svg << "<text x=\"" << num(pos) << "\" y=\"" << num(top + h + 16) << "\" font-size=\"9\" text-anchor=\"middle\">"
          << num(value) << "</text>\n";
    else
      svg << "<text x=\"" << num(left - 6) << "\" y=\"" << num(pos + 3) << "\" font-size=\"9\" text-anchor=\"end\">"
          << num(value) << "</text>\n";
  };
  for (std::size_t i = 0; i < xs.size(); ++i) tick(left + cell * (static_cast<double>(i) + 0.5), true, xs[i]);
  for (std::size_t j = 0; j < ys.size(); ++j) tick(top + h - cell * (static_cast<double>(j) + 0.5), false, ys[j]);
  svg << "<text x=\"" << num(left + w / 2) << "\" y=\"" << num(top + h + 40)
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << x_label << "</text>\n";
  svg << "<text x=\"16\" y=\"" << num(top + h / 2) << "\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 "
      << num(top + h / 2) << ")\" text-anchor=\"middle\">" << y_label << "</text>\n";
  // Color bar.
  for (int s = 0; s < 64; ++s) {
    const double v = (s + 0.5) / 64.0;
    svg << "<rect x=\"" << num(left + w + 30) << "\" y=\"" << num(top + h - h * (s + 1) / 64.0) << "\" width=\"14\" height=\""
        << num(h / 64.0 + 0.5) << "\" fill=\"" << hex_color(ramp_color(v)) << "\"/>\n";
  }
  svg << "<text x=\"" << num(left + w + 48) << "\" y=\"" << num(top + 8) << "\" font-size=\"9\">1</text>\n";
  svg << "<text x=\"" << num(left + w + 48) << "\" y=\"" << num(top + h) << "\" font-size=\"9\">0</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

struct Arrow {
  double x, y, dx, dy;
};

/// Arrow plot on the unit square with (0,0) at the bottom left. Arrows are
/// scaled so the longest spans `max_len` of the unit square; zero vectors
/// are drawn as dots.
inline std::string arrow_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                             std::span<const Arrow> arrows, double max_len = 0.04) {
  const double size = 480.0, pad = 50.0;
  double longest = 0.0;
  for (const auto& a : arrows) longest = std::max(longest, std::hypot(a.dx, a.dy));
  const double scale = longest > 0.0 ? max_len / longest : 0.0;
  const auto px = [&](double x) { return pad + x * size; };
  const auto py = [&](double y) { return pad + (1.0 - y) * size; };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(size + 2 * pad) << "\" height=\""
      << num(size + 2 * pad) << "\">\n";
  svg << "<text x=\"" << num(pad) << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  svg << "<polyline fill=\"none\" stroke=\"#888\" points=\"" << num(px(0)) << ',' << num(py(0)) << ' ' << num(px(1))
      << ',' << num(py(0)) << ' ' << num(px(0)) << ',' << num(py(1)) << ' ' << num(px(0)) << ',' << num(py(0))
      << "\"/>\n";
  for (const auto& a : arrows) {
    const double len = std::hypot(a.dx, a.dy);
    if (len * scale < 1e-9) {
      svg << "<circle cx=\"" << num(px(a.x)) << "\" cy=\"" << num(py(a.y)) << "\" r=\"1.5\" fill=\"#c33\"/>\n";
      continue;
    }
    const double ex = a.x + a.dx * scale, ey = a.y + a.dy * scale;
    svg << "<line x1=\"" << num(px(a.x)) << "\" y1=\"" << num(py(a.y)) << "\" x2=\"" << num(px(ex)) << "\" y2=\""
        << num(py(ey)) << "\" stroke=\"#225\" stroke-width=\"1\"/>\n";
    // Arrow head.
    const double ux = a.dx / len, uy = a.dy / len, head = 0.012;
    const double hx1 = ex - head * (ux - 0.5 * uy), hy1 = ey - head * (uy + 0.5 * ux);
    const double hx2 = ex - head * (ux + 0.5 * uy), hy2 = ey - head * (uy - 0.5 * ux);
    svg << "<polygon fill=\"#225\" points=\"" << num(px(ex)) << ',' << num(py(ey)) << ' ' << num(px(hx1)) << ','
        << num(py(hy1)) << ' ' << num(px(hx2)) << ',' << num(py(hy2)) << "\"/>\n";
  }
  svg << "<text x=\"" << num(pad + size / 2) << "\" y=\"" << num(size + 2 * pad - 12)
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << x_label << "</text>\n";
  svg << "<text x=\"16\" y=\"" << num(pad + size / 2) << "\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 "
      << num(pad + size / 2) << ")\" text-anchor=\"middle\">" << y_label << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace repnet::io
