#pragma once
#include <string>
#include <vector>

#include "darboux/io.hpp"

namespace darboux {

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Projected {
  std::string label;
  std::vector<std::array<double, 2>> pts;
};

inline std::array<double, 2> project_view(const Vec3& p,
                                          const std::string& view) {
  if (view == "x") return {p.y, p.z};
  if (view == "y") return {p.x, p.z};
  if (view == "z") return {p.x, p.y};
  // isometric-style view along (1,1,1)
  constexpr double inv_sqrt2 = 0.70710678118654752;
  constexpr double inv_sqrt6 = 0.40824829046386302;
  return {(p.x - p.y) * inv_sqrt2, (p.x + p.y - 2.0 * p.z) * inv_sqrt6};
}

}  // namespace detail

// Orthographic plot of one polyline per trajectory with a legend keyed by
// branch label.  Output depends only on the inputs, so identical runs give
// identical bytes.
inline std::string render_svg(const std::vector<TrajectoryFile>& trajectories,
                              const std::string& view = "iso",
                              double width = 640.0, double height = 480.0) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                  "#9467bd", "#ff7f0e", "#8c564b",
                                  "#17becf"};
  std::vector<detail::Projected> proj;
  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  bool first = true;
  for (const auto& tf : trajectories) {
    detail::Projected pr;
    pr.label = tf.branch;
    for (const auto& row : tf.rows) {
      auto p = detail::project_view({row[1], row[2], row[3]}, view);
      if (first) {
        min_x = max_x = p[0];
        min_y = max_y = p[1];
        first = false;
      }
      min_x = std::min(min_x, p[0]);
      max_x = std::max(max_x, p[0]);
      min_y = std::min(min_y, p[1]);
      max_y = std::max(max_y, p[1]);
      pr.pts.push_back(p);
    }
    proj.push_back(std::move(pr));
  }
  double span_x = std::max(max_x - min_x, 1e-12);
  double span_y = std::max(max_y - min_y, 1e-12);
  double margin = 40.0;
  double scale = std::min((width - 2 * margin) / span_x,
                          (height - 2 * margin) / span_y);
  auto to_screen = [&](const std::array<double, 2>& p) {
    return std::array<double, 2>{
        margin + (p[0] - min_x) * scale,
        height - margin - (p[1] - min_y) * scale};
  };
  double jump = 0.25 * std::hypot(span_x, span_y);

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
       detail::svg_num(width) + "\" height=\"" + detail::svg_num(height) +
       "\" viewBox=\"0 0 " + detail::svg_num(width) + " " +
       detail::svg_num(height) + "\">\n";
  s += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (size_t i = 0; i < proj.size(); ++i) {
    const char* color = palette[i % 7];
    // split at parameter gaps so pole crossings do not draw chords
    std::vector<std::vector<std::array<double, 2>>> runs(1);
    for (size_t k = 0; k < proj[i].pts.size(); ++k) {
      if (!runs.back().empty()) {
        const auto& prev = runs.back().back();
        const auto& cur = proj[i].pts[k];
        if (std::hypot(cur[0] - prev[0], cur[1] - prev[1]) > jump)
          runs.emplace_back();
      }
      runs.back().push_back(proj[i].pts[k]);
    }
    for (const auto& run : runs) {
      if (run.size() < 2) continue;
      s += "  <polyline fill=\"none\" stroke=\"";
      s += color;
      s += "\" stroke-width=\"1.5\" points=\"";
      for (size_t k = 0; k < run.size(); ++k) {
        auto p = to_screen(run[k]);
        if (k) s += ' ';
        s += detail::svg_num(p[0]) + "," + detail::svg_num(p[1]);
      }
      s += "\"/>\n";
    }
    double ly = 20.0 + 18.0 * static_cast<double>(i);
    s += "  <line x1=\"12\" y1=\"" + detail::svg_num(ly - 4) +
         "\" x2=\"36\" y2=\"" + detail::svg_num(ly - 4) + "\" stroke=\"";
    s += color;
    s += "\" stroke-width=\"2\"/>\n";
    s += "  <text x=\"42\" y=\"" + detail::svg_num(ly) +
         "\" font-family=\"sans-serif\" font-size=\"12\">" + proj[i].label +
         "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace darboux
