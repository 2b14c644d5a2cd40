#include "biped5/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "biped5/errors.hpp"
#include "biped5/format.hpp"
#include "biped5/kinematics.hpp"

namespace biped5 {

std::string render_svg(const std::vector<Vec5>& postures, const RobotParams& params,
                       const RenderOptions& opt) {
  struct Segment {
    Point2 a, b;
  };
  std::vector<Segment> segments;
  double min_x = 0.0, max_x = 0.0, max_y = 0.0, min_y = 0.0;
  for (std::size_t f = 0; f < postures.size(); ++f) {
    auto p = joint_positions(postures[f], params);
    const double shift = opt.stride * static_cast<double>(f);
    for (auto& pt : p) {
      pt.x += shift;
      min_x = std::min(min_x, pt.x);
      max_x = std::max(max_x, pt.x);
      min_y = std::min(min_y, pt.y);
      max_y = std::max(max_y, pt.y);
    }
    segments.push_back({p[kStanceAnkle], p[kStanceKnee]});
    segments.push_back({p[kStanceKnee], p[kHip]});
    segments.push_back({p[kHip], p[kPelvisTop]});
    segments.push_back({p[kHip], p[kSwingKnee]});
    segments.push_back({p[kSwingKnee], p[kSwingAnkle]});
  }

  const double s = opt.pixels_per_meter;
  const double width = (max_x - min_x) * s + 2.0 * opt.margin;
  const double height = (max_y - min_y) * s + 2.0 * opt.margin;
  auto px = [&](double x) { return format_shortest((x - min_x) * s + opt.margin); };
  auto py = [&](double y) { return format_shortest((max_y - y) * s + opt.margin); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << format_shortest(width) << "\" height=\"" << format_shortest(height) << "\">\n"
      << "  <line class=\"ground\" x1=\"" << px(min_x) << "\" y1=\"" << py(0.0) << "\" x2=\""
      << px(max_x) << "\" y2=\"" << py(0.0) << "\" stroke=\"#555555\" stroke-width=\"2\"/>\n";
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& seg = segments[i];
    svg << "  <line class=\"link" << (i % 5 + 1) << "\" x1=\"" << px(seg.a.x) << "\" y1=\""
        << py(seg.a.y) << "\" x2=\"" << px(seg.b.x) << "\" y2=\"" << py(seg.b.y)
        << "\" stroke=\"" << (i % 5 < 2 ? "#1f77b4" : (i % 5 == 2 ? "#2ca02c" : "#d62728"))
        << "\" stroke-width=\"3\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<std::size_t> pick_frames(const std::vector<double>& times, std::size_t frames) {
  if (times.empty()) throw Error("no trajectory samples to render");
  if (frames == 0) throw ValidationError("frames", "must be >= 1");
  std::vector<std::size_t> out;
  const double t0 = times.front();
  const double span = times.back() - t0;
  for (std::size_t i = 0; i < frames; ++i) {
    const double target =
        frames == 1 ? t0 : t0 + span * static_cast<double>(i) / static_cast<double>(frames - 1);
    const auto it = std::lower_bound(times.begin(), times.end(), target);
    std::size_t idx = static_cast<std::size_t>(it - times.begin());
    if (idx == times.size()) idx = times.size() - 1;
    if (idx > 0 && std::abs(times[idx - 1] - target) <= std::abs(times[idx] - target)) --idx;
    out.push_back(idx);
  }
  return out;
}

}  // namespace biped5
