#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "biped5/render.hpp"
#include "doctest.h"

using namespace biped5;
namespace pt = boost::property_tree;

namespace {

const RobotParams kParams = default_params();

struct Line {
  double x1, y1, x2, y2;
};

std::vector<Line> parse_lines(const std::string& svg, std::string* root_name = nullptr) {
  pt::ptree tree;
  std::istringstream in(svg);
  pt::read_xml(in, tree);
  std::vector<Line> out;
  const auto& root = tree.front();
  if (root_name) *root_name = root.first;
  std::function<void(const pt::ptree&)> walk = [&](const pt::ptree& node) {
    for (const auto& [name, child] : node) {
      if (name == "line")
        out.push_back({child.get<double>("<xmlattr>.x1"), child.get<double>("<xmlattr>.y1"),
                       child.get<double>("<xmlattr>.x2"), child.get<double>("<xmlattr>.y2")});
      else if (name != "<xmlattr>")
        walk(child);
    }
  };
  walk(root.second);
  return out;
}

}  // namespace

TEST_CASE("upright single frame") {
  std::string root;
  const auto lines = parse_lines(render_svg({Vec5::Constant(kHalfPi)}, kParams), &root);
  CHECK(root == "svg");
  REQUIRE(lines.size() == 6);
  // Ground line is horizontal; the figure is vertical and reaches it twice.
  const double ground_y = lines[0].y1;
  CHECK(lines[0].y2 == ground_y);
  int touching = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(lines[i].x1 == doctest::Approx(lines[i].x2).epsilon(1e-9));
    for (double y : {lines[i].y1, lines[i].y2})
      if (std::abs(y - ground_y) < 1e-6) ++touching;
  }
  CHECK(touching == 2);
}

TEST_CASE("line count scales with the number of frames") {
  const GaitSolution sol = solve_gait(GaitSpec{}, kParams);
  for (std::size_t n : {1u, 3u, 8u}) {
    std::vector<Vec5> postures;
    for (std::size_t i = 0; i < n; ++i)
      postures.push_back(desired_state(sol, n == 1 ? 0.0 : double(i) / double(n - 1)).theta);
    CHECK(parse_lines(render_svg(postures, kParams)).size() == 5 * n + 1);
  }
}

TEST_CASE("swing ankle is off the ground mid-step") {
  const GaitSolution sol = solve_gait(GaitSpec{}, kParams);
  const auto lines = parse_lines(render_svg({desired_state(sol, 0.5).theta}, kParams));
  REQUIRE(lines.size() == 6);
  // SVG y grows downwards, so above ground means a smaller y.
  CHECK(lines[5].y2 < lines[0].y1 - 1.0);
  const auto pts = joint_positions(desired_state(sol, 0.5).theta, kParams);
  CHECK(pts[kSwingAnkle].y > 0.0);
}

TEST_CASE("frame picking") {
  std::vector<double> times;
  for (int i = 0; i <= 100; ++i) times.push_back(i / 100.0);
  CHECK(pick_frames(times, 1) == std::vector<std::size_t>{0});
  CHECK(pick_frames(times, 2) == std::vector<std::size_t>{0, 100});
  CHECK(pick_frames(times, 5) == std::vector<std::size_t>{0, 25, 50, 75, 100});
  CHECK_THROWS(pick_frames({}, 3));
  CHECK_THROWS(pick_frames(times, 0));
}
