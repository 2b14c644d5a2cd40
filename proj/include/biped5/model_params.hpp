#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>

namespace biped5 {

// One rigid link. first_moment is mass times the distance of the centre of
// mass from the link's reference joint (kg·m), not a distance.
struct LinkParams {
  double mass = 0.0;          // kg
  double length = 0.0;        // m
  double first_moment = 0.0;  // kg·m
  double inertia_com = 0.0;   // kg·m², about the centre of mass

  bool operator==(const LinkParams&) const = default;
};

// Links ordered 1..5: right leg, right thigh, pelvis, left thigh, left leg.
struct RobotParams {
  std::array<LinkParams, 5> links{};
  double gravity = 9.81;  // m/s²

  bool operator==(const RobotParams&) const = default;

  double m(int i) const { return links[static_cast<std::size_t>(i)].mass; }
  double l(int i) const { return links[static_cast<std::size_t>(i)].length; }
  double inertia(int i) const { return links[static_cast<std::size_t>(i)].inertia_com; }
  // Distance of the centre of mass along link i (0-based).
  double k(int i) const;
};

RobotParams default_params();

// Centre-of-mass distance along the link: first_moment / mass.
double com_distance(const LinkParams& link);

// Throws ValidationError naming the first offending field ("links[2]",
// "gravity", ...). Symmetry (links 1/5 and 2/4 equal) is only checked when
// require_symmetry is set.
void validate_params(const RobotParams& params, bool require_symmetry = false);

// Parses `key = value` lines over default_params(). Keys:
//   link<i>.mass | link<i>.length | link<i>.first_moment | link<i>.inertia  (i = 1..5)
//   gravity
// `#` starts a comment. Unknown keys, duplicate keys and malformed numbers
// throw ParseError; the result is validated before it is returned.
RobotParams load_params(std::string_view config_text);
RobotParams load_params_file(const std::filesystem::path& path);

// Inverse of load_params; every field is written with round-trip precision.
std::string serialize_params(const RobotParams& params);

}  // namespace biped5
