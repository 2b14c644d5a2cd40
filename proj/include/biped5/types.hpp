#pragma once

#include <Eigen/Dense>

namespace biped5 {

inline constexpr int kNumJoints = 5;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHalfPi = kPi / 2.0;

using Vec5 = Eigen::Matrix<double, kNumJoints, 1>;
using Mat5 = Eigen::Matrix<double, kNumJoints, kNumJoints>;

// Joint torque vector U, one entry per joint (N·m).
using TorqueVector = Vec5;

// Which dynamic model evaluates M, H and G.
//   printed: the closed-form entries of the single-support model.
//   oracle:  first-principles Lagrangian built from link COM kinematics.
enum class Backend { printed, oracle };

const char* to_string(Backend b);
Backend parse_backend(const char* text);

}  // namespace biped5
