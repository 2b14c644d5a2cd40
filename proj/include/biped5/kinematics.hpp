#pragma once

#include <array>

#include "biped5/model_params.hpp"
#include "biped5/types.hpp"

namespace biped5 {

// Joint angles and rates. Non-finite entries are rejected on construction.
class JointState {
 public:
  JointState() : theta_(Vec5::Zero()), theta_dot_(Vec5::Zero()) {}
  JointState(const Vec5& theta, const Vec5& theta_dot);

  const Vec5& theta() const { return theta_; }
  const Vec5& theta_dot() const { return theta_dot_; }

 private:
  Vec5 theta_;
  Vec5 theta_dot_;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Cartesian position (or velocity) of the swing ankle, X = [x y]^T.
using CartesianPose = Point2;

using Jacobian = Eigen::Matrix<double, 2, kNumJoints>;

// X = h(theta):
//   x = l1 c1 + l2 c2 - l4 c4 - l5 c5
//   y = l1 s1 + l2 s2 + l4 s4 + l5 s5
CartesianPose forward_kinematics(const Vec5& theta, const RobotParams& params);

// dh/dtheta. Column 3 (pelvis) is identically zero.
Jacobian jacobian(const Vec5& theta, const RobotParams& params);

// Xdot = J(theta) thetadot.
CartesianPose cartesian_velocity(const JointState& state, const RobotParams& params);

enum JointPoint : std::size_t {
  kStanceAnkle = 0,
  kStanceKnee,
  kHip,
  kPelvisTop,
  kSwingKnee,
  kSwingAnkle,
  kNumJointPoints
};

// Drawing positions with the stance ankle at the origin. Swing segments are
// subtracted from the hip in both coordinates so that theta = pi/2 everywhere
// is an upright stand with both feet on the ground. The x coordinates agree
// with forward_kinematics; the y coordinate of the swing ankle does not.
std::array<Point2, kNumJointPoints> joint_positions(const Vec5& theta, const RobotParams& params);

}  // namespace biped5
