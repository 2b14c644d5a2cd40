#include "biped5/kinematics.hpp"

#include <cmath>

#include "biped5/errors.hpp"

namespace biped5 {

JointState::JointState(const Vec5& theta, const Vec5& theta_dot)
    : theta_(theta), theta_dot_(theta_dot) {
  if (!theta_.allFinite() || !theta_dot_.allFinite())
    throw DomainError("JointState: non-finite joint angle or rate");
}

CartesianPose forward_kinematics(const Vec5& theta, const RobotParams& p) {
  using std::cos;
  using std::sin;
  return {p.l(0) * cos(theta[0]) + p.l(1) * cos(theta[1]) - p.l(3) * cos(theta[3]) -
              p.l(4) * cos(theta[4]),
          p.l(0) * sin(theta[0]) + p.l(1) * sin(theta[1]) + p.l(3) * sin(theta[3]) +
              p.l(4) * sin(theta[4])};
}

Jacobian jacobian(const Vec5& theta, const RobotParams& p) {
  using std::cos;
  using std::sin;
  Jacobian j = Jacobian::Zero();
  j(0, 0) = -p.l(0) * sin(theta[0]);
  j(0, 1) = -p.l(1) * sin(theta[1]);
  j(0, 3) = p.l(3) * sin(theta[3]);
  j(0, 4) = p.l(4) * sin(theta[4]);
  j(1, 0) = p.l(0) * cos(theta[0]);
  j(1, 1) = p.l(1) * cos(theta[1]);
  j(1, 3) = p.l(3) * cos(theta[3]);
  j(1, 4) = p.l(4) * cos(theta[4]);
  return j;
}

CartesianPose cartesian_velocity(const JointState& state, const RobotParams& params) {
  const Eigen::Vector2d v = jacobian(state.theta(), params) * state.theta_dot();
  return {v[0], v[1]};
}

std::array<Point2, kNumJointPoints> joint_positions(const Vec5& theta, const RobotParams& p) {
  auto along = [&](const Point2& from, int link, double sign) {
    return Point2{from.x + sign * p.l(link) * std::cos(theta[link]),
                  from.y + sign * p.l(link) * std::sin(theta[link])};
  };
  std::array<Point2, kNumJointPoints> pts{};
  pts[kStanceAnkle] = {0.0, 0.0};
  pts[kStanceKnee] = along(pts[kStanceAnkle], 0, 1.0);
  pts[kHip] = along(pts[kStanceKnee], 1, 1.0);
  pts[kPelvisTop] = along(pts[kHip], 2, 1.0);
  pts[kSwingKnee] = along(pts[kHip], 3, -1.0);
  pts[kSwingAnkle] = along(pts[kSwingKnee], 4, -1.0);
  return pts;
}

}  // namespace biped5
