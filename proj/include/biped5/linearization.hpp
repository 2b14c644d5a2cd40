#pragma once

#include "biped5/model_params.hpp"
#include "biped5/types.hpp"

namespace biped5 {

using StateMatrix = Eigen::Matrix<double, 2 * kNumJoints, 2 * kNumJoints>;
using InputMatrix = Eigen::Matrix<double, 2 * kNumJoints, kNumJoints>;

// xdot = A x + B (U - U_eq), with x = [theta - theta_eq; thetadot] and
//   A = [[0, I], [-M(theta_eq)^{-1} dG/dtheta, 0]],  B = [[0], [M(theta_eq)^{-1} D]].
struct LinearizedModel {
  StateMatrix a_matrix;
  InputMatrix b_matrix;
  Vec5 theta_eq;
  Vec5 u_eq;
};

// dG/dtheta of the printed gravity vector. Each G_i depends on theta_i only,
// so the result is diagonal with entries -g c_i sin(theta_i).
Mat5 gravity_jacobian(const Vec5& theta, const RobotParams& params);

// Throws SolverError if M(theta_eq) is not positive definite.
LinearizedModel linearize(const Vec5& theta_eq, const Vec5& u_eq, const RobotParams& params);

}  // namespace biped5
