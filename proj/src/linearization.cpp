#include "biped5/linearization.hpp"

#include <cmath>

#include "biped5/dynamics.hpp"
#include "biped5/errors.hpp"

namespace biped5 {

Mat5 gravity_jacobian(const Vec5& theta, const RobotParams& params) {
  // G_i = A_i cos(theta_i) where A_i = G_i(0).
  const Vec5 amplitude = gravity_vector(Vec5::Zero(), params);
  Mat5 j = Mat5::Zero();
  for (int i = 0; i < kNumJoints; ++i) j(i, i) = -amplitude[i] * std::sin(theta[i]);
  return j;
}

LinearizedModel linearize(const Vec5& theta_eq, const Vec5& u_eq, const RobotParams& params) {
  const Eigen::LLT<Mat5> llt(inertia_matrix(theta_eq, params));
  if (llt.info() != Eigen::Success)
    throw SolverError("inertia matrix is not positive definite at the equilibrium", theta_eq);

  LinearizedModel lin;
  lin.theta_eq = theta_eq;
  lin.u_eq = u_eq;
  lin.a_matrix.setZero();
  lin.a_matrix.topRightCorner<kNumJoints, kNumJoints>().setIdentity();
  lin.a_matrix.bottomLeftCorner<kNumJoints, kNumJoints>() =
      -llt.solve(gravity_jacobian(theta_eq, params));
  lin.b_matrix.setZero();
  lin.b_matrix.bottomRows<kNumJoints>() = llt.solve(input_map_and_inverse().d);
  return lin;
}

}  // namespace biped5
