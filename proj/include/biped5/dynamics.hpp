#pragma once

#include "biped5/kinematics.hpp"
#include "biped5/model_params.hpp"
#include "biped5/types.hpp"

namespace biped5 {

// Terms of  M(theta) thetaddot + H(theta, thetadot) + G(theta) = D U.
struct DynamicsTerms {
  Mat5 inertia;      // M, symmetric positive definite
  Vec5 coriolis;     // H
  Vec5 gravity_vec;  // G
  Mat5 input_map;    // D, constant
};

// Printed single-support model. The lower triangle and diagonal are
// evaluated and mirrored, so the result is exactly symmetric.
Mat5 inertia_matrix(const Vec5& theta, const RobotParams& params);

// The printed upper-triangle entries exactly as they are written, kept only
// for the discrepancy ledger: M14 and M24 group the cosine differently from
// their transposes (and M14 uses theta5 and l5). Lower triangle is zero.
Mat5 printed_upper_triangle_as_written(const Vec5& theta, const RobotParams& params);

// Coefficient array h_ij(theta). The centripetal/Coriolis vector is
// H_i = sum_j h_ij * thetadot_j^2.
Mat5 coriolis_coefficients(const Vec5& theta, const RobotParams& params);
Vec5 coriolis_vector(const JointState& state, const RobotParams& params);

Vec5 gravity_vector(const Vec5& theta, const RobotParams& params);

// V(theta) with dV/dtheta_i == G_i.
double potential_energy(const Vec5& theta, const RobotParams& params);

// T = 1/2 thetadot^T M(theta) thetadot, printed M.
double kinetic_energy(const JointState& state, const RobotParams& params);

struct InputMap {
  Mat5 d;      // 1 on the diagonal, -1 on the superdiagonal
  Mat5 d_inv;  // upper-triangular ones
};
InputMap input_map_and_inverse();

// D^{-1} w without forming a matrix: suffix sums of w.
Vec5 apply_input_map_inverse(const Vec5& w);
// D u: u_i - u_{i+1}.
Vec5 apply_input_map(const Vec5& u);

// M, H, G, D from the selected model.
DynamicsTerms dynamics_terms(const JointState& state, const RobotParams& params,
                             Backend backend = Backend::printed);

// thetaddot = M^{-1}(D U - H - G) via Cholesky; throws SolverError carrying
// theta when M is not positive definite.
Vec5 forward_dynamics(const JointState& state, const TorqueVector& u, const RobotParams& params,
                      Backend backend = Backend::printed);
Vec5 forward_dynamics(const DynamicsTerms& terms, const TorqueVector& u, const Vec5& theta);

}  // namespace biped5
