#pragma once

#include <array>

#include "biped5/kinematics.hpp"
#include "biped5/model_params.hpp"
#include "biped5/types.hpp"

// First-principles Lagrangian of the five-link chain. Nothing here reads the
// printed model entries; M comes from the kinetic energy of the link centres
// of mass, H from finite-difference Christoffel symbols of M and G from a
// finite-difference gradient of the potential energy.
namespace biped5::oracle {

// Direction convention of the swing links (4 and 5) hanging from the hip.
//   rendering:         swing segments subtract (l cos, l sin) from the hip,
//                      as joint_positions draws them.
//   direct_kinematics: swing segments add (-l cos, +l sin), the convention
//                      of forward_kinematics.
enum class Chain { rendering, direct_kinematics };

const char* to_string(Chain chain);

// Centre-of-mass positions of links 1..5 (stance ankle at the origin). The
// swing-link COMs sit at l - k from their proximal joint, matching the
// (l4 - k4), (l5 - k5) factors of the printed model.
std::array<Point2, kNumJoints> com_positions(const Vec5& theta, const RobotParams& params,
                                             Chain chain = Chain::rendering);
std::array<Point2, kNumJoints> com_velocities(const JointState& state,
                                              const RobotParams& params,
                                              Chain chain = Chain::rendering);

// T = sum 1/2 m |v_c|^2 + 1/2 I thetadot^2 (absolute link angles).
double kinetic_energy(const JointState& state, const RobotParams& params,
                      Chain chain = Chain::rendering);
double potential_energy(const Vec5& theta, const RobotParams& params,
                        Chain chain = Chain::rendering);

// Hessian of T in thetadot, extracted exactly by polarization of the
// quadratic form: M_ii = 2 T(e_i), M_ij = T(e_i + e_j) - T(e_i) - T(e_j).
Mat5 inertia(const Vec5& theta, const RobotParams& params, Chain chain = Chain::rendering);

inline constexpr double kPartialStep = 1e-5;
inline constexpr double kGradientStep = 1e-6;

// dM/dtheta_k by central differences, k = 0..4.
std::array<Mat5, kNumJoints> inertia_partials(const Vec5& theta, const RobotParams& params,
                                              Chain chain = Chain::rendering,
                                              double step = kPartialStep);

// Mdot = sum_k dM/dtheta_k thetadot_k.
Mat5 inertia_rate(const JointState& state, const RobotParams& params,
                  Chain chain = Chain::rendering);

// C_ij = sum_k c_ijk thetadot_k with Christoffel symbols of the first kind
// c_ijk = 1/2 (dM_ij/dq_k + dM_ik/dq_j - dM_jk/dq_i). H = C thetadot.
Mat5 christoffel_matrix(const JointState& state, const RobotParams& params,
                        Chain chain = Chain::rendering);
Vec5 coriolis(const JointState& state, const RobotParams& params,
              Chain chain = Chain::rendering);

// Central-difference gradient of potential_energy.
Vec5 gravity(const Vec5& theta, const RobotParams& params, Chain chain = Chain::rendering);

}  // namespace biped5::oracle
