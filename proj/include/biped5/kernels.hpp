#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "biped5/control.hpp"
#include "biped5/gait.hpp"
#include "biped5/kinematics.hpp"
#include "biped5/model_params.hpp"
#include "biped5/oracle_dynamics.hpp"
#include "biped5/simulation.hpp"
#include "biped5/types.hpp"

// Batch kernels over independent samples (states, grid times, gait specs).
// Every kernel has a serial path, kept as the reference the OpenMP path is
// tested against; per-sample work is identical in both, and reductions are
// max/min, so the two agree bit for bit.
namespace biped5::kernels {

enum class Exec { serial, parallel };

// Seeded uniform samples from the working neighbourhood of the upright
// posture: theta in [lo, hi]^5, thetadot in [-rate, rate]^5.
std::vector<Vec5> random_angles(std::size_t n, std::uint64_t seed, double lo = kPi / 4.0,
                                double hi = 3.0 * kPi / 4.0);
std::vector<JointState> random_states(std::size_t n, std::uint64_t seed, double lo = kPi / 4.0,
                                      double hi = 3.0 * kPi / 4.0, double rate = 2.0);

std::vector<DesiredState> sample_desired(const GaitSolution& sol, const std::vector<double>& times,
                                         Exec exec = Exec::parallel);

struct InertiaCheck {
  double min_eigenvalue = 0.0;
  double max_asymmetry = 0.0;  // max |M_ij - M_ji|
};
InertiaCheck inertia_check(const std::vector<Vec5>& thetas, const RobotParams& params,
                           Backend backend, Exec exec = Exec::parallel);

using GravityFunction = std::function<Vec5(const Vec5&, const RobotParams&)>;

// max over samples of ||G - grad V||_inf / (1 + ||G||_inf), grad V by central
// differences (step 1e-6) of the printed potential energy.
double gravity_gradient_error(const std::vector<Vec5>& thetas, const RobotParams& params,
                              const GravityFunction& gravity, Exec exec = Exec::parallel);

// max abs entry of J(theta) minus the central difference (step 1e-6) of the
// forward kinematics.
double jacobian_error(const std::vector<Vec5>& thetas, const RobotParams& params,
                      Exec exec = Exec::parallel);

// max over samples of ||forward_dynamics(computed_torque) - (thetaddot_d - Kv e' - Kp e)||_inf.
double feedback_identity_error(const std::vector<JointState>& states,
                               const std::vector<DesiredState>& desired,
                               const ControllerGains& gains, const RobotParams& params,
                               Backend backend, Exec exec = Exec::parallel);

// Printed entries compared with the first-principles oracle for one chain
// convention. Each relative difference is max|printed - oracle| over the
// samples divided by max|oracle|, floored at 1e-3 of the largest entry of the
// same quantity so that structural zeros do not amplify round-off.
struct DiscrepancyLedger {
  oracle::Chain chain = oracle::Chain::rendering;
  std::size_t samples = 0;
  Mat5 inertia = Mat5::Zero();           // symmetric printed M (lower triangle mirrored)
  Mat5 inertia_as_written = Mat5::Zero();  // printed upper triangle as written
  Mat5 coriolis_coeff = Mat5::Zero();    // h_ij vs Christoffel c_ijj
  Vec5 coriolis = Vec5::Zero();          // H vectors
  Vec5 gravity = Vec5::Zero();           // G vectors
};
DiscrepancyLedger discrepancy_ledger(const std::vector<JointState>& states,
                                     const RobotParams& params, oracle::Chain chain,
                                     Exec exec = Exec::parallel);

// Independent closed-loop runs, one per gait spec.
std::vector<TrackingSummary> tracking_sweep(const RobotParams& params,
                                            const std::vector<GaitSpec>& specs,
                                            const ControllerGains& gains, const SimConfig& cfg,
                                            Exec exec = Exec::parallel);

}  // namespace biped5::kernels
