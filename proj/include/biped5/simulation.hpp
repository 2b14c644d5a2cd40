#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "biped5/control.hpp"
#include "biped5/gait.hpp"
#include "biped5/integrators.hpp"
#include "biped5/kinematics.hpp"
#include "biped5/model_params.hpp"
#include "biped5/types.hpp"

namespace biped5 {

enum class Integrator { adaptive, rk4 };

struct SimConfig {
  double dt = 1e-3;  // fixed step for Integrator::rk4
  double rel_tol = 1e-9;
  double abs_tol = 1e-9;
  std::size_t max_steps = 1'000'000;
  Backend backend = Backend::printed;         // plant model
  std::optional<Backend> controller_backend;  // unset: same as the plant
  Integrator integrator = Integrator::adaptive;
  // > 0 holds the torque constant over each control period (zero-order
  // hold); 0 uses the continuous control law.
  double control_period = 0.0;
  TorqueModifiers torque;

  void validate() const;
  AdaptiveOptions adaptive_options() const;
  Backend controller() const { return controller_backend.value_or(backend); }
};

// Time-stamped samples. Desired series are always present; the actual state
// and torque series only when has_actual is set (closed-loop runs).
struct Trajectory {
  std::vector<double> times;
  std::vector<Vec5> theta;
  std::vector<Vec5> theta_dot;
  std::vector<Vec5> theta_d;
  std::vector<Vec5> theta_dot_d;
  std::vector<Vec5> theta_ddot_d;
  std::vector<Vec5> torques;
  bool has_actual = false;
  std::size_t saturation_events = 0;

  std::size_t size() const { return times.size(); }
  // Strictly increasing times, consistent series lengths. Throws Error.
  void check() const;
};

// t0, t0 + span/n, ..., tf with n = ceil(span / spacing); endpoints exact.
std::vector<double> uniform_grid(double t_start, double t_end, double spacing);

// Desired-only trajectory sampled at the given times.
Trajectory desired_trajectory(const GaitSolution& sol, const std::vector<double>& times);

// Integrates theta'' = forward_dynamics(theta, thetadot, U) with U from
// computed_torque tracking desired_state(sol, t) over [t_start, t_end].
// Records the initial state and every accepted integrator step.
Trajectory simulate_closed_loop(const RobotParams& params, const GaitSolution& sol,
                                const ControllerGains& gains, const SimConfig& cfg,
                                const JointState& initial);
Trajectory simulate_closed_loop(const RobotParams& params, const GaitSpec& spec,
                                const ControllerGains& gains, const SimConfig& cfg,
                                const JointState& initial);

// Unforced motion (U = 0) of the plant, e.g. for energy-conservation checks.
// Returns the state at every accepted step including the initial one.
struct PassiveRun {
  std::vector<double> times;
  std::vector<JointState> states;
};
PassiveRun simulate_passive(const RobotParams& params, const JointState& initial, double t_end,
                            const SimConfig& cfg);

// Moves a closed-loop trajectory onto new sample times: the actual state
// and torques are linearly interpolated, the desired series re-evaluated
// exactly from sol.
Trajectory resample(const Trajectory& traj, const std::vector<double>& times,
                    const GaitSolution& sol);

struct TrackingSummary {
  Vec5 max_abs_error = Vec5::Zero();
  Vec5 final_error = Vec5::Zero();
  double max_error = 0.0;
};
TrackingSummary tracking_summary(const Trajectory& traj);

}  // namespace biped5
