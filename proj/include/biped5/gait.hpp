#pragma once

#include "biped5/model_params.hpp"
#include "biped5/types.hpp"

namespace biped5 {

// Boundary-value description of one single-support step. The defaults are
// the toolkit's reference gait (alpha 0.3 rad, T = 1 s over [0, T], stance
// angle swinging from pi/2 + 0.1 to pi/2 - 0.1).
struct GaitSpec {
  double alpha = 0.3;   // rad, swing-hip offset: theta4 = theta1 + alpha
  double period = 1.0;  // s
  double t_start = 0.0;
  double t_end = 1.0;
  double theta1_start = kHalfPi + 0.1;
  double theta1_end = kHalfPi - 0.1;
  Vec5 theta_eq = Vec5::Constant(kHalfPi);
  // Amplitude of the knee term theta5 = theta1 - A sin^2(pi t / T); 1 rad
  // reproduces the reference relation.
  double swing_amplitude = 1.0;

  // Throws ValidationError on a non-finite field, t_end <= t_start or
  // period <= 0.
  void validate() const;
};

// Scalar reduced equation
//   m1 thetaddot1 + h1 theta1 = -k_const - (cos_amp_h + cos_amp_s) cos(2 pi t / T).
struct ReducedModel {
  double m1 = 0.0;         // effective inertia
  double h1 = 0.0;         // effective stiffness, sum of dG_i/dtheta_i over i = 1, 2, 4, 5
  double k_const = 0.0;    // constant forcing (U1_eq = 0 folded in)
  double m2 = 0.0;         // M15 + M25 + M45 + M55
  double cos_amp_h = 0.0;  // h(t) = cos_amp_h cos(2 pi t / T)
  double cos_amp_s = 0.0;  // s(t) = cos_amp_s cos(2 pi t / T)
  double dg5 = 0.0;        // dG5/dtheta5 at theta_eq
};

// theta1(t) = c1 e^{r1 (t - t0)} + c2 e^{r2 (t - t0)} + c3 cos(2 pi t / T) + offset.
// The exponentials are anchored at t_start; absolute_c1/absolute_c2 give the
// coefficients of plain e^{r t}.
struct GaitSolution {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double offset = 0.0;  // -K / H1
  GaitSpec spec;
  ReducedModel reduced;

  double absolute_c1() const;
  double absolute_c2() const;
};

// Coefficients of the reduced equation at spec.theta_eq using the symmetric
// inertia matrix and the diagonal gravity Jacobian. Throws
// StabilityConditionViolated when m1 * h1 >= 0.
ReducedModel reduced_coefficients(const GaitSpec& spec, const RobotParams& params);

// Closed-form solution. c3 comes from harmonic balance, c1/c2 from the two
// boundary conditions. Throws StabilityConditionViolated, ResonantPeriod
// (h1 == m1 (2 pi / T)^2), or Error when the boundary system is singular.
GaitSolution solve_gait(const GaitSpec& spec, const RobotParams& params);
GaitSolution solve_reduced(const GaitSpec& spec, const ReducedModel& reduced);

struct Theta1Sample {
  double value = 0.0;
  double rate = 0.0;
  double accel = 0.0;
};

// Exact value and derivatives of theta1 at t in [t_start, t_end]; DomainError
// outside.
Theta1Sample eval_theta1(const GaitSolution& sol, double t);

// Left side minus right side of the reduced equation at t, for diagnostics.
double reduced_residual(const GaitSolution& sol, double t);

struct DesiredState {
  Vec5 theta;
  Vec5 theta_dot;
  Vec5 theta_ddot;
};

// Full joint reference:
//   theta2 = theta1, theta3 = pi/2, theta4 = theta1 + alpha,
//   theta5 = theta1 - A sin^2(pi t / T)
// with rates and accelerations from exact differentiation, so
//   thetaddot5 = thetaddot1 - 2 A (pi/T)^2 cos(2 pi t / T).
DesiredState desired_state(const GaitSolution& sol, double t);

// Integrates the reduced equation with RKF45 (rel = abs = tolerance) from
// (theta1_start, theta1dot(t_start)) and returns the largest deviation from
// the closed form over the accepted steps.
double integrate_reduced_check(const GaitSolution& sol, double tolerance);

// The printed closed-form constants, evaluated literally (they assume
// t_start = 0), next to the boundary residuals they produce. Diagnostic only.
struct PrintedConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double start_residual = 0.0;  // theta1(t_start) - theta1_start
  double end_residual = 0.0;    // theta1(t_end) - theta1_end
};
PrintedConstants printed_solution_constants(const GaitSolution& sol);

}  // namespace biped5
