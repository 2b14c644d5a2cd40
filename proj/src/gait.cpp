#include "biped5/gait.hpp"

#include <algorithm>
#include <cmath>

#include "biped5/dynamics.hpp"
#include "biped5/errors.hpp"
#include "biped5/integrators.hpp"
#include "biped5/linearization.hpp"

namespace biped5 {

void GaitSpec::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(alpha)) throw ValidationError("alpha", "must be finite");
  if (!finite(period) || period <= 0.0) throw ValidationError("period", "must be > 0");
  if (!finite(t_start) || !finite(t_end) || !(t_end > t_start))
    throw ValidationError("t_end", "must be finite and greater than t_start");
  if (!finite(theta1_start)) throw ValidationError("theta1_start", "must be finite");
  if (!finite(theta1_end)) throw ValidationError("theta1_end", "must be finite");
  if (!theta_eq.allFinite()) throw ValidationError("theta_eq", "must be finite");
  if (!finite(swing_amplitude)) throw ValidationError("swing_amplitude", "must be finite");
}

double GaitSolution::absolute_c1() const { return c1 * std::exp(-r1 * spec.t_start); }
double GaitSolution::absolute_c2() const { return c2 * std::exp(-r2 * spec.t_start); }

ReducedModel reduced_coefficients(const GaitSpec& spec, const RobotParams& params) {
  spec.validate();
  const Vec5& eq = spec.theta_eq;
  const Mat5 m = inertia_matrix(eq, params);
  const Vec5 dg = gravity_jacobian(eq, params).diagonal();
  const double amp = spec.swing_amplitude;
  const double w = kPi / spec.period;

  ReducedModel r;
  r.m1 = (m(0, 0) + m(1, 1) + m(3, 3) + m(4, 4) + m(1, 2)) +
         2.0 * (m(0, 1) + m(0, 3) + m(0, 4) + m(1, 4) + m(3, 4));
  r.h1 = dg[0] + dg[1] + dg[3] + dg[4];
  r.m2 = m(0, 4) + m(1, 4) + m(3, 4) + m(4, 4);
  r.dg5 = dg[4];
  // U1_eq = 0: stance-ankle torque vanishes at an equilibrium with G = 0.
  constexpr double u1_eq = 0.0;
  r.k_const = -dg.dot(eq) + (spec.alpha * dg[3] + kHalfPi * dg[2] + 0.5 * amp * dg[4]) + u1_eq;
  r.cos_amp_h = -amp * dg[4] / 2.0;
  r.cos_amp_s = 2.0 * w * w * amp * r.m2;

  if (!(r.m1 * r.h1 < 0.0)) throw StabilityConditionViolated(r.m1, r.h1);
  return r;
}

GaitSolution solve_reduced(const GaitSpec& spec, const ReducedModel& reduced) {
  spec.validate();
  const double m1 = reduced.m1, h1 = reduced.h1;
  if (!(m1 * h1 < 0.0)) throw StabilityConditionViolated(m1, h1);

  const double omega = 2.0 * kPi / spec.period;
  const double denom = h1 - m1 * omega * omega;
  if (std::abs(denom) <= 1e-12 * (std::abs(h1) + std::abs(m1) * omega * omega))
    throw ResonantPeriod("period " + std::to_string(spec.period) +
                         " s resonates with the reduced model (H1 = M1 (2 pi / T)^2)");

  GaitSolution sol;
  sol.spec = spec;
  sol.reduced = reduced;
  sol.c3 = (-reduced.cos_amp_h - reduced.cos_amp_s) / denom;
  sol.r1 = std::sqrt(-m1 * h1) / m1;
  sol.r2 = -sol.r1;
  sol.offset = -reduced.k_const / h1;

  // [1, 1; E1, E2] [c1; c2] = [b0; bf] with exponentials anchored at t_start.
  const double span = spec.t_end - spec.t_start;
  const double e1 = std::exp(sol.r1 * span);
  const double e2 = std::exp(sol.r2 * span);
  const double b0 = spec.theta1_start - sol.c3 * std::cos(omega * spec.t_start) - sol.offset;
  const double bf = spec.theta1_end - sol.c3 * std::cos(omega * spec.t_end) - sol.offset;
  const double det = e2 - e1;
  if (!std::isfinite(det) || std::abs(det) <= 1e-300 ||
      std::abs(det) <= 1e-14 * std::max(std::abs(e1), std::abs(e2)))
    throw Error("singular boundary system for the reduced gait equation");
  sol.c1 = (b0 * e2 - bf) / det;
  sol.c2 = (bf - b0 * e1) / det;
  return sol;
}

GaitSolution solve_gait(const GaitSpec& spec, const RobotParams& params) {
  return solve_reduced(spec, reduced_coefficients(spec, params));
}

Theta1Sample eval_theta1(const GaitSolution& sol, double t) {
  const GaitSpec& spec = sol.spec;
  if (!(t >= spec.t_start && t <= spec.t_end))
    throw DomainError("t = " + std::to_string(t) + " outside the gait window [" +
                      std::to_string(spec.t_start) + ", " + std::to_string(spec.t_end) + "]");
  const double omega = 2.0 * kPi / spec.period;
  const double x1 = sol.c1 * std::exp(sol.r1 * (t - spec.t_start));
  const double x2 = sol.c2 * std::exp(sol.r2 * (t - spec.t_start));
  const double c = std::cos(omega * t);
  const double s = std::sin(omega * t);
  Theta1Sample out;
  out.value = x1 + x2 + sol.c3 * c + sol.offset;
  out.rate = sol.r1 * x1 + sol.r2 * x2 - omega * sol.c3 * s;
  out.accel = sol.r1 * sol.r1 * x1 + sol.r2 * sol.r2 * x2 - omega * omega * sol.c3 * c;
  return out;
}

double reduced_residual(const GaitSolution& sol, double t) {
  const Theta1Sample s = eval_theta1(sol, t);
  const ReducedModel& r = sol.reduced;
  const double forcing = (r.cos_amp_h + r.cos_amp_s) * std::cos(2.0 * kPi * t / sol.spec.period);
  return r.m1 * s.accel + r.h1 * s.value + r.k_const + forcing;
}

DesiredState desired_state(const GaitSolution& sol, double t) {
  const Theta1Sample q1 = eval_theta1(sol, t);
  const GaitSpec& spec = sol.spec;
  const double amp = spec.swing_amplitude;
  const double w = kPi / spec.period;
  const double s = std::sin(w * t);

  DesiredState d;
  d.theta << q1.value, q1.value, kHalfPi, q1.value + spec.alpha, q1.value - amp * (s * s);
  d.theta_dot << q1.rate, q1.rate, 0.0, q1.rate, q1.rate - amp * w * std::sin(2.0 * w * t);
  d.theta_ddot << q1.accel, q1.accel, 0.0, q1.accel,
      q1.accel - 2.0 * amp * w * w * std::cos(2.0 * w * t);
  return d;
}

double integrate_reduced_check(const GaitSolution& sol, double tolerance) {
  const ReducedModel& r = sol.reduced;
  const double omega = 2.0 * kPi / sol.spec.period;
  const OdeFunction f = [&](double t, const OdeState& y) {
    OdeState dy(2);
    dy[0] = y[1];
    dy[1] = (-r.k_const - (r.cos_amp_h + r.cos_amp_s) * std::cos(omega * t) - r.h1 * y[0]) / r.m1;
    return dy;
  };
  const Theta1Sample start = eval_theta1(sol, sol.spec.t_start);
  OdeState y0(2);
  y0 << sol.spec.theta1_start, start.rate;

  double worst = std::abs(start.value - y0[0]);
  AdaptiveOptions opt;
  opt.rel_tol = tolerance;
  opt.abs_tol = tolerance;
  rkf45_integrate(f, y0, sol.spec.t_start, sol.spec.t_end, opt,
                  [&](double t, const OdeState& y) {
                    worst = std::max(worst, std::abs(y[0] - eval_theta1(sol, t).value));
                  });
  return worst;
}

PrintedConstants printed_solution_constants(const GaitSolution& sol) {
  const GaitSpec& spec = sol.spec;
  const ReducedModel& r = sol.reduced;
  const double w = kPi / spec.period;
  const double omega = 2.0 * w;
  const double k_over_h = r.k_const / r.h1;
  const double tf = spec.t_end;

  PrintedConstants p;
  p.c3 = (r.dg5 / 2.0 - r.m2 * w * w) / (4.0 * w * w * r.m1 - r.h1);
  p.c2 = ((p.c3 + spec.theta1_end - spec.theta1_start - k_over_h) * std::exp(sol.r1 * tf) -
          p.c3 * std::cos(omega * tf) + k_over_h) /
         (std::exp(sol.r1 * tf) + std::exp(sol.r2 * tf));
  p.c1 = p.c2 - k_over_h + p.c3 - spec.theta1_start;

  auto theta = [&](double t) {
    return p.c1 * std::exp(sol.r1 * t) + p.c2 * std::exp(sol.r2 * t) + p.c3 * std::cos(omega * t) -
           k_over_h;
  };
  p.start_residual = theta(spec.t_start) - spec.theta1_start;
  p.end_residual = theta(spec.t_end) - spec.theta1_end;
  return p;
}

}  // namespace biped5
