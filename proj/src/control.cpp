#include "biped5/control.hpp"

#include <algorithm>
#include <cmath>

#include "biped5/dynamics.hpp"
#include "biped5/errors.hpp"

namespace biped5 {

ControllerGains::ControllerGains(const Vec5& kp, const Vec5& kv) : kp_(kp), kv_(kv) {
  for (int i = 0; i < kNumJoints; ++i) {
    if (!(std::isfinite(kp[i]) && kp[i] > 0.0))
      throw ValidationError("kp[" + std::to_string(i) + "]", "gain must be > 0");
    if (!(std::isfinite(kv[i]) && kv[i] > 0.0))
      throw ValidationError("kv[" + std::to_string(i) + "]", "gain must be > 0");
  }
}

ControllerGains ControllerGains::uniform(double kp, double kv) {
  return ControllerGains(Vec5::Constant(kp), Vec5::Constant(kv));
}

TorqueVector computed_torque(const JointState& state, const DesiredState& desired,
                             const ControllerGains& gains, const RobotParams& params,
                             Backend backend) {
  const DynamicsTerms terms = dynamics_terms(state, params, backend);
  const Vec5 e = state.theta() - desired.theta;
  const Vec5 edot = state.theta_dot() - desired.theta_dot;
  const Vec5 accel =
      desired.theta_ddot - gains.kv().cwiseProduct(edot) - gains.kp().cwiseProduct(e);
  return apply_input_map_inverse(terms.inertia * accel + terms.coriolis + terms.gravity_vec);
}

bool apply_torque_modifiers(TorqueVector& u, const TorqueModifiers& mods) {
  if (mods.zero_ankle_torque) u[0] = 0.0;
  bool clamped = false;
  if (mods.limit) {
    const double lim = *mods.limit;
    for (int i = 0; i < kNumJoints; ++i) {
      const double c = std::clamp(u[i], -lim, lim);
      clamped = clamped || c != u[i];
      u[i] = c;
    }
  }
  return clamped;
}

namespace {

double second_order_decay(double e0, double v0, double kp, double kv, double t) {
  const double disc = kv * kv - 4.0 * kp;
  const double sigma = kv / 2.0;
  if (std::abs(disc) <= 1e-12 * kv * kv) {
    return (e0 + (v0 + sigma * e0) * t) * std::exp(-sigma * t);
  }
  if (disc > 0.0) {
    const double root = std::sqrt(disc) / 2.0;
    const double l1 = -sigma + root;
    const double l2 = -sigma - root;
    const double a = (v0 - l2 * e0) / (l1 - l2);
    const double b = (l1 * e0 - v0) / (l1 - l2);
    return a * std::exp(l1 * t) + b * std::exp(l2 * t);
  }
  const double wd = std::sqrt(-disc) / 2.0;
  return std::exp(-sigma * t) *
         (e0 * std::cos(wd * t) + (v0 + sigma * e0) / wd * std::sin(wd * t));
}

}  // namespace

Vec5 error_reference(const Vec5& e0, const Vec5& edot0, const ControllerGains& gains, double t) {
  if (!(t >= 0.0)) throw DomainError("error_reference: t must be >= 0");
  Vec5 e;
  for (int i = 0; i < kNumJoints; ++i)
    e[i] = second_order_decay(e0[i], edot0[i], gains.kp()[i], gains.kv()[i], t);
  return e;
}

}  // namespace biped5
