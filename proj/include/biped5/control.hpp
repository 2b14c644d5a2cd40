#pragma once

#include <optional>

#include "biped5/gait.hpp"
#include "biped5/kinematics.hpp"
#include "biped5/model_params.hpp"
#include "biped5/types.hpp"

namespace biped5 {

// Diagonal gains of  e'' + Kv e' + Kp e = 0. Non-positive entries are
// rejected at construction.
class ControllerGains {
 public:
  ControllerGains(const Vec5& kp, const Vec5& kv);
  static ControllerGains uniform(double kp, double kv);
  // kp = 100, kv = 20: critically damped at 10 rad/s on every joint.
  static ControllerGains defaults() { return uniform(100.0, 20.0); }

  const Vec5& kp() const { return kp_; }
  const Vec5& kv() const { return kv_; }

 private:
  Vec5 kp_;
  Vec5 kv_;
};

// U = D^{-1} [ M(theta) (thetaddot_d - Kv (thetadot - thetadot_d) - Kp (theta - theta_d))
//              + H(theta, thetadot) + G(theta) ]
// with M, H, G from the chosen backend.
TorqueVector computed_torque(const JointState& state, const DesiredState& desired,
                             const ControllerGains& gains, const RobotParams& params,
                             Backend backend = Backend::printed);

// Post-processing of the commanded torque. Both are off by default; either
// one breaks the exact error dynamics.
struct TorqueModifiers {
  std::optional<double> limit;     // symmetric per-joint clamp, N·m
  bool zero_ankle_torque = false;  // force U1 = 0 (stance ankle)
};

// Applies the modifiers in place; returns true if the clamp was active.
bool apply_torque_modifiers(TorqueVector& u, const TorqueModifiers& mods);

// Closed-form solution of e'' + kv e' + kp e = 0 per joint, covering the
// under-, critically and over-damped cases. t >= 0.
Vec5 error_reference(const Vec5& e0, const Vec5& edot0, const ControllerGains& gains, double t);

}  // namespace biped5
