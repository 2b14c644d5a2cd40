#include "biped5/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "biped5/dynamics.hpp"
#include "biped5/errors.hpp"

namespace biped5 {

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw ValidationError("dt", "must be > 0");
  if (!(rel_tol > 0.0)) throw ValidationError("rel_tol", "must be > 0");
  if (!(abs_tol > 0.0)) throw ValidationError("abs_tol", "must be > 0");
  if (max_steps == 0) throw ValidationError("max_steps", "must be > 0");
  if (!(control_period >= 0.0)) throw ValidationError("control_period", "must be >= 0");
  if (torque.limit && !(*torque.limit > 0.0))
    throw ValidationError("torque_limit", "must be > 0");
}

AdaptiveOptions SimConfig::adaptive_options() const {
  AdaptiveOptions o;
  o.rel_tol = rel_tol;
  o.abs_tol = abs_tol;
  o.max_steps = max_steps;
  return o;
}

void Trajectory::check() const {
  const std::size_t n = times.size();
  for (std::size_t i = 1; i < n; ++i)
    if (!(times[i] > times[i - 1])) throw Error("trajectory times are not strictly increasing");
  const bool ok_desired = theta_d.size() == n && theta_dot_d.size() == n && theta_ddot_d.size() == n;
  const bool ok_actual = has_actual ? (theta.size() == n && theta_dot.size() == n &&
                                       torques.size() == n)
                                    : (theta.empty() && theta_dot.empty() && torques.empty());
  if (!ok_desired || !ok_actual) throw Error("trajectory series have inconsistent lengths");
}

std::vector<double> uniform_grid(double t_start, double t_end, double spacing) {
  if (!(spacing > 0.0)) throw ValidationError("grid", "spacing must be > 0");
  if (!(t_end > t_start)) throw ValidationError("grid", "t_end must exceed t_start");
  const double span = t_end - t_start;
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(span / spacing - 1e-9)));
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    out[i] = t_start + span * static_cast<double>(i) / static_cast<double>(n);
  out.back() = t_end;
  return out;
}

namespace {

void push_desired(Trajectory& traj, const DesiredState& d) {
  traj.theta_d.push_back(d.theta);
  traj.theta_dot_d.push_back(d.theta_dot);
  traj.theta_ddot_d.push_back(d.theta_ddot);
}

JointState split(const OdeState& y) { return JointState(y.head<kNumJoints>(), y.tail<kNumJoints>()); }

OdeState join(const JointState& s) {
  OdeState y(2 * kNumJoints);
  y << s.theta(), s.theta_dot();
  return y;
}

OdeState state_derivative(const JointState& s, const Vec5& accel) {
  OdeState dy(2 * kNumJoints);
  dy << s.theta_dot(), accel;
  return dy;
}

// Runs `integrate` either over the whole window or one control period at a
// time, depending on the hold mode.
class ClosedLoop {
 public:
  ClosedLoop(const RobotParams& params, const GaitSolution& sol, const ControllerGains& gains,
             const SimConfig& cfg)
      : params_(params), sol_(sol), gains_(gains), cfg_(cfg) {}

  Trajectory run(const JointState& initial) {
    const double t0 = sol_.spec.t_start;
    const double tf = sol_.spec.t_end;
    Trajectory traj;
    traj.has_actual = true;
    record(traj, t0, join(initial), torque(t0, initial));

    OdeState y = join(initial);
    if (cfg_.control_period > 0.0) {
      double t = t0;
      while (t < tf) {
        const double t_next = std::min(tf, t + cfg_.control_period);
        const TorqueVector held = torque(t, split(y));
        const OdeFunction f = [&](double, const OdeState& x) { return plant(split(x), held); };
        y = integrate(f, y, t, t_next, traj, &held);
        t = t_next;
      }
    } else {
      const OdeFunction f = [&](double t, const OdeState& x) {
        const JointState s = split(x);
        return plant(s, torque(t, s));
      };
      y = integrate(f, y, t0, tf, traj, nullptr);
    }
    return traj;
  }

 private:
  double clamp_time(double t) const {
    return std::clamp(t, sol_.spec.t_start, sol_.spec.t_end);
  }

  TorqueVector torque(double t, const JointState& s) const {
    TorqueVector u =
        computed_torque(s, desired_state(sol_, clamp_time(t)), gains_, params_, cfg_.controller());
    apply_torque_modifiers(u, cfg_.torque);
    return u;
  }

  OdeState plant(const JointState& s, const TorqueVector& u) const {
    return state_derivative(s, forward_dynamics(s, u, params_, cfg_.backend));
  }

  void record(Trajectory& traj, double t, const OdeState& y, const TorqueVector& u) const {
    const JointState s = split(y);
    traj.times.push_back(t);
    traj.theta.push_back(s.theta());
    traj.theta_dot.push_back(s.theta_dot());
    push_desired(traj, desired_state(sol_, clamp_time(t)));
    traj.torques.push_back(u);
  }

  void record_step(Trajectory& traj, double t, const OdeState& y, const TorqueVector* held) {
    TorqueVector u;
    if (held != nullptr) {
      u = *held;
    } else {
      u = computed_torque(split(y), desired_state(sol_, clamp_time(t)), gains_, params_,
                          cfg_.controller());
      if (apply_torque_modifiers(u, cfg_.torque)) ++traj.saturation_events;
    }
    record(traj, t, y, u);
  }

  OdeState integrate(const OdeFunction& f, const OdeState& y0, double ta, double tb,
                     Trajectory& traj, const TorqueVector* held) {
    try {
      if (cfg_.integrator == Integrator::adaptive) {
        return rkf45_integrate(f, y0, ta, tb, cfg_.adaptive_options(),
                               [&](double t, const OdeState& y) { record_step(traj, t, y, held); });
      }
      const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((tb - ta) / cfg_.dt - 1e-9)));
      const double h = (tb - ta) / static_cast<double>(n);
      OdeState y = y0;
      for (std::size_t i = 0; i < n; ++i) {
        const double t = ta + h * static_cast<double>(i);
        y = rk4_step(f, y, t, h);
        record_step(traj, i + 1 == n ? tb : t + h, y, held);
      }
      return y;
    } catch (const SolverError& e) {
      throw SolverError(std::string(e.what()) + " during closed-loop step from t=" +
                            std::to_string(ta),
                        e.theta());
    }
  }

  const RobotParams& params_;
  const GaitSolution& sol_;
  const ControllerGains& gains_;
  const SimConfig& cfg_;
};

}  // namespace

Trajectory desired_trajectory(const GaitSolution& sol, const std::vector<double>& times) {
  Trajectory traj;
  traj.times = times;
  for (double t : times) push_desired(traj, desired_state(sol, t));
  traj.check();
  return traj;
}

Trajectory simulate_closed_loop(const RobotParams& params, const GaitSolution& sol,
                                const ControllerGains& gains, const SimConfig& cfg,
                                const JointState& initial) {
  cfg.validate();
  ClosedLoop loop(params, sol, gains, cfg);
  Trajectory traj = loop.run(initial);
  traj.check();
  return traj;
}

Trajectory simulate_closed_loop(const RobotParams& params, const GaitSpec& spec,
                                const ControllerGains& gains, const SimConfig& cfg,
                                const JointState& initial) {
  return simulate_closed_loop(params, solve_gait(spec, params), gains, cfg, initial);
}

PassiveRun simulate_passive(const RobotParams& params, const JointState& initial, double t_end,
                            const SimConfig& cfg) {
  cfg.validate();
  PassiveRun run;
  run.times.push_back(0.0);
  run.states.push_back(initial);
  const OdeFunction f = [&](double, const OdeState& y) {
    const JointState s = split(y);
    return state_derivative(s, forward_dynamics(s, TorqueVector::Zero(), params, cfg.backend));
  };
  const StepObserver observe = [&](double t, const OdeState& y) {
    run.times.push_back(t);
    run.states.push_back(split(y));
  };
  if (cfg.integrator == Integrator::adaptive) {
    rkf45_integrate(f, join(initial), 0.0, t_end, cfg.adaptive_options(), observe);
  } else {
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(t_end / cfg.dt - 1e-9)));
    const double h = t_end / static_cast<double>(n);
    OdeState y = join(initial);
    for (std::size_t i = 0; i < n; ++i) {
      y = rk4_step(f, y, h * static_cast<double>(i), h);
      observe(h * static_cast<double>(i + 1), y);
    }
  }
  return run;
}

Trajectory resample(const Trajectory& traj, const std::vector<double>& times,
                    const GaitSolution& sol) {
  traj.check();
  if (traj.times.empty()) throw Error("cannot resample an empty trajectory");
  Trajectory out;
  out.has_actual = traj.has_actual;
  out.saturation_events = traj.saturation_events;
  out.times = times;
  std::size_t seg = 0;
  for (double t : times) {
    if (t < traj.times.front() || t > traj.times.back())
      throw DomainError("resample time outside the trajectory window");
    while (seg + 2 < traj.times.size() && traj.times[seg + 1] < t) ++seg;
    push_desired(out, desired_state(sol, t));
    if (!traj.has_actual) continue;
    if (traj.times.size() == 1) {
      out.theta.push_back(traj.theta[0]);
      out.theta_dot.push_back(traj.theta_dot[0]);
      out.torques.push_back(traj.torques[0]);
      continue;
    }
    const double ta = traj.times[seg], tb = traj.times[seg + 1];
    const double w = (t - ta) / (tb - ta);
    auto lerp = [&](const std::vector<Vec5>& v) -> Vec5 {
      return (1.0 - w) * v[seg] + w * v[seg + 1];
    };
    out.theta.push_back(lerp(traj.theta));
    out.theta_dot.push_back(lerp(traj.theta_dot));
    out.torques.push_back(lerp(traj.torques));
  }
  out.check();
  return out;
}

TrackingSummary tracking_summary(const Trajectory& traj) {
  TrackingSummary s;
  if (!traj.has_actual || traj.times.empty()) return s;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const Vec5 e = (traj.theta[i] - traj.theta_d[i]).cwiseAbs();
    s.max_abs_error = s.max_abs_error.cwiseMax(e);
  }
  s.final_error = traj.theta.back() - traj.theta_d.back();
  s.max_error = s.max_abs_error.maxCoeff();
  return s;
}

}  // namespace biped5
