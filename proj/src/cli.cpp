#include "biped5/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "biped5/control.hpp"
#include "biped5/errors.hpp"
#include "biped5/format.hpp"
#include "biped5/gait.hpp"
#include "biped5/model_params.hpp"
#include "biped5/render.hpp"
#include "biped5/simulation.hpp"
#include "biped5/trajectory_io.hpp"
#include "biped5/validation.hpp"

namespace biped5 {

namespace {

struct CommonFlags {
  std::string params_path;
  GaitSpec spec;
  std::optional<double> t_end;
  std::vector<double> kp{100.0};
  std::vector<double> kv{20.0};
  std::string backend = "printed";
  double grid_ms = 1.0;
  std::string out;
  std::uint64_t seed = 42;

  RobotParams params() const {
    return params_path.empty() ? default_params() : load_params_file(params_path);
  }
  GaitSpec gait() const {
    GaitSpec s = spec;
    s.t_end = t_end.value_or(s.t_start + s.period);
    return s;
  }
  ControllerGains gains() const { return ControllerGains(expand(kp, "kp"), expand(kv, "kv")); }

  static Vec5 expand(const std::vector<double>& v, const char* name) {
    if (v.size() == 1) return Vec5::Constant(v[0]);
    if (v.size() == kNumJoints) return Vec5(v.data());
    throw ValidationError(name, "expects 1 or 5 comma-separated values");
  }
};

void add_common(CLI::App* cmd, CommonFlags& f, const std::string& default_out) {
  f.out = default_out;
  cmd->add_option("--params", f.params_path, "Parameter file (key = value)");
  cmd->add_option("--alpha", f.spec.alpha, "Swing-hip offset alpha [rad]");
  cmd->add_option("--period", f.spec.period, "Gait period T [s]");
  cmd->add_option("--t0", f.spec.t_start, "Window start [s]");
  cmd->add_option("--tf", f.t_end, "Window end [s] (default t0 + T)");
  cmd->add_option("--theta1-start", f.spec.theta1_start, "Stance angle at t0 [rad]");
  cmd->add_option("--theta1-end", f.spec.theta1_end, "Stance angle at tf [rad]");
  cmd->add_option("--swing-amplitude", f.spec.swing_amplitude,
                  "Amplitude of the sin^2 knee term [rad]");
  cmd->add_option("--kp", f.kp, "Position gains (1 or 5 values)")->delimiter(',');
  cmd->add_option("--kv", f.kv, "Velocity gains (1 or 5 values)")->delimiter(',');
  cmd->add_option("--backend", f.backend, "Dynamics model: printed|oracle")
      ->check(CLI::IsMember({"printed", "oracle"}));
  cmd->add_option("--grid-ms", f.grid_ms, "Output grid spacing [ms]; 0 keeps raw samples");
  cmd->add_option("--out", f.out, "Output path")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Seed for randomized validation sampling");
}

void print_kv(std::ostream& out, const std::string& key, double value) {
  out << key << '=' << format_double(value) << '\n';
}

int cmd_generate(const CommonFlags& f, std::ostream& out) {
  const RobotParams params = f.params();
  const GaitSolution sol = solve_gait(f.gait(), params);
  const auto times = f.grid_ms > 0.0
                         ? uniform_grid(sol.spec.t_start, sol.spec.t_end, f.grid_ms * 1e-3)
                         : uniform_grid(sol.spec.t_start, sol.spec.t_end, 1e-3);
  write_trajectory_csv(desired_trajectory(sol, times), 0.0, f.out);
  print_kv(out, "M1", sol.reduced.m1);
  print_kv(out, "H1", sol.reduced.h1);
  print_kv(out, "K", sol.reduced.k_const);
  print_kv(out, "M2", sol.reduced.m2);
  print_kv(out, "C1", sol.absolute_c1());
  print_kv(out, "C2", sol.absolute_c2());
  print_kv(out, "C3", sol.c3);
  print_kv(out, "r1", sol.r1);
  print_kv(out, "r2", sol.r2);
  print_kv(out, "offset", sol.offset);
  out << "rows=" << times.size() << '\n';
  return 0;
}

struct SimulateFlags {
  bool start_on_trajectory = false;
  double offset = 0.0;
  double tol = 1e-9;
  std::string integrator = "adaptive";
  double dt_ms = 1.0;
  std::string controller_backend;
  double zoh_ms = 0.0;
  std::optional<double> torque_limit;
  bool zero_ankle_torque = false;
};

int cmd_simulate(const CommonFlags& f, const SimulateFlags& s, std::ostream& out) {
  const RobotParams params = f.params();
  const GaitSolution sol = solve_gait(f.gait(), params);
  SimConfig cfg;
  cfg.rel_tol = s.tol;
  cfg.abs_tol = s.tol;
  cfg.backend = parse_backend(f.backend.c_str());
  if (!s.controller_backend.empty()) cfg.controller_backend = parse_backend(s.controller_backend.c_str());
  cfg.integrator = s.integrator == "rk4" ? Integrator::rk4 : Integrator::adaptive;
  cfg.dt = s.dt_ms * 1e-3;
  cfg.control_period = s.zoh_ms * 1e-3;
  cfg.torque.limit = s.torque_limit;
  cfg.torque.zero_ankle_torque = s.zero_ankle_torque;

  const DesiredState d0 = desired_state(sol, sol.spec.t_start);
  const double offset = s.start_on_trajectory ? 0.0 : s.offset;
  const JointState initial(d0.theta + Vec5::Constant(offset), d0.theta_dot);
  Trajectory traj = simulate_closed_loop(params, sol, f.gains(), cfg, initial);
  const TrackingSummary summary = tracking_summary(traj);
  if (f.grid_ms > 0.0)
    traj = resample(traj, uniform_grid(sol.spec.t_start, sol.spec.t_end, f.grid_ms * 1e-3), sol);
  write_trajectory_csv(traj, 0.0, f.out);

  for (int j = 0; j < kNumJoints; ++j)
    print_kv(out, "max_error_joint" + std::to_string(j + 1), summary.max_abs_error[j]);
  for (int j = 0; j < kNumJoints; ++j)
    print_kv(out, "final_error_joint" + std::to_string(j + 1), summary.final_error[j]);
  print_kv(out, "max_error", summary.max_error);
  out << "saturation_events=" << traj.saturation_events << '\n';
  return 0;
}

int cmd_validate(const CommonFlags& f, const std::string& fault, std::ostream& out) {
  ValidationOptions opt;
  opt.params = f.params();
  opt.spec = f.gait();
  opt.gains = f.gains();
  opt.seed = f.seed;
  if (fault == "gravity3") {
    // Test fixture: a 1 % error on the pelvis gravity torque.
    opt.gravity = [](const Vec5& q, const RobotParams& p) {
      Vec5 g = gravity_vector(q, p);
      g[2] *= 1.01;
      return g;
    };
  } else if (!fault.empty()) {
    throw ValidationError("inject-fault", "unknown fault '" + fault + "'");
  }
  const ValidationReport report = run_validation(opt);
  const std::string text = format_report(report);
  out << text;
  if (!f.out.empty() && f.out != "-") {
    std::ofstream file(f.out, std::ios::binary);
    if (!file) throw Error("cannot open " + f.out + " for writing");
    file << text;
  }
  return report.passed() ? 0 : 1;
}

int cmd_render(const CommonFlags& f, const std::string& input, std::size_t frames,
               double stride, std::ostream& out) {
  const RobotParams params = f.params();
  const Trajectory traj = read_trajectory_csv(input);
  const auto& postures = traj.has_actual ? traj.theta : traj.theta_d;
  std::vector<Vec5> picked;
  for (std::size_t idx : pick_frames(traj.times, frames)) picked.push_back(postures[idx]);
  RenderOptions opt;
  opt.stride = stride;
  const std::string svg = render_svg(picked, params, opt);
  std::ofstream file(f.out, std::ios::binary);
  if (!file) throw Error("cannot open " + f.out + " for writing");
  file << svg;
  out << "frames=" << picked.size() << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Five-link biped gait generation, tracking and validation"};
  app.require_subcommand(1);

  CommonFlags gen_flags, sim_flags, val_flags, ren_flags;
  auto* gen = app.add_subcommand("generate", "Closed-form desired joint trajectory to CSV");
  add_common(gen, gen_flags, "gait.csv");

  auto* sim = app.add_subcommand("simulate", "Computed-torque tracking simulation to CSV");
  add_common(sim, sim_flags, "simulation.csv");
  SimulateFlags sim_extra;
  sim->add_flag("--start-on-trajectory", sim_extra.start_on_trajectory,
                "Start exactly on the desired state (default unless --offset)");
  sim->add_option("--offset", sim_extra.offset, "Initial angle error on every joint [rad]");
  sim->add_option("--tol", sim_extra.tol, "Integrator relative/absolute tolerance");
  sim->add_option("--integrator", sim_extra.integrator, "adaptive|rk4")
      ->check(CLI::IsMember({"adaptive", "rk4"}));
  sim->add_option("--dt-ms", sim_extra.dt_ms, "Fixed RK4 step [ms]");
  sim->add_option("--controller-backend", sim_extra.controller_backend,
                  "Controller model if different from the plant")
      ->check(CLI::IsMember({"printed", "oracle"}));
  sim->add_option("--zoh-ms", sim_extra.zoh_ms, "Zero-order-hold control period [ms]; 0 = off");
  sim->add_option("--torque-limit", sim_extra.torque_limit, "Per-joint torque clamp [N m]");
  sim->add_flag("--zero-ankle-torque", sim_extra.zero_ankle_torque, "Force U1 = 0");

  auto* val = app.add_subcommand("validate", "Run the validation suite and write the report");
  add_common(val, val_flags, "validation_report.txt");
  std::string fault;
  val->add_option("--inject-fault", fault, "Test fixture: gravity3")->group("");

  auto* ren = app.add_subcommand("render", "SVG stick figures from a trajectory CSV");
  add_common(ren, ren_flags, "walking_cycle.svg");
  std::string input;
  std::size_t frames = 8;
  double stride = 0.3;
  ren->add_option("--in", input, "Trajectory CSV")->required();
  ren->add_option("--frames", frames, "Number of superimposed figures");
  ren->add_option("--stride", stride, "Horizontal shift per frame [m]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*gen) return cmd_generate(gen_flags, out);
    if (*sim) return cmd_simulate(sim_flags, sim_extra, out);
    if (*val) return cmd_validate(val_flags, fault, out);
    if (*ren) return cmd_render(ren_flags, input, frames, stride, out);
  } catch (const ParseError& e) {
    err << "error: parse failure at " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace biped5
