#include "biped5/validation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "biped5/dynamics.hpp"
#include "biped5/format.hpp"

namespace biped5 {

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return !c.hard || c.pass; });
}

const Check* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<GaitSpec> random_gait_specs(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  std::vector<GaitSpec> specs(n);
  for (auto& s : specs) {
    s.alpha = uniform(0.0, 0.5);
    s.period = uniform(0.6, 2.0);
    s.t_start = uniform(0.0, 0.5);
    s.t_end = s.t_start + uniform(0.4, 1.5);
    s.theta1_start = kHalfPi + uniform(-0.2, 0.2);
    s.theta1_end = kHalfPi + uniform(-0.2, 0.2);
  }
  return specs;
}

namespace {

Check upper_bound_check(std::string name, double value, double threshold, bool hard,
                        std::string detail = {}) {
  return {std::move(name), value, threshold, value <= threshold, hard, std::move(detail)};
}

void add_boundary_check(ValidationReport& report, const ValidationOptions& opt) {
  std::vector<GaitSpec> specs = random_gait_specs(opt.boundary_specs, opt.seed);
  specs.push_back(opt.spec);
  double worst = 0.0;
  for (const auto& spec : specs) {
    const GaitSolution sol = solve_gait(spec, opt.params);
    worst = std::max(worst, std::abs(eval_theta1(sol, spec.t_start).value - spec.theta1_start));
    worst = std::max(worst, std::abs(eval_theta1(sol, spec.t_end).value - spec.theta1_end));
  }
  report.checks.push_back(upper_bound_check(
      "boundary_condition_residuals", worst, 1e-10, true,
      std::to_string(specs.size()) + " gait specs (seeded) incl. the configured one"));
}

TrackingSummary run_tracking(const ValidationOptions& opt, const GaitSolution& sol,
                             Backend plant, Backend controller, double offset) {
  SimConfig cfg;
  cfg.rel_tol = opt.tracking_tol;
  cfg.abs_tol = opt.tracking_tol;
  cfg.backend = plant;
  cfg.controller_backend = controller;
  const DesiredState d0 = desired_state(sol, sol.spec.t_start);
  const JointState initial(d0.theta + Vec5::Constant(offset), d0.theta_dot);
  return tracking_summary(simulate_closed_loop(opt.params, sol, opt.gains, cfg, initial));
}

// Off-trajectory run compared with the analytic error decay.
double offset_reference_deviation(const ValidationOptions& opt, const GaitSolution& sol,
                                  TrackingSummary& summary) {
  SimConfig cfg;
  cfg.rel_tol = opt.tracking_tol;
  cfg.abs_tol = opt.tracking_tol;
  const DesiredState d0 = desired_state(sol, sol.spec.t_start);
  const Vec5 e0 = Vec5::Constant(opt.offset);
  const JointState initial(d0.theta + e0, d0.theta_dot);
  const Trajectory traj = simulate_closed_loop(opt.params, sol, opt.gains, cfg, initial);
  summary = tracking_summary(traj);
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const Vec5 expected =
        error_reference(e0, Vec5::Zero(), opt.gains, traj.times[i] - sol.spec.t_start);
    worst = std::max(worst, ((traj.theta[i] - traj.theta_d[i]) - expected).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

ValidationReport run_validation(const ValidationOptions& opt) {
  validate_params(opt.params);
  ValidationReport report;
  const auto exec = opt.exec;

  // Dynamics consistency.
  const auto angles = kernels::random_angles(opt.gradient_samples, opt.seed);
  report.checks.push_back(upper_bound_check(
      "gravity_gradient", kernels::gravity_gradient_error(angles, opt.params, opt.gravity, exec),
      1e-6, true, "max ||G - grad V||_inf / (1 + ||G||_inf), central differences"));

  const auto inertia_angles = kernels::random_angles(opt.inertia_samples, opt.seed + 1);
  const auto printed_m = kernels::inertia_check(inertia_angles, opt.params, Backend::printed, exec);
  const auto oracle_m = kernels::inertia_check(inertia_angles, opt.params, Backend::oracle, exec);
  {
    Check c;
    c.name = "inertia_symmetry_spd";
    c.value = std::min(printed_m.min_eigenvalue, oracle_m.min_eigenvalue);
    c.threshold = 0.0;
    c.pass = printed_m.max_asymmetry == 0.0 && oracle_m.max_asymmetry == 0.0 && c.value > 0.0;
    c.hard = true;
    c.detail = "min eigenvalue printed " + format_double(printed_m.min_eigenvalue) + ", oracle " +
               format_double(oracle_m.min_eigenvalue) + "; max asymmetry printed " +
               format_double(printed_m.max_asymmetry) + ", oracle " +
               format_double(oracle_m.max_asymmetry) + " (value must exceed threshold)";
    report.checks.push_back(c);
  }

  report.checks.push_back(upper_bound_check("jacobian_consistency",
                                            kernels::jacobian_error(angles, opt.params, exec),
                                            1e-8, false, "max |J - dh/dtheta|, central differences"));

  // Gait generation.
  report.solution = solve_gait(opt.spec, opt.params);
  const GaitSolution& sol = report.solution;
  report.checks.push_back(upper_bound_check(
      "analytic_vs_numeric_gait", integrate_reduced_check(sol, opt.gait_integration_tol), 1e-6,
      true, "closed form vs RKF45 integration of the reduced equation"));
  add_boundary_check(report, opt);
  {
    double worst = 0.0;
    const std::size_t n = std::max<std::size_t>(opt.residual_samples, 2);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = sol.spec.t_start + (sol.spec.t_end - sol.spec.t_start) *
                                              static_cast<double>(i) / static_cast<double>(n - 1);
      worst = std::max(worst, std::abs(reduced_residual(sol, t)));
    }
    report.checks.push_back(
        upper_bound_check("reduced_ode_residual", worst, 1e-8, false, "closed form substituted"));
  }
  report.checks.push_back(
      {"stability_condition", sol.reduced.m1 * sol.reduced.h1, 0.0,
       sol.reduced.m1 * sol.reduced.h1 < 0.0, false, "M1*H1 must be negative"});

  // Control.
  const auto states = kernels::random_states(opt.feedback_samples, opt.seed + 2);
  const auto targets = kernels::random_states(opt.feedback_samples, opt.seed + 3);
  std::vector<DesiredState> desired;
  std::mt19937_64 rng(opt.seed + 4);
  std::uniform_real_distribution<double> acc(-5.0, 5.0);
  for (const auto& s : targets) {
    Vec5 a;
    for (int j = 0; j < kNumJoints; ++j) a[j] = acc(rng);
    desired.push_back({s.theta(), s.theta_dot(), a});
  }
  for (Backend b : {Backend::printed, Backend::oracle}) {
    report.checks.push_back(upper_bound_check(
        std::string("feedback_identity_") + to_string(b),
        kernels::feedback_identity_error(states, desired, opt.gains, opt.params, b, exec), 1e-10,
        false, "closed-loop acceleration vs thetaddot_d - Kv e' - Kp e"));
  }

  report.on_trajectory = run_tracking(opt, sol, Backend::printed, Backend::printed, 0.0);
  report.checks.push_back(upper_bound_check("model_matched_tracking", report.on_trajectory.max_error,
                                            1e-6, true,
                                            "start on trajectory, printed plant and controller"));
  report.checks.push_back(upper_bound_check(
      "offset_error_vs_reference", offset_reference_deviation(opt, sol, report.offset_run), 1e-4,
      false, "initial offset on every joint vs analytic error decay"));
  report.mismatched = run_tracking(opt, sol, Backend::oracle, Backend::printed, 0.0);

  // Discrepancy ledgers (informational).
  const auto ledger_states = kernels::random_states(opt.ledger_samples, opt.seed + 5);
  for (auto chain : {oracle::Chain::rendering, oracle::Chain::direct_kinematics})
    report.ledgers.push_back(kernels::discrepancy_ledger(ledger_states, opt.params, chain, exec));

  report.printed = printed_solution_constants(sol);
  report.knee_acceleration_sign_note =
      "the printed knee relation gives thetaddot5 = thetaddot1 + 2 (pi/T)^2 cos(2 pi t/T); "
      "differentiating theta5 = theta1 - sin^2(pi t/T) twice gives thetaddot5 = thetaddot1 - "
      "2 (pi/T)^2 cos(2 pi t/T). Desired accelerations use the differentiated form; the s(t) "
      "forcing of the reduced equation keeps the printed sign.";
  return report;
}

namespace {

void line(std::ostringstream& out, int indent, const std::string& key, const std::string& value) {
  out << std::string(static_cast<std::size_t>(indent) * 2, ' ') << key << ": " << value << '\n';
}

std::string fmt(double v) { return format_double(v); }

std::string entry_name(char symbol, int r, int c) {
  return std::string(1, symbol) + std::to_string(r + 1) + std::to_string(c + 1);
}

void format_ledger(std::ostringstream& out, const kernels::DiscrepancyLedger& l) {
  line(out, 1, std::string("chain_") + oracle::to_string(l.chain), "");
  line(out, 2, "samples", std::to_string(l.samples));
  std::vector<std::pair<std::string, double>> items;
  for (int r = 0; r < kNumJoints; ++r) {
    for (int c = 0; c <= r; ++c)
      if (l.inertia(r, c) > kLedgerDisagreement) items.emplace_back(entry_name('M', r, c), l.inertia(r, c));
  }
  for (int r = 0; r < kNumJoints; ++r)
    for (int c = r + 1; c < kNumJoints; ++c)
      if (l.inertia_as_written(r, c) > kLedgerDisagreement)
        items.emplace_back(entry_name('M', r, c) + "_as_written", l.inertia_as_written(r, c));
  for (int r = 0; r < kNumJoints; ++r)
    for (int c = 0; c < kNumJoints; ++c)
      if (l.coriolis_coeff(r, c) > kLedgerDisagreement)
        items.emplace_back(entry_name('h', r, c), l.coriolis_coeff(r, c));
  for (int r = 0; r < kNumJoints; ++r) {
    if (l.coriolis[r] > kLedgerDisagreement)
      items.emplace_back("H" + std::to_string(r + 1), l.coriolis[r]);
    if (l.gravity[r] > kLedgerDisagreement)
      items.emplace_back("G" + std::to_string(r + 1), l.gravity[r]);
  }
  line(out, 2, "disagreement_threshold", fmt(kLedgerDisagreement));
  line(out, 2, "disagreeing_entries", std::to_string(items.size()));
  line(out, 2, "max_rel_diff_M", fmt(l.inertia.maxCoeff()));
  line(out, 2, "max_rel_diff_h", fmt(l.coriolis_coeff.maxCoeff()));
  line(out, 2, "max_rel_diff_G", fmt(l.gravity.maxCoeff()));
  for (const auto& [name, value] : items) line(out, 2, name, fmt(value));
}

void format_tracking(std::ostringstream& out, const std::string& name, const TrackingSummary& s) {
  line(out, 1, name, "");
  line(out, 2, "max_error", fmt(s.max_error));
  for (int j = 0; j < kNumJoints; ++j)
    line(out, 2, "final_error_joint" + std::to_string(j + 1), fmt(s.final_error[j]));
}

}  // namespace

std::string format_report(const ValidationReport& report) {
  std::ostringstream out;
  out << "# five-link biped validation report\n";
  line(out, 0, "checks", "");
  for (const auto& c : report.checks) {
    line(out, 1, c.name, "");
    line(out, 2, "status", c.pass ? "PASS" : "FAIL");
    line(out, 2, "gate", c.hard ? "hard" : "informational");
    line(out, 2, "value", fmt(c.value));
    line(out, 2, "threshold", fmt(c.threshold));
    if (!c.detail.empty()) line(out, 2, "detail", c.detail);
  }

  const GaitSolution& sol = report.solution;
  line(out, 0, "gait_solution", "");
  line(out, 1, "M1", fmt(sol.reduced.m1));
  line(out, 1, "H1", fmt(sol.reduced.h1));
  line(out, 1, "K", fmt(sol.reduced.k_const));
  line(out, 1, "M2", fmt(sol.reduced.m2));
  line(out, 1, "r1", fmt(sol.r1));
  line(out, 1, "r2", fmt(sol.r2));

  line(out, 0, "printed_coefficient_deviations", "");
  line(out, 1, "C1_printed", fmt(report.printed.c1));
  line(out, 1, "C1_derived", fmt(sol.absolute_c1()));
  line(out, 1, "C2_printed", fmt(report.printed.c2));
  line(out, 1, "C2_derived", fmt(sol.absolute_c2()));
  line(out, 1, "C3_printed", fmt(report.printed.c3));
  line(out, 1, "C3_derived", fmt(sol.c3));
  line(out, 1, "printed_start_residual", fmt(report.printed.start_residual));
  line(out, 1, "printed_end_residual", fmt(report.printed.end_residual));
  line(out, 1, "note",
       "printed constants assume t_start = 0 and are evaluated literally; the derived ones "
       "satisfy both boundary conditions");

  line(out, 0, "knee_acceleration_sign_note", report.knee_acceleration_sign_note);

  line(out, 0, "printed_vs_oracle_ledger", "");
  for (const auto& l : report.ledgers) format_ledger(out, l);

  line(out, 0, "tracking_error_summary", "");
  format_tracking(out, "on_trajectory_printed", report.on_trajectory);
  format_tracking(out, "offset_printed", report.offset_run);
  format_tracking(out, "printed_controller_on_oracle_plant", report.mismatched);

  out << "STATUS: " << (report.passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

}  // namespace biped5
