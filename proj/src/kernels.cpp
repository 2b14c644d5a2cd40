#include "biped5/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <random>

#include "biped5/dynamics.hpp"

namespace biped5::kernels {

namespace {

// Runs body(i) for i in [0, n). Exceptions thrown in worker threads are
// captured and the first one is rethrown on the calling thread.
template <typename Body>
void for_each_index(std::size_t n, Exec exec, Body&& body) {
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(biped5_kernel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

}  // namespace

std::vector<Vec5> random_angles(std::size_t n, std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(lo, hi);
  std::vector<Vec5> out(n);
  for (auto& q : out)
    for (int j = 0; j < kNumJoints; ++j) q[j] = angle(rng);
  return out;
}

std::vector<JointState> random_states(std::size_t n, std::uint64_t seed, double lo, double hi,
                                      double rate) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(lo, hi);
  std::uniform_real_distribution<double> speed(-rate, rate);
  std::vector<JointState> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec5 q, qd;
    for (int j = 0; j < kNumJoints; ++j) q[j] = angle(rng);
    for (int j = 0; j < kNumJoints; ++j) qd[j] = speed(rng);
    out.emplace_back(q, qd);
  }
  return out;
}

std::vector<DesiredState> sample_desired(const GaitSolution& sol, const std::vector<double>& times,
                                         Exec exec) {
  std::vector<DesiredState> out(times.size());
  for_each_index(times.size(), exec, [&](std::size_t i) { out[i] = desired_state(sol, times[i]); });
  return out;
}

InertiaCheck inertia_check(const std::vector<Vec5>& thetas, const RobotParams& params,
                           Backend backend, Exec exec) {
  std::vector<double> min_eig(thetas.size()), asym(thetas.size());
  for_each_index(thetas.size(), exec, [&](std::size_t i) {
    const Mat5 m = backend == Backend::printed ? inertia_matrix(thetas[i], params)
                                               : oracle::inertia(thetas[i], params);
    asym[i] = (m - m.transpose()).cwiseAbs().maxCoeff();
    const Eigen::SelfAdjointEigenSolver<Mat5> eig(m, Eigen::EigenvaluesOnly);
    min_eig[i] = eig.eigenvalues().minCoeff();
  });
  InertiaCheck out;
  out.min_eigenvalue = thetas.empty() ? 0.0 : *std::min_element(min_eig.begin(), min_eig.end());
  out.max_asymmetry = max_of(asym);
  return out;
}

double gravity_gradient_error(const std::vector<Vec5>& thetas, const RobotParams& params,
                              const GravityFunction& gravity, Exec exec) {
  constexpr double step = 1e-6;
  std::vector<double> err(thetas.size());
  for_each_index(thetas.size(), exec, [&](std::size_t i) {
    const Vec5& q = thetas[i];
    Vec5 grad;
    for (int j = 0; j < kNumJoints; ++j) {
      const Vec5 dq = step * Vec5::Unit(j);
      grad[j] = (potential_energy(q + dq, params) - potential_energy(q - dq, params)) / (2.0 * step);
    }
    const Vec5 g = gravity(q, params);
    err[i] = (g - grad).cwiseAbs().maxCoeff() / (1.0 + g.cwiseAbs().maxCoeff());
  });
  return max_of(err);
}

double jacobian_error(const std::vector<Vec5>& thetas, const RobotParams& params, Exec exec) {
  constexpr double step = 1e-6;
  std::vector<double> err(thetas.size());
  for_each_index(thetas.size(), exec, [&](std::size_t i) {
    const Vec5& q = thetas[i];
    const Jacobian j = jacobian(q, params);
    double worst = 0.0;
    for (int c = 0; c < kNumJoints; ++c) {
      const Vec5 dq = step * Vec5::Unit(c);
      const CartesianPose hp = forward_kinematics(q + dq, params);
      const CartesianPose hm = forward_kinematics(q - dq, params);
      worst = std::max(worst, std::abs((hp.x - hm.x) / (2.0 * step) - j(0, c)));
      worst = std::max(worst, std::abs((hp.y - hm.y) / (2.0 * step) - j(1, c)));
    }
    err[i] = worst;
  });
  return max_of(err);
}

double feedback_identity_error(const std::vector<JointState>& states,
                               const std::vector<DesiredState>& desired,
                               const ControllerGains& gains, const RobotParams& params,
                               Backend backend, Exec exec) {
  const std::size_t n = std::min(states.size(), desired.size());
  std::vector<double> err(n);
  for_each_index(n, exec, [&](std::size_t i) {
    const JointState& s = states[i];
    const DesiredState& d = desired[i];
    const TorqueVector u = computed_torque(s, d, gains, params, backend);
    const Vec5 accel = forward_dynamics(s, u, params, backend);
    const Vec5 target = d.theta_ddot - gains.kv().cwiseProduct(s.theta_dot() - d.theta_dot) -
                        gains.kp().cwiseProduct(s.theta() - d.theta);
    err[i] = (accel - target).cwiseAbs().maxCoeff();
  });
  return max_of(err);
}

namespace {

struct LedgerSample {
  Mat5 m_diff, m_ref, upper_diff, h_diff, h_ref;
  Vec5 hv_diff, hv_ref, g_diff, g_ref;
};

// Entries far below the largest one (structural zeros) are measured against
// a thousandth of that largest magnitude instead of their own size.
double ratio(double diff, double ref, double scale) {
  return diff / std::max({ref, 1e-3 * scale, 1e-300});
}

}  // namespace

DiscrepancyLedger discrepancy_ledger(const std::vector<JointState>& states,
                                     const RobotParams& params, oracle::Chain chain, Exec exec) {
  std::vector<LedgerSample> samples(states.size());
  for_each_index(states.size(), exec, [&](std::size_t i) {
    const JointState& s = states[i];
    const Vec5& q = s.theta();
    const Mat5 m_oracle = oracle::inertia(q, params, chain);
    const auto dm = oracle::inertia_partials(q, params, chain);
    // Centripetal coefficients c_ijj = dM_ij/dq_j - 1/2 dM_jj/dq_i.
    Mat5 h_oracle;
    for (int r = 0; r < kNumJoints; ++r)
      for (int c = 0; c < kNumJoints; ++c)
        h_oracle(r, c) = dm[static_cast<std::size_t>(c)](r, c) -
                         0.5 * dm[static_cast<std::size_t>(r)](c, c);
    const Mat5 upper = printed_upper_triangle_as_written(q, params);
    const Mat5 m_oracle_upper = m_oracle.triangularView<Eigen::StrictlyUpper>();

    LedgerSample& out = samples[i];
    out.m_diff = (inertia_matrix(q, params) - m_oracle).cwiseAbs();
    out.m_ref = m_oracle.cwiseAbs();
    out.upper_diff = (upper - m_oracle_upper).cwiseAbs();
    out.h_diff = (coriolis_coefficients(q, params) - h_oracle).cwiseAbs();
    out.h_ref = h_oracle.cwiseAbs();
    const Vec5 hv_oracle = oracle::coriolis(s, params, chain);
    out.hv_diff = (coriolis_vector(s, params) - hv_oracle).cwiseAbs();
    out.hv_ref = hv_oracle.cwiseAbs();
    const Vec5 g_oracle = oracle::gravity(q, params, chain);
    out.g_diff = (gravity_vector(q, params) - g_oracle).cwiseAbs();
    out.g_ref = g_oracle.cwiseAbs();
  });

  LedgerSample acc;
  acc.m_diff = acc.m_ref = acc.upper_diff = acc.h_diff = acc.h_ref = Mat5::Zero();
  acc.hv_diff = acc.hv_ref = acc.g_diff = acc.g_ref = Vec5::Zero();
  for (const auto& s : samples) {
    acc.m_diff = acc.m_diff.cwiseMax(s.m_diff);
    acc.m_ref = acc.m_ref.cwiseMax(s.m_ref);
    acc.upper_diff = acc.upper_diff.cwiseMax(s.upper_diff);
    acc.h_diff = acc.h_diff.cwiseMax(s.h_diff);
    acc.h_ref = acc.h_ref.cwiseMax(s.h_ref);
    acc.hv_diff = acc.hv_diff.cwiseMax(s.hv_diff);
    acc.hv_ref = acc.hv_ref.cwiseMax(s.hv_ref);
    acc.g_diff = acc.g_diff.cwiseMax(s.g_diff);
    acc.g_ref = acc.g_ref.cwiseMax(s.g_ref);
  }

  const double m_scale = acc.m_ref.maxCoeff();
  const double h_scale = acc.h_ref.maxCoeff();
  const double hv_scale = acc.hv_ref.maxCoeff();
  const double g_scale = acc.g_ref.maxCoeff();

  DiscrepancyLedger ledger;
  ledger.chain = chain;
  ledger.samples = states.size();
  for (int r = 0; r < kNumJoints; ++r) {
    for (int c = 0; c < kNumJoints; ++c) {
      ledger.inertia(r, c) = ratio(acc.m_diff(r, c), acc.m_ref(r, c), m_scale);
      ledger.coriolis_coeff(r, c) = ratio(acc.h_diff(r, c), acc.h_ref(r, c), h_scale);
      ledger.inertia_as_written(r, c) =
          c > r ? ratio(acc.upper_diff(r, c), acc.m_ref(r, c), m_scale) : 0.0;
    }
    ledger.coriolis[r] = ratio(acc.hv_diff[r], acc.hv_ref[r], hv_scale);
    ledger.gravity[r] = ratio(acc.g_diff[r], acc.g_ref[r], g_scale);
  }
  return ledger;
}

std::vector<TrackingSummary> tracking_sweep(const RobotParams& params,
                                            const std::vector<GaitSpec>& specs,
                                            const ControllerGains& gains, const SimConfig& cfg,
                                            Exec exec) {
  std::vector<TrackingSummary> out(specs.size());
  for_each_index(specs.size(), exec, [&](std::size_t i) {
    const GaitSolution sol = solve_gait(specs[i], params);
    const DesiredState d0 = desired_state(sol, specs[i].t_start);
    const Trajectory traj =
        simulate_closed_loop(params, sol, gains, cfg, JointState(d0.theta, d0.theta_dot));
    out[i] = tracking_summary(traj);
  });
  return out;
}

}  // namespace biped5::kernels
