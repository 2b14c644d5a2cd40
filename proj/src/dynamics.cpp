#include "biped5/dynamics.hpp"

#include <cmath>
#include <cstring>

#include "biped5/errors.hpp"
#include "biped5/oracle_dynamics.hpp"

namespace biped5 {

const char* to_string(Backend b) { return b == Backend::printed ? "printed" : "oracle"; }

Backend parse_backend(const char* text) {
  if (std::strcmp(text, "printed") == 0) return Backend::printed;
  if (std::strcmp(text, "oracle") == 0) return Backend::oracle;
  throw Error(std::string("unknown dynamics backend '") + text + "' (printed|oracle)");
}

namespace {

// Configuration-independent factors of the printed entries. Indices follow
// the 1-based link numbering of the model.
struct Coefficients {
  double d1, d2, d3, d4, d5;                      // diagonal of M
  double a12, a13, a14, a15, a23, a24, a25, a45;  // off-diagonal amplitudes
  double g1, g2, g3, g4, g5;                      // G_i = g * g_i * cos(theta_i) / g
};

Coefficients coefficients(const RobotParams& p) {
  const double m1 = p.m(0), m2 = p.m(1), m3 = p.m(2), m4 = p.m(3), m5 = p.m(4);
  const double l1 = p.l(0), l2 = p.l(1), l4 = p.l(3), l5 = p.l(4);
  const double k1 = p.k(0), k2 = p.k(1), k3 = p.k(2), k4 = p.k(3), k5 = p.k(4);
  Coefficients c{};
  c.d1 = m1 * k1 * k1 + p.inertia(0) + (m2 + m3 + m4 + m5) * l1 * l1;
  c.d2 = m2 * k2 * k2 + p.inertia(1) + (m3 + m4 + m5) * l2 * l2;
  c.d3 = m3 * k3 * k3 + p.inertia(2);
  c.d4 = m4 * (l4 - k4) * (l4 - k4) + m5 * l4 * l4 + p.inertia(3);
  c.d5 = m5 * (l5 - k5) * (l5 - k5) + p.inertia(4);
  c.a12 = m2 * l1 * k2 + (m3 + m4 + m5) * l1 * l2;
  c.a13 = m3 * l1 * k3;
  c.a14 = m4 * l1 * (l4 - k4) + m5 * l1 * l4;
  c.a15 = m5 * l1 * (l5 - k5);
  c.a23 = m3 * l2 * k3;
  c.a24 = m4 * l2 * (l4 - k4) + m5 * l2 * l4;
  c.a25 = m5 * l2 * (l5 - k5);
  c.a45 = m5 * l4 * (l5 - k5);
  c.g1 = m1 * k1 + (m2 + m3 + m4 + m5) * l1;
  c.g2 = m2 * k2 + (m3 + m4 + m5) * l2;
  c.g3 = m3 * k3;
  c.g4 = m4 * (l4 - k4) + m5 * l4;
  c.g5 = m5 * (l5 - k5);
  return c;
}

}  // namespace

Mat5 inertia_matrix(const Vec5& q, const RobotParams& params) {
  using std::cos;
  const Coefficients c = coefficients(params);
  Mat5 m = Mat5::Zero();
  m(0, 0) = c.d1;
  m(1, 0) = c.a12 * cos(q[0] - q[1]);
  m(1, 1) = c.d2;
  m(2, 0) = c.a13 * cos(q[0] - q[2]);
  m(2, 1) = c.a23 * cos(q[1] - q[2]);
  m(2, 2) = c.d3;
  m(3, 0) = c.a14 * cos(q[0] + q[3]);
  m(3, 1) = c.a24 * cos(q[1] + q[3]);
  m(3, 3) = c.d4;
  m(4, 0) = c.a15 * cos(q[0] + q[4]);
  m(4, 1) = c.a25 * cos(q[1] + q[4]);
  m(4, 3) = c.a45 * cos(q[3] - q[4]);
  m(4, 4) = c.d5;
  // M43 = M53 = 0: the pelvis is a leaf of the chain.
  m.triangularView<Eigen::StrictlyUpper>() = m.transpose().triangularView<Eigen::StrictlyUpper>();
  return m;
}

Mat5 printed_upper_triangle_as_written(const Vec5& q, const RobotParams& p) {
  using std::cos;
  const Coefficients c = coefficients(p);
  const double l1 = p.l(0), l2 = p.l(1), l4 = p.l(3), l5 = p.l(4);
  const double m4 = p.m(3), m5 = p.m(4), k4 = p.k(3);
  Mat5 m = Mat5::Zero();
  m(0, 1) = c.a12 * cos(q[0] - q[1]);
  m(0, 2) = c.a13 * cos(q[0] - q[2]);
  m(0, 3) = m4 * l1 * (l4 - k4) + m5 * l1 * l5 * cos(q[0] + q[4]);
  m(0, 4) = c.a15 * cos(q[0] + q[4]);
  m(1, 2) = c.a23 * cos(q[1] - q[2]);
  m(1, 3) = m4 * l2 * (l4 - k4) + m5 * l2 * l4 * cos(q[1] + q[3]);
  m(1, 4) = c.a25 * cos(q[1] + q[4]);
  m(3, 4) = c.a45 * cos(q[3] - q[4]);
  return m;
}

Mat5 coriolis_coefficients(const Vec5& q, const RobotParams& params) {
  using std::sin;
  const Coefficients c = coefficients(params);
  Mat5 h = Mat5::Zero();
  h(0, 1) = c.a12 * sin(q[0] - q[1]);
  h(0, 2) = c.a13 * sin(q[0] - q[2]);
  h(0, 3) = -c.a14 * sin(q[0] + q[3]);
  h(0, 4) = -c.a15 * sin(q[0] + q[4]);
  h(1, 0) = -c.a12 * sin(q[0] - q[1]);
  h(1, 2) = c.a23 * sin(q[1] - q[2]);
  h(1, 3) = -c.a24 * sin(q[1] + q[3]);
  h(1, 4) = -c.a25 * sin(q[1] + q[4]);
  h(2, 0) = -c.a13 * sin(q[0] - q[2]);
  h(2, 1) = -c.a23 * sin(q[1] - q[2]);
  h(3, 0) = -c.a14 * sin(q[0] + q[3]);
  h(3, 1) = -c.a24 * sin(q[1] + q[3]);
  h(3, 4) = c.a45 * sin(q[3] - q[4]);
  h(4, 0) = -c.a15 * sin(q[0] + q[4]);
  h(4, 1) = -c.a25 * sin(q[1] + q[4]);
  h(4, 3) = -c.a45 * sin(q[3] - q[4]);
  return h;
}

Vec5 coriolis_vector(const JointState& state, const RobotParams& params) {
  return coriolis_coefficients(state.theta(), params) *
         state.theta_dot().cwiseProduct(state.theta_dot());
}

Vec5 gravity_vector(const Vec5& q, const RobotParams& params) {
  const Coefficients c = coefficients(params);
  const double g = params.gravity;
  Vec5 out;
  out << g * c.g1 * std::cos(q[0]), g * c.g2 * std::cos(q[1]), g * c.g3 * std::cos(q[2]),
      g * c.g4 * std::cos(q[3]), g * c.g5 * std::cos(q[4]);
  return out;
}

double potential_energy(const Vec5& q, const RobotParams& params) {
  const Coefficients c = coefficients(params);
  return params.gravity * (c.g1 * std::sin(q[0]) + c.g2 * std::sin(q[1]) +
                           c.g3 * std::sin(q[2]) + c.g4 * std::sin(q[3]) +
                           c.g5 * std::sin(q[4]));
}

double kinetic_energy(const JointState& state, const RobotParams& params) {
  const Vec5& qd = state.theta_dot();
  return 0.5 * qd.dot(inertia_matrix(state.theta(), params) * qd);
}

InputMap input_map_and_inverse() {
  InputMap out;
  out.d = Mat5::Identity();
  out.d_inv = Mat5::Zero();
  for (int i = 0; i < kNumJoints; ++i) {
    if (i + 1 < kNumJoints) out.d(i, i + 1) = -1.0;
    for (int j = i; j < kNumJoints; ++j) out.d_inv(i, j) = 1.0;
  }
  return out;
}

Vec5 apply_input_map_inverse(const Vec5& w) {
  Vec5 u;
  double acc = 0.0;
  for (int i = kNumJoints - 1; i >= 0; --i) {
    acc += w[i];
    u[i] = acc;
  }
  return u;
}

Vec5 apply_input_map(const Vec5& u) {
  Vec5 w;
  for (int i = 0; i < kNumJoints; ++i) w[i] = u[i] - (i + 1 < kNumJoints ? u[i + 1] : 0.0);
  return w;
}

DynamicsTerms dynamics_terms(const JointState& state, const RobotParams& params,
                             Backend backend) {
  DynamicsTerms t;
  if (backend == Backend::printed) {
    t.inertia = inertia_matrix(state.theta(), params);
    t.coriolis = coriolis_vector(state, params);
    t.gravity_vec = gravity_vector(state.theta(), params);
  } else {
    t.inertia = oracle::inertia(state.theta(), params);
    t.coriolis = oracle::coriolis(state, params);
    t.gravity_vec = oracle::gravity(state.theta(), params);
  }
  t.input_map = input_map_and_inverse().d;
  return t;
}

Vec5 forward_dynamics(const DynamicsTerms& terms, const TorqueVector& u, const Vec5& theta) {
  const Eigen::LLT<Mat5> llt(terms.inertia);
  if (llt.info() != Eigen::Success)
    throw SolverError("inertia matrix is not positive definite", theta);
  return llt.solve(apply_input_map(u) - terms.coriolis - terms.gravity_vec);
}

Vec5 forward_dynamics(const JointState& state, const TorqueVector& u, const RobotParams& params,
                      Backend backend) {
  return forward_dynamics(dynamics_terms(state, params, backend), u, state.theta());
}

}  // namespace biped5
