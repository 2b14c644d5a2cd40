#include "biped5/oracle_dynamics.hpp"

#include <cmath>

namespace biped5::oracle {

const char* to_string(Chain chain) {
  return chain == Chain::rendering ? "rendering" : "direct_kinematics";
}

namespace {

struct Segment {
  int joint;
  double length;
};

// Chain from the stance ankle to each link's centre of mass.
struct ComPath {
  std::array<Segment, 4> segments;
  int count;
};

std::array<ComPath, kNumJoints> com_paths(const RobotParams& p) {
  const double l1 = p.l(0), l2 = p.l(1), l4 = p.l(3), l5 = p.l(4);
  return {{
      {{{{0, p.k(0)}}}, 1},
      {{{{0, l1}, {1, p.k(1)}}}, 2},
      {{{{0, l1}, {1, l2}, {2, p.k(2)}}}, 3},
      {{{{0, l1}, {1, l2}, {3, l4 - p.k(3)}}}, 3},
      {{{{0, l1}, {1, l2}, {3, l4}, {4, l5 - p.k(4)}}}, 4},
  }};
}

bool is_swing(int joint) { return joint >= 3; }

// Unit direction of a segment and its derivative with respect to its angle.
Point2 direction(int joint, double angle, Chain chain) {
  const double c = std::cos(angle), s = std::sin(angle);
  if (!is_swing(joint)) return {c, s};
  return chain == Chain::rendering ? Point2{-c, -s} : Point2{-c, s};
}

Point2 direction_rate(int joint, double angle, Chain chain) {
  const double c = std::cos(angle), s = std::sin(angle);
  if (!is_swing(joint)) return {-s, c};
  return chain == Chain::rendering ? Point2{s, -c} : Point2{s, c};
}

}  // namespace

std::array<Point2, kNumJoints> com_positions(const Vec5& theta, const RobotParams& params,
                                             Chain chain) {
  std::array<Point2, kNumJoints> out{};
  const auto paths = com_paths(params);
  for (std::size_t link = 0; link < paths.size(); ++link) {
    for (int s = 0; s < paths[link].count; ++s) {
      const Segment seg = paths[link].segments[static_cast<std::size_t>(s)];
      const Point2 d = direction(seg.joint, theta[seg.joint], chain);
      out[link].x += seg.length * d.x;
      out[link].y += seg.length * d.y;
    }
  }
  return out;
}

std::array<Point2, kNumJoints> com_velocities(const JointState& state,
                                              const RobotParams& params, Chain chain) {
  std::array<Point2, kNumJoints> out{};
  const auto paths = com_paths(params);
  for (std::size_t link = 0; link < paths.size(); ++link) {
    for (int s = 0; s < paths[link].count; ++s) {
      const Segment seg = paths[link].segments[static_cast<std::size_t>(s)];
      const Point2 d = direction_rate(seg.joint, state.theta()[seg.joint], chain);
      const double rate = seg.length * state.theta_dot()[seg.joint];
      out[link].x += rate * d.x;
      out[link].y += rate * d.y;
    }
  }
  return out;
}

double kinetic_energy(const JointState& state, const RobotParams& params, Chain chain) {
  const auto v = com_velocities(state, params, chain);
  double t = 0.0;
  for (int i = 0; i < kNumJoints; ++i) {
    const auto& vi = v[static_cast<std::size_t>(i)];
    const double w = state.theta_dot()[i];
    t += 0.5 * params.m(i) * (vi.x * vi.x + vi.y * vi.y) + 0.5 * params.inertia(i) * w * w;
  }
  return t;
}

double potential_energy(const Vec5& theta, const RobotParams& params, Chain chain) {
  const auto c = com_positions(theta, params, chain);
  double v = 0.0;
  for (int i = 0; i < kNumJoints; ++i) v += params.m(i) * c[static_cast<std::size_t>(i)].y;
  return params.gravity * v;
}

Mat5 inertia(const Vec5& theta, const RobotParams& params, Chain chain) {
  auto energy = [&](const Vec5& rate) {
    return kinetic_energy(JointState(theta, rate), params, chain);
  };
  Vec5 single_energy;
  for (int i = 0; i < kNumJoints; ++i) single_energy[i] = energy(Vec5::Unit(i));

  Mat5 m;
  for (int i = 0; i < kNumJoints; ++i) {
    m(i, i) = 2.0 * single_energy[i];
    for (int j = 0; j < i; ++j) {
      m(i, j) = energy(Vec5::Unit(i) + Vec5::Unit(j)) - single_energy[i] - single_energy[j];
      m(j, i) = m(i, j);
    }
  }
  return m;
}

std::array<Mat5, kNumJoints> inertia_partials(const Vec5& theta, const RobotParams& params,
                                              Chain chain, double step) {
  std::array<Mat5, kNumJoints> out;
  for (int k = 0; k < kNumJoints; ++k) {
    const Vec5 dq = step * Vec5::Unit(k);
    out[static_cast<std::size_t>(k)] =
        (inertia(theta + dq, params, chain) - inertia(theta - dq, params, chain)) / (2.0 * step);
  }
  return out;
}

Mat5 inertia_rate(const JointState& state, const RobotParams& params, Chain chain) {
  const auto dm = inertia_partials(state.theta(), params, chain);
  Mat5 rate = Mat5::Zero();
  for (int k = 0; k < kNumJoints; ++k)
    rate += dm[static_cast<std::size_t>(k)] * state.theta_dot()[k];
  return rate;
}

Mat5 christoffel_matrix(const JointState& state, const RobotParams& params, Chain chain) {
  const auto dm = inertia_partials(state.theta(), params, chain);
  const Vec5& qd = state.theta_dot();
  Mat5 c = Mat5::Zero();
  for (int i = 0; i < kNumJoints; ++i) {
    for (int j = 0; j < kNumJoints; ++j) {
      double sum = 0.0;
      for (int k = 0; k < kNumJoints; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        const auto uj = static_cast<std::size_t>(j);
        const auto ui = static_cast<std::size_t>(i);
        sum += 0.5 * (dm[uk](i, j) + dm[uj](i, k) - dm[ui](j, k)) * qd[k];
      }
      c(i, j) = sum;
    }
  }
  return c;
}

Vec5 coriolis(const JointState& state, const RobotParams& params, Chain chain) {
  return christoffel_matrix(state, params, chain) * state.theta_dot();
}

Vec5 gravity(const Vec5& theta, const RobotParams& params, Chain chain) {
  Vec5 g;
  for (int i = 0; i < kNumJoints; ++i) {
    const Vec5 dq = kGradientStep * Vec5::Unit(i);
    g[i] = (potential_energy(theta + dq, params, chain) -
            potential_energy(theta - dq, params, chain)) /
           (2.0 * kGradientStep);
  }
  return g;
}

}  // namespace biped5::oracle
