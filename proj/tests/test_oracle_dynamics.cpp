#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "biped5/dynamics.hpp"
#include "biped5/oracle_dynamics.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace biped5;
using oracle::Chain;

namespace {
const RobotParams kParams = default_params();
}

TEST_CASE("oracle inertia is symmetric and positive definite") {
  std::mt19937_64 rng(42);
  double min_eig = INFINITY;
  for (Chain c : {Chain::rendering, Chain::direct_kinematics}) {
    for (int n = 0; n < 1000; ++n) {
      const Mat5 m = oracle::inertia(test::random_vec(rng, kPi / 4, 3 * kPi / 4), kParams, c);
      REQUIRE(test::max_abs(m - m.transpose()) <= 1e-12);
      min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<Mat5>(m).eigenvalues().minCoeff());
    }
  }
  CHECK(min_eig > 0.0);
}

TEST_CASE("quadratic form reproduces the kinetic energy") {
  std::mt19937_64 rng(1);
  for (Chain c : {Chain::rendering, Chain::direct_kinematics}) {
    for (int n = 0; n < 50; ++n) {
      const JointState s(test::random_vec(rng, 0, 2 * kPi), test::random_vec(rng, -3, 3));
      const Mat5 m = oracle::inertia(s.theta(), kParams, c);
      const double t = 0.5 * s.theta_dot().dot(m * s.theta_dot());
      CHECK(t == doctest::Approx(oracle::kinetic_energy(s, kParams, c)).epsilon(1e-12));
    }
  }
}

TEST_CASE("direct-kinematics chain reproduces the printed lower triangle") {
  std::mt19937_64 rng(2);
  for (int n = 0; n < 100; ++n) {
    const Vec5 q = test::random_vec(rng, 0, 2 * kPi);
    const Mat5 printed = inertia_matrix(q, kParams);
    const Mat5 oracle_m = oracle::inertia(q, kParams, Chain::direct_kinematics);
    CHECK(test::max_abs(printed - oracle_m) < 1e-12);
    const Vec5 g = oracle::gravity(q, kParams, Chain::direct_kinematics);
    CHECK((g - gravity_vector(q, kParams)).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("rendering chain flips the swing-leg gravity torques") {
  std::mt19937_64 rng(3);
  const Vec5 q = test::random_vec(rng, 0.2, 1.2);
  const Vec5 g_r = oracle::gravity(q, kParams, Chain::rendering);
  const Vec5 g_p = gravity_vector(q, kParams);
  for (int i = 0; i < 3; ++i) CHECK(g_r[i] == doctest::Approx(g_p[i]).epsilon(1e-7));
  for (int i = 3; i < 5; ++i) CHECK(g_r[i] == doctest::Approx(-g_p[i]).epsilon(1e-7));
}

TEST_CASE("oracle coriolis is consistent with the inertia rate") {
  // Passivity: qd^T (Mdot - 2 C) qd = 0.
  std::mt19937_64 rng(4);
  for (Chain c : {Chain::rendering, Chain::direct_kinematics}) {
    for (int n = 0; n < 50; ++n) {
      const JointState s(test::random_vec(rng, 0, 2 * kPi), test::random_vec(rng, -2, 2));
      const Mat5 mdot = oracle::inertia_rate(s, kParams, c);
      const Mat5 cm = oracle::christoffel_matrix(s, kParams, c);
      const Vec5& qd = s.theta_dot();
      CHECK(std::abs(qd.dot((mdot - 2.0 * cm) * qd)) < 1e-8);
      CHECK((cm * qd - oracle::coriolis(s, kParams, c)).norm() < 1e-12);
    }
  }
}

TEST_CASE("oracle coriolis on the direct-kinematics chain matches the printed terms") {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 50; ++n) {
    const JointState s(test::random_vec(rng, 0, 2 * kPi), test::random_vec(rng, -2, 2));
    const Vec5 ref = oracle::coriolis(s, kParams, Chain::direct_kinematics);
    const Vec5 got = coriolis_vector(s, kParams);
    CHECK((ref - got).cwiseAbs().maxCoeff() < 1e-7 * (1.0 + ref.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("com positions") {
  const auto c = oracle::com_positions(Vec5::Constant(kHalfPi), kParams);
  CHECK(c[0].y == doctest::Approx(kParams.k(0)));
  CHECK(c[2].y == doctest::Approx(0.85 + kParams.k(2)));
  // Swing links hang below the hip in the drawing chain.
  CHECK(c[3].y == doctest::Approx(0.85 - (0.424 - kParams.k(3))));
  CHECK(c[4].y == doctest::Approx(0.426 - (0.426 - kParams.k(4))));
  CHECK(oracle::potential_energy(Vec5::Zero(), kParams, Chain::direct_kinematics) == 0.0);
}
