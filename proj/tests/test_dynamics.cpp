#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "biped5/dynamics.hpp"
#include "biped5/errors.hpp"
#include "biped5/linearization.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace biped5;

namespace {

const RobotParams kParams = default_params();

// Christoffel-form H from central differences of the printed M.
Vec5 christoffel_h(const Vec5& q, const Vec5& qd) {
  const double h = 1e-5;
  Mat5 dm[5];
  for (int k = 0; k < 5; ++k)
    dm[k] = (inertia_matrix(q + h * test::unit(k), kParams) -
             inertia_matrix(q - h * test::unit(k), kParams)) /
            (2 * h);
  Vec5 out = Vec5::Zero();
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k)
        out[i] += 0.5 * (dm[k](i, j) + dm[j](i, k) - dm[i](j, k)) * qd[j] * qd[k];
  return out;
}

}  // namespace

TEST_CASE("inertia reference entries") {
  const Mat5 m = inertia_matrix(Vec5::Constant(kHalfPi), kParams);
  // l1 (m2 k2 + (m3 + m4 + m5) l2) with m2 k2 = 0.366.
  CHECK(m(1, 0) == doctest::Approx(0.426 * (0.366 + (24.85 + 7.0 + 3.255) * 0.424)).epsilon(1e-14));
  CHECK(m(1, 0) == doctest::Approx(6.49672152).epsilon(1e-12));

  const double m33 = 1.530 * 1.530 / 24.85 + 0.206;
  CHECK(m(2, 2) == doctest::Approx(m33).epsilon(1e-15));
  std::mt19937_64 rng(1);
  for (int n = 0; n < 20; ++n)
    CHECK(inertia_matrix(test::random_vec(rng, 0, 2 * kPi), kParams)(2, 2) == m(2, 2));
  CHECK(m(3, 2) == 0.0);
  CHECK(m(4, 2) == 0.0);
}

TEST_CASE("inertia is exactly symmetric and positive definite") {
  std::mt19937_64 rng(42);
  double min_eig = INFINITY;
  for (int n = 0; n < 1000; ++n) {
    const Mat5 m = inertia_matrix(test::random_vec(rng, kPi / 4, 3 * kPi / 4), kParams);
    REQUIRE(m == m.transpose());
    min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<Mat5>(m).eigenvalues().minCoeff());
  }
  CHECK(min_eig > 0.0);
}

TEST_CASE("printed upper triangle as written differs only in two entries") {
  std::mt19937_64 rng(9);
  const Vec5 q = test::random_vec(rng, kPi / 4, 3 * kPi / 4);
  const Mat5 m = inertia_matrix(q, kParams);
  const Mat5 w = printed_upper_triangle_as_written(q, kParams);
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      if ((i == 0 && j == 3) || (i == 1 && j == 3))
        CHECK(std::abs(w(i, j) - m(i, j)) > 1e-6);
      else
        CHECK(w(i, j) == doctest::Approx(m(i, j)).epsilon(1e-13));
    }
}

TEST_CASE("coriolis vector") {
  std::mt19937_64 rng(2);
  const Vec5 q = test::random_vec(rng, 0, 2 * kPi);
  CHECK(coriolis_vector(JointState(q, Vec5::Zero()), kParams) == Vec5::Zero());

  const Mat5 h = coriolis_coefficients(Vec5::Constant(0.7), kParams);
  const int zero[8][2] = {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}, {3, 4}, {4, 3}};
  for (const auto& ij : zero) CHECK(std::abs(h(ij[0], ij[1])) < 1e-15);
  for (int i = 0; i < 5; ++i) CHECK(h(i, i) == 0.0);

  const Vec5 qd = test::random_vec(rng, -2, 2);
  Vec5 expected = Vec5::Zero();
  const Mat5 hq = coriolis_coefficients(q, kParams);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) expected[i] += hq(i, j) * qd[j] * qd[j];
  CHECK((coriolis_vector(JointState(q, qd), kParams) - expected).norm() < 1e-13);
}

TEST_CASE("printed coriolis terms are the Christoffel form of the printed inertia") {
  std::mt19937_64 rng(21);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Vec5 q = test::random_vec(rng, 0, 2 * kPi);
    const Vec5 qd = test::random_vec(rng, -2, 2);
    const Vec5 ref = christoffel_h(q, qd);
    const Vec5 got = coriolis_vector(JointState(q, qd), kParams);
    worst = std::max(worst, (got - ref).cwiseAbs().maxCoeff() / (1.0 + ref.cwiseAbs().maxCoeff()));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("gravity vector") {
  CHECK(gravity_vector(Vec5::Constant(kHalfPi), kParams).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(gravity_vector(Vec5::Zero(), kParams)[2] == doctest::Approx(9.81 * 1.530).epsilon(1e-15));
  CHECK(gravity_vector(Vec5::Zero(), kParams)[2] == doctest::Approx(15.009300000000001));

  std::mt19937_64 rng(8);
  const double h = 1e-6;
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Vec5 q = test::random_vec(rng, 0, 2 * kPi);
    const Vec5 g = gravity_vector(q, kParams);
    for (int i = 0; i < 5; ++i) {
      const double fd = (potential_energy(q + h * test::unit(i), kParams) -
                         potential_energy(q - h * test::unit(i), kParams)) /
                        (2 * h);
      worst = std::max(worst, std::abs(fd - g[i]) / (1.0 + std::abs(g[i])));
    }
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("potential energy") {
  CHECK(potential_energy(Vec5::Zero(), kParams) == 0.0);
  const double top = potential_energy(Vec5::Constant(kHalfPi), kParams);
  for (int n = 0; n <= 200; ++n) {
    const double c = kPi * n / 200.0;
    CHECK(potential_energy(Vec5::Constant(c), kParams) <= top);
  }
}

TEST_CASE("kinetic energy") {
  std::mt19937_64 rng(4);
  for (int n = 0; n < 100; ++n) {
    const Vec5 q = test::random_vec(rng, 0, 2 * kPi);
    const Vec5 qd = test::random_vec(rng, -3, 3);
    CHECK(kinetic_energy(JointState(q, Vec5::Zero()), kParams) == 0.0);
    const double t = kinetic_energy(JointState(q, qd), kParams);
    CHECK(t >= 0.0);
    CHECK(kinetic_energy(JointState(q, 2.0 * qd), kParams) == doctest::Approx(4.0 * t).epsilon(1e-13));
  }
}

TEST_CASE("input map") {
  const InputMap d = input_map_and_inverse();
  Vec5 last = Vec5::Zero();
  last[4] = 1.0;
  CHECK(d.d * Vec5::Ones() == last);
  CHECK(d.d * d.d_inv == Mat5::Identity());
  CHECK(d.d_inv * last == Vec5::Ones());
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      CHECK(d.d_inv(i, j) == (j >= i ? 1.0 : 0.0));
      CHECK(d.d(i, j) == (j == i ? 1.0 : (j == i + 1 ? -1.0 : 0.0)));
    }
  std::mt19937_64 rng(6);
  for (int n = 0; n < 20; ++n) {
    const Vec5 w = test::random_vec(rng, -5, 5);
    CHECK((apply_input_map_inverse(w) - d.d_inv * w).norm() < 1e-14);
    CHECK((apply_input_map(w) - d.d * w).norm() < 1e-14);
    CHECK((apply_input_map(apply_input_map_inverse(w)) - w).norm() < 1e-13);
  }
}

TEST_CASE("forward dynamics") {
  const Vec5 up = Vec5::Constant(kHalfPi);
  CHECK(forward_dynamics(JointState(up, Vec5::Zero()), Vec5::Zero(), kParams).norm() < 1e-13);

  std::mt19937_64 rng(12);
  for (Backend b : {Backend::printed, Backend::oracle}) {
    for (int n = 0; n < 100; ++n) {
      const JointState s(test::random_vec(rng, kPi / 4, 3 * kPi / 4), test::random_vec(rng, -2, 2));
      const Vec5 u = test::random_vec(rng, -50, 50);
      const DynamicsTerms t = dynamics_terms(s, kParams, b);
      const Vec5 acc = forward_dynamics(s, u, kParams, b);
      const Vec5 du = t.input_map * u;
      const Vec5 res = t.inertia * acc + t.coriolis + t.gravity_vec - du;
      CHECK(res.cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + du.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("small perturbation follows the linear model to second order") {
  const Vec5 up = Vec5::Constant(kHalfPi);
  const Mat5 m = inertia_matrix(up, kParams);
  const Mat5 dg = gravity_jacobian(up, kParams);
  auto err = [&](double delta) {
    const Vec5 dq = delta * test::unit(0);
    const Vec5 acc = forward_dynamics(JointState(up + dq, Vec5::Zero()), Vec5::Zero(), kParams);
    const Vec5 lin = -m.llt().solve(dg * dq);
    return (acc - lin).cwiseAbs().maxCoeff();
  };
  const double e1 = err(1e-2), e2 = err(5e-3);
  CHECK(e1 < 1e-2 * 1e-2 * 100);
  CHECK(e1 / e2 >= 3.5);
}

TEST_CASE("non positive definite inertia is reported with the configuration") {
  DynamicsTerms t{-Mat5::Identity(), Vec5::Zero(), Vec5::Zero(), input_map_and_inverse().d};
  const Vec5 q = Vec5::Constant(0.3);
  try {
    forward_dynamics(t, Vec5::Zero(), q);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.theta() == q);
  }
}

TEST_CASE("backend names") {
  CHECK(parse_backend("printed") == Backend::printed);
  CHECK(parse_backend("oracle") == Backend::oracle);
  CHECK(std::string(to_string(Backend::oracle)) == "oracle");
  CHECK_THROWS(parse_backend("other"));
}
