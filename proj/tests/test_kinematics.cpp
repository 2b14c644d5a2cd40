#include <cmath>
#include <random>

#include "biped5/errors.hpp"
#include "biped5/kinematics.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace biped5;

namespace {

const RobotParams kParams = default_params();

Eigen::Vector2d fk(const Vec5& q) {
  const CartesianPose p = forward_kinematics(q, kParams);
  return {p.x, p.y};
}

}  // namespace

TEST_CASE("forward kinematics reference postures") {
  CartesianPose p = forward_kinematics(Vec5::Constant(kHalfPi), kParams);
  CHECK(std::abs(p.x) < 1e-15);
  CHECK(p.y == doctest::Approx(1.700).epsilon(1e-15));

  p = forward_kinematics(Vec5::Zero(), kParams);
  CHECK(std::abs(p.x) < 1e-15);
  CHECK(p.y == 0.0);

  Vec5 q;
  q << kHalfPi, kHalfPi, kHalfPi, 0.0, 0.0;
  p = forward_kinematics(q, kParams);
  CHECK(p.x == doctest::Approx(-0.850).epsilon(1e-14));
  CHECK(p.y == doctest::Approx(0.850).epsilon(1e-14));
}

TEST_CASE("pelvis angle does not move the swing ankle") {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 50; ++n) {
    const Vec5 q = test::random_vec(rng, 0.0, 2.0 * kPi);
    Vec5 q2 = q;
    q2[2] += 1.234;
    CHECK(fk(q) == fk(q2));
    const Jacobian j = jacobian(q, kParams);
    CHECK(j(0, 2) == 0.0);
    CHECK(j(1, 2) == 0.0);
  }
}

TEST_CASE("jacobian at upright") {
  const Jacobian j = jacobian(Vec5::Constant(kHalfPi), kParams);
  const double row0[5] = {-0.426, -0.424, 0.0, 0.424, 0.426};
  for (int i = 0; i < 5; ++i) {
    CHECK(j(0, i) == doctest::Approx(row0[i]).epsilon(1e-15));
    CHECK(std::abs(j(1, i)) < 1e-15);
  }
}

TEST_CASE("jacobian matches central differences of the forward map") {
  std::mt19937_64 rng(11);
  const double h = 1e-6;
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Vec5 q = test::random_vec(rng, 0.0, 2.0 * kPi);
    const Jacobian j = jacobian(q, kParams);
    for (int c = 0; c < 5; ++c) {
      const Eigen::Vector2d d = (fk(q + h * test::unit(c)) - fk(q - h * test::unit(c))) / (2 * h);
      worst = std::max(worst, (d - j.col(c)).cwiseAbs().maxCoeff());
    }
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("cartesian velocity") {
  const Vec5 up = Vec5::Constant(kHalfPi);
  CartesianPose v = cartesian_velocity(JointState(up, Vec5::Zero()), kParams);
  CHECK(v.x == 0.0);
  CHECK(v.y == 0.0);
  v = cartesian_velocity(JointState(up, test::unit(2)), kParams);
  CHECK(v.x == 0.0);
  CHECK(v.y == 0.0);
  v = cartesian_velocity(JointState(up, test::unit(0)), kParams);
  CHECK(v.x == doctest::Approx(-0.426).epsilon(1e-15));
  CHECK(std::abs(v.y) < 1e-15);
}

TEST_CASE("joint state rejects non-finite values") {
  Vec5 bad = Vec5::Zero();
  bad[3] = std::nan("");
  CHECK_THROWS_AS(JointState(bad, Vec5::Zero()), DomainError);
  bad[3] = INFINITY;
  CHECK_THROWS_AS(JointState(Vec5::Zero(), bad), DomainError);
}

TEST_CASE("joint positions for drawing") {
  auto pts = joint_positions(Vec5::Constant(kHalfPi), kParams);
  CHECK(pts[kStanceAnkle].x == 0.0);
  CHECK(pts[kStanceAnkle].y == 0.0);
  CHECK(std::abs(pts[kHip].x) < 1e-15);
  CHECK(pts[kHip].y == doctest::Approx(0.850).epsilon(1e-15));
  CHECK(pts[kPelvisTop].y == doctest::Approx(1.149).epsilon(1e-15));
  CHECK(std::abs(pts[kSwingAnkle].x) < 1e-15);
  CHECK(std::abs(pts[kSwingAnkle].y) < 1e-15);

  Vec5 q;
  q << kHalfPi, kHalfPi, kHalfPi, kPi / 3, kPi / 3;
  pts = joint_positions(q, kParams);
  CHECK(pts[kSwingAnkle].x == doctest::Approx(-0.425).epsilon(1e-14));

  std::mt19937_64 rng(5);
  for (int n = 0; n < 100; ++n) {
    const Vec5 r = test::random_vec(rng, 0.0, 2.0 * kPi);
    pts = joint_positions(r, kParams);
    CHECK(pts[kSwingAnkle].x == forward_kinematics(r, kParams).x);
    const std::size_t chain[5][2] = {{kStanceAnkle, kStanceKnee},
                                     {kStanceKnee, kHip},
                                     {kHip, kPelvisTop},
                                     {kHip, kSwingKnee},
                                     {kSwingKnee, kSwingAnkle}};
    for (int i = 0; i < 5; ++i) {
      const Point2 a = pts[chain[i][0]], b = pts[chain[i][1]];
      CHECK(std::hypot(b.x - a.x, b.y - a.y) == doctest::Approx(kParams.l(i)).epsilon(1e-12));
    }
  }
}
