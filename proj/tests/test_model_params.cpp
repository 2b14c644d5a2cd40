#include <random>

#include "biped5/errors.hpp"
#include "biped5/model_params.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace biped5;

TEST_CASE("table defaults") {
  const RobotParams p = default_params();
  CHECK(p.links[0] == LinkParams{3.255, 0.426, 0.164, 0.184});
  CHECK(p.links[2] == LinkParams{24.850, 0.299, 1.530, 0.206});
  CHECK(p.links[1] == p.links[3]);
  CHECK(p.links[0] == p.links[4]);
  CHECK(p.gravity == 9.81);
  CHECK_NOTHROW(validate_params(p, true));
}

TEST_CASE("com distance from first moment") {
  const RobotParams p = default_params();
  CHECK(com_distance(p.links[2]) == doctest::Approx(1.530 / 24.850).epsilon(1e-15));
  CHECK(com_distance(p.links[2]) == doctest::Approx(0.061569416498993959).epsilon(1e-14));
  CHECK(com_distance(p.links[0]) == doctest::Approx(0.050384024577572968).epsilon(1e-14));
  CHECK(com_distance(LinkParams{2.0, 1.0, 1.0, 0.1}) == 0.5);
  for (int i = 0; i < 5; ++i) {
    CHECK(p.k(i) > 0.0);
    CHECK(p.k(i) < p.l(i));
  }
}

TEST_CASE("empty and comment-only documents give the defaults") {
  CHECK(load_params("") == default_params());
  CHECK(load_params("# nothing here\n\n   \n") == default_params());
}

TEST_CASE("single field override") {
  const RobotParams p = load_params("gravity = 9.80665\n");
  RobotParams expected = default_params();
  expected.gravity = 9.80665;
  CHECK(p == expected);

  const RobotParams q = load_params("link3.inertia = 0.5  # heavier pelvis\n");
  CHECK(q.links[2].inertia_com == 0.5);
  CHECK(q.links[2].mass == default_params().links[2].mass);
}

TEST_CASE("centre of mass beyond the link is rejected") {
  try {
    load_params("link3.first_moment = 10.0\nlink3.mass = 1.0\n");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "links[2]");
  }
}

TEST_CASE("parse errors carry line and field") {
  try {
    load_params("gravity = 9.8\n\nlink9.mass = 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.field() == "link9.mass");
  }
  try {
    load_params("link1.mass = 3\nlink1.mass = 4\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.field() == "link1.mass");
  }
  try {
    load_params("link2.length = 0.4x\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.field() == "link2.length");
  }
  CHECK_THROWS_AS(load_params("just words\n"), ParseError);
  CHECK_THROWS_AS(load_params("link1.mass =\n"), ParseError);
}

TEST_CASE("invariants") {
  RobotParams p = default_params();
  p.links[1].mass = 0.0;
  CHECK_THROWS_AS(validate_params(p), ValidationError);
  p = default_params();
  p.links[4].inertia_com = -1.0;
  CHECK_THROWS_AS(validate_params(p), ValidationError);
  p = default_params();
  p.gravity = std::nan("");
  try {
    validate_params(p);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "gravity");
  }
  p = default_params();
  p.links[4].mass = 3.3;
  CHECK_NOTHROW(validate_params(p));
  CHECK_THROWS_AS(validate_params(p, true), ValidationError);
}

TEST_CASE("serialize round trip is bit exact") {
  CHECK(load_params(serialize_params(default_params())) == default_params());

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mass(0.5, 40.0), len(0.1, 1.0), frac(0.05, 0.95),
      inertia(1e-3, 1.0), g(1.0, 20.0);
  for (int trial = 0; trial < 200; ++trial) {
    RobotParams p;
    for (auto& link : p.links) {
      link.mass = mass(rng);
      link.length = len(rng);
      link.first_moment = link.mass * link.length * frac(rng);
      link.inertia_com = inertia(rng);
    }
    p.gravity = g(rng);
    REQUIRE(load_params(serialize_params(p)) == p);
  }
}

TEST_CASE("params file") {
  const auto dir = test::scratch_dir("params_file");
  {
    std::ofstream f(dir / "p.cfg");
    f << "gravity = 1.62\n";
  }
  CHECK(load_params_file(dir / "p.cfg").gravity == 1.62);
  CHECK_THROWS_AS(load_params_file(dir / "missing.cfg"), Error);
}
