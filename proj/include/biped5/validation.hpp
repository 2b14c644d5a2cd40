#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "biped5/control.hpp"
#include "biped5/dynamics.hpp"
#include "biped5/gait.hpp"
#include "biped5/kernels.hpp"
#include "biped5/model_params.hpp"
#include "biped5/simulation.hpp"

namespace biped5 {

struct ValidationOptions {
  RobotParams params = default_params();
  GaitSpec spec;
  ControllerGains gains = ControllerGains::defaults();
  std::uint64_t seed = 42;
  // Gravity model under test; replace to inject a fault.
  kernels::GravityFunction gravity = [](const Vec5& q, const RobotParams& p) {
    return gravity_vector(q, p);
  };
  kernels::Exec exec = kernels::Exec::parallel;

  std::size_t inertia_samples = 1000;
  std::size_t gradient_samples = 100;
  std::size_t ledger_samples = 100;
  std::size_t feedback_samples = 100;
  std::size_t boundary_specs = 20;
  std::size_t residual_samples = 1000;
  double gait_integration_tol = 1e-10;
  double tracking_tol = 1e-9;
  double offset = 0.05;  // rad, initial error of the off-trajectory run
};

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  bool hard = false;  // hard checks decide the overall status
  std::string detail;
};

struct ValidationReport {
  std::vector<Check> checks;
  std::vector<kernels::DiscrepancyLedger> ledgers;
  GaitSolution solution;
  PrintedConstants printed;
  std::string knee_acceleration_sign_note;
  TrackingSummary on_trajectory;
  TrackingSummary offset_run;
  TrackingSummary mismatched;  // printed-model controller on the oracle plant

  bool passed() const;
  const Check* find(const std::string& name) const;
};

// Seeded gait specs around the reference gait: alpha in [0, 0.5], T in
// [0.6, 2], t0 in [0, 0.5], window length in [0.4, 1.5] s, boundary angles
// within pi/2 +- 0.2.
std::vector<GaitSpec> random_gait_specs(std::size_t n, std::uint64_t seed);

ValidationReport run_validation(const ValidationOptions& options);

// Indented `key: value` text ending in `STATUS: PASS` or `STATUS: FAIL`.
std::string format_report(const ValidationReport& report);

// Relative differences above this count as disagreements in the ledger.
inline constexpr double kLedgerDisagreement = 1e-6;

}  // namespace biped5
