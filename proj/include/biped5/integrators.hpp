#pragma once

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

namespace biped5 {

using OdeState = Eigen::VectorXd;
using OdeFunction = std::function<OdeState(double t, const OdeState& y)>;
using StepObserver = std::function<void(double t, const OdeState& y)>;

// Classical fourth-order Runge-Kutta step. Throws IntegrationError when a
// stage derivative is not finite.
OdeState rk4_step(const OdeFunction& f, const OdeState& y, double t, double dt);

struct AdaptiveOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-9;
  std::size_t max_steps = 1'000'000;
  // First trial step; <= 0 means the whole span.
  double initial_step = 0.0;
  double safety = 0.9;
  double min_growth = 0.2;
  double max_growth = 5.0;
};

struct IntegrationStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

// Runge-Kutta-Fehlberg 4(5) with local extrapolation (the fifth-order
// solution is propagated). The error estimate is the max-norm of
// |y5 - y4| / (abs_tol + rel_tol * max(|y|, |y_new|)); the step is rescaled by
// safety * err^(-1/5), clamped to [min_growth, max_growth]. observer sees
// every accepted step (not the initial state). Lands on t1 exactly.
//
// Throws IntegrationError when max_steps is exceeded, when the step falls
// below 1e-14 of the span (stiffness), or on a non-finite derivative.
OdeState rkf45_integrate(const OdeFunction& f, const OdeState& y0, double t0, double t1,
                         const AdaptiveOptions& options, const StepObserver& observer = {},
                         IntegrationStats* stats = nullptr);

}  // namespace biped5
