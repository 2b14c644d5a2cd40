#include "biped5/integrators.hpp"

#include <algorithm>
#include <cmath>

#include "biped5/errors.hpp"

namespace biped5 {

namespace {

OdeState checked(const OdeFunction& f, double t, const OdeState& y) {
  OdeState dy = f(t, y);
  if (!dy.allFinite()) throw IntegrationError("non-finite state derivative", t);
  return dy;
}

}  // namespace

OdeState rk4_step(const OdeFunction& f, const OdeState& y, double t, double dt) {
  const OdeState k1 = checked(f, t, y);
  const OdeState k2 = checked(f, t + 0.5 * dt, y + 0.5 * dt * k1);
  const OdeState k3 = checked(f, t + 0.5 * dt, y + 0.5 * dt * k2);
  const OdeState k4 = checked(f, t + dt, y + dt * k3);
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

OdeState rkf45_integrate(const OdeFunction& f, const OdeState& y0, double t0, double t1,
                         const AdaptiveOptions& opt, const StepObserver& observer,
                         IntegrationStats* stats) {
  // Fehlberg tableau.
  constexpr double a21 = 1.0 / 4.0;
  constexpr double a31 = 3.0 / 32.0, a32 = 9.0 / 32.0;
  constexpr double a41 = 1932.0 / 2197.0, a42 = -7200.0 / 2197.0, a43 = 7296.0 / 2197.0;
  constexpr double a51 = 439.0 / 216.0, a52 = -8.0, a53 = 3680.0 / 513.0,
                   a54 = -845.0 / 4104.0;
  constexpr double a61 = -8.0 / 27.0, a62 = 2.0, a63 = -3544.0 / 2565.0,
                   a64 = 1859.0 / 4104.0, a65 = -11.0 / 40.0;
  constexpr double b1 = 16.0 / 135.0, b3 = 6656.0 / 12825.0, b4 = 28561.0 / 56430.0,
                   b5 = -9.0 / 50.0, b6 = 2.0 / 55.0;
  // Difference between the fifth- and fourth-order weights.
  constexpr double e1 = b1 - 25.0 / 216.0, e3 = b3 - 1408.0 / 2565.0,
                   e4 = b4 - 2197.0 / 4104.0, e5 = b5 + 1.0 / 5.0, e6 = b6;

  const double span = t1 - t0;
  if (!(span > 0.0)) throw IntegrationError("empty or reversed integration span", t0);
  if (!(opt.rel_tol > 0.0) || !(opt.abs_tol > 0.0) || opt.max_steps == 0)
    throw IntegrationError("tolerances and max_steps must be positive", t0);

  const double min_step = 1e-14 * span;
  double t = t0;
  OdeState y = y0;
  double h = opt.initial_step > 0.0 ? std::min(opt.initial_step, span) : span;
  IntegrationStats local;

  OdeState k1 = checked(f, t, y);
  while (t < t1) {
    if (local.accepted + local.rejected >= opt.max_steps)
      throw IntegrationError("maximum number of steps exceeded", t);
    const bool last = t + h >= t1;
    if (last) h = t1 - t;

    const OdeState k2 = checked(f, t + h / 4.0, y + h * (a21 * k1));
    const OdeState k3 = checked(f, t + 3.0 * h / 8.0, y + h * (a31 * k1 + a32 * k2));
    const OdeState k4 =
        checked(f, t + 12.0 * h / 13.0, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const OdeState k5 =
        checked(f, t + h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const OdeState k6 = checked(
        f, t + h / 2.0, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));

    const OdeState y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const OdeState err_vec = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6);
    const OdeState scale =
        (opt.abs_tol + opt.rel_tol * y.cwiseAbs().cwiseMax(y_new.cwiseAbs()).array()).matrix();
    const double err = err_vec.size() == 0 ? 0.0 : (err_vec.cwiseAbs().cwiseQuotient(scale)).maxCoeff();

    const double growth =
        err == 0.0 ? opt.max_growth
                   : std::clamp(opt.safety * std::pow(err, -0.2), opt.min_growth, opt.max_growth);
    if (err <= 1.0) {
      t = last ? t1 : t + h;
      y = y_new;
      ++local.accepted;
      if (observer) observer(t, y);
      if (t >= t1) break;
      k1 = checked(f, t, y);
      h *= growth;
    } else {
      ++local.rejected;
      h *= growth;
      if (h < min_step) throw IntegrationError("step size underflow (stiff problem?)", t);
    }
  }
  if (stats != nullptr) *stats = local;
  return y;
}

}  // namespace biped5
