#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "lagonn/errors.hpp"

namespace lagonn {

inline constexpr double kDtMin = 1e-6;
inline constexpr double kDtMax = 1.0;

struct OdeStep {
  Eigen::VectorXd y;
  double error = 0.0;  // RMS gap between predictor and corrector
};

// Second-order Heun predictor with a third-order Simpson-style corrector;
// three derivative evaluations per step, the predictor-corrector gap serves
// as the local error estimate.
template <class F>
OdeStep fehlberg_step(F&& f, double t, const Eigen::VectorXd& y, double dt) {
  if (!(dt > 0)) fail(ErrorKind::InvalidParameter, "step size must be positive");
  const Eigen::VectorXd f1 = f(t, y);
  const Eigen::VectorXd f2 = f(t + dt, (y + dt * f1).eval());
  const Eigen::VectorXd pred = y + 0.5 * dt * (f1 + f2);
  const Eigen::VectorXd f3 = f(t + 0.5 * dt, (y + 0.25 * dt * (f1 + f2)).eval());
  OdeStep out;
  out.y = y + dt / 6.0 * (f1 + f2 + 4.0 * f3);
  if (!out.y.allFinite()) fail(ErrorKind::NonFiniteState, "integration diverged");
  out.error = std::sqrt((pred - out.y).squaredNorm() / double(y.size()));
  return out;
}

struct AdaptResult {
  double dt_next = 0.0;
  bool accept = false;
};

// Accept when the error per unit time stays below eps; the next step size is
// 0.9 * dt * sqrt(dt * eps / error), growth capped at 2x, clamped to
// [kDtMin, kDtMax]. Zero error accepts and doubles.
inline AdaptResult adapt_step(double dt, double error, double eps) {
  if (!(dt > 0) || !(eps > 0) || error < 0 || !std::isfinite(error))
    fail(ErrorKind::InvalidParameter, "bad step-control input");
  AdaptResult r;
  double next;
  if (error == 0.0) {
    r.accept = true;
    next = 2.0 * dt;
  } else {
    const double gamma = std::sqrt(dt * eps / error);
    r.accept = gamma >= 1.0;
    next = std::min(0.9 * dt * gamma, 2.0 * dt);
  }
  r.dt_next = std::clamp(next, kDtMin, kDtMax);
  return r;
}

} // namespace lagonn
