#include "lagonn/integrator.hpp"

#include <cmath>
#include <numbers>

#include "lagonn/rng.hpp"

namespace lagonn {

namespace {

PhaseState unpack(const CompiledInstance& ci, const Eigen::VectorXd& y, double t) {
  PhaseState ps;
  ps.phi_x = y.head(ci.num_vars());
  ps.phi_lambda = y.tail(ci.num_clauses());
  ps.t = t;
  return ps;
}

Eigen::VectorXd pack(const PhaseState& ps) {
  Eigen::VectorXd y(ps.phi_x.size() + ps.phi_lambda.size());
  y << ps.phi_x, ps.phi_lambda;
  return y;
}

// True once the flow has no remaining explicit time dependence, so a state
// with zero (or repeating) motion can never move again.
bool autonomous_from_now_on(const SystemConfig& cfg, double t) {
  if (cfg.shil_k_max > 0 && t < cfg.shil_start_time + cfg.shil_ramp_time) return false;
  if (std::isfinite(cfg.lagrange_freeze_time) && t < cfg.lagrange_freeze_time) return false;
  return true;
}

} // namespace

Eigen::VectorXd derivative(const CompiledInstance& ci, const PhaseState& ps,
                           const SystemConfig& cfg, Mode mode) {
  ci.check_state(ps);
  const int n = ci.num_vars();
  const int m = ci.num_clauses();
  Eigen::VectorXd dy(n + m);
  if (mode == Mode::onn_only) {
    dy.head(n) = -onn_gradient(ci, ps.phi_x) / cfg.tau;
    dy.tail(m).setZero();
    return dy;
  }
  const Gradients g = lagrange_gradients(ci, ps);
  dy.head(n) = -g.x / cfg.tau;
  const double k = shil_amplitude(cfg, ps.t);
  if (k > 0) dy.head(n) -= shil_gradient(ps.phi_x, k) / cfg.tau;
  if (ps.t >= cfg.lagrange_freeze_time)
    dy.tail(m).setZero();
  else
    dy.tail(m) = g.lambda / cfg.tau_lambda;
  return dy;
}

StepOutcome integrate_step(const CompiledInstance& ci, const PhaseState& ps, double dt,
                           const SystemConfig& cfg, Mode mode) {
  const auto f = [&](double t, const Eigen::VectorXd& y) {
    return derivative(ci, unpack(ci, y, t), cfg, mode);
  };
  const OdeStep step = fehlberg_step(f, ps.t, pack(ps), dt);
  StepOutcome out;
  out.state = unpack(ci, step.y, ps.t + dt);
  out.dt_next = dt;
  out.local_error = step.error;
  return out;
}

PhaseState quantize_phases(const PhaseState& ps, int n) {
  if (n < 2) fail(ErrorKind::InvalidStateCount, "need at least 2 phase states");
  const double step = 2.0 * std::numbers::pi / n;
  const auto snap = [&](double phi) {
    if (!std::isfinite(phi)) fail(ErrorKind::NonFiniteState, "non-finite phase");
    // nearbyint under the default rounding mode resolves ties to the even level
    long long k = static_cast<long long>(std::nearbyint(phi / step));
    k %= n;
    if (k < 0) k += n;
    return step * double(k);
  };
  PhaseState out = ps;
  for (Eigen::Index i = 0; i < out.phi_x.size(); ++i) out.phi_x[i] = snap(out.phi_x[i]);
  for (Eigen::Index i = 0; i < out.phi_lambda.size(); ++i)
    out.phi_lambda[i] = snap(out.phi_lambda[i]);
  return out;
}

TrialResult run_trial(const CompiledInstance& ci, const TrialConfig& cfg,
                      const TraceSink& trace) {
  cfg.system.validate();
  if (!(cfg.t_max > 0)) fail(ErrorKind::InvalidParameter, "t_max must be positive");
  if (!(cfg.step.dt > 0) || cfg.step.dt > kDtMax)
    fail(ErrorKind::InvalidParameter, "dt outside (0, 1]");
  if (cfg.step.adaptive && !(cfg.step.eps > 0))
    fail(ErrorKind::InvalidParameter, "eps must be positive");
  if (cfg.n_states != 0 && cfg.n_states < 2)
    fail(ErrorKind::InvalidStateCount, "need at least 2 phase states");

  const int n = ci.num_vars();
  const int m = ci.num_clauses();

  Rng rng(cfg.seed);
  PhaseState state;
  state.phi_x.resize(n);
  for (int i = 0; i < n; ++i) state.phi_x[i] = rng.angle();
  state.phi_lambda.resize(m);
  for (int i = 0; i < m; ++i) state.phi_lambda[i] = rng.angle();
  state.t = 0.0;
  if (cfg.n_states) state = quantize_phases(state, cfg.n_states);

  TrialResult res;
  double kappa = cost_kappa(ci, state.phi_x, cfg.system.beta);
  res.min_cost = kappa;
  res.solved = kappa < cfg.kappa_stop;

  // half-step slack keeps the fixed-dt step count immune to accumulated
  // rounding in t
  const double t_end = cfg.t_max - (cfg.step.adaptive ? 1e-9 : cfg.step.dt / 2);
  double dt_cur = cfg.step.dt;
  while (!res.solved && state.t < t_end && res.steps < cfg.max_steps) {
    double dt_try = dt_cur;
    if (cfg.step.adaptive) dt_try = std::min(dt_try, cfg.t_max - state.t);
    StepOutcome out = integrate_step(ci, state, dt_try, cfg.system, cfg.mode);
    if (cfg.step.adaptive) {
      const AdaptResult ar = adapt_step(dt_try, out.local_error, cfg.step.eps);
      dt_cur = ar.dt_next;
      if (!ar.accept && dt_try > kDtMin * (1 + 1e-9)) {
        ++res.rejected;
        continue;
      }
    }
    PhaseState next = out.state;
    if (cfg.n_states) {
      const double t_next = next.t;
      next = quantize_phases(next, cfg.n_states);
      next.t = t_next;
    }
    const double dphi = std::max((next.phi_x - state.phi_x).cwiseAbs().maxCoeff(),
                                 m > 0 ? (next.phi_lambda - state.phi_lambda).cwiseAbs().maxCoeff()
                                       : 0.0);
    const double dt_used = next.t - state.t;
    state = next;
    ++res.steps;

    kappa = cost_kappa(ci, state.phi_x, cfg.system.beta);
    res.min_cost = std::min(res.min_cost, kappa);
    if (trace) {
      TraceRow row{state.t, kappa, lagrange_total(ci, state), &state};
      trace(row);
    }
    if (kappa < cfg.kappa_stop) {
      res.solved = true;
      break;
    }
    if (dphi < cfg.fixed_point_tol * dt_used && autonomous_from_now_on(cfg.system, state.t)) {
      res.at_fixed_point = true;
      break;
    }
  }

  res.stop_time = state.t;
  res.final_cost = kappa;
  res.unstable = !(res.min_cost < 0.5 * m);
  if (cfg.keep_final_state) res.final_state = state;
  return res;
}

} // namespace lagonn
