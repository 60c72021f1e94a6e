#include "doctest.h"

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "lagonn/integrator.hpp"

using namespace lagonn;
using std::numbers::pi;

namespace {

CompiledInstance small_compiled(std::uint64_t seed, int n = 8, int m = 30) {
  Rng rng(seed);
  return CompiledInstance(random_instance(rng, n, m, "small"));
}

} // namespace

TEST_CASE("derivative follows the saddle flow in each mode") {
  Rng rng(21);
  const CompiledInstance ci = small_compiled(90);
  PhaseState ps;
  ps.phi_x = testutil::random_phases(rng, ci.num_vars());
  ps.phi_lambda = testutil::random_phases(rng, ci.num_clauses());

  SystemConfig cfg;
  cfg.tau = 2.0;
  cfg.tau_lambda = 5.0;
  const Gradients g = lagrange_gradients(ci, ps);
  const Eigen::VectorXd dy = derivative(ci, ps, cfg, Mode::lagonn);
  CHECK((dy.head(ci.num_vars()) + g.x / 2.0).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((dy.tail(ci.num_clauses()) - g.lambda / 5.0).cwiseAbs().maxCoeff() < 1e-14);

  const Eigen::VectorXd donn = derivative(ci, ps, cfg, Mode::onn_only);
  CHECK((donn.head(ci.num_vars()) + onn_gradient(ci, ps.phi_x) / 2.0).cwiseAbs().maxCoeff() <
        1e-14);
  CHECK(donn.tail(ci.num_clauses()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("derivative freezes clause phases past the freeze time") {
  Rng rng(22);
  const CompiledInstance ci = small_compiled(91);
  PhaseState ps;
  ps.phi_x = testutil::random_phases(rng, ci.num_vars());
  ps.phi_lambda = testutil::random_phases(rng, ci.num_clauses());
  SystemConfig cfg;
  cfg.lagrange_freeze_time = 50.0;
  ps.t = 49.9;
  CHECK(derivative(ci, ps, cfg, Mode::lagonn).tail(ci.num_clauses()).cwiseAbs().maxCoeff() >
        0.0);
  ps.t = 50.0;
  CHECK(derivative(ci, ps, cfg, Mode::lagonn).tail(ci.num_clauses()).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("derivative adds the injection-locking pull once active") {
  Rng rng(23);
  const CompiledInstance ci = small_compiled(92);
  PhaseState ps;
  ps.phi_x = testutil::random_phases(rng, ci.num_vars());
  ps.phi_lambda = testutil::random_phases(rng, ci.num_clauses());
  SystemConfig off;
  SystemConfig on = off;
  on.shil_k_max = 1.5;
  on.shil_start_time = 5.0;

  ps.t = 0.0;
  const Eigen::VectorXd before = derivative(ci, ps, off, Mode::lagonn);
  CHECK((derivative(ci, ps, on, Mode::lagonn) - before).cwiseAbs().maxCoeff() == 0.0);

  ps.t = 5.0;
  const Eigen::VectorXd base = derivative(ci, ps, off, Mode::lagonn);
  const Eigen::VectorXd with = derivative(ci, ps, on, Mode::lagonn);
  const Eigen::VectorXd expect = -shil_gradient(ps.phi_x, 1.5);
  CHECK((with.head(ci.num_vars()) - base.head(ci.num_vars()) - expect).cwiseAbs().maxCoeff() <
        1e-14);
}

TEST_CASE("a satisfying corner with rest clause phases is a stationary point") {
  const CompiledInstance ci = small_compiled(93, 6, 20);
  const auto model = find_satisfying_exhaustive(ci.instance());
  REQUIRE(model.has_value());
  PhaseState ps;
  ps.phi_x = binary_phases(*model);
  ps.phi_lambda = Eigen::VectorXd::Zero(ci.num_clauses());
  SystemConfig cfg;
  CHECK(derivative(ci, ps, cfg, Mode::lagonn).cwiseAbs().maxCoeff() < 1e-12);
  const StepOutcome out = integrate_step(ci, ps, 0.15, cfg, Mode::lagonn);
  CHECK((out.state.phi_x - ps.phi_x).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(out.local_error < 1e-12);
}

TEST_CASE("step kernel reproduces the exact update on a linear test problem") {
  // phidot = -phi: predictor multiplies by 1 - dt + dt^2/2, corrector by
  // 1 - dt + dt^2/2 - dt^3/6
  const auto f = [](double, const Eigen::VectorXd& y) { return (-y).eval(); };
  Eigen::VectorXd y0(1);
  y0 << 1.0;
  const double dt = 0.2;
  const OdeStep step = fehlberg_step(f, 0.0, y0, dt);
  const double corrector = 1 - dt + dt * dt / 2 - dt * dt * dt / 6;
  CHECK(step.y[0] == doctest::Approx(corrector).epsilon(1e-15));
  CHECK(step.error == doctest::Approx(dt * dt * dt / 6).epsilon(1e-12));
}

TEST_CASE("halving the step cuts the one-step error about sixteenfold") {
  const auto f = [](double, const Eigen::VectorXd& y) { return (-y).eval(); };
  Eigen::VectorXd y0(1);
  y0 << 1.0;
  double prev = 0;
  int k = 0;
  for (double dt : {0.2, 0.1, 0.05}) {
    const OdeStep step = fehlberg_step(f, 0.0, y0, dt);
    const double err = std::abs(step.y[0] - std::exp(-dt));
    if (k++ > 0) {
      const double ratio = prev / err;
      CHECK(ratio > 12.0);
      CHECK(ratio < 20.0);
    }
    prev = err;
  }
}

TEST_CASE("step-size control accepts and resizes per the error bound") {
  const double eps = 1e-4;
  double dt = 0.2;

  // error exactly at the bound: accepted, next step shrinks by 0.9
  AdaptResult r = adapt_step(dt, dt * eps, eps);
  CHECK(r.accept);
  CHECK(r.dt_next == doctest::Approx(0.9 * dt).epsilon(1e-15));

  // error four times too large: rejected, gamma = 1/2
  r = adapt_step(dt, 4 * dt * eps, eps);
  CHECK_FALSE(r.accept);
  CHECK(r.dt_next == doctest::Approx(0.45 * dt).epsilon(1e-15));

  // zero error: accepted, growth capped at doubling
  r = adapt_step(dt, 0.0, eps);
  CHECK(r.accept);
  CHECK(r.dt_next == doctest::Approx(2 * dt).epsilon(1e-15));
  r = adapt_step(0.8, 0.0, eps);
  CHECK(r.dt_next == 1.0);

  // floor and ceiling
  r = adapt_step(2e-6, 1.0, eps);
  CHECK(r.dt_next == doctest::Approx(kDtMin));
  CHECK_THROWS_AS(adapt_step(0.0, 1.0, eps), Error);
  CHECK_THROWS_AS(adapt_step(0.1, -1.0, eps), Error);
}

TEST_CASE("quantization snaps to the lattice with ties to even levels") {
  PhaseState ps;
  ps.phi_x.resize(5);
  ps.phi_x << 0.2, pi / 4, 3 * pi / 4, -pi / 4, 2 * pi - 0.01;
  ps.phi_lambda.resize(1);
  ps.phi_lambda << 1.9;

  const PhaseState q4 = quantize_phases(ps, 4);
  CHECK(q4.phi_x[0] == 0.0);
  CHECK(q4.phi_x[1] == 0.0);                                   // tie 0.5 -> even level 0
  CHECK(q4.phi_x[2] == doctest::Approx(pi).epsilon(1e-15));    // tie 1.5 -> even level 2
  CHECK(q4.phi_x[3] == 0.0);                                   // tie -0.5 -> level 0
  CHECK(q4.phi_x[4] == 0.0);                                   // wraps into [0, 2 pi)
  CHECK(q4.phi_lambda[0] == doctest::Approx(pi / 2).epsilon(1e-15));

  const PhaseState q16 = quantize_phases(ps, 16);
  CHECK(q16.phi_x[0] == doctest::Approx(0.39269908169872414).epsilon(1e-15));

  for (int n : {2, 16, 4096}) {
    Rng rng(33);
    PhaseState r;
    r.phi_x = testutil::random_phases(rng, 50);
    r.phi_lambda = testutil::random_phases(rng, 20);
    const PhaseState snapped = quantize_phases(r, n);
    const double step = 2 * pi / n;
    for (Eigen::Index i = 0; i < snapped.phi_x.size(); ++i) {
      CHECK(snapped.phi_x[i] >= 0.0);
      CHECK(snapped.phi_x[i] < 2 * pi);
      const double k = snapped.phi_x[i] / step;
      CHECK(std::abs(k - std::round(k)) < 1e-9);
      // circle distance: a phase just under 2 pi snaps to level 0
      const double diff = std::abs(snapped.phi_x[i] - r.phi_x[i]);
      CHECK(std::min(diff, 2 * pi - diff) <= step / 2 + 1e-12);
    }
  }
  CHECK_THROWS_AS(quantize_phases(ps, 1), Error);
  CHECK_THROWS_AS(quantize_phases(ps, 0), Error);
}

TEST_CASE("trials are reproducible and solutions are certified") {
  Rng rng(44);
  Instance inst;
  // keep drawing until the instance is satisfiable
  for (;;) {
    inst = random_instance(rng, 10, 35, "trial10");
    if (find_satisfying_exhaustive(inst)) break;
  }
  const CompiledInstance ci(inst);

  TrialConfig cfg;
  cfg.t_max = 200.0;
  cfg.keep_final_state = true;

  int solved = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    cfg.seed = seed;
    const TrialResult a = run_trial(ci, cfg);
    const TrialResult b = run_trial(ci, cfg);
    CHECK(a.solved == b.solved);
    CHECK(a.steps == b.steps);
    CHECK(a.stop_time == b.stop_time);
    CHECK(a.final_cost == b.final_cost);
    CHECK(a.stop_time <= cfg.t_max + cfg.step.dt);
    if (a.solved) {
      ++solved;
      CHECK(a.final_cost < 0.125);
      CHECK(evaluate(inst, round_phases(a.final_state.phi_x)) == 0);
    }
  }
  CHECK(solved > 0);
}

TEST_CASE("trace rows arrive once per accepted step with consistent time") {
  Rng rng(45);
  const CompiledInstance ci = small_compiled(94);
  TrialConfig cfg;
  cfg.t_max = 10.0;
  cfg.seed = 3;
  long rows = 0;
  double last_t = 0;
  const TrialResult res = run_trial(ci, cfg, [&](const TraceRow& row) {
    ++rows;
    CHECK(row.t > last_t);
    last_t = row.t;
    CHECK(row.state != nullptr);
  });
  CHECK(rows == res.steps);
  CHECK(last_t == doctest::Approx(res.stop_time));
}

TEST_CASE("adaptive stepping keeps the accepted error below the bound") {
  Rng rng(46);
  const CompiledInstance ci = small_compiled(95);
  TrialConfig cfg;
  cfg.step.adaptive = true;
  cfg.step.dt = 0.15;
  cfg.step.eps = 1e-4;
  cfg.t_max = 30.0;
  cfg.seed = 9;
  const TrialResult res = run_trial(ci, cfg);
  CHECK(res.steps > 0);
  CHECK(res.rejected >= 0);
  CHECK(res.stop_time <= cfg.t_max + 1e-9);
}

TEST_CASE("bad trial parameters are rejected") {
  const CompiledInstance ci = small_compiled(96);
  TrialConfig cfg;
  cfg.t_max = 0;
  CHECK_THROWS_AS(run_trial(ci, cfg), Error);
  cfg = TrialConfig{};
  cfg.step.dt = 0;
  CHECK_THROWS_AS(run_trial(ci, cfg), Error);
  cfg = TrialConfig{};
  cfg.n_states = 1;
  CHECK_THROWS_AS(run_trial(ci, cfg), Error);
  cfg = TrialConfig{};
  cfg.step.adaptive = true;
  cfg.step.eps = 0;
  CHECK_THROWS_AS(run_trial(ci, cfg), Error);
}
