#pragma once

#include <cstdint>
#include <functional>
#include <limits>

#include "lagonn/lagrange.hpp"
#include "lagonn/ode.hpp"

namespace lagonn {

struct DtPolicy {
  bool adaptive = false;
  double dt = 0.15;     // fixed step, or initial step when adaptive
  double eps = 1e-4;    // error-per-unit-time bound, adaptive mode only
};

struct TrialConfig {
  SystemConfig system;
  Mode mode = Mode::lagonn;
  DtPolicy step;
  double t_max = 1000.0;
  int n_states = 0;  // 0 = continuous phases, otherwise quantize to n levels
  double kappa_stop = 0.125;
  double fixed_point_tol = 1e-9;
  long max_steps = 20'000'000;
  std::uint64_t seed = 1;
  bool keep_final_state = false;
};

// Layout of the stacked state vector: num_vars variable phases followed by
// num_clauses Lagrange phases.
Eigen::VectorXd derivative(const CompiledInstance& ci, const PhaseState& ps,
                           const SystemConfig& cfg, Mode mode);

struct StepOutcome {
  PhaseState state;
  double dt_next = 0.0;
  double local_error = 0.0;
};

StepOutcome integrate_step(const CompiledInstance& ci, const PhaseState& ps, double dt,
                           const SystemConfig& cfg, Mode mode);

// Snap every phase to the nearest multiple of 2*pi/n (ties to the even
// multiple), mapped into [0, 2*pi). n must be at least 2.
PhaseState quantize_phases(const PhaseState& ps, int n);

struct TraceRow {
  double t = 0.0;
  double kappa = 0.0;
  double lagrange = 0.0;
  const PhaseState* state = nullptr;
};
using TraceSink = std::function<void(const TraceRow&)>;

struct TrialResult {
  bool solved = false;
  double stop_time = 0.0;
  double final_cost = 0.0;
  double min_cost = std::numeric_limits<double>::infinity();
  long steps = 0;
  long rejected = 0;
  bool unstable = false;        // cost never dropped below half the clause count
  bool at_fixed_point = false;  // phase motion fell below fixed_point_tol
  PhaseState final_state;       // populated when keep_final_state is set
};

TrialResult run_trial(const CompiledInstance& ci, const TrialConfig& cfg,
                      const TraceSink& trace = {});

} // namespace lagonn
