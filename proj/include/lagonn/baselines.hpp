#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lagonn/cnf.hpp"
#include "lagonn/rng.hpp"

namespace lagonn {

// Incremental per-clause true-literal counts over a spin assignment, with the
// list of unsatisfied clauses kept current across flips.
class SatState {
 public:
  SatState(const Instance& inst, const VarIndex& vidx, Assignment init);

  int cost() const { return int(unsat_.size()); }
  const Assignment& assignment() const { return s_; }
  const std::vector<int>& unsat_clauses() const { return unsat_; }
  int true_count(int clause) const { return true_count_[clause]; }

  // Clauses where var's literal is the only true one.
  int break_count(int var) const;
  // Change in unsatisfied-clause count if var were flipped.
  int flip_delta(int var) const;
  void flip(int var);

 private:
  const Instance* inst_;
  const VarIndex* vidx_;
  Assignment s_;
  std::vector<int> true_count_;
  std::vector<int> unsat_;
  std::vector<int> unsat_pos_;  // clause -> index in unsat_, or -1
};

// From-scratch cost change for flipping var; oracle for SatState::flip_delta.
int flip_delta(const Instance& inst, const VarIndex& vidx, const Assignment& s, int var);

struct AnnealParams {
  int max_trials = 1;
  double max_temp = 1.0;
  double min_temp = 0.01;
  double decay_scale = 0.2;  // per-sweep temperature decay is decay_scale / num_vars
  long max_steps = -1;       // overall attempted-flip budget, -1 = unlimited
  bool init_all_true = false;
  std::uint64_t seed = 1;
  std::function<void(long step, int cost, double temp)> trace;
};

struct AnnealResult {
  bool solved = false;          // a sweep-top satisfiability check fired
  long steps = 0;               // attempted flips across all restarts
  long first_solution_step = -1;  // first attempted flip after which cost hit 0
  int final_cost = 0;
  int initial_cost = 0;
  int cost_after_first_sweep = 0;
  int trials_used = 0;
  Assignment assignment;
};

// Annealed Gibbs sweeps in fixed variable order with flip probability
// 1 / (1 + exp(delta / T)) and schedule T_j = max_temp * exp(-j * decay_scale / N).
AnnealResult sasat_run(const Instance& inst, const AnnealParams& p);

long sasat_schedule_sweeps(int num_vars, const AnnealParams& p);

struct WalksatParams {
  double noise = 0.5;
  long max_flips = 100000;
  std::uint64_t seed = 1;
};

struct WalksatResult {
  bool solved = false;
  long flips = 0;
  int final_cost = 0;
  Assignment assignment;
};

// SKC-style walk: random unsatisfied clause; a break-free variable if one
// exists, else a random clause variable with probability noise, else a
// minimum-break variable (ties uniform).
WalksatResult walksat_run(const Instance& inst, const WalksatParams& p);

} // namespace lagonn
