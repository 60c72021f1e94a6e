#include "lagonn/baselines.hpp"

#include <cmath>

namespace lagonn {

SatState::SatState(const Instance& inst, const VarIndex& vidx, Assignment init)
    : inst_(&inst), vidx_(&vidx), s_(std::move(init)) {
  if (s_.size() != inst.num_vars)
    fail(ErrorKind::LengthMismatch, "assignment length mismatch");
  const int m = inst.num_clauses();
  true_count_.assign(m, 0);
  unsat_pos_.assign(m, -1);
  for (int c = 0; c < m; ++c) {
    for (const Literal& l : inst.clauses[c].lits)
      if (literal_true(l, s_)) ++true_count_[c];
    if (true_count_[c] == 0) {
      unsat_pos_[c] = int(unsat_.size());
      unsat_.push_back(c);
    }
  }
}

int SatState::break_count(int var) const {
  int b = 0;
  for (int c : vidx_->clauses_of[var]) {
    if (true_count_[c] != 1) continue;
    for (const Literal& l : inst_->clauses[c].lits)
      if (l.var == var && literal_true(l, s_)) { ++b; break; }
  }
  return b;
}

int SatState::flip_delta(int var) const {
  int delta = 0;
  for (int c : vidx_->clauses_of[var]) {
    if (true_count_[c] == 0) {
      --delta;  // flipping makes var's literal true, satisfying the clause
    } else if (true_count_[c] == 1) {
      for (const Literal& l : inst_->clauses[c].lits)
        if (l.var == var && literal_true(l, s_)) { ++delta; break; }
    }
  }
  return delta;
}

void SatState::flip(int var) {
  const bool was_true_sign = s_[var] > 0;
  s_[var] = -s_[var];
  for (int c : vidx_->clauses_of[var]) {
    bool negated = false;
    for (const Literal& l : inst_->clauses[c].lits)
      if (l.var == var) { negated = l.negated; break; }
    const bool was_true = negated ? !was_true_sign : was_true_sign;
    if (was_true) {
      if (--true_count_[c] == 0) {
        unsat_pos_[c] = int(unsat_.size());
        unsat_.push_back(c);
      }
    } else {
      if (true_count_[c]++ == 0) {
        const int pos = unsat_pos_[c];
        const int last = unsat_.back();
        unsat_[pos] = last;
        unsat_pos_[last] = pos;
        unsat_.pop_back();
        unsat_pos_[c] = -1;
      }
    }
  }
}

int flip_delta(const Instance& inst, const VarIndex& vidx, const Assignment& s, int var) {
  if (s.size() != inst.num_vars) fail(ErrorKind::LengthMismatch, "assignment length mismatch");
  if (var < 0 || var >= inst.num_vars) fail(ErrorKind::IndexOutOfRange, "variable index");
  int delta = 0;
  for (int c : vidx.clauses_of[var]) {
    int count = 0;
    bool var_true = false;
    for (const Literal& l : inst.clauses[c].lits) {
      const bool t = literal_true(l, s);
      count += t;
      if (l.var == var) var_true = t;
    }
    if (count == 0) --delta;
    else if (count == 1 && var_true) ++delta;
  }
  return delta;
}

long sasat_schedule_sweeps(int num_vars, const AnnealParams& p) {
  long j = 0;
  while (p.max_temp * std::exp(-double(j) * p.decay_scale / num_vars) >= p.min_temp) ++j;
  return j;
}

AnnealResult sasat_run(const Instance& inst, const AnnealParams& p) {
  if (p.max_trials < 1) fail(ErrorKind::InvalidParameter, "max_trials must be >= 1");
  if (!(p.max_temp > 0) || !(p.min_temp > 0) || p.min_temp > p.max_temp)
    fail(ErrorKind::InvalidParameter, "bad temperature range");
  if (!(p.decay_scale > 0)) fail(ErrorKind::InvalidParameter, "decay_scale must be positive");

  const int n = inst.num_vars;
  const VarIndex vidx(inst);
  Rng rng(p.seed);
  AnnealResult res;

  for (int trial = 0; trial < p.max_trials; ++trial) {
    Assignment init(n);
    if (p.init_all_true && trial == 0)
      init.setOnes();
    else
      for (int v = 0; v < n; ++v) init[v] = rng.spin();
    SatState st(inst, vidx, std::move(init));
    res.trials_used = trial + 1;
    if (trial == 0) res.initial_cost = st.cost();

    for (long j = 0;; ++j) {
      const double temp = p.max_temp * std::exp(-double(j) * p.decay_scale / n);
      if (temp < p.min_temp) break;
      if (st.cost() == 0) {
        res.solved = true;
        res.final_cost = 0;
        res.assignment = st.assignment();
        return res;
      }
      for (int v = 0; v < n; ++v) {
        const int delta = st.flip_delta(v);
        ++res.steps;
        const double accept = 1.0 / (1.0 + std::exp(delta / temp));
        if (rng.uniform() < accept) {
          st.flip(v);
          if (res.first_solution_step < 0 && st.cost() == 0)
            res.first_solution_step = res.steps;
        }
        if (p.trace) p.trace(res.steps, st.cost(), temp);
        if (p.max_steps > 0 && res.steps >= p.max_steps) {
          res.final_cost = st.cost();
          res.assignment = st.assignment();
          return res;
        }
      }
      if (trial == 0 && j == 0) res.cost_after_first_sweep = st.cost();
    }
    res.final_cost = st.cost();
    res.assignment = st.assignment();
  }
  return res;
}

WalksatResult walksat_run(const Instance& inst, const WalksatParams& p) {
  if (p.noise < 0 || p.noise > 1) fail(ErrorKind::InvalidParameter, "noise outside [0, 1]");
  if (p.max_flips < 0) fail(ErrorKind::InvalidParameter, "negative flip budget");

  const VarIndex vidx(inst);
  Rng rng(p.seed);
  Assignment init(inst.num_vars);
  for (int v = 0; v < inst.num_vars; ++v) init[v] = rng.spin();
  SatState st(inst, vidx, std::move(init));

  WalksatResult res;
  while (res.flips < p.max_flips && st.cost() > 0) {
    const auto& unsat = st.unsat_clauses();
    const int c = unsat[rng.below(unsat.size())];
    const Clause& cl = inst.clauses[c];

    std::array<int, 3> breaks{};
    std::array<int, 3> zero{};
    int nzero = 0;
    int best = 1 << 30;
    for (int k = 0; k < 3; ++k) {
      breaks[k] = st.break_count(cl.lits[k].var);
      if (breaks[k] == 0) zero[nzero++] = k;
      best = std::min(best, breaks[k]);
    }

    int pick;
    if (nzero > 0) {
      pick = nzero == 1 ? zero[0] : zero[rng.below(nzero)];
    } else if (rng.uniform() < p.noise) {
      pick = int(rng.below(3));
    } else {
      std::array<int, 3> ties{};
      int nties = 0;
      for (int k = 0; k < 3; ++k)
        if (breaks[k] == best) ties[nties++] = k;
      pick = nties == 1 ? ties[0] : ties[rng.below(nties)];
    }
    st.flip(cl.lits[pick].var);
    ++res.flips;
  }
  res.solved = st.cost() == 0;
  res.final_cost = st.cost();
  res.assignment = st.assignment();
  return res;
}

} // namespace lagonn
