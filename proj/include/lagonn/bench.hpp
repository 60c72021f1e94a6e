#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lagonn/cnf.hpp"

namespace lagonn {

// Expected time to observe a solution with 99% confidence when each run of
// length t_max succeeds independently with probability p_s.
double time_to_solution(double t_max, double p_s);

// Clamp an empirical success fraction away from 0 and 1 by half a trial.
double clamp_success(double p_hat, int trials);

struct TtsEstimate {
  double t_max = 0.0;
  int trials = 0;
  int successes = 0;
  double p_s = 0.0;  // clamped
  double tts = 0.0;
};

TtsEstimate estimate_tts(double t_max, int successes, int trials);

struct Quartiles {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
};

Quartiles quartiles(std::vector<double> xs);

enum class ScalingModel { exp_linear, exp_sqrt };

// Least squares of log(tts) against x = N (exp_linear) or sqrt(N) (exp_sqrt):
// tts ~ a * exp(b * x). rms is the residual RMS in log space.
struct ScalingFit {
  ScalingModel model = ScalingModel::exp_linear;
  double a = 0.0;
  double b = 0.0;
  double rms = 0.0;
};

ScalingFit fit_exp_scaling(const std::vector<std::pair<double, double>>& n_tts,
                           ScalingModel model);

// One trial at a given budget; returns the earliest time (or step count) at
// which a solution appeared, +inf if none within the budget. Must be
// monotone: enlarging the budget can only reveal the same or an earlier hit.
using SolveFn =
    std::function<double(const Instance& inst, double budget, std::uint64_t seed)>;

struct CampaignConfig {
  std::vector<double> t_max_schedule{10, 40, 160, 640};
  int trials = 100;
  std::uint64_t master_seed = 1;
  double low_ps = 0.1;  // escalate to the next budget while p_hat stays at or below this
  int jobs = 1;
};

struct CampaignRow {
  std::string instance;
  int num_vars = 0;
  int num_clauses = 0;
  double t_max = 0.0;
  int trials = 0;
  int successes = 0;
  double p_s = 0.0;
  double tts = 0.0;
  bool final_rung = false;
};

// Runs the budget ladder per instance, re-running only still-unsolved trials
// at each escalation. Per-trial seeds depend on the master seed, instance name
// and trial index alone, so runs pair across solver-parameter sweeps.
std::vector<CampaignRow> run_campaign(const std::vector<Instance>& instances,
                                      const CampaignConfig& cfg, const SolveFn& solve);

std::vector<CampaignRow> final_rows(const std::vector<CampaignRow>& rows);

} // namespace lagonn
