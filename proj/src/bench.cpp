#include "lagonn/bench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "lagonn/rng.hpp"

namespace lagonn {

double time_to_solution(double t_max, double p_s) {
  if (!(t_max > 0)) fail(ErrorKind::NonPositiveTts, "t_max must be positive");
  if (!(p_s > 0) || !(p_s < 1))
    fail(ErrorKind::NonPositiveTts, "success probability must lie strictly in (0, 1)");
  return t_max * std::log(0.01) / std::log1p(-p_s);
}

double clamp_success(double p_hat, int trials) {
  if (trials < 1) fail(ErrorKind::NoTrials, "no trials");
  const double lo = 1.0 / (2.0 * trials);
  return std::clamp(p_hat, lo, 1.0 - lo);
}

TtsEstimate estimate_tts(double t_max, int successes, int trials) {
  if (trials < 1) fail(ErrorKind::NoTrials, "no trials");
  if (successes < 0 || successes > trials)
    fail(ErrorKind::InvalidParameter, "successes outside [0, trials]");
  TtsEstimate e;
  e.t_max = t_max;
  e.trials = trials;
  e.successes = successes;
  e.p_s = clamp_success(double(successes) / trials, trials);
  e.tts = time_to_solution(t_max, e.p_s);
  return e;
}

Quartiles quartiles(std::vector<double> xs) {
  if (xs.empty()) fail(ErrorKind::NoTrials, "empty sample");
  std::sort(xs.begin(), xs.end());
  const auto at = [&](double p) {
    const double pos = p * double(xs.size() - 1);
    const std::size_t lo = std::size_t(pos);
    const std::size_t hi = std::min(lo + 1, xs.size() - 1);
    const double frac = pos - double(lo);
    return xs[lo] * (1 - frac) + xs[hi] * frac;
  };
  Quartiles q;
  q.min = xs.front();
  q.q1 = at(0.25);
  q.median = at(0.5);
  q.q3 = at(0.75);
  q.max = xs.back();
  double sum = 0;
  for (double x : xs) sum += x;
  q.mean = sum / double(xs.size());
  return q;
}

ScalingFit fit_exp_scaling(const std::vector<std::pair<double, double>>& n_tts,
                           ScalingModel model) {
  if (n_tts.size() < 3) fail(ErrorKind::InsufficientPoints, "need at least 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, tts] : n_tts) {
    if (!(tts > 0)) fail(ErrorKind::NonPositiveTts, "tts must be positive for a log fit");
    const double x = model == ScalingModel::exp_sqrt ? std::sqrt(n) : n;
    const double y = std::log(tts);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double cnt = double(n_tts.size());
  const double denom = cnt * sxx - sx * sx;
  if (denom == 0) fail(ErrorKind::InsufficientPoints, "degenerate abscissae");
  ScalingFit fit;
  fit.model = model;
  fit.b = (cnt * sxy - sx * sy) / denom;
  fit.a = std::exp((sy - fit.b * sx) / cnt);
  double ss = 0;
  for (const auto& [n, tts] : n_tts) {
    const double x = model == ScalingModel::exp_sqrt ? std::sqrt(n) : n;
    const double r = std::log(tts) - (std::log(fit.a) + fit.b * x);
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / cnt);
  return fit;
}

namespace {

// Run solve for the listed trials, writing first-hit times by trial index.
void run_block(const Instance& inst, const CampaignConfig& cfg, const SolveFn& solve,
               double budget, const std::vector<int>& todo, std::vector<double>& first_hit) {
  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1 || todo.size() < 2) {
    for (int i : todo)
      first_hit[i] = solve(inst, budget, trial_seed(cfg.master_seed, inst.name, i));
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t k = w; k < todo.size(); k += jobs) {
        const int i = todo[k];
        first_hit[i] = solve(inst, budget, trial_seed(cfg.master_seed, inst.name, i));
      }
    });
  }
  for (auto& th : pool) th.join();
}

} // namespace

std::vector<CampaignRow> run_campaign(const std::vector<Instance>& instances,
                                      const CampaignConfig& cfg, const SolveFn& solve) {
  if (cfg.t_max_schedule.empty()) fail(ErrorKind::InvalidParameter, "empty budget schedule");
  if (cfg.trials < 1) fail(ErrorKind::NoTrials, "trials must be >= 1");
  std::vector<CampaignRow> rows;
  for (const Instance& inst : instances) {
    std::vector<double> first_hit(cfg.trials, std::numeric_limits<double>::infinity());
    std::vector<int> todo(cfg.trials);
    for (int i = 0; i < cfg.trials; ++i) todo[i] = i;
    for (std::size_t r = 0; r < cfg.t_max_schedule.size(); ++r) {
      const double budget = cfg.t_max_schedule[r];
      run_block(inst, cfg, solve, budget, todo, first_hit);
      int successes = 0;
      todo.clear();
      for (int i = 0; i < cfg.trials; ++i) {
        if (first_hit[i] <= budget)
          ++successes;
        else
          todo.push_back(i);
      }
      const TtsEstimate est = estimate_tts(budget, successes, cfg.trials);
      CampaignRow row;
      row.instance = inst.name;
      row.num_vars = inst.num_vars;
      row.num_clauses = inst.num_clauses();
      row.t_max = budget;
      row.trials = cfg.trials;
      row.successes = successes;
      row.p_s = est.p_s;
      row.tts = est.tts;
      const double p_hat = double(successes) / cfg.trials;
      row.final_rung = p_hat > cfg.low_ps || r + 1 == cfg.t_max_schedule.size();
      rows.push_back(row);
      if (row.final_rung) break;
    }
  }
  return rows;
}

std::vector<CampaignRow> final_rows(const std::vector<CampaignRow>& rows) {
  std::vector<CampaignRow> out;
  for (const CampaignRow& r : rows)
    if (r.final_rung) out.push_back(r);
  return out;
}

} // namespace lagonn
