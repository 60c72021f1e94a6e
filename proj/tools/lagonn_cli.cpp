// Command-line driver for the lagonn library: solver runs, baseline solvers,
// benchmark campaigns, parameter sweeps, the phase-copy demo and instance
// generation. Every command writes CSV plus a JSON summary plus a manifest
// that replays the run byte-for-byte.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lagonn/baselines.hpp"
#include "lagonn/bench.hpp"
#include "lagonn/cnf.hpp"
#include "lagonn/copy_demo.hpp"
#include "lagonn/integrator.hpp"
#include "lagonn/io.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace lagonn;

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitNoSolution = 10;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 1;

constexpr double kInf = std::numeric_limits<double>::infinity();

int run_cli(const std::vector<std::string>& args);

// ---------------------------------------------------------------------------
// output plumbing

class Csv {
 public:
  explicit Csv(std::string header) : body_(std::move(header)) { body_ += '\n'; }

  Csv& field(const std::string& s) { return raw(s); }
  Csv& field(const char* s) { return raw(s); }
  Csv& field(double x) { return raw(fmt_double(x)); }
  Csv& field(int x) { return raw(std::to_string(x)); }
  Csv& field(long x) { return raw(std::to_string(x)); }
  Csv& field(std::uint64_t x) { return raw(std::to_string(x)); }
  Csv& field(bool x) { return raw(x ? "1" : "0"); }
  void endrow() {
    body_ += '\n';
    first_ = true;
  }
  const std::string& str() const { return body_; }

 private:
  Csv& raw(const std::string& s) {
    if (!first_) body_ += ',';
    first_ = false;
    body_ += s;
    return *this;
  }
  std::string body_;
  bool first_ = true;
};

// Collects the files a command produces and ends by writing the manifest
// that reproduces them.
struct Sink {
  fs::path dir;
  std::string prefix;
  std::vector<std::string> argv;
  std::uint64_t master_seed = 0;
  ordered_json config;
  std::vector<std::string> outputs;

  fs::path path(const std::string& name) const { return dir / name; }

  void write(const std::string& name, const std::string& content) {
    ensure_dir(dir.string());
    write_file(path(name).string(), content);
    outputs.push_back(name);
  }
  void write_csv(const std::string& content) { write(prefix + ".csv", content); }
  void write_summary(const ordered_json& j) {
    write(prefix + "_summary.json", j.dump(2) + "\n");
  }
  void finish() {
    ordered_json m;
    m["tool"] = "lagonn";
    m["version"] = LAGONN_VERSION;
    m["argv"] = argv;
    m["master_seed"] = master_seed;
    m["config"] = config;
    m["outputs"] = outputs;
    ensure_dir(dir.string());
    write_file(path(prefix + "_manifest.json").string(), m.dump(2) + "\n");
  }
};

Instance load_cnf(const std::string& path) {
  return load_dimacs_file(path);
}

std::vector<Instance> load_many(const std::vector<std::string>& paths) {
  std::vector<Instance> out;
  for (const std::string& p : paths) out.push_back(load_cnf(p));
  return out;
}

ordered_json instance_json(const Instance& inst) {
  return ordered_json{{"name", inst.name},
                      {"num_vars", inst.num_vars},
                      {"num_clauses", int(inst.clauses.size())}};
}

double median_of(std::vector<double> xs) {
  return quartiles(std::move(xs)).median;
}

// ---------------------------------------------------------------------------
// shared solver-facing option blocks

struct DynamicsFlags {
  std::string mode = "lagonn";
  double dt = 0.15;
  double adaptive_eps = 0.0;  // > 0 switches to the adaptive stepper
  double tau = 1.0;
  double tau_lambda = 1.0;
  double beta = 20.0;
  double shil_kmax = 0.0;
  double shil_start = 0.0;
  double shil_ramp = 0.0;
  double freeze_at = kInf;
  int nstates = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--mode", mode, "dynamics: lagonn or onn")
        ->check(CLI::IsMember({"lagonn", "onn"}))
        ->capture_default_str();
    cmd->add_option("--dt", dt, "fixed step, or initial step when adaptive")
        ->capture_default_str();
    cmd->add_option("--adaptive-eps", adaptive_eps,
                    "error tolerance per unit time; enables the adaptive stepper");
    cmd->add_option("--tau", tau, "phase oscillator time constant")->capture_default_str();
    cmd->add_option("--tau-lambda", tau_lambda, "Lagrange oscillator time constant")
        ->capture_default_str();
    cmd->add_option("--beta", beta, "sharpness of the smooth clause cost")
        ->capture_default_str();
    cmd->add_option("--shil-kmax", shil_kmax, "final second-harmonic locking amplitude");
    cmd->add_option("--shil-start", shil_start, "time at which the locking ramp begins");
    cmd->add_option("--shil-ramp", shil_ramp, "duration of the locking ramp");
    cmd->add_option("--freeze-at", freeze_at, "time after which Lagrange phases stop");
    cmd->add_option("--nstates", nstates, "quantize phases to this many levels (0 = off)");
  }

  TrialConfig trial_config(double t_max, std::uint64_t seed) const {
    TrialConfig cfg;
    cfg.mode = mode == "onn" ? Mode::onn_only : Mode::lagonn;
    cfg.step.adaptive = adaptive_eps > 0;
    cfg.step.dt = dt;
    if (adaptive_eps > 0) cfg.step.eps = adaptive_eps;
    cfg.t_max = t_max;
    cfg.n_states = nstates;
    cfg.seed = seed;
    cfg.system.tau = tau;
    cfg.system.tau_lambda = tau_lambda;
    cfg.system.beta = beta;
    cfg.system.shil_k_max = shil_kmax;
    cfg.system.shil_start_time = shil_start;
    cfg.system.shil_ramp_time = shil_ramp;
    cfg.system.lagrange_freeze_time = freeze_at;
    return cfg;
  }

  ordered_json json() const {
    ordered_json j;
    j["mode"] = mode;
    j["dt"] = dt;
    j["adaptive_eps"] = adaptive_eps;
    j["tau"] = tau;
    j["tau_lambda"] = tau_lambda;
    j["beta"] = beta;
    j["shil_kmax"] = shil_kmax;
    j["shil_start"] = shil_start;
    j["shil_ramp"] = shil_ramp;
    j["freeze_at"] = std::isinf(freeze_at) ? -1.0 : freeze_at;
    j["nstates"] = nstates;
    return j;
  }
};

SolveFn oscillator_solver(const DynamicsFlags& dyn) {
  return [dyn](const Instance& inst, double budget, std::uint64_t seed) {
    const CompiledInstance ci(inst);
    const TrialResult r = run_trial(ci, dyn.trial_config(budget, seed));
    return r.solved ? r.stop_time : kInf;
  };
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string cnf;
  DynamicsFlags dyn;
  double tmax = 1000.0;
  std::uint64_t seed = 1;
  int trials = 1;
  std::string trace;
  std::string out = "out";
  std::string prefix = "solve";
};

int cmd_solve(const SolveArgs& a, const std::vector<std::string>& argv) {
  const Instance inst = load_cnf(a.cnf);
  const CompiledInstance ci(inst);

  Sink sink{a.out, a.prefix, argv, a.seed};
  sink.config = a.dyn.json();
  sink.config["cnf"] = a.cnf;
  sink.config["tmax"] = a.tmax;
  sink.config["trials"] = a.trials;
  sink.config["trace"] = a.trace;

  Csv csv(
      "trial,seed,solved,stop_time,final_cost,min_cost,unsat_rounded,steps,rejected,"
      "unstable,fixed_point");
  std::optional<Csv> trace_csv;
  if (!a.trace.empty()) trace_csv.emplace("trial,t,kappa,lagrange");

  int solved_count = 0;
  for (int trial = 0; trial < a.trials; ++trial) {
    const std::uint64_t seed = trial_seed(a.seed, inst.name, trial);
    TrialConfig cfg = a.dyn.trial_config(a.tmax, seed);
    cfg.keep_final_state = true;
    TraceSink ts;
    if (trace_csv)
      ts = [&](const TraceRow& row) {
        trace_csv->field(trial).field(row.t).field(row.kappa).field(row.lagrange);
        trace_csv->endrow();
      };
    const TrialResult r = run_trial(ci, cfg, ts);
    const int unsat = evaluate(inst, round_phases(r.final_state.phi_x));
    if (r.solved) ++solved_count;
    csv.field(trial).field(seed).field(r.solved).field(r.stop_time).field(r.final_cost);
    csv.field(r.min_cost).field(unsat).field(r.steps).field(r.rejected);
    csv.field(r.unstable).field(r.at_fixed_point);
    csv.endrow();
    std::cout << "trial " << trial << ": " << (r.solved ? "solved" : "unsolved")
              << " stop_time=" << fmt_double(r.stop_time)
              << " final_cost=" << fmt_double(r.final_cost) << " unsat=" << unsat << "\n";
  }

  const TtsEstimate tts = estimate_tts(a.tmax, solved_count, a.trials);
  ordered_json summary;
  summary["instance"] = instance_json(inst);
  summary["trials"] = a.trials;
  summary["solved"] = solved_count;
  summary["p_s"] = tts.p_s;
  summary["tts"] = tts.tts;

  sink.write_csv(csv.str());
  if (trace_csv) sink.write(a.trace, trace_csv->str());
  sink.write_summary(summary);
  sink.finish();
  std::cout << "solved " << solved_count << "/" << a.trials
            << " trials, tts=" << fmt_double(tts.tts) << "\n";
  return solved_count > 0 ? kExitSolved : kExitNoSolution;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::vector<std::string> cnfs;
  std::string solver = "lagonn";
  DynamicsFlags dyn;
  std::vector<double> schedule;
  int trials = 100;
  std::uint64_t seed = 1;
  double low_ps = 0.1;
  int jobs = 0;
  // baseline knobs
  double max_temp = 1.0;
  double min_temp = 0.01;
  double decay_scale = 0.2;
  bool init_all_true = false;
  double noise = 0.5;
  std::string out = "out";
  std::string prefix = "bench";
};

SolveFn make_solver(const BenchArgs& a) {
  if (a.solver == "lagonn" || a.solver == "onn") {
    DynamicsFlags dyn = a.dyn;
    if (a.solver == "onn") dyn.mode = "onn";
    return oscillator_solver(dyn);
  }
  if (a.solver == "sasat") {
    AnnealParams base;
    base.max_temp = a.max_temp;
    base.min_temp = a.min_temp;
    base.decay_scale = a.decay_scale;
    base.init_all_true = a.init_all_true;
    return [base](const Instance& inst, double budget, std::uint64_t seed) {
      AnnealParams p = base;
      p.seed = seed;
      p.max_steps = (long)budget;
      const AnnealResult r = sasat_run(inst, p);
      return r.first_solution_step >= 0 ? double(r.first_solution_step) : kInf;
    };
  }
  // walksat
  const double noise = a.noise;
  return [noise](const Instance& inst, double budget, std::uint64_t seed) {
    WalksatParams p;
    p.noise = noise;
    p.seed = seed;
    p.max_flips = (long)budget;
    const WalksatResult r = walksat_run(inst, p);
    return r.solved ? double(r.flips) : kInf;
  };
}

std::vector<double> default_schedule(const std::string& solver) {
  if (solver == "sasat" || solver == "walksat") return {1000, 4000, 16000, 64000};
  return {10, 40, 160, 640};
}

Csv campaign_csv(const std::vector<CampaignRow>& rows, const std::string& solver) {
  Csv csv("instance,solver,num_vars,num_clauses,t_max,trials,successes,p_s,tts,final_rung");
  for (const CampaignRow& r : rows) {
    csv.field(r.instance).field(solver).field(r.num_vars).field(r.num_clauses);
    csv.field(r.t_max).field(r.trials).field(r.successes).field(r.p_s).field(r.tts);
    csv.field(r.final_rung);
    csv.endrow();
  }
  return csv;
}

int cmd_bench(const BenchArgs& a, const std::vector<std::string>& argv) {
  const std::vector<Instance> instances = load_many(a.cnfs);

  CampaignConfig cfg;
  cfg.t_max_schedule = a.schedule.empty() ? default_schedule(a.solver) : a.schedule;
  cfg.trials = a.trials;
  cfg.master_seed = a.seed;
  cfg.low_ps = a.low_ps;
  cfg.jobs = a.jobs > 0 ? a.jobs : std::max(1u, std::thread::hardware_concurrency());

  const std::vector<CampaignRow> rows = run_campaign(instances, cfg, make_solver(a));
  const std::vector<CampaignRow> finals = final_rows(rows);

  Sink sink{a.out, a.prefix, argv, a.seed};
  sink.config = a.dyn.json();
  sink.config["solver"] = a.solver;
  sink.config["schedule"] = cfg.t_max_schedule;
  sink.config["trials"] = a.trials;
  sink.config["low_ps"] = a.low_ps;

  ordered_json per_instance = ordered_json::array();
  std::vector<double> final_tts;
  std::map<int, std::vector<double>> tts_by_n;
  int successes = 0;
  for (const CampaignRow& r : finals) {
    per_instance.push_back(ordered_json{{"instance", r.instance},
                                        {"num_vars", r.num_vars},
                                        {"t_max", r.t_max},
                                        {"successes", r.successes},
                                        {"p_s", r.p_s},
                                        {"tts", r.tts}});
    final_tts.push_back(r.tts);
    tts_by_n[r.num_vars].push_back(r.tts);
    successes += r.successes;
  }

  ordered_json summary;
  summary["solver"] = a.solver;
  summary["instances"] = per_instance;
  if (!final_tts.empty()) {
    const Quartiles q = quartiles(final_tts);
    summary["tts_quartiles"] =
        ordered_json{{"min", q.min}, {"q1", q.q1},     {"median", q.median},
                     {"q3", q.q3},   {"max", q.max},   {"mean", q.mean}};
  }
  if (tts_by_n.size() >= 2) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [n, xs] : tts_by_n) pts.emplace_back(double(n), median_of(xs));
    for (const auto [model, name] :
         {std::pair{ScalingModel::exp_linear, "exp_linear"},
          std::pair{ScalingModel::exp_sqrt, "exp_sqrt"}}) {
      const ScalingFit fit = fit_exp_scaling(pts, model);
      summary["fit"][name] =
          ordered_json{{"a", fit.a}, {"b", fit.b}, {"rms_log", fit.rms}};
    }
  }

  sink.write_csv(campaign_csv(rows, a.solver).str());
  sink.write_summary(summary);
  sink.finish();
  for (const CampaignRow& r : finals)
    std::cout << r.instance << ": p_s=" << fmt_double(r.p_s)
              << " tts=" << fmt_double(r.tts) << " at t_max=" << fmt_double(r.t_max)
              << "\n";
  return successes > 0 ? kExitSolved : kExitNoSolution;
}

// ---------------------------------------------------------------------------
// anneal / walksat

struct AnnealArgs {
  std::string cnf;
  double max_temp = 1.0;
  double min_temp = 0.01;
  double decay_scale = 0.2;
  long max_steps = -1;
  int restarts = 1;
  bool init_all_true = false;
  std::uint64_t seed = 1;
  int trials = 1;
  std::string trace;
  std::string out = "out";
  std::string prefix = "anneal";
};

int cmd_anneal(const AnnealArgs& a, const std::vector<std::string>& argv) {
  const Instance inst = load_cnf(a.cnf);

  Sink sink{a.out, a.prefix, argv, a.seed};
  sink.config = ordered_json{{"cnf", a.cnf},
                             {"max_temp", a.max_temp},
                             {"min_temp", a.min_temp},
                             {"decay_scale", a.decay_scale},
                             {"max_steps", a.max_steps},
                             {"restarts", a.restarts},
                             {"init_all_true", a.init_all_true},
                             {"trials", a.trials}};

  Csv csv(
      "trial,seed,solved,steps,first_solution_step,initial_cost,cost_after_first_sweep,"
      "final_cost,restarts_used");
  std::optional<Csv> trace_csv;
  if (!a.trace.empty()) trace_csv.emplace("trial,step,cost,temperature");

  int hits = 0;
  for (int trial = 0; trial < a.trials; ++trial) {
    AnnealParams p;
    p.max_temp = a.max_temp;
    p.min_temp = a.min_temp;
    p.decay_scale = a.decay_scale;
    p.max_steps = a.max_steps;
    p.max_trials = a.restarts;
    p.init_all_true = a.init_all_true;
    p.seed = trial_seed(a.seed, inst.name, trial);
    if (trace_csv)
      p.trace = [&](long step, int cost, double temp) {
        trace_csv->field(trial).field(step).field(cost).field(temp);
        trace_csv->endrow();
      };
    const AnnealResult r = sasat_run(inst, p);
    if (r.first_solution_step >= 0) ++hits;
    csv.field(trial).field(p.seed).field(r.solved).field(r.steps);
    csv.field(r.first_solution_step).field(r.initial_cost).field(r.cost_after_first_sweep);
    csv.field(r.final_cost).field(r.trials_used);
    csv.endrow();
    std::cout << "trial " << trial << ": " << (r.solved ? "solved" : "unsolved")
              << " steps=" << r.steps << " final_cost=" << r.final_cost << "\n";
  }

  ordered_json summary;
  summary["instance"] = instance_json(inst);
  summary["trials"] = a.trials;
  summary["solved"] = hits;
  summary["schedule_sweeps"] = sasat_schedule_sweeps(inst.num_vars, AnnealParams{});

  sink.write_csv(csv.str());
  if (trace_csv) sink.write(a.trace, trace_csv->str());
  sink.write_summary(summary);
  sink.finish();
  return hits > 0 ? kExitSolved : kExitNoSolution;
}

struct WalksatArgs {
  std::string cnf;
  double noise = 0.5;
  long max_flips = 100000;
  std::uint64_t seed = 1;
  int trials = 1;
  std::string out = "out";
  std::string prefix = "walksat";
};

int cmd_walksat(const WalksatArgs& a, const std::vector<std::string>& argv) {
  const Instance inst = load_cnf(a.cnf);

  Sink sink{a.out, a.prefix, argv, a.seed};
  sink.config = ordered_json{{"cnf", a.cnf},
                             {"noise", a.noise},
                             {"max_flips", a.max_flips},
                             {"trials", a.trials}};

  Csv csv("trial,seed,solved,flips,final_cost");
  int hits = 0;
  for (int trial = 0; trial < a.trials; ++trial) {
    WalksatParams p;
    p.noise = a.noise;
    p.max_flips = a.max_flips;
    p.seed = trial_seed(a.seed, inst.name, trial);
    const WalksatResult r = walksat_run(inst, p);
    if (r.solved) ++hits;
    csv.field(trial).field(p.seed).field(r.solved).field(r.flips).field(r.final_cost);
    csv.endrow();
    std::cout << "trial " << trial << ": " << (r.solved ? "solved" : "unsolved")
              << " flips=" << r.flips << "\n";
  }

  ordered_json summary;
  summary["instance"] = instance_json(inst);
  summary["trials"] = a.trials;
  summary["solved"] = hits;

  sink.write_csv(csv.str());
  sink.write_summary(summary);
  sink.finish();
  return hits > 0 ? kExitSolved : kExitNoSolution;
}

// ---------------------------------------------------------------------------
// sweeps

struct SweepTauArgs {
  std::vector<std::string> cnfs;
  std::vector<double> grid{0.1, 0.25, 1.0, 4.0, 10.0};
  DynamicsFlags dyn;
  std::vector<double> schedule{10, 40, 160, 640};
  int trials = 100;
  std::uint64_t seed = 1;
  int jobs = 0;
  std::string out = "out";
  std::string prefix = "sweep_tau";
};

int cmd_sweep_tau(const SweepTauArgs& a, const std::vector<std::string>& argv) {
  const std::vector<Instance> instances = load_many(a.cnfs);

  CampaignConfig cfg;
  cfg.t_max_schedule = a.schedule;
  cfg.trials = a.trials;
  cfg.master_seed = a.seed;
  cfg.jobs = a.jobs > 0 ? a.jobs : std::max(1u, std::thread::hardware_concurrency());

  Csv csv("tau_lambda,instance,num_vars,num_clauses,t_max,trials,successes,p_s,tts");
  ordered_json per_tau = ordered_json::array();
  int successes = 0;
  for (double tau_lambda : a.grid) {
    DynamicsFlags dyn = a.dyn;
    dyn.tau_lambda = tau_lambda;
    std::vector<double> tts;
    for (const CampaignRow& r : final_rows(run_campaign(instances, cfg, oscillator_solver(dyn)))) {
      csv.field(tau_lambda).field(r.instance).field(r.num_vars).field(r.num_clauses);
      csv.field(r.t_max).field(r.trials).field(r.successes).field(r.p_s).field(r.tts);
      csv.endrow();
      tts.push_back(r.tts);
      successes += r.successes;
    }
    per_tau.push_back(
        ordered_json{{"tau_lambda", tau_lambda}, {"median_tts", median_of(tts)}});
    std::cout << "tau_lambda=" << fmt_double(tau_lambda)
              << ": median_tts=" << fmt_double(median_of(tts)) << "\n";
  }

  Sink sink{a.out, a.prefix, argv, a.seed};
  sink.config = a.dyn.json();
  sink.config["grid"] = a.grid;
  sink.config["schedule"] = a.schedule;
  sink.config["trials"] = a.trials;

  ordered_json summary;
  summary["grid"] = per_tau;
  double best = kInf;
  double best_tau = a.grid.empty() ? 0.0 : a.grid.front();
  for (const auto& row : per_tau)
    if (double(row["median_tts"]) < best) {
      best = row["median_tts"];
      best_tau = row["tau_lambda"];
    }
  summary["best_tau_lambda"] = best_tau;

  sink.write_csv(csv.str());
  sink.write_summary(summary);
  sink.finish();
  return successes > 0 ? kExitSolved : kExitNoSolution;
}

struct DiscretizeArgs {
  std::vector<std::string> cnfs;
  std::vector<int> levels{16, 32, 64, 128, 256, 512, 1024, 2048, 4096, 8192};
  bool skip_continuous = false;
  DynamicsFlags dyn;
  std::vector<double> schedule{10, 40, 160, 640};
  int trials = 100;
  std::uint64_t seed = 1;
  int jobs = 0;
  std::string out = "out";
  std::string prefix = "discretize";
};

int cmd_discretize(const DiscretizeArgs& a, const std::vector<std::string>& argv) {
  const std::vector<Instance> instances = load_many(a.cnfs);

  CampaignConfig cfg;
  cfg.t_max_schedule = a.schedule;
  cfg.trials = a.trials;
  cfg.master_seed = a.seed;
  cfg.jobs = a.jobs > 0 ? a.jobs : std::max(1u, std::thread::hardware_concurrency());

  std::vector<int> levels;
  if (!a.skip_continuous) levels.push_back(0);  // 0 = continuous reference
  levels.insert(levels.end(), a.levels.begin(), a.levels.end());

  Csv csv("n_states,instance,num_vars,num_clauses,t_max,trials,successes,p_s,tts");
  ordered_json per_level = ordered_json::array();
  int successes = 0;
  for (int n_states : levels) {
    DynamicsFlags dyn = a.dyn;
    dyn.nstates = n_states;
    std::vector<double> tts;
    for (const CampaignRow& r : final_rows(run_campaign(instances, cfg, oscillator_solver(dyn)))) {
      csv.field(n_states).field(r.instance).field(r.num_vars).field(r.num_clauses);
      csv.field(r.t_max).field(r.trials).field(r.successes).field(r.p_s).field(r.tts);
      csv.endrow();
      tts.push_back(r.tts);
      successes += r.successes;
    }
    per_level.push_back(
        ordered_json{{"n_states", n_states}, {"median_tts", median_of(tts)}});
    std::cout << "n_states=" << n_states << ": median_tts=" << fmt_double(median_of(tts))
              << "\n";
  }

  Sink sink{a.out, a.prefix, argv, a.seed};
  sink.config = a.dyn.json();
  sink.config["levels"] = a.levels;
  sink.config["skip_continuous"] = a.skip_continuous;
  sink.config["schedule"] = a.schedule;
  sink.config["trials"] = a.trials;

  ordered_json summary;
  summary["levels"] = per_level;
  sink.write_csv(csv.str());
  sink.write_summary(summary);
  sink.finish();
  return successes > 0 ? kExitSolved : kExitNoSolution;
}

// ---------------------------------------------------------------------------
// copy demo

struct CopyDemoArgs {
  std::string mode = "lagrange";
  double strength = 1.0;
  double jc = 0.5;
  double dt = 0.15;
  double tmax = 300.0;
  double tau = 1.0;
  double tau_lambda = 1.0;
  int seeds = 30;
  std::uint64_t seed0 = 1;
  std::string trace;
  std::string out = "out";
  std::string prefix = "copy_demo";
};

int cmd_copy_demo(const CopyDemoArgs& a, const std::vector<std::string>& argv) {
  Sink sink{a.out, a.prefix, argv, a.seed0};
  sink.config = ordered_json{{"mode", a.mode},     {"strength", a.strength},
                             {"jc", a.jc},         {"dt", a.dt},
                             {"tmax", a.tmax},     {"tau", a.tau},
                             {"tau_lambda", a.tau_lambda},
                             {"seeds", a.seeds},   {"seed0", a.seed0}};

  Csv csv("seed,mode,residual_01,residual_23,energy,steps,tight");
  std::optional<Csv> trace_csv;
  if (!a.trace.empty())
    trace_csv.emplace(
        "t,cos_phi_0,cos_phi_1,cos_phi_2,cos_phi_3,cos_phi_4,cos_phi_5,"
        "residual_01,residual_23");

  int tight = 0, loose = 0;
  for (int k = 0; k < a.seeds; ++k) {
    CopyDemoConfig cfg;
    cfg.mode = a.mode == "penalty" ? CopyMode::penalty : CopyMode::lagrange;
    cfg.strength = a.strength;
    cfg.jc = a.jc;
    cfg.dt = a.dt;
    cfg.t_max = a.tmax;
    cfg.tau = a.tau;
    cfg.tau_lambda = a.tau_lambda;
    cfg.seed = a.seed0 + std::uint64_t(k);
    std::function<void(const CopyDemoRow&)> ts;
    if (trace_csv && k == 0)
      ts = [&](const CopyDemoRow& row) {
        trace_csv->field(row.t);
        for (int i = 0; i < 6; ++i) trace_csv->field(std::cos(row.phi[i]));
        trace_csv->field(row.residual_01).field(row.residual_23);
        trace_csv->endrow();
      };
    const CopyDemoResult r = run_copy_demo(cfg, ts);
    const bool is_tight = r.residual_01 < 0.01 && r.residual_23 < 0.01;
    if (is_tight) ++tight;
    if (r.residual_01 > 0.05 || r.residual_23 > 0.05) ++loose;
    csv.field(cfg.seed).field(a.mode).field(r.residual_01).field(r.residual_23);
    csv.field(r.energy).field(r.steps).field(is_tight);
    csv.endrow();
    std::cout << "seed " << cfg.seed << ": residuals " << fmt_double(r.residual_01)
              << " " << fmt_double(r.residual_23) << " energy " << fmt_double(r.energy)
              << "\n";
  }

  ordered_json summary;
  summary["mode"] = a.mode;
  summary["seeds"] = a.seeds;
  summary["tight_runs"] = tight;       // both residuals < 0.01
  summary["loose_runs"] = loose;       // some residual > 0.05
  summary["tight_fraction"] = a.seeds ? double(tight) / a.seeds : 0.0;

  sink.write_csv(csv.str());
  if (trace_csv) sink.write(a.trace, trace_csv->str());
  sink.write_summary(summary);
  sink.finish();
  std::cout << tight << "/" << a.seeds << " runs with both residuals < 0.01, " << loose
            << "/" << a.seeds << " with a residual > 0.05\n";
  return kExitSolved;
}

// ---------------------------------------------------------------------------
// instance generation

struct GenArgs {
  int num_vars = 20;
  int num_clauses = 91;
  int count = 1;
  std::uint64_t seed = 1;
  std::string sat = "sat";  // any | sat | unsat
  long min_models = 0;
  std::string name_prefix;
  long cert_flips = 2'000'000;
  int cert_tries = 4;
  std::string out = "data";
  std::string prefix = "gen";
};

long count_models(const Instance& inst) {
  if (inst.num_vars > 26) fail(ErrorKind::InvalidParameter, "model count needs <= 26 variables");
  long models = 0;
  Assignment s(inst.num_vars);
  for (long mask = 0; mask < (1L << inst.num_vars); ++mask) {
    for (int v = 0; v < inst.num_vars; ++v) s[v] = (mask >> v) & 1 ? 1 : -1;
    if (evaluate(inst, s) == 0) ++models;
  }
  return models;
}

// Satisfiability filter: exhaustive up to 26 variables, otherwise a
// local-search certificate (which can only confirm, never refute).
bool gen_accept(const Instance& inst, const GenArgs& a, bool& verified_exact) {
  verified_exact = inst.num_vars <= 26;
  if (a.min_models > 0) return count_models(inst) >= a.min_models;
  if (a.sat == "any") return true;
  if (verified_exact) {
    const bool sat = find_satisfying_exhaustive(inst).has_value();
    return a.sat == "sat" ? sat : !sat;
  }
  if (a.sat == "unsat")
    fail(ErrorKind::InvalidParameter, "unsat filter needs <= 26 variables");
  for (int t = 0; t < a.cert_tries; ++t) {
    WalksatParams p;
    p.seed = trial_seed(0x9e3779b9, inst.name, t);
    p.max_flips = a.cert_flips;
    const WalksatResult r = walksat_run(inst, p);
    if (r.solved) {
      if (evaluate(inst, r.assignment) != 0)
        fail(ErrorKind::InvalidParameter, "certificate failed re-verification");
      return true;
    }
  }
  return false;
}

int cmd_gen(const GenArgs& a, const std::vector<std::string>& argv) {
  std::string name_prefix = a.name_prefix;
  if (name_prefix.empty()) {
    name_prefix = (a.sat == "unsat" ? "uuf" : "uf") + std::to_string(a.num_vars) + "-";
  }
  std::string family = name_prefix;
  while (!family.empty() && !std::isalnum((unsigned char)family.back())) family.pop_back();

  Sink sink{a.out, a.prefix + "_" + family, argv, a.seed};
  sink.config = ordered_json{{"num_vars", a.num_vars},   {"num_clauses", a.num_clauses},
                             {"count", a.count},         {"sat", a.sat},
                             {"min_models", a.min_models},
                             {"name_prefix", name_prefix}, {"cert_flips", a.cert_flips},
                             {"cert_tries", a.cert_tries}};

  Rng rng(a.seed);
  ordered_json files = ordered_json::array();
  int accepted = 0, attempts = 0;
  const int max_attempts = 400 * std::max(1, a.count);
  while (accepted < a.count && attempts < max_attempts) {
    ++attempts;
    char num[16];
    std::snprintf(num, sizeof num, "%02d", accepted + 1);
    Instance inst = random_instance(rng, a.num_vars, a.num_clauses, name_prefix + num);
    bool exact = false;
    if (!gen_accept(inst, a, exact)) continue;
    ++accepted;
    const std::string fname = inst.name + ".cnf";
    sink.write(fname, to_dimacs(inst));
    files.push_back(ordered_json{{"file", fname},
                                 {"name", inst.name},
                                 {"verified", exact ? "exhaustive" : "walksat"}});
    std::cout << fname << " (" << (exact ? "exhaustive" : "walksat") << ")\n";
  }
  if (accepted < a.count)
    fail(ErrorKind::InvalidParameter, "generation budget exhausted before count was met");

  ordered_json summary;
  summary["attempts"] = attempts;
  summary["accepted"] = accepted;
  summary["files"] = files;
  sink.write_summary(summary);
  sink.finish();
  return kExitSolved;
}

// ---------------------------------------------------------------------------
// replay

int cmd_replay(const std::string& manifest_path, std::string out_dir) {
  const ordered_json m = ordered_json::parse(read_file(manifest_path));
  if (!m.contains("argv") || !m["argv"].is_array())
    fail(ErrorKind::Io, "manifest has no argv array: " + manifest_path);
  std::vector<std::string> argv;
  for (const auto& s : m["argv"]) argv.push_back(s.get<std::string>());
  // divert outputs, keeping everything else identical
  std::vector<std::string> pruned;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    if (argv[i] == "--out") {
      ++i;  // drop flag and value
      continue;
    }
    pruned.push_back(argv[i]);
  }
  if (out_dir.empty()) out_dir = "replay_out";
  pruned.push_back("--out");
  pruned.push_back(out_dir);
  std::cout << "replaying:";
  for (const std::string& s : pruned) std::cout << " " << s;
  std::cout << "\n";
  return run_cli(pruned);
}

// ---------------------------------------------------------------------------
// wiring

void attach_out(CLI::App* cmd, std::string* out, std::string* prefix) {
  cmd->add_option("--out", *out, "output directory")->capture_default_str();
  cmd->add_option("--prefix", *prefix, "basename for output files")->capture_default_str();
}

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Lagrange oscillator network Max-3-SAT toolkit"};
  app.set_version_flag("--version", LAGONN_VERSION);
  app.require_subcommand(1);

  SolveArgs so;
  CLI::App* solve = app.add_subcommand("solve", "run oscillator trials on one instance");
  solve->add_option("cnf", so.cnf, "DIMACS CNF path")->required();
  so.dyn.attach(solve);
  solve->add_option("--tmax", so.tmax, "time budget per trial")->capture_default_str();
  solve->add_option("--seed", so.seed, "master seed")->capture_default_str();
  solve->add_option("--trials", so.trials, "number of seeded trials")->capture_default_str();
  solve->add_option("--trace", so.trace, "per-step trace CSV filename (in --out)");
  attach_out(solve, &so.out, &so.prefix);

  BenchArgs be;
  CLI::App* bench = app.add_subcommand("bench", "budget-ladder campaign over instances");
  bench->add_option("cnfs", be.cnfs, "DIMACS CNF paths")->required()->expected(-1);
  bench->add_option("--solver", be.solver, "lagonn, onn, sasat or walksat")
      ->check(CLI::IsMember({"lagonn", "onn", "sasat", "walksat"}))
      ->capture_default_str();
  be.dyn.attach(bench);
  bench->add_option("--tmax-schedule", be.schedule, "budget ladder (cycles, or steps/flips)")
      ->delimiter(',');
  bench->add_option("--trials", be.trials, "trials per instance")->capture_default_str();
  bench->add_option("--seed", be.seed, "master seed")->capture_default_str();
  bench->add_option("--low-ps", be.low_ps, "escalate while success rate stays at or below")
      ->capture_default_str();
  bench->add_option("--jobs", be.jobs, "worker threads (0 = all cores)");
  bench->add_option("--max-temp", be.max_temp, "sasat start temperature")->capture_default_str();
  bench->add_option("--min-temp", be.min_temp, "sasat end temperature")->capture_default_str();
  bench->add_option("--decay-scale", be.decay_scale, "sasat cooling scale")
      ->capture_default_str();
  bench->add_flag("--init-all-true", be.init_all_true, "sasat all-TRUE start");
  bench->add_option("--noise", be.noise, "walksat noise probability")->capture_default_str();
  attach_out(bench, &be.out, &be.prefix);

  AnnealArgs an;
  CLI::App* anneal = app.add_subcommand("anneal", "annealed sweeps on one instance");
  anneal->add_option("cnf", an.cnf, "DIMACS CNF path")->required();
  anneal->add_option("--max-temp", an.max_temp, "start temperature")->capture_default_str();
  anneal->add_option("--min-temp", an.min_temp, "end temperature")->capture_default_str();
  anneal->add_option("--decay-scale", an.decay_scale, "cooling scale")->capture_default_str();
  anneal->add_option("--max-steps", an.max_steps, "attempted-flip budget (-1 = full schedule)")
      ->capture_default_str();
  anneal->add_option("--restarts", an.restarts, "schedule restarts per trial")
      ->capture_default_str();
  anneal->add_flag("--init-all-true", an.init_all_true, "start from the all-TRUE assignment");
  anneal->add_option("--seed", an.seed, "master seed")->capture_default_str();
  anneal->add_option("--trials", an.trials, "number of seeded trials")->capture_default_str();
  anneal->add_option("--trace", an.trace, "step trace CSV filename (in --out)");
  attach_out(anneal, &an.out, &an.prefix);

  WalksatArgs wa;
  CLI::App* walksat = app.add_subcommand("walksat", "stochastic local search on one instance");
  walksat->add_option("cnf", wa.cnf, "DIMACS CNF path")->required();
  walksat->add_option("--noise", wa.noise, "noise probability")->capture_default_str();
  walksat->add_option("--max-flips", wa.max_flips, "flip budget")->capture_default_str();
  walksat->add_option("--seed", wa.seed, "master seed")->capture_default_str();
  walksat->add_option("--trials", wa.trials, "number of seeded trials")->capture_default_str();
  attach_out(walksat, &wa.out, &wa.prefix);

  SweepTauArgs st;
  CLI::App* sweep = app.add_subcommand("sweep-tau", "campaign per Lagrange time constant");
  sweep->add_option("cnfs", st.cnfs, "DIMACS CNF paths")->required()->expected(-1);
  sweep->add_option("--grid", st.grid, "tau_lambda values")->delimiter(',');
  st.dyn.attach(sweep);
  sweep->add_option("--tmax-schedule", st.schedule, "budget ladder in cycles")->delimiter(',');
  sweep->add_option("--trials", st.trials, "trials per instance")->capture_default_str();
  sweep->add_option("--seed", st.seed, "master seed")->capture_default_str();
  sweep->add_option("--jobs", st.jobs, "worker threads (0 = all cores)");
  attach_out(sweep, &st.out, &st.prefix);

  DiscretizeArgs di;
  CLI::App* disc = app.add_subcommand("discretize", "campaign per phase-quantization level");
  disc->add_option("cnfs", di.cnfs, "DIMACS CNF paths")->required()->expected(-1);
  disc->add_option("--levels", di.levels, "n_states values")->delimiter(',');
  disc->add_flag("--skip-continuous", di.skip_continuous, "omit the continuous reference");
  di.dyn.attach(disc);
  disc->add_option("--tmax-schedule", di.schedule, "budget ladder in cycles")->delimiter(',');
  disc->add_option("--trials", di.trials, "trials per instance")->capture_default_str();
  disc->add_option("--seed", di.seed, "master seed")->capture_default_str();
  disc->add_option("--jobs", di.jobs, "worker threads (0 = all cores)");
  attach_out(disc, &di.out, &di.prefix);

  CopyDemoArgs cd;
  CLI::App* copy = app.add_subcommand("copy-demo", "phase-copy constraint demo");
  copy->add_option("--mode", cd.mode, "penalty or lagrange")
      ->check(CLI::IsMember({"penalty", "lagrange"}))
      ->capture_default_str();
  copy->add_option("--strength", cd.strength, "Lagrange coupling")->capture_default_str();
  copy->add_option("--jc", cd.jc, "ferromagnetic copy coupling")->capture_default_str();
  copy->add_option("--dt", cd.dt, "integrator step")->capture_default_str();
  copy->add_option("--tmax", cd.tmax, "integration time")->capture_default_str();
  copy->add_option("--tau", cd.tau, "phase time constant")->capture_default_str();
  copy->add_option("--tau-lambda", cd.tau_lambda, "Lagrange time constant")
      ->capture_default_str();
  copy->add_option("--seeds", cd.seeds, "number of seeds in the census")->capture_default_str();
  copy->add_option("--seed", cd.seed0, "first seed")->capture_default_str();
  copy->add_option("--trace", cd.trace, "first-seed trace CSV filename (in --out)");
  attach_out(copy, &cd.out, &cd.prefix);

  GenArgs ge;
  CLI::App* gen = app.add_subcommand("gen", "generate random 3-SAT instances");
  gen->add_option("--num-vars", ge.num_vars, "variables per instance")->capture_default_str();
  gen->add_option("--num-clauses", ge.num_clauses, "clauses per instance")
      ->capture_default_str();
  gen->add_option("--count", ge.count, "instances to emit")->capture_default_str();
  gen->add_option("--seed", ge.seed, "generator seed")->capture_default_str();
  gen->add_option("--sat", ge.sat, "filter: any, sat or unsat")
      ->check(CLI::IsMember({"any", "sat", "unsat"}))
      ->capture_default_str();
  gen->add_option("--min-models", ge.min_models,
                  "require at least this many satisfying assignments (exhaustive)");
  gen->add_option("--name-prefix", ge.name_prefix, "instance name prefix (default ufN-/uufN-)");
  gen->add_option("--cert-flips", ge.cert_flips, "local-search certificate flip budget")
      ->capture_default_str();
  gen->add_option("--cert-tries", ge.cert_tries, "certificate attempts per candidate")
      ->capture_default_str();
  attach_out(gen, &ge.out, &ge.prefix);

  std::string replay_manifest, replay_out;
  CLI::App* replay = app.add_subcommand("replay", "re-run a command from its manifest");
  replay->add_option("manifest", replay_manifest, "path to a *_manifest.json")->required();
  replay->add_option("--out", replay_out, "output directory for the replayed run");

  std::vector<char*> argv;
  std::string argv0 = "lagonn";
  argv.push_back(argv0.data());
  std::vector<std::string> own(args);
  for (std::string& s : own) argv.push_back(s.data());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  if (solve->parsed()) return cmd_solve(so, args);
  if (bench->parsed()) return cmd_bench(be, args);
  if (anneal->parsed()) return cmd_anneal(an, args);
  if (walksat->parsed()) return cmd_walksat(wa, args);
  if (sweep->parsed()) return cmd_sweep_tau(st, args);
  if (disc->parsed()) return cmd_discretize(di, args);
  if (copy->parsed()) return cmd_copy_demo(cd, args);
  if (gen->parsed()) return cmd_gen(ge, args);
  if (replay->parsed()) return cmd_replay(replay_manifest, replay_out);
  return kExitInput;
}

} // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run_cli(args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind == ErrorKind::NonFiniteState ? kExitInternal : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
