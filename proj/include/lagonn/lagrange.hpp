#pragma once

#include <Eigen/Dense>
#include <limits>
#include <vector>

#include "lagonn/clause_energy.hpp"
#include "lagonn/cnf.hpp"

namespace lagonn {

enum class Mode { lagonn, onn_only };

struct SystemConfig {
  double tau = 1.0;
  double tau_lambda = 1.0;
  double beta = 20.0;
  double shil_k_max = 0.0;
  double shil_ramp_time = 0.0;
  double shil_start_time = 0.0;
  double lagrange_freeze_time = std::numeric_limits<double>::infinity();

  void validate() const;
};

// Variable phases, one Lagrange phase per clause, and the current time.
struct PhaseState {
  Eigen::VectorXd phi_x;
  Eigen::VectorXd phi_lambda;
  double t = 0.0;
};

struct CompiledClause {
  int type_id = 1;
  std::array<int, 3> vars{};         // variable index per canonical slot
  std::array<double, 3> neg_sign{};  // +1 if the canonical slot is negated, else -1
};

// Per-clause canonical form and adjacency, built once per instance.
class CompiledInstance {
 public:
  explicit CompiledInstance(Instance inst);

  const Instance& instance() const { return inst_; }
  int num_vars() const { return inst_.num_vars; }
  int num_clauses() const { return inst_.num_clauses(); }
  const std::vector<CompiledClause>& clauses() const { return compiled_; }
  const std::vector<std::vector<int>>& clauses_of_var() const { return clauses_of_var_; }

  void check_state(const PhaseState& ps) const;

 private:
  Instance inst_;
  std::vector<CompiledClause> compiled_;
  std::vector<std::vector<int>> clauses_of_var_;
};

struct Gradients {
  Eigen::VectorXd x;       // d L / d phi_x
  Eigen::VectorXd lambda;  // d L / d phi_lambda
};

// L = sum_m u_lambda^m . Z_m with u_lambda = (cos, sin) of the clause phase.
double lagrange_total(const CompiledInstance& ci, const PhaseState& ps);
Gradients lagrange_gradients(const CompiledInstance& ci, const PhaseState& ps);

// Plain oscillator network objective sum_m Re Z_m and its gradient; identical
// to the Lagrange route with every clause phase at zero.
double onn_energy(const CompiledInstance& ci, const Eigen::VectorXd& phi_x);
Eigen::VectorXd onn_gradient(const CompiledInstance& ci, const Eigen::VectorXd& phi_x);

// Second-harmonic injection locking. The amplitude ramps linearly from zero
// over shil_ramp_time starting at shil_start_time, capped at shil_k_max.
// The gradient is of V = -K sum_j cos(2 phi_j), i.e. 2 K sin(2 phi_j).
double shil_amplitude(const SystemConfig& cfg, double t);
Eigen::VectorXd shil_gradient(const Eigen::VectorXd& phi_x, double k_amp);

// Smooth unsatisfaction measure: per clause the product of
// 0.5 * (1 + s_j * tanh(beta * cos(phi_j))) over its literals, with s_j = +1
// for a negated literal and -1 otherwise. A value below 0.125 certifies that
// rounding the phases yields a satisfying assignment.
double cost_kappa(const CompiledInstance& ci, const Eigen::VectorXd& phi_x, double beta);

} // namespace lagonn
