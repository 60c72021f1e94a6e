#include "lagonn/lagrange.hpp"

#include <cmath>
#include <utility>

namespace lagonn {

void SystemConfig::validate() const {
  if (!(tau > 0) || !(tau_lambda > 0)) fail(ErrorKind::InvalidParameter, "time constants must be positive");
  if (!(beta > 0)) fail(ErrorKind::InvalidParameter, "beta must be positive");
  if (shil_k_max < 0 || shil_ramp_time < 0 || shil_start_time < 0)
    fail(ErrorKind::InvalidParameter, "negative injection-locking parameter");
  if (std::isnan(lagrange_freeze_time) || lagrange_freeze_time < 0)
    fail(ErrorKind::InvalidParameter, "invalid freeze time");
}

CompiledInstance::CompiledInstance(Instance inst) : inst_(std::move(inst)) {
  compiled_.reserve(inst_.clauses.size());
  clauses_of_var_.resize(inst_.num_vars);
  for (int m = 0; m < inst_.num_clauses(); ++m) {
    const Clause& c = inst_.clauses[m];
    const CanonicalClause cc = normalize_clause(c);
    CompiledClause out;
    out.type_id = cc.type_id;
    for (int j = 0; j < 3; ++j) {
      out.vars[j] = c.lits[cc.perm[j]].var;
      out.neg_sign[j] = j < cc.type_id - 1 ? 1.0 : -1.0;
    }
    compiled_.push_back(out);
    for (int j = 0; j < 3; ++j) clauses_of_var_[out.vars[j]].push_back(m);
  }
}

void CompiledInstance::check_state(const PhaseState& ps) const {
  if (ps.phi_x.size() != num_vars() || ps.phi_lambda.size() != num_clauses())
    fail(ErrorKind::DimensionMismatch,
         "state has " + std::to_string(ps.phi_x.size()) + "+" +
             std::to_string(ps.phi_lambda.size()) + " phases, instance needs " +
             std::to_string(num_vars()) + "+" + std::to_string(num_clauses()));
  if (!ps.phi_x.allFinite() || !ps.phi_lambda.allFinite() || !std::isfinite(ps.t))
    fail(ErrorKind::NonFiniteState, "non-finite phase state");
}

double lagrange_total(const CompiledInstance& ci, const PhaseState& ps) {
  ci.check_state(ps);
  double total = 0;
  const auto& cls = ci.clauses();
  for (int m = 0; m < ci.num_clauses(); ++m) {
    const CompiledClause& c = cls[m];
    const Complex z = clause_z(c.type_id, ps.phi_x[c.vars[0]], ps.phi_x[c.vars[1]],
                               ps.phi_x[c.vars[2]]);
    total += std::cos(ps.phi_lambda[m]) * z.real() + std::sin(ps.phi_lambda[m]) * z.imag();
  }
  return total;
}

Gradients lagrange_gradients(const CompiledInstance& ci, const PhaseState& ps) {
  ci.check_state(ps);
  Gradients g;
  g.x = Eigen::VectorXd::Zero(ci.num_vars());
  g.lambda = Eigen::VectorXd::Zero(ci.num_clauses());
  const auto& cls = ci.clauses();
  Complex z;
  std::array<Complex, 3> dz;
  for (int m = 0; m < ci.num_clauses(); ++m) {
    const CompiledClause& c = cls[m];
    clause_z_with_gradient(c.type_id, ps.phi_x[c.vars[0]], ps.phi_x[c.vars[1]],
                           ps.phi_x[c.vars[2]], z, dz);
    const double cl = std::cos(ps.phi_lambda[m]);
    const double sl = std::sin(ps.phi_lambda[m]);
    // u'_lambda . Z with u'_lambda = (-sin, cos)
    g.lambda[m] = -sl * z.real() + cl * z.imag();
    for (int j = 0; j < 3; ++j)
      g.x[c.vars[j]] += cl * dz[j].real() + sl * dz[j].imag();
  }
  return g;
}

double onn_energy(const CompiledInstance& ci, const Eigen::VectorXd& phi_x) {
  PhaseState ps{phi_x, Eigen::VectorXd::Zero(ci.num_clauses()), 0.0};
  return lagrange_total(ci, ps);
}

Eigen::VectorXd onn_gradient(const CompiledInstance& ci, const Eigen::VectorXd& phi_x) {
  PhaseState ps{phi_x, Eigen::VectorXd::Zero(ci.num_clauses()), 0.0};
  return lagrange_gradients(ci, ps).x;
}

double shil_amplitude(const SystemConfig& cfg, double t) {
  if (cfg.shil_k_max <= 0 || t < cfg.shil_start_time) return 0.0;
  if (cfg.shil_ramp_time <= 0) return cfg.shil_k_max;
  const double frac = (t - cfg.shil_start_time) / cfg.shil_ramp_time;
  return cfg.shil_k_max * std::min(1.0, frac);
}

Eigen::VectorXd shil_gradient(const Eigen::VectorXd& phi_x, double k_amp) {
  return 2.0 * k_amp * (2.0 * phi_x.array()).sin();
}

double cost_kappa(const CompiledInstance& ci, const Eigen::VectorXd& phi_x, double beta) {
  if (phi_x.size() != ci.num_vars())
    fail(ErrorKind::DimensionMismatch, "phase vector length mismatch");
  if (!phi_x.allFinite()) fail(ErrorKind::NonFiniteState, "non-finite phase state");
  if (!(beta > 0)) fail(ErrorKind::InvalidParameter, "beta must be positive");
  double kappa = 0;
  for (const CompiledClause& c : ci.clauses()) {
    double prod = 1;
    for (int j = 0; j < 3; ++j)
      prod *= 0.5 * (1.0 + c.neg_sign[j] * std::tanh(beta * std::cos(phi_x[c.vars[j]])));
    kappa += prod;
  }
  return kappa;
}

} // namespace lagonn
