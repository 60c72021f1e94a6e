#include "lagonn/copy_demo.hpp"

#include <cmath>

#include "lagonn/ode.hpp"
#include "lagonn/rng.hpp"

namespace lagonn {

double xy_energy(const XyGraph& g, const Eigen::VectorXd& phi) {
  if (phi.size() != g.num_nodes) fail(ErrorKind::DimensionMismatch, "phase vector length");
  double e = 0;
  for (const XyEdge& ed : g.edges) e -= ed.j * std::cos(phi[ed.a] - phi[ed.b]);
  if (g.h.size()) e -= (g.h.array() * phi.array().cos()).sum();
  return e;
}

Eigen::VectorXd xy_gradient(const XyGraph& g, const Eigen::VectorXd& phi) {
  if (phi.size() != g.num_nodes) fail(ErrorKind::DimensionMismatch, "phase vector length");
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(g.num_nodes);
  for (const XyEdge& ed : g.edges) {
    const double s = ed.j * std::sin(phi[ed.a] - phi[ed.b]);
    grad[ed.a] += s;
    grad[ed.b] -= s;
  }
  if (g.h.size()) grad += (g.h.array() * phi.array().sin()).matrix();
  return grad;
}

namespace {

void check_constraints(const XyGraph& g, const std::vector<CopyConstraint>& cons,
                       const Eigen::VectorXd& phi) {
  if (phi.size() != g.num_nodes) fail(ErrorKind::DimensionMismatch, "phase vector length");
  for (const CopyConstraint& c : cons) {
    if (c.a == c.b) fail(ErrorKind::InvalidParameter, "copy constraint needs distinct nodes");
    if (c.a < 0 || c.a >= g.num_nodes || c.b < 0 || c.b >= g.num_nodes)
      fail(ErrorKind::IndexOutOfRange, "copy constraint node");
  }
}

} // namespace

double copy_lagrange_value(const XyGraph& g, const std::vector<CopyConstraint>& cons,
                           const Eigen::VectorXd& phi) {
  check_constraints(g, cons, phi);
  double v = xy_energy(g, phi);
  for (const CopyConstraint& c : cons)
    v += c.strength * (std::cos(phi[c.a] - c.lambda_phase) - std::cos(phi[c.b] - c.lambda_phase));
  return v;
}

CopyGradients copy_lagrange_gradients(const XyGraph& g, const std::vector<CopyConstraint>& cons,
                                      const Eigen::VectorXd& phi) {
  check_constraints(g, cons, phi);
  CopyGradients grad;
  grad.x = xy_gradient(g, phi);
  grad.lambda = Eigen::VectorXd::Zero((Eigen::Index)cons.size());
  for (std::size_t k = 0; k < cons.size(); ++k) {
    const CopyConstraint& c = cons[k];
    const double sa = std::sin(phi[c.a] - c.lambda_phase);
    const double sb = std::sin(phi[c.b] - c.lambda_phase);
    grad.x[c.a] -= c.strength * sa;
    grad.x[c.b] += c.strength * sb;
    grad.lambda[(Eigen::Index)k] = c.strength * (sa - sb);
  }
  return grad;
}

XyGraph copy_demo_graph() {
  XyGraph g;
  g.num_nodes = 6;
  g.edges = {
      {0, 2, -1.0}, {0, 4, -1.0}, {1, 5, -1.0},
      {2, 4, -1.0}, {3, 5, -1.0}, {4, 5, -1.0},
  };
  g.h = Eigen::VectorXd::Zero(6);
  return g;
}

CopyDemoResult run_copy_demo(const CopyDemoConfig& cfg,
                             const std::function<void(const CopyDemoRow&)>& trace) {
  if (!(cfg.dt > 0) || !(cfg.t_max > 0) || !(cfg.tau > 0) || !(cfg.tau_lambda > 0))
    fail(ErrorKind::InvalidParameter, "bad copy-demo timing parameter");
  if (cfg.strength < 0 || cfg.jc < 0) fail(ErrorKind::InvalidParameter, "negative coupling");

  XyGraph graph = copy_demo_graph();
  for (const auto& pair : kCopyPairs) graph.edges.push_back({pair[0], pair[1], cfg.jc});
  const bool lag = cfg.mode == CopyMode::lagrange;

  const int n = graph.num_nodes;
  const int nlam = lag ? 2 : 0;

  Rng rng(cfg.seed);
  Eigen::VectorXd y(n + nlam);
  for (int i = 0; i < n + nlam; ++i) y[i] = rng.angle();

  // State layout: six oscillator phases, then the constraint phases when the
  // copy terms run through Lagrange oscillators. Descent on phases, ascent on
  // the constraint phases.
  const auto f = [&](double, const Eigen::VectorXd& s) {
    std::vector<CopyConstraint> cons;
    for (int c = 0; c < nlam; ++c)
      cons.push_back({kCopyPairs[c][0], kCopyPairs[c][1], s[n + c], cfg.strength});
    const CopyGradients g = copy_lagrange_gradients(graph, cons, s.head(n));
    Eigen::VectorXd d(s.size());
    d.head(n) = -g.x / cfg.tau;
    d.tail(nlam) = g.lambda / cfg.tau_lambda;
    return d;
  };

  CopyDemoResult res;
  double t = 0;
  while (t < cfg.t_max - cfg.dt / 2) {
    const OdeStep step = fehlberg_step(f, t, y, cfg.dt);
    y = step.y;
    t += cfg.dt;
    ++res.steps;
    if (trace) {
      CopyDemoRow row;
      row.t = t;
      row.phi = y.head(n);
      row.residual_01 = std::abs(std::cos(y[0]) - std::cos(y[1]));
      row.residual_23 = std::abs(std::cos(y[2]) - std::cos(y[3]));
      trace(row);
    }
  }

  res.phi = y.head(n);
  res.phi_lambda = y.tail(nlam);
  res.residual_01 = std::abs(std::cos(y[0]) - std::cos(y[1]));
  res.residual_23 = std::abs(std::cos(y[2]) - std::cos(y[3]));
  res.energy = xy_energy(copy_demo_graph(), res.phi);
  return res;
}

} // namespace lagonn
