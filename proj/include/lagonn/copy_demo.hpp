#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "lagonn/errors.hpp"

namespace lagonn {

struct XyEdge {
  int a = 0, b = 0;
  double j = 0.0;
};

// Planar XY model: E = -sum_edges J cos(phi_a - phi_b) - sum_i h_i cos(phi_i).
struct XyGraph {
  int num_nodes = 0;
  std::vector<XyEdge> edges;
  Eigen::VectorXd h;
};

double xy_energy(const XyGraph& g, const Eigen::VectorXd& phi);
Eigen::VectorXd xy_gradient(const XyGraph& g, const Eigen::VectorXd& phi);

// Phase-copy constraint between two nodes, carried by one Lagrange oscillator
// at angle lambda_phase. Adds strength * [cos(phi_a - lambda) - cos(phi_b - lambda)],
// the projection of e^{i phi_a} - e^{i phi_b} onto the oscillator's unit vector.
struct CopyConstraint {
  int a = 0, b = 0;
  double lambda_phase = 0.0;
  double strength = 1.0;
};

double copy_lagrange_value(const XyGraph& g, const std::vector<CopyConstraint>& cons,
                           const Eigen::VectorXd& phi);

struct CopyGradients {
  Eigen::VectorXd x;       // d/dphi, one entry per node
  Eigen::VectorXd lambda;  // d/dlambda, one entry per constraint
};

CopyGradients copy_lagrange_gradients(const XyGraph& g, const std::vector<CopyConstraint>& cons,
                                      const Eigen::VectorXd& phi);

// Six-oscillator antiferromagnet whose two node pairs (0,1) and (2,3), when
// forced equal, make the graph behave like a fully frustrated 4-clique.
XyGraph copy_demo_graph();

inline constexpr int kCopyPairs[2][2] = {{0, 1}, {2, 3}};

// penalty: ferromagnetic jc edges across each copy pair only.
// lagrange: keeps those jc edges and adds one Lagrange oscillator per pair;
// the weak penalty damps the pair mode, the oscillator closes the residual.
enum class CopyMode { penalty, lagrange };

struct CopyDemoConfig {
  CopyMode mode = CopyMode::lagrange;
  double strength = 1.0;  // Lagrange constraint weight (lagrange mode)
  double jc = 0.5;        // ferromagnetic copy coupling (both modes)
  double dt = 0.15;
  double t_max = 300.0;
  double tau = 1.0;
  double tau_lambda = 1.0;
  std::uint64_t seed = 1;
};

struct CopyDemoRow {
  double t = 0.0;
  Eigen::VectorXd phi;
  double residual_01 = 0.0;
  double residual_23 = 0.0;
};

struct CopyDemoResult {
  Eigen::VectorXd phi;         // six oscillator phases
  Eigen::VectorXd phi_lambda;  // two constraint phases (lagrange mode)
  double residual_01 = 0.0;    // |cos phi_0 - cos phi_1|
  double residual_23 = 0.0;
  double energy = 0.0;         // base-graph XY energy at the final state
  long steps = 0;
};

CopyDemoResult run_copy_demo(const CopyDemoConfig& cfg,
                             const std::function<void(const CopyDemoRow&)>& trace = {});

} // namespace lagonn
