#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "lagonn/cnf.hpp"
#include "lagonn/rng.hpp"

namespace testutil {

inline std::string data_path(const std::string& rel) {
  return std::string(LAGONN_DATA_DIR) + "/" + rel;
}

inline lagonn::Instance load_data(const std::string& rel) {
  return lagonn::load_dimacs_file(data_path(rel));
}

// Central difference gradient of a scalar function of a vector.
inline Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                   const Eigen::VectorXd& x, double h = 1e-5) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd hi = x, lo = x;
    hi[i] += h;
    lo[i] -= h;
    g[i] = (f(hi) - f(lo)) / (2 * h);
  }
  return g;
}

inline Eigen::VectorXd random_phases(lagonn::Rng& rng, int n) {
  Eigen::VectorXd phi(n);
  for (int i = 0; i < n; ++i) phi[i] = rng.angle();
  return phi;
}

inline lagonn::Assignment random_spins(lagonn::Rng& rng, int n) {
  lagonn::Assignment s(n);
  for (int i = 0; i < n; ++i) s[i] = rng.spin();
  return s;
}

} // namespace testutil
