#include "lagonn/clause_energy.hpp"

#include <cmath>
#include <numbers>

namespace lagonn {

namespace {

constexpr std::array<std::array<double, kNumTerms>, 4> kSigns{{
    // [const, XY, XZ, ZY, X, Y, Z, XYZ]
    {+1, +1, +1, +1, -1, -1, -1, -1},  // x | y | z
    {+1, -1, -1, +1, +1, -1, -1, +1},  // ~x | y | z
    {+1, +1, -1, -1, +1, +1, -1, -1},  // ~x | ~y | z
    {+1, +1, +1, +1, +1, +1, +1, +1},  // ~x | ~y | ~z
}};

const std::array<double, kNumTerms>& signs_checked(int type_id) {
  if (type_id < 1 || type_id > 4)
    fail(ErrorKind::InvalidTypeId, "clause type " + std::to_string(type_id));
  return kSigns[type_id - 1];
}

void check_finite(double phi_x, double phi_y, double phi_z) {
  if (!std::isfinite(phi_x) || !std::isfinite(phi_y) || !std::isfinite(phi_z))
    fail(ErrorKind::NonFiniteState, "non-finite phase");
}

} // namespace

const std::array<double, kNumTerms>& clause_signs(int type_id) { return signs_checked(type_id); }

int clause_h(int type_id, int sx, int sy, int sz) {
  const auto& s = signs_checked(type_id);
  const std::array<int, kNumTerms> prod{1,  sx * sy, sx * sz, sz * sy,
                                        sx, sy,      sz,      sx * sy * sz};
  double h = 0;
  for (int k = 0; k < kNumTerms; ++k) h += s[k] * prod[k];
  return static_cast<int>(h);
}

Complex clause_z(int type_id, double phi_x, double phi_y, double phi_z) {
  const auto& s = signs_checked(type_id);
  check_finite(phi_x, phi_y, phi_z);
  const std::array<double, 3> phi{phi_x, phi_y, phi_z};
  Complex z = 0;
  for (int k = 0; k < kNumTerms; ++k) {
    double arg = 0;
    for (int j = 0; j < 3; ++j) arg += kArgCoeff[k][j] * phi[j];
    z += s[k] * Complex{std::cos(arg), std::sin(arg)};
  }
  return z;
}

std::array<Complex, 3> clause_z_gradient(int type_id, double phi_x, double phi_y,
                                         double phi_z) {
  const auto& s = signs_checked(type_id);
  check_finite(phi_x, phi_y, phi_z);
  const std::array<double, 3> phi{phi_x, phi_y, phi_z};
  std::array<Complex, 3> dz{Complex{0}, Complex{0}, Complex{0}};
  for (int k = 0; k < kNumTerms; ++k) {
    double arg = 0;
    for (int j = 0; j < 3; ++j) arg += kArgCoeff[k][j] * phi[j];
    // d/dphi_j of s_k e^{i arg_k} = s_k * c_kj * i e^{i arg_k}
    const Complex ie{-std::sin(arg), std::cos(arg)};
    for (int j = 0; j < 3; ++j)
      if (int c = kArgCoeff[k][j]; c != 0) dz[j] += s[k] * double(c) * ie;
  }
  return dz;
}

void clause_z_with_gradient(int type_id, double phi_x, double phi_y, double phi_z,
                            Complex& z, std::array<Complex, 3>& dz) {
  const auto& s = signs_checked(type_id);
  check_finite(phi_x, phi_y, phi_z);
  const std::array<double, 3> phi{phi_x, phi_y, phi_z};
  z = 0;
  dz = {Complex{0}, Complex{0}, Complex{0}};
  for (int k = 0; k < kNumTerms; ++k) {
    double arg = 0;
    for (int j = 0; j < 3; ++j) arg += kArgCoeff[k][j] * phi[j];
    const Complex e{std::cos(arg), std::sin(arg)};
    const Complex ie{-e.imag(), e.real()};
    z += s[k] * e;
    for (int j = 0; j < 3; ++j)
      if (int c = kArgCoeff[k][j]; c != 0) dz[j] += s[k] * double(c) * ie;
  }
}

Eigen::VectorXd binary_phases(const Assignment& s) {
  Eigen::VectorXd phi(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] != 1 && s[i] != -1)
      fail(ErrorKind::InvalidParameter, "spins must be +1 or -1");
    phi[i] = s[i] > 0 ? 0.0 : std::numbers::pi;
  }
  return phi;
}

Assignment round_phases(const Eigen::VectorXd& phases) {
  Assignment s(phases.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    if (!std::isfinite(phases[i])) fail(ErrorKind::NonFiniteState, "non-finite phase");
    s[i] = std::cos(phases[i]) >= 0 ? 1 : -1;
  }
  return s;
}

} // namespace lagonn
