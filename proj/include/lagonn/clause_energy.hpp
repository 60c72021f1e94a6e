#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "lagonn/cnf.hpp"

namespace lagonn {

using Complex = std::complex<double>;

// Eight interaction terms per clause, ordered
//   [const, XY, XZ, ZY, X, Y, Z, XYZ]
// where X, Y, Z are the canonical slots of normalize_clause (negated literals
// first). Each clause type has a fixed sign per term.
inline constexpr int kNumTerms = 8;

// kArgCoeff[k] holds the coefficients (cX, cY, cZ) of the phase argument of
// term k: arg_k = cX*phiX + cY*phiY + cZ*phiZ.
inline constexpr std::array<std::array<int, 3>, kNumTerms> kArgCoeff{{
    {0, 0, 0},
    {1, -1, 0},
    {1, 0, -1},
    {0, -1, 1},
    {1, 0, 0},
    {0, 1, 0},
    {0, 0, 1},
    {1, -1, 1},
}};

const std::array<double, kNumTerms>& clause_signs(int type_id);

// Spin-space clause energy: 0 when the clause is TRUE, 8 when FALSE.
int clause_h(int type_id, int sx, int sy, int sz);

// Complex relaxation of clause_h; equals clause_h at binary phases (0 or pi).
Complex clause_z(int type_id, double phi_x, double phi_y, double phi_z);

// Partial derivatives of clause_z with respect to (phi_x, phi_y, phi_z).
std::array<Complex, 3> clause_z_gradient(int type_id, double phi_x, double phi_y,
                                         double phi_z);

// Value and partials in one pass over the eight terms.
void clause_z_with_gradient(int type_id, double phi_x, double phi_y, double phi_z,
                            Complex& z, std::array<Complex, 3>& dz);

// phi_j = pi * (1 - s_j) / 2: spin +1 -> phase 0, spin -1 -> phase pi.
Eigen::VectorXd binary_phases(const Assignment& s);

// Nearest binary assignment: +1 where cos(phi) >= 0, else -1.
Assignment round_phases(const Eigen::VectorXd& phases);

} // namespace lagonn
