#pragma once

#include <Eigen/Dense>

#include "nuctrace/group/series.hpp"

namespace nuctrace::group {

// Irrep t_l of SU(2) with l = twoL / 2.
struct Su2Irrep {
  int twoL = 0;
  explicit Su2Irrep(int two_l);
  std::size_t dim() const { return static_cast<std::size_t>(twoL + 1); }
};

// z-y-z Euler angles: alpha in [0, 2pi), beta in [0, pi], gamma in [0, 4pi).
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

// Condon-Shortley Wigner matrix D^l_{m'm} = e^{-i m' alpha} d^l_{m'm}(beta) e^{-i m gamma}.
// Row and column index k corresponds to m = l - k.
Eigen::MatrixXcd wigner_matrix(Su2Irrep rep, EulerAngles e);

// The defining representation: wigner_matrix(Su2Irrep(1), e).
Eigen::Matrix2cd su2_element(EulerAngles e);

// Euler angles of an SU(2) matrix, in the ranges above.
EulerAngles euler_from_su2(const Eigen::Matrix2cd& u);

// A = [[x1 + i x2, x3 + i x4], [-x3 + i x4, x1 - i x2]] for a unit vector x.
Eigen::Matrix2cd su2_from_s3(double x1, double x2, double x3, double x4);

// Euler product rule: periodic trapezoid in alpha (R nodes) and gamma (2R
// nodes), Gauss-Legendre in beta (R nodes) with density sin(beta).
QuadPtr su2_euler_quadrature(std::size_t resolution = 16);

// The 3-sphere chart (t, nu, s), nu = sin(t/2) u, measure sin(t/2) dt dnu ds.
// Gauss-Legendre in t on [0, 2pi] and in u on [-1, 1], periodic trapezoid in
// s. raw_mass() is the unnormalized total mass (4 pi^2).
QuadPtr s3_quadrature(std::size_t resolution);

// Group element at a node of an SU(2) or S^3 quadrature.
Eigen::Matrix2cd su2_node(const GroupQuadrature& q, std::size_t node);
EulerAngles su2_node_angles(const GroupQuadrature& q, std::size_t node);

inline constexpr int kDefaultMaxTwoL = 6;

// Table of t_l for twoL = 0 .. max_twoL. Cutoffs above l = 3 are refused
// unless max_allowed is raised.
TablePtr su2_table(QuadPtr quad, int max_twoL, int max_allowed = kDefaultMaxTwoL);

// Number of table irreps with 2l <= twoL.
std::size_t su2_limit(int twoL);

// f^(l) = sum_x w f(x) t_l(x)^*
Eigen::MatrixXcd su2_fourier(const GroupQuadrature& q, std::span<const cplx> f, Su2Irrep rep);

// Cutoff L is given as twoL (L = twoL / 2).
NodeFunction group_fio_apply(const GroupSymbol& sym, int cutoff_twoL, const NodeFunction& f);
GroupSymbol group_symbol_from_decomposition(const MatrixField& phase, const GroupRankOneSequence& d);
cplx group_nuclear_trace(const GroupSymbol& sym, int cutoff_twoL);
numerics::DenseComplexMatrix group_matrix(const GroupSymbol& sym, int cutoff_twoL);

}  // namespace nuctrace::group
