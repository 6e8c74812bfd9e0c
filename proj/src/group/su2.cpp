#include "nuctrace/group/su2.hpp"

#include <cmath>

#include "nuctrace/numerics/summation.hpp"

namespace nuctrace::group {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double small_d(int twoL, int r, int c, double beta) {
  const double cb = std::cos(0.5 * beta);
  const double sb = std::sin(0.5 * beta);
  const double root = std::sqrt(factorial(twoL - r) * factorial(r) * factorial(twoL - c) * factorial(c));
  double sum = 0.0;
  const int lo = std::max(0, r - c);
  const int hi = std::min(twoL - c, r);
  for (int s = lo; s <= hi; ++s) {
    const double sign = ((c - r + s) % 2 == 0) ? 1.0 : -1.0;
    const double den = factorial(twoL - c - s) * factorial(s) * factorial(c - r + s) * factorial(r - s);
    sum += sign * std::pow(cb, twoL + r - c - 2 * s) * std::pow(sb, c - r + 2 * s) / den;
  }
  return root * sum;
}

double wrap(double x, double period) {
  double y = std::fmod(x, period);
  if (y < 0.0) y += period;
  if (y >= period) y -= period;
  return y;
}

}  // namespace

Su2Irrep::Su2Irrep(int two_l) : twoL(two_l) {
  if (two_l < 0) throw DomainError("SU(2) irrep label twoL must be >= 0, got " + std::to_string(two_l));
}

Eigen::MatrixXcd wigner_matrix(Su2Irrep rep, EulerAngles e) {
  const int n = rep.twoL + 1;
  Eigen::MatrixXcd m(n, n);
  for (int r = 0; r < n; ++r) {
    const double mp = 0.5 * rep.twoL - r;
    for (int c = 0; c < n; ++c) {
      const double mm = 0.5 * rep.twoL - c;
      m(r, c) = unit_phase(-mp * e.alpha - mm * e.gamma) * small_d(rep.twoL, r, c, e.beta);
    }
  }
  return m;
}

Eigen::Matrix2cd su2_element(EulerAngles e) { return wigner_matrix(Su2Irrep(1), e); }

EulerAngles euler_from_su2(const Eigen::Matrix2cd& u) {
  const cplx a = u(0, 0);
  const cplx c = u(1, 0);
  EulerAngles e;
  e.beta = 2.0 * std::atan2(std::abs(c), std::abs(a));
  const double sum = std::abs(a) > 1e-14 ? -2.0 * std::arg(a) : 0.0;
  const double diff = std::abs(c) > 1e-14 ? 2.0 * std::arg(c) : 0.0;
  e.alpha = wrap(0.5 * (sum + diff), kTwoPi);
  e.gamma = wrap(0.5 * (sum - diff), 2.0 * kTwoPi);
  // alpha and gamma are fixed up to a joint shift that flips the overall sign
  const Eigen::Matrix2cd back = su2_element(e);
  if ((back + u).norm() < (back - u).norm()) e.gamma = wrap(e.gamma + kTwoPi, 2.0 * kTwoPi);
  return e;
}

Eigen::Matrix2cd su2_from_s3(double x1, double x2, double x3, double x4) {
  Eigen::Matrix2cd a;
  a << cplx(x1, x2), cplx(x3, x4), cplx(-x3, x4), cplx(x1, -x2);
  return a;
}

QuadPtr su2_euler_quadrature(std::size_t resolution) {
  if (resolution < 2) throw DomainError("su2_euler_quadrature: resolution must be >= 2");
  auto beta = numerics::gauss_legendre(resolution, 0.0, kPi);
  for (std::size_t i = 0; i < resolution; ++i) beta.weights[i] *= std::sin(beta.nodes[i]);
  std::vector<QuadratureRule> axes{numerics::periodic_trapezoid(resolution, 0.0, kTwoPi), beta,
                                   numerics::periodic_trapezoid(2 * resolution, 0.0, 2.0 * kTwoPi)};
  return std::make_shared<const GroupQuadrature>(Chart::su2_euler, std::move(axes));
}

QuadPtr s3_quadrature(std::size_t resolution) {
  if (resolution < 8) throw DomainError("s3_quadrature: resolution must be >= 8, got " + std::to_string(resolution));
  auto t = numerics::gauss_legendre(resolution, 0.0, kTwoPi);
  for (std::size_t i = 0; i < resolution; ++i) {
    const double s = std::sin(0.5 * t.nodes[i]);
    t.weights[i] *= s * s;
  }
  std::vector<QuadratureRule> axes{t, numerics::gauss_legendre(resolution, -1.0, 1.0),
                                   numerics::periodic_trapezoid(resolution, 0.0, kTwoPi)};
  return std::make_shared<const GroupQuadrature>(Chart::s3, std::move(axes));
}

Eigen::Matrix2cd su2_node(const GroupQuadrature& q, std::size_t node) {
  double p[3];
  switch (q.chart()) {
    case Chart::su2_euler:
      q.parameters(node, p);
      return su2_element({p[0], p[1], p[2]});
    case Chart::s3: {
      q.parameters(node, p);
      const double st = std::sin(0.5 * p[0]);
      const double rho = st * std::sqrt(std::max(0.0, 1.0 - p[1] * p[1]));
      return su2_from_s3(std::cos(0.5 * p[0]), st * p[1], rho * std::cos(p[2]), rho * std::sin(p[2]));
    }
    default:
      throw GridError("quadrature does not parametrize SU(2)");
  }
}

EulerAngles su2_node_angles(const GroupQuadrature& q, std::size_t node) {
  if (q.chart() == Chart::su2_euler) {
    double p[3];
    q.parameters(node, p);
    return {p[0], p[1], p[2]};
  }
  return euler_from_su2(su2_node(q, node));
}

TablePtr su2_table(QuadPtr quad, int max_twoL, int max_allowed) {
  if (max_twoL < 0) throw DomainError("su2_table: cutoff must be >= 0");
  if (max_twoL > max_allowed) {
    throw DomainError("su2_table: cutoff l = " + std::to_string(max_twoL / 2.0) + " exceeds the limit l = " +
                      std::to_string(max_allowed / 2.0));
  }
  std::vector<IrrepInfo> irreps;
  for (int k = 0; k <= max_twoL; ++k) {
    irreps.push_back({k % 2 == 0 ? std::to_string(k / 2) : std::to_string(k) + "/2", static_cast<std::size_t>(k + 1)});
  }
  std::vector<EulerAngles> angles(quad->size());
  for (std::size_t x = 0; x < quad->size(); ++x) angles[x] = su2_node_angles(*quad, x);
  return std::make_shared<const RepresentationTable>(
      quad, std::move(irreps),
      [&](std::size_t p, std::size_t x) { return wigner_matrix(Su2Irrep(static_cast<int>(p)), angles[x]); });
}

std::size_t su2_limit(int twoL) {
  if (twoL < 0) throw DomainError("cutoff must be >= 0");
  return static_cast<std::size_t>(twoL) + 1;
}

Eigen::MatrixXcd su2_fourier(const GroupQuadrature& q, std::span<const cplx> f, Su2Irrep rep) {
  if (f.size() != q.size()) throw ShapeError("su2_fourier: function does not match the quadrature");
  const auto d = static_cast<Eigen::Index>(rep.dim());
  std::vector<numerics::ComplexCompensatedSum> acc(static_cast<std::size_t>(d * d));
  for (std::size_t x = 0; x < q.size(); ++x) {
    if (f[x] == cplx{}) continue;
    const Eigen::MatrixXcd m = wigner_matrix(rep, su2_node_angles(q, x));
    const cplx c = q.weight(x) * f[x];
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) acc[static_cast<std::size_t>(i * d + j)].add(c * std::conj(m(j, i)));
    }
  }
  Eigen::MatrixXcd out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) out(i, j) = acc[static_cast<std::size_t>(i * d + j)].value();
  }
  return out;
}

NodeFunction group_fio_apply(const GroupSymbol& sym, int cutoff_twoL, const NodeFunction& f) {
  return series_fio_apply(sym, f, su2_limit(cutoff_twoL));
}

GroupSymbol group_symbol_from_decomposition(const MatrixField& phase, const GroupRankOneSequence& d) {
  return GroupSymbol(phase, series_symbol_from_decomposition(phase, d));
}

cplx group_nuclear_trace(const GroupSymbol& sym, int cutoff_twoL) {
  return series_nuclear_trace(sym, su2_limit(cutoff_twoL));
}

numerics::DenseComplexMatrix group_matrix(const GroupSymbol& sym, int cutoff_twoL) {
  return series_matrix(sym, su2_limit(cutoff_twoL));
}

}  // namespace nuctrace::group
