#include "nuctrace/homog/su3.hpp"

#include <cmath>

#include "nuctrace/error.hpp"
#include "nuctrace/numerics/types.hpp"

namespace nuctrace::homog {

long long su3_dim(long long a, long long b) {
  if (a < 0 || b < 0) throw DomainError("su3_dim: labels must be >= 0");
  return (a + 1) * (b + 1) * (a + b + 2) / 2;
}

Eigen::Matrix3cd su3_fundamental(const Su3Angles& g) {
  for (int i = 0; i < 3; ++i) {
    if (!(g[i] >= 0.0 && g[i] <= 0.5 * kPi)) {
      throw DomainError("su3_fundamental: theta" + std::to_string(i + 1) + " must lie in [0, pi/2]");
    }
  }
  for (int i = 3; i < 8; ++i) {
    if (!(g[i] >= 0.0 && g[i] <= kTwoPi)) {
      throw DomainError("su3_fundamental: phi" + std::to_string(i - 2) + " must lie in [0, 2pi]");
    }
  }
  const double s1 = std::sin(g[0]), c1 = std::cos(g[0]);
  const double s2 = std::sin(g[1]), c2 = std::cos(g[1]);
  const double s3 = std::sin(g[2]), c3 = std::cos(g[2]);
  const double p1 = g[3], p2 = g[4], p3 = g[5], p4 = g[6], p5 = g[7];
  Eigen::Matrix3cd u;
  u(0, 0) = c1 * c2 * unit_phase(p1);
  u(0, 1) = s1 * unit_phase(p3);
  u(0, 2) = c1 * s2 * unit_phase(p4);
  u(1, 0) = s2 * s3 * unit_phase(-p4 - p5) - s1 * c2 * c3 * unit_phase(p1 + p2 - p3);
  u(1, 1) = c1 * c3 * unit_phase(p2);
  u(1, 2) = -c2 * s3 * unit_phase(-p1 - p5) - s1 * s2 * c3 * unit_phase(p2 - p3 + p4);
  u(2, 0) = -s1 * c2 * s3 * unit_phase(p1 - p3 + p5) - s2 * c3 * unit_phase(-p2 - p4);
  u(2, 1) = c1 * s3 * unit_phase(p5);
  u(2, 2) = c2 * c3 * unit_phase(-p1 - p2) - s1 * s2 * s3 * unit_phase(-p3 + p4 + p5);
  return u;
}

group::QuadPtr su3_haar_quadrature(std::size_t resolution, std::size_t phi_resolution) {
  if (resolution < 8) throw DomainError("su3_haar_quadrature: resolution must be >= 8, got " + std::to_string(resolution));
  if (phi_resolution < 3) {
    throw DomainError("su3_haar_quadrature: phi_resolution must be >= 3, got " + std::to_string(phi_resolution));
  }
  std::vector<group::QuadratureRule> axes;
  for (int i = 0; i < 3; ++i) {
    auto r = numerics::gauss_legendre(resolution, 0.0, 0.5 * kPi);
    for (std::size_t k = 0; k < resolution; ++k) {
      const double s = std::sin(r.nodes[k]);
      const double c = std::cos(r.nodes[k]);
      r.weights[k] *= i == 0 ? s * c * c * c : s * c;
    }
    axes.push_back(std::move(r));
  }
  for (int i = 0; i < 5; ++i) axes.push_back(numerics::periodic_trapezoid(phi_resolution, 0.0, kTwoPi));
  const double factor = 1.0 / (2.0 * std::pow(kPi, 5));
  return std::make_shared<const group::GroupQuadrature>(group::Chart::su3, std::move(axes), factor);
}

Eigen::Matrix3cd su3_node(const group::GroupQuadrature& q, std::size_t node) {
  if (q.chart() != group::Chart::su3) throw GridError("quadrature does not parametrize SU(3)");
  Su3Angles a;
  q.parameters(node, a);
  return su3_fundamental(a);
}

}  // namespace nuctrace::homog
