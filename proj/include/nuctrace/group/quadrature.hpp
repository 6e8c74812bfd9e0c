#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "nuctrace/numerics/gauss_legendre.hpp"

namespace nuctrace::group {

using numerics::QuadratureRule;

// How the parameters of a node map to a group element.
//   su2_euler - (alpha, beta, gamma), z-y-z Euler angles
//   s3        - (t, u, s) with nu = sin(t/2) u in the 3-sphere chart
//   su3       - (theta1, theta2, theta3, phi1..phi5)
//   torus     - x in [0,1)^n
enum class Chart { su2_euler, s3, su3, torus };

// Tensor product of one-dimensional rules on a parameter box. Measure
// densities are folded into the axis weights; the product of the axis sums
// times the constant factor is the raw mass, and weight(i) is normalized so
// the weights sum to 1.
class GroupQuadrature {
 public:
  GroupQuadrature(Chart chart, std::vector<QuadratureRule> axes, double factor = 1.0);

  Chart chart() const { return chart_; }
  std::size_t size() const { return weights_.size(); }
  std::size_t parameter_count() const { return axes_.size(); }
  const QuadratureRule& axis(std::size_t d) const { return axes_[d]; }

  void parameters(std::size_t node, std::span<double> out) const;
  std::vector<double> parameters(std::size_t node) const;

  double weight(std::size_t node) const { return weights_[node]; }
  std::span<const double> weights() const { return weights_; }
  double raw_mass() const { return raw_mass_; }

  bool operator==(const GroupQuadrature& other) const;

 private:
  Chart chart_;
  std::vector<QuadratureRule> axes_;
  std::vector<std::size_t> strides_;
  std::vector<double> weights_;
  double raw_mass_ = 0.0;
};

using QuadPtr = std::shared_ptr<const GroupQuadrature>;

// Periodic grid on [0,1)^n with equal weights.
QuadPtr torus_quadrature(std::size_t n, std::size_t count);

}  // namespace nuctrace::group
