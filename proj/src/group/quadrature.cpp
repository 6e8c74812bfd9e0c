#include "nuctrace/group/quadrature.hpp"

#include <cmath>

#include "nuctrace/error.hpp"
#include "nuctrace/numerics/summation.hpp"

namespace nuctrace::group {

GroupQuadrature::GroupQuadrature(Chart chart, std::vector<QuadratureRule> axes, double factor)
    : chart_(chart), axes_(std::move(axes)) {
  if (axes_.empty()) throw DimensionError("group quadrature needs at least one axis");
  std::size_t total = 1;
  strides_.resize(axes_.size());
  for (std::size_t d = axes_.size(); d-- > 0;) {
    const auto& a = axes_[d];
    if (a.nodes.empty() || a.nodes.size() != a.weights.size()) {
      throw ShapeError("group quadrature axis " + std::to_string(d) + " is malformed");
    }
    strides_[d] = total;
    total *= a.nodes.size();
  }
  weights_.assign(total, factor);
  std::vector<std::size_t> multi(axes_.size());
  numerics::CompensatedSum mass;
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rest = i;
    double w = factor;
    for (std::size_t d = 0; d < axes_.size(); ++d) {
      const std::size_t k = rest / strides_[d];
      rest %= strides_[d];
      w *= axes_[d].weights[k];
    }
    weights_[i] = w;
    mass.add(w);
  }
  raw_mass_ = mass.value();
  if (!(raw_mass_ > 0.0) || !std::isfinite(raw_mass_)) throw InvariantError("group quadrature has no mass");
  for (double& w : weights_) w /= raw_mass_;
}

void GroupQuadrature::parameters(std::size_t node, std::span<double> out) const {
  std::size_t rest = node;
  for (std::size_t d = 0; d < axes_.size(); ++d) {
    const std::size_t k = rest / strides_[d];
    rest %= strides_[d];
    out[d] = axes_[d].nodes[k];
  }
}

std::vector<double> GroupQuadrature::parameters(std::size_t node) const {
  std::vector<double> p(axes_.size());
  parameters(node, p);
  return p;
}

bool GroupQuadrature::operator==(const GroupQuadrature& other) const {
  if (this == &other) return true;
  if (chart_ != other.chart_ || axes_.size() != other.axes_.size()) return false;
  for (std::size_t d = 0; d < axes_.size(); ++d) {
    if (axes_[d].nodes != other.axes_[d].nodes || axes_[d].weights != other.axes_[d].weights) return false;
  }
  return raw_mass_ == other.raw_mass_;
}

QuadPtr torus_quadrature(std::size_t n, std::size_t count) {
  std::vector<QuadratureRule> axes(n, numerics::periodic_trapezoid(count, 0.0, 1.0));
  return std::make_shared<const GroupQuadrature>(Chart::torus, std::move(axes));
}

}  // namespace nuctrace::group
