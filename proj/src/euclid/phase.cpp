#include "nuctrace/euclid/phase.hpp"

#include <cmath>

namespace nuctrace::euclid {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) s += a[d] * b[d];
  return s;
}

}  // namespace

PhaseSpec PhaseSpec::linear(std::vector<double> shift, double offset) {
  if (!std::isfinite(offset)) throw NumericError("phase offset must be finite");
  for (const double s : shift) {
    if (!std::isfinite(s)) throw NumericError("phase shift must be finite");
  }
  PhaseSpec p;
  p.kind_ = Kind::linear;
  p.shift_ = std::move(shift);
  p.offset_ = offset;
  return p;
}

PhaseSpec PhaseSpec::sampled(SampledPhase values) {
  PhaseSpec p;
  p.kind_ = Kind::sampled;
  p.values_ = std::make_shared<const SampledPhase>(std::move(values));
  return p;
}

void PhaseSpec::require_compatible(const UniformGrid& x_grid, const UniformGrid& xi_grid) const {
  if (x_grid.dimension() != xi_grid.dimension()) {
    throw DimensionError("phase: x and xi grids have different dimensions");
  }
  if (kind_ == Kind::linear) {
    if (!shift_.empty() && shift_.size() != x_grid.dimension()) {
      throw DimensionError("phase: shift has " + std::to_string(shift_.size()) +
                           " components for a " + std::to_string(x_grid.dimension()) + "-D grid");
    }
    return;
  }
  numerics::require_same_grid(values_->row_grid(), x_grid, "sampled phase (x)");
  numerics::require_same_grid(values_->col_grid(), xi_grid, "sampled phase (xi)");
}

double PhaseSpec::value(const UniformGrid& x_grid, std::size_t i, const UniformGrid& xi_grid, std::size_t j) const {
  if (kind_ == Kind::sampled) return (*values_)(i, j);
  const auto x = x_grid.node(i);
  const auto xi = xi_grid.node(j);
  double s = dot(x, xi);
  if (!shift_.empty()) s += dot(shift_, xi);
  return kTwoPi * s + offset_;
}

double PhaseSpec::reduced(const UniformGrid& x_grid, std::size_t i, const UniformGrid& xi_grid, std::size_t j) const {
  const auto xi = xi_grid.node(j);
  if (kind_ == Kind::sampled) return (*values_)(i, j) - kTwoPi * dot(x_grid.node(i), xi);
  const double s = shift_.empty() ? 0.0 : dot(shift_, xi);
  return kTwoPi * s + offset_;
}

}  // namespace nuctrace::euclid
