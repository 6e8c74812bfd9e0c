#include "nuctrace/numerics/field.hpp"

#include <algorithm>
#include <cmath>

namespace nuctrace::numerics {

SampledField::SampledField(GridPtr grid, std::vector<cplx> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw GridError("sampled field needs a grid");
  if (values_.size() != grid_->size()) {
    throw ShapeError("sampled field: " + std::to_string(values_.size()) + " values for " +
                     std::to_string(grid_->size()) + " nodes");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!is_finite(values_[i])) {
      throw NumericError("sampled field: non-finite value at node " + std::to_string(i));
    }
  }
}

SampledField SampledField::zeros(GridPtr grid) {
  const std::size_t n = grid->size();
  return SampledField(std::move(grid), std::vector<cplx>(n, cplx{}));
}

SampledField SampledField::scaled(cplx c) const {
  std::vector<cplx> v(values_.size());
  std::transform(values_.begin(), values_.end(), v.begin(), [c](cplx z) { return c * z; });
  return SampledField(grid_, std::move(v));
}

SampledField SampledField::conj() const {
  std::vector<cplx> v(values_.size());
  std::transform(values_.begin(), values_.end(), v.begin(), [](cplx z) { return std::conj(z); });
  return SampledField(grid_, std::move(v));
}

void require_same_grid(const UniformGrid& a, const UniformGrid& b, const char* what) {
  if (a.dimension() != b.dimension()) {
    throw DimensionError(std::string(what) + ": grid dimensions " + std::to_string(a.dimension()) +
                         " and " + std::to_string(b.dimension()) + " differ");
  }
  if (!(a == b)) throw GridError(std::string(what) + ": grids differ");
}

SampledField combine(cplx alpha, const SampledField& f, cplx beta, const SampledField& g) {
  require_same_grid(f.grid(), g.grid(), "combine");
  std::vector<cplx> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = alpha * f[i] + beta * g[i];
  return SampledField(f.grid_ptr(), std::move(v));
}

double max_abs_difference(const SampledField& f, const SampledField& g) {
  if (f.size() != g.size()) throw ShapeError("max_abs_difference: sizes differ");
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - g[i]));
  return m;
}

}  // namespace nuctrace::numerics
