#pragma once

#include <cmath>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "nuctrace/error.hpp"
#include "nuctrace/numerics/grid.hpp"
#include "nuctrace/numerics/types.hpp"

namespace nuctrace::numerics {

// Complex samples of a function, one per grid node. Immutable.
class SampledField {
 public:
  SampledField(GridPtr grid, std::vector<cplx> values);

  template <class F>
  static SampledField from_function(GridPtr grid, F&& f) {
    std::vector<cplx> v(grid->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = cplx(f(grid->node(i)));
    return SampledField(std::move(grid), std::move(v));
  }

  static SampledField zeros(GridPtr grid);

  const UniformGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::span<const cplx> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  cplx operator[](std::size_t i) const { return values_[i]; }

  SampledField scaled(cplx c) const;
  SampledField conj() const;

 private:
  GridPtr grid_;
  std::vector<cplx> values_;
};

// alpha*f + beta*g on a shared grid.
SampledField combine(cplx alpha, const SampledField& f, cplx beta, const SampledField& g);

// Pointwise sup |f - g|.
double max_abs_difference(const SampledField& f, const SampledField& g);

void require_same_grid(const UniformGrid& a, const UniformGrid& b, const char* what);

namespace detail {
template <class T>
bool finite_value(const T& v) {
  if constexpr (std::is_same_v<T, cplx>) {
    return is_finite(v);
  } else {
    return std::isfinite(v);
  }
}
}  // namespace detail

// Samples of a function on the product of two grids: values(i, j) with i a
// node of the row grid and j a node of the column grid, stored row-major.
// The Tag distinguishes symbols from kernels from phases at the type level.
template <class Tag, class T = cplx>
class ProductField {
 public:
  using value_type = T;

  ProductField(GridPtr rows, GridPtr cols, std::vector<T> values)
      : rows_(std::move(rows)), cols_(std::move(cols)), values_(std::move(values)) {
    if (!rows_ || !cols_) throw GridError("product field needs two grids");
    if (values_.size() != rows_->size() * cols_->size()) {
      throw ShapeError("product field: value count " + std::to_string(values_.size()) +
                       " does not match " + std::to_string(rows_->size()) + " x " +
                       std::to_string(cols_->size()) + " nodes");
    }
    for (const auto& v : values_) {
      if (!detail::finite_value(v)) throw NumericError("product field: non-finite value");
    }
  }

  template <class F>
  static ProductField from_function(GridPtr rows, GridPtr cols, F&& f) {
    std::vector<T> v(rows->size() * cols->size());
    for (std::size_t i = 0; i < rows->size(); ++i) {
      for (std::size_t j = 0; j < cols->size(); ++j) {
        v[i * cols->size() + j] = T(f(rows->node(i), cols->node(j)));
      }
    }
    return ProductField(std::move(rows), std::move(cols), std::move(v));
  }

  static ProductField zeros(GridPtr rows, GridPtr cols) {
    const std::size_t n = rows->size() * cols->size();
    return ProductField(std::move(rows), std::move(cols), std::vector<T>(n, T{}));
  }

  const UniformGrid& row_grid() const { return *rows_; }
  const UniformGrid& col_grid() const { return *cols_; }
  const GridPtr& row_grid_ptr() const { return rows_; }
  const GridPtr& col_grid_ptr() const { return cols_; }

  std::size_t rows() const { return rows_->size(); }
  std::size_t cols() const { return cols_->size(); }
  const T& operator()(std::size_t i, std::size_t j) const { return values_[i * cols_->size() + j]; }
  std::span<const T> values() const { return values_; }
  std::span<const T> row(std::size_t i) const {
    return {values_.data() + i * cols_->size(), cols_->size()};
  }

 private:
  GridPtr rows_;
  GridPtr cols_;
  std::vector<T> values_;
};

}  // namespace nuctrace::numerics
