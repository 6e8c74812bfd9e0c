#pragma once

#include <cmath>
#include <limits>
#include <span>

#include "nuctrace/numerics/field.hpp"
#include "nuctrace/numerics/summation.hpp"

namespace nuctrace::numerics {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// 1/p + 1/p' = 1, with 1' = infinity.
double conjugate_exponent(double p);

// (sum_i w_i |f_i|^p)^{1/p}; p must be in [1, infinity).
double lp_norm(const SampledField& f, double p);

double sup_norm(const SampledField& f);

// lp_norm for finite p, sup_norm for p = infinity.
double lp_or_sup_norm(const SampledField& f, double p);

// Weighted p-norm of raw samples; the building block of the iterated norms.
double weighted_lp(std::span<const cplx> values, std::span<const double> weights, double p);

enum class Variable { x, xi };

// Iterated norm of a function sampled on a product grid: the p_inner norm
// over inner_var at every node of the other variable, then the p_outer norm
// of the resulting function. Variable::x is the row grid.
template <class Tag>
double mixed_norm(const ProductField<Tag>& a, Variable inner_var, double p_inner, double p_outer) {
  if (p_inner < 1.0 || p_outer < 1.0) {
    throw DomainError("mixed_norm: exponents must be >= 1");
  }
  const std::size_t nr = a.rows();
  const std::size_t nc = a.cols();
  const auto rw = a.row_grid().weights();
  const auto cw = a.col_grid().weights();
  std::vector<cplx> inner;
  if (inner_var == Variable::x) {
    inner.resize(nc);
    std::vector<cplx> column(nr);
    for (std::size_t j = 0; j < nc; ++j) {
      for (std::size_t i = 0; i < nr; ++i) column[i] = a(i, j);
      inner[j] = weighted_lp(column, rw, p_inner);
    }
    return weighted_lp(inner, cw, p_outer);
  }
  inner.resize(nr);
  for (std::size_t i = 0; i < nr; ++i) inner[i] = weighted_lp(a.row(i), cw, p_inner);
  return weighted_lp(inner, rw, p_outer);
}

// ||F f||_{p'} / ||f||_p with F the quadrature Fourier transform onto
// xi_grid; 1 < p <= 2.
double hausdorff_young_ratio(const SampledField& f, double p, const GridPtr& xi_grid);
// Same, transforming onto f's own grid.
double hausdorff_young_ratio(const SampledField& f, double p);

}  // namespace nuctrace::numerics
