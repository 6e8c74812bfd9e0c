#include "nuctrace/nuclear/rank_one.hpp"

#include <cmath>

#include "nuctrace/numerics/norms.hpp"
#include "nuctrace/numerics/summation.hpp"

namespace nuctrace::nuclear {

using numerics::ComplexCompensatedSum;
using numerics::CompensatedSum;

RankOneSequence::RankOneSequence(GridPtr h_grid, GridPtr g_grid, std::vector<RankOneTerm> terms, Exponents e)
    : h_grid_(std::move(h_grid)), g_grid_(std::move(g_grid)), terms_(std::move(terms)), exp_(e) {
  if (!h_grid_ || !g_grid_) throw GridError("decomposition needs its grids");
  if (!(exp_.r > 0.0 && exp_.r <= 1.0)) {
    throw DomainError("decomposition order r must lie in (0, 1], got " + std::to_string(exp_.r));
  }
  if (exp_.p1 < 1.0 || exp_.p2 < 1.0) throw DomainError("decomposition exponents must be >= 1");
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (!(terms_[k].h.grid() == *h_grid_)) {
      throw GridError("term " + std::to_string(k) + ": h lives on a different grid");
    }
    if (!(terms_[k].g.grid() == *g_grid_)) {
      throw GridError("term " + std::to_string(k) + ": g lives on a different grid");
    }
  }
}

RankOneSequence::RankOneSequence(GridPtr grid, std::vector<RankOneTerm> terms, Exponents e)
    : RankOneSequence(grid, grid, std::move(terms), e) {}

double r_quasinorm_bound(const RankOneSequence& d) {
  const double q = numerics::conjugate_exponent(d.p1());
  CompensatedSum acc;
  for (const auto& t : d.terms()) {
    const double prod = numerics::lp_or_sup_norm(t.g, q) * numerics::lp_norm(t.h, d.p2());
    acc.add(std::pow(prod, d.r()));
  }
  return std::pow(acc.value(), 1.0 / d.r());
}

double term_norm_sum(const RankOneSequence& d) {
  const double q = numerics::conjugate_exponent(d.p1());
  CompensatedSum acc;
  for (const auto& t : d.terms()) {
    acc.add(numerics::lp_norm(t.h, d.p2()) * numerics::lp_or_sup_norm(t.g, q));
  }
  return acc.value();
}

SampledKernel kernel_from_decomposition(const RankOneSequence& d, KernelOptions options) {
  const std::size_t nx = d.h_grid()->size();
  const std::size_t ny = d.g_grid()->size();
  if (nx > options.max_nodes || ny > options.max_nodes) {
    throw GridError("kernel_from_decomposition: grids of " + std::to_string(nx) + " and " +
                    std::to_string(ny) + " nodes exceed the dense cap of " +
                    std::to_string(options.max_nodes));
  }
  std::vector<cplx> v(nx * ny);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      ComplexCompensatedSum acc;
      for (const auto& t : d.terms()) acc.add(t.h[i] * t.g[j]);
      v[i * ny + j] = acc.value();
    }
  }
  return SampledKernel(d.h_grid(), d.g_grid(), std::move(v));
}

cplx delgado_trace(const RankOneSequence& d) {
  numerics::require_same_grid(*d.h_grid(), *d.g_grid(), "delgado_trace");
  const auto& grid = *d.h_grid();
  ComplexCompensatedSum acc;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ComplexCompensatedSum local;
    for (const auto& t : d.terms()) local.add(t.g[i] * t.h[i]);
    acc.add(grid.weight(i) * local.value());
  }
  return acc.value();
}

SampledField apply_kernel(const SampledKernel& k, const SampledField& f) {
  numerics::require_same_grid(k.col_grid(), f.grid(), "apply_kernel");
  const auto w = k.col_grid().weights();
  std::vector<cplx> out(k.rows());
  for (std::size_t i = 0; i < k.rows(); ++i) {
    ComplexCompensatedSum acc;
    const auto row = k.row(i);
    for (std::size_t j = 0; j < k.cols(); ++j) acc.add(w[j] * row[j] * f[j]);
    out[i] = acc.value();
  }
  return SampledField(k.row_grid_ptr(), std::move(out));
}

numerics::DenseComplexMatrix kernel_matrix(const SampledKernel& k) {
  const auto w = k.col_grid().weights();
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(k.rows()), static_cast<Eigen::Index>(k.cols()));
  for (std::size_t i = 0; i < k.rows(); ++i) {
    for (std::size_t j = 0; j < k.cols(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w[j] * k(i, j);
    }
  }
  return numerics::DenseComplexMatrix(std::move(m));
}

}  // namespace nuctrace::nuclear
