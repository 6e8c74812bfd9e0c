#include "nuctrace/euclid/fio.hpp"

#include <chrono>
#include <cmath>

#include "nuctrace/numerics/fourier.hpp"
#include "nuctrace/numerics/norms.hpp"
#include "nuctrace/numerics/summation.hpp"

namespace nuctrace::euclid {

using numerics::ComplexCompensatedSum;

void require_desk_dimension(const UniformGrid& grid) {
  if (grid.dimension() == 0 || grid.dimension() > kMaxDimension) {
    throw DimensionError("Euclidean operators are limited to n <= " + std::to_string(kMaxDimension) +
                         ", got n = " + std::to_string(grid.dimension()));
  }
}

SampledField fio_apply(const PhaseSpec& phase, const EuclideanSymbol& a, const SampledField& f) {
  const UniformGrid& xg = a.row_grid();
  const UniformGrid& xig = a.col_grid();
  require_desk_dimension(xg);
  phase.require_compatible(xg, xig);
  const SampledField fh = numerics::dft_forward(f, a.col_grid_ptr());
  std::vector<cplx> out(xg.size());
  for (std::size_t i = 0; i < xg.size(); ++i) {
    ComplexCompensatedSum acc;
    for (std::size_t j = 0; j < xig.size(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{} || fh[j] == cplx{}) continue;
      acc.add(xig.weight(j) * unit_phase(phase.value(xg, i, xig, j)) * aij * fh[j]);
    }
    out[i] = acc.value();
  }
  return SampledField(a.row_grid_ptr(), std::move(out));
}

EuclideanSymbol symbol_from_decomposition(const PhaseSpec& phase, const nuclear::RankOneSequence& d,
                                          const GridPtr& xi_grid) {
  const GridPtr& xg = d.h_grid();
  require_desk_dimension(*xg);
  phase.require_compatible(*xg, *xi_grid);
  std::vector<SampledField> ginv;
  ginv.reserve(d.size());
  for (const auto& t : d.terms()) ginv.push_back(numerics::dft_inverse(t.g, xi_grid));
  std::vector<cplx> v(xg->size() * xi_grid->size());
  for (std::size_t i = 0; i < xg->size(); ++i) {
    for (std::size_t j = 0; j < xi_grid->size(); ++j) {
      ComplexCompensatedSum acc;
      for (std::size_t k = 0; k < d.size(); ++k) acc.add(d.terms()[k].h[i] * ginv[k][j]);
      v[i * xi_grid->size() + j] = unit_phase(-phase.value(*xg, i, *xi_grid, j)) * acc.value();
    }
  }
  return EuclideanSymbol(xg, xi_grid, std::move(v));
}

namespace {

std::vector<std::size_t> strides(const UniformGrid& g) {
  std::vector<std::size_t> s(g.dimension());
  std::size_t acc = 1;
  for (std::size_t d = g.dimension(); d-- > 0;) {
    s[d] = acc;
    acc *= g.axis(d).count;
  }
  return s;
}

}  // namespace

void check_phase_density(const PhaseSpec& phase, const UniformGrid& x_grid, const UniformGrid& xi_grid) {
  phase.require_compatible(x_grid, xi_grid);
  const double limit = kTwoPi / 8.0;
  const auto sx = strides(x_grid);
  const auto sxi = strides(xi_grid);
  std::vector<std::size_t> mx(x_grid.dimension());
  std::vector<std::size_t> mxi(xi_grid.dimension());
  auto fail = [&](std::size_t i, std::size_t j, double jump) {
    throw GridError("phase is under-resolved at x node " + std::to_string(i) + ", xi node " +
                    std::to_string(j) + ": reduced phase jumps by " + std::to_string(jump) +
                    " rad between neighbours (limit 2pi/8)");
  };
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    x_grid.multi_index(i, mx);
    for (std::size_t j = 0; j < xi_grid.size(); ++j) {
      xi_grid.multi_index(j, mxi);
      const double psi = phase.reduced(x_grid, i, xi_grid, j);
      for (std::size_t d = 0; d < x_grid.dimension(); ++d) {
        if (mx[d] + 1 < x_grid.axis(d).count) {
          const double jump = std::abs(phase.reduced(x_grid, i + sx[d], xi_grid, j) - psi);
          if (jump > limit) fail(i, j, jump);
        }
        if (mxi[d] + 1 < xi_grid.axis(d).count) {
          const double jump = std::abs(phase.reduced(x_grid, i, xi_grid, j + sxi[d]) - psi);
          if (jump > limit) fail(i, j, jump);
        }
      }
    }
  }
}

cplx nuclear_trace_euclid(const PhaseSpec& phase, const EuclideanSymbol& a) {
  const UniformGrid& xg = a.row_grid();
  const UniformGrid& xig = a.col_grid();
  require_desk_dimension(xg);
  check_phase_density(phase, xg, xig);
  ComplexCompensatedSum acc;
  for (std::size_t i = 0; i < xg.size(); ++i) {
    ComplexCompensatedSum row;
    for (std::size_t j = 0; j < xig.size(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{}) continue;
      row.add(xig.weight(j) * unit_phase(phase.reduced(xg, i, xig, j)) * aij);
    }
    acc.add(xg.weight(i) * row.value());
  }
  return acc.value();
}

MixedNorms decay_norms(const EuclideanSymbol& a, double p1, double p2) {
  if (p1 < 2.0) throw DomainError("decay_norms: p1 must be >= 2, got " + std::to_string(p1));
  if (p2 < 1.0) throw DomainError("decay_norms: p2 must be >= 1, got " + std::to_string(p2));
  MixedNorms m;
  m.x_first = numerics::mixed_norm(a, numerics::Variable::x, p2, p1);
  m.xi_first = numerics::mixed_norm(a, numerics::Variable::xi, p1, p2);
  return m;
}

double implied_r(double p) {
  if (p < 1.0) throw DomainError("implied_r: p must be >= 1, got " + std::to_string(p));
  const double inv = std::isinf(p) ? 0.0 : 1.0 / p;
  return 1.0 / (1.0 + std::abs(inv - 0.5));
}

nuclear::TraceReport lidskii_report(const PhaseSpec& phase, const nuclear::RankOneSequence& d, double p,
                                    const GridPtr& xi_grid) {
  const auto start = std::chrono::steady_clock::now();
  if (d.p1() < 2.0) throw DomainError("lidskii_report: p1 must be >= 2, got " + std::to_string(d.p1()));
  numerics::require_same_grid(*d.h_grid(), *d.g_grid(), "lidskii_report");
  nuclear::TraceReport rep;
  rep.setting = "euclid";
  rep.implied_r = implied_r(p);
  const EuclideanSymbol a = symbol_from_decomposition(phase, d, xi_grid);
  rep.nuclear_trace = nuclear_trace_euclid(phase, a);
  const auto m = nuclear::kernel_matrix(nuclear::kernel_from_decomposition(d));
  rep.matrix_trace = m.trace();
  rep.eigenvalues = numerics::dense_eigenvalues(m);
  rep.quasinorm_bound = nuclear::r_quasinorm_bound(d);
  const MixedNorms mn = decay_norms(a, d.p1(), d.p2());
  rep.mixed_norm_x_first = mn.x_first;
  rep.mixed_norm_xi_first = mn.xi_first;
  rep.update_discrepancies();
  rep.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace nuctrace::euclid
