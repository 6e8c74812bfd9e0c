#include "nuctrace/lattice/lattice.hpp"

#include "nuctrace/numerics/fourier.hpp"
#include "nuctrace/numerics/norms.hpp"
#include "nuctrace/numerics/summation.hpp"

namespace nuctrace::lattice {

using numerics::AxisKind;
using numerics::ComplexCompensatedSum;

namespace {

void require_window(const UniformGrid& g) {
  for (const auto& a : g.axes()) {
    if (a.kind != AxisKind::counting) throw GridError("lattice: expected a window of Z^n");
  }
}

void require_torus(const UniformGrid& g) {
  for (const auto& a : g.axes()) {
    if (a.kind != AxisKind::periodic || a.lo != 0.0 || a.hi != 1.0) {
      throw GridError("lattice: the xi-grid must be a periodic grid on [0,1)^n");
    }
  }
}

void require_pair(const PhaseSpec& phi, const UniformGrid& w, const UniformGrid& xi) {
  require_window(w);
  require_torus(xi);
  phi.require_compatible(w, xi);
}

}  // namespace

GridPtr window(std::size_t n, int radius) {
  if (radius < 0) throw DomainError("lattice window radius must be >= 0");
  return numerics::make_grid(UniformGrid::lattice(n, radius));
}

GridPtr xi_grid_for(std::size_t n, int radius) {
  if (radius < 0) throw DomainError("lattice window radius must be >= 0");
  return numerics::make_grid(UniformGrid::torus(n, 2 * static_cast<std::size_t>(2 * radius + 1)));
}

SampledField lattice_dft(const LatticeSequence& f, const GridPtr& xi_grid) {
  require_window(f.grid());
  return numerics::dft_forward(f, xi_grid);
}

LatticeSequence lattice_fio_apply(const PhaseSpec& phi, const LatticeSymbol& a, const LatticeSequence& f) {
  const UniformGrid& w = a.row_grid();
  const UniformGrid& xi = a.col_grid();
  require_pair(phi, w, xi);
  require_window(f.grid());
  numerics::require_same_grid(f.grid(), w, "lattice_fio_apply");
  const SampledField fh = numerics::dft_forward(f, a.col_grid_ptr());
  std::vector<cplx> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    ComplexCompensatedSum acc;
    for (std::size_t j = 0; j < xi.size(); ++j) {
      if (a(i, j) == cplx{}) continue;
      acc.add(xi.weight(j) * unit_phase(phi.value(w, i, xi, j)) * a(i, j) * fh[j]);
    }
    out[i] = acc.value();
  }
  return SampledField(a.row_grid_ptr(), std::move(out));
}

LatticeSymbol lattice_symbol_from_decomposition(const PhaseSpec& phi, const nuclear::RankOneSequence& d,
                                                const GridPtr& xi_grid) {
  const GridPtr& w = d.h_grid();
  require_pair(phi, *w, *xi_grid);
  numerics::require_same_grid(*w, *d.g_grid(), "lattice_symbol_from_decomposition");
  std::vector<SampledField> gm;
  // (F g)(-xi) = sum_m e^{+2 pi i m.xi} g(m)
  for (const auto& t : d.terms()) gm.push_back(numerics::dft_inverse(t.g, xi_grid));
  const std::size_t nxi = xi_grid->size();
  std::vector<cplx> v(w->size() * nxi);
  for (std::size_t i = 0; i < w->size(); ++i) {
    for (std::size_t j = 0; j < nxi; ++j) {
      ComplexCompensatedSum acc;
      for (std::size_t k = 0; k < d.size(); ++k) acc.add(d.terms()[k].h[i] * gm[k][j]);
      v[i * nxi + j] = unit_phase(-phi.value(*w, i, *xi_grid, j)) * acc.value();
    }
  }
  return LatticeSymbol(w, xi_grid, std::move(v));
}

cplx lattice_nuclear_trace(const PhaseSpec& phi, const LatticeSymbol& a) {
  const UniformGrid& w = a.row_grid();
  const UniformGrid& xi = a.col_grid();
  require_pair(phi, w, xi);
  ComplexCompensatedSum acc;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < xi.size(); ++j) {
      if (a(i, j) == cplx{}) continue;
      acc.add(xi.weight(j) * unit_phase(phi.reduced(w, i, xi, j)) * a(i, j));
    }
  }
  return acc.value();
}

numerics::DenseComplexMatrix lattice_matrix(const PhaseSpec& phi, const LatticeSymbol& a) {
  const UniformGrid& w = a.row_grid();
  const UniformGrid& xi = a.col_grid();
  require_pair(phi, w, xi);
  const auto n = static_cast<Eigen::Index>(w.size());
  Eigen::MatrixXcd m(n, n);
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t c = 0; c < w.size(); ++c) {
      const auto mc = w.node(c);
      ComplexCompensatedSum acc;
      for (std::size_t j = 0; j < xi.size(); ++j) {
        if (a(i, j) == cplx{}) continue;
        const auto xj = xi.node(j);
        double dot = 0.0;
        for (std::size_t d = 0; d < xj.size(); ++d) dot += mc[d] * xj[d];
        acc.add(xi.weight(j) * unit_phase(phi.value(w, i, xi, j) - kTwoPi * dot) * a(i, j));
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = acc.value();
    }
  }
  return numerics::DenseComplexMatrix(std::move(m));
}

euclid::MixedNorms lattice_mixed_norms(const LatticeSymbol& a, double p1, double p2) {
  if (p1 < 2.0) throw DomainError("lattice_mixed_norms: p1 must be >= 2, got " + std::to_string(p1));
  if (p2 < 1.0) throw DomainError("lattice_mixed_norms: p2 must be >= 1, got " + std::to_string(p2));
  euclid::MixedNorms m;
  m.x_first = numerics::mixed_norm(a, numerics::Variable::x, p2, p1);
  m.xi_first = numerics::mixed_norm(a, numerics::Variable::xi, p1, p2);
  return m;
}

}  // namespace nuctrace::lattice
