#include "nuctrace/group/torus.hpp"

#include "nuctrace/numerics/fourier.hpp"
#include "nuctrace/numerics/summation.hpp"

namespace nuctrace::group {

using numerics::AxisKind;
using numerics::ComplexCompensatedSum;
using numerics::UniformGrid;

namespace {

void require_torus_pair(const PhaseSpec& phi, const UniformGrid& x, const UniformGrid& freq) {
  for (const auto& a : x.axes()) {
    if (a.kind != AxisKind::periodic || a.lo != 0.0 || a.hi != 1.0) {
      throw GridError("torus: the x-grid must be a periodic grid on [0,1)^n");
    }
  }
  for (std::size_t d = 0; d < freq.dimension(); ++d) {
    const auto& f = freq.axis(d);
    if (f.kind != AxisKind::counting || f.lo != -f.hi) throw GridError("torus: frequencies must be a window {-L..L}^n");
    if (d < x.dimension() && x.axis(d).count < 2 * f.count) {
      throw GridError("torus: cutoff L = " + std::to_string(static_cast<int>(f.hi)) + " needs at least " +
                      std::to_string(2 * f.count) + " x-nodes per axis, got " + std::to_string(x.axis(d).count));
    }
  }
  phi.require_compatible(x, freq);
}

}  // namespace

GridPtr frequency_window(std::size_t n, int cutoff) {
  if (cutoff < 0) throw DomainError("torus cutoff must be >= 0");
  return numerics::make_grid(UniformGrid::lattice(n, cutoff));
}

SampledField torus_fio_apply(const PhaseSpec& phi, const TorusSymbol& a, const SampledField& f) {
  const UniformGrid& x = a.row_grid();
  const UniformGrid& fr = a.col_grid();
  require_torus_pair(phi, x, fr);
  numerics::require_same_grid(f.grid(), x, "torus_fio_apply");
  const SampledField fh = numerics::dft_forward(f, a.col_grid_ptr());
  std::vector<cplx> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    ComplexCompensatedSum acc;
    for (std::size_t l = 0; l < fr.size(); ++l) {
      if (a(i, l) == cplx{}) continue;
      acc.add(unit_phase(phi.value(x, i, fr, l)) * a(i, l) * fh[l]);
    }
    out[i] = acc.value();
  }
  return SampledField(a.row_grid_ptr(), std::move(out));
}

cplx torus_nuclear_trace(const PhaseSpec& phi, const TorusSymbol& a) {
  const UniformGrid& x = a.row_grid();
  const UniformGrid& fr = a.col_grid();
  require_torus_pair(phi, x, fr);
  ComplexCompensatedSum acc;
  for (std::size_t i = 0; i < x.size(); ++i) {
    ComplexCompensatedSum row;
    for (std::size_t l = 0; l < fr.size(); ++l) {
      if (a(i, l) == cplx{}) continue;
      row.add(unit_phase(phi.reduced(x, i, fr, l)) * a(i, l));
    }
    acc.add(x.weight(i) * row.value());
  }
  return acc.value();
}

numerics::DenseComplexMatrix torus_matrix(const PhaseSpec& phi, const TorusSymbol& a) {
  const UniformGrid& x = a.row_grid();
  const UniformGrid& fr = a.col_grid();
  require_torus_pair(phi, x, fr);
  const auto n = static_cast<Eigen::Index>(fr.size());
  Eigen::MatrixXcd m(n, n);
  for (std::size_t r = 0; r < fr.size(); ++r) {
    const auto lr = fr.node(r);
    for (std::size_t c = 0; c < fr.size(); ++c) {
      ComplexCompensatedSum acc;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (a(i, c) == cplx{}) continue;
        const auto xi = x.node(i);
        double dot = 0.0;
        for (std::size_t d = 0; d < xi.size(); ++d) dot += lr[d] * xi[d];
        acc.add(x.weight(i) * unit_phase(phi.value(x, i, fr, c) - kTwoPi * dot) * a(i, c));
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc.value();
    }
  }
  return numerics::DenseComplexMatrix(std::move(m));
}

TorusSymbol torus_symbol_from_decomposition(const PhaseSpec& phi, const nuclear::RankOneSequence& d, int cutoff) {
  const GridPtr& x = d.h_grid();
  numerics::require_same_grid(*x, *d.g_grid(), "torus_symbol_from_decomposition");
  const GridPtr fr = frequency_window(x->dimension(), cutoff);
  require_torus_pair(phi, *x, *fr);
  std::vector<SampledField> gm;
  for (const auto& t : d.terms()) gm.push_back(numerics::dft_inverse(t.g, fr));
  std::vector<cplx> v(x->size() * fr->size());
  for (std::size_t i = 0; i < x->size(); ++i) {
    for (std::size_t l = 0; l < fr->size(); ++l) {
      ComplexCompensatedSum acc;
      for (std::size_t k = 0; k < d.size(); ++k) acc.add(d.terms()[k].h[i] * gm[k][l]);
      v[i * fr->size() + l] = unit_phase(-phi.value(*x, i, *fr, l)) * acc.value();
    }
  }
  return TorusSymbol(x, fr, std::move(v));
}

}  // namespace nuctrace::group
