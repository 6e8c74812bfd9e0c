#include "nuctrace/quantize/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nuctrace/numerics/summation.hpp"

namespace nuctrace::quantize {

using numerics::Axis;
using numerics::AxisKind;
using numerics::ComplexCompensatedSum;
using numerics::Stencil;
using numerics::UniformGrid;

namespace {

constexpr double kNegligible = 1e-10;
constexpr std::size_t kTableLimit = std::size_t{1} << 22;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) s += a[d] * b[d];
  return s;
}

// Largest boundary magnitude relative to the largest magnitude overall.
template <class Value>
double edge_ratio(const UniformGrid& g, std::size_t columns, Value&& value) {
  double peak = 0.0;
  double edge = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const bool boundary = numerics::on_boundary(g, i);
    for (std::size_t c = 0; c < columns; ++c) {
      const double m = std::abs(value(i, c));
      peak = std::max(peak, m);
      if (boundary) edge = std::max(edge, m);
    }
  }
  return peak == 0.0 ? 0.0 : edge / peak;
}

double field_edge_ratio(const SampledField& f) {
  return edge_ratio(f.grid(), 1, [&](std::size_t i, std::size_t) { return f[i]; });
}

// Stencil lookup that refuses to extend a function by zero unless it has
// already decayed at the edge of its box.
class Sampler {
 public:
  Sampler(const UniformGrid& grid, Extension ext, double edge, const char* what)
      : grid_(grid), ext_(ext), edge_(edge), what_(what) {}

  Stencil at(std::span<const double> point, std::size_t node) const {
    Stencil st = numerics::locate(grid_, point, ext_);
    if (st.outside && edge_ > kNegligible) {
      std::ostringstream msg;
      msg << what_ << ": evaluation point (";
      for (std::size_t d = 0; d < point.size(); ++d) msg << (d ? ", " : "") << point[d];
      msg << ") for x node " << node << " lies outside the box, and the function is not negligible "
          << "at the boundary (relative size " << edge_ << ")";
      throw TruncationError(msg.str());
    }
    return st;
  }

 private:
  const UniformGrid& grid_;
  Extension ext_;
  double edge_;
  const char* what_;
};

cplx apply_stencil(const Stencil& st, std::span<const cplx> values) {
  cplx v{};
  for (std::size_t k = 0; k < st.index.size(); ++k) v += st.weight[k] * values[st.index[k]];
  return v;
}

void require_closed_box(const UniformGrid& g, const char* what) {
  for (const Axis& a : g.axes()) {
    if (a.kind != AxisKind::closed) throw GridError(std::string(what) + ": x-grid axes must be closed intervals");
  }
}

// A z-spacing s resolves frequencies in a band of width 1/s only.
void require_resolved_band(const UniformGrid& z, const UniformGrid& xi, const char* what) {
  for (std::size_t d = 0; d < z.dimension(); ++d) {
    const double width = xi.axis(d).hi - xi.axis(d).lo;
    const double s = z.axis(d).step();
    if (s * width > 1.0 + 1e-9) {
      throw GridError(std::string(what) + ": z-spacing " + std::to_string(s) + " aliases frequencies over a xi-range of width " +
                      std::to_string(width) + " (need spacing * width <= 1)");
    }
  }
}

// Table of w(z) e^{sign 2 pi i z.xi}, or on-the-fly evaluation when too large.
class ExpTable {
 public:
  ExpTable(const UniformGrid& z, const UniformGrid& xi, double sign) : z_(z), xi_(xi), sign_(sign) {
    if (z.size() * xi.size() <= kTableLimit) {
      table_.resize(z.size() * xi.size());
      for (std::size_t a = 0; a < z.size(); ++a) {
        for (std::size_t b = 0; b < xi.size(); ++b) table_[a * xi.size() + b] = compute(a, b);
      }
    }
  }
  cplx operator()(std::size_t zi, std::size_t xj) const {
    return table_.empty() ? compute(zi, xj) : table_[zi * xi_.size() + xj];
  }

 private:
  cplx compute(std::size_t a, std::size_t b) const {
    return z_.weight(a) * unit_phase(sign_ * kTwoPi * dot(z_.node(a), xi_.node(b)));
  }
  const UniformGrid& z_;
  const UniformGrid& xi_;
  double sign_;
  std::vector<cplx> table_;
};

EuclideanSymbol synthesize(const std::vector<const SampledField*>& hs, const std::vector<const SampledField*>& gs,
                           bool conj_g, double tau, const GridPtr& x_grid, const GridPtr& xi_grid,
                           const char* what) {
  const UniformGrid& xg = *x_grid;
  euclid::require_desk_dimension(xg);
  require_closed_box(xg, what);
  if (xi_grid->dimension() != xg.dimension()) throw DimensionError(std::string(what) + ": xi-grid dimension");
  double edge = 0.0;
  for (std::size_t k = 0; k < hs.size(); ++k) {
    numerics::require_same_grid(hs[k]->grid(), xg, what);
    numerics::require_same_grid(gs[k]->grid(), xg, what);
    edge = std::max({edge, field_edge_ratio(*hs[k]), field_edge_ratio(*gs[k])});
  }
  const std::size_t n = xg.dimension();
  const std::size_t nxi = xi_grid->size();
  std::vector<cplx> out(xg.size() * nxi);
  if (hs.empty()) return EuclideanSymbol(x_grid, xi_grid, std::move(out));

  const GridPtr zg = z_grid_for(xg, alignment_stride(tau));
  require_resolved_band(*zg, *xi_grid, what);
  const ExpTable e(*zg, *xi_grid, -1.0);
  const Sampler sampler(xg, Extension::zero, edge, what);
  std::vector<double> p(n);
  std::vector<double> q(n);
  std::vector<std::size_t> live;
  std::vector<cplx> prod(zg->size());
  for (std::size_t i = 0; i < xg.size(); ++i) {
    const auto x = xg.node(i);
    live.clear();
    for (std::size_t a = 0; a < zg->size(); ++a) {
      const auto z = zg->node(a);
      for (std::size_t d = 0; d < n; ++d) {
        p[d] = x[d] + (1.0 - tau) * z[d];
        q[d] = x[d] - tau * z[d];
      }
      const Stencil sp = sampler.at(p, i);
      const Stencil sq = sampler.at(q, i);
      if (sp.outside || sq.outside) continue;
      ComplexCompensatedSum acc;
      for (std::size_t k = 0; k < hs.size(); ++k) {
        const cplx hv = apply_stencil(sp, hs[k]->values());
        cplx gv = apply_stencil(sq, gs[k]->values());
        if (conj_g) gv = std::conj(gv);
        acc.add(hv * gv);
      }
      prod[a] = acc.value();
      if (prod[a] != cplx{}) live.push_back(a);
    }
    for (std::size_t j = 0; j < nxi; ++j) {
      ComplexCompensatedSum acc;
      for (const std::size_t a : live) acc.add(e(a, j) * prod[a]);
      out[i * nxi + j] = acc.value();
    }
  }
  return EuclideanSymbol(x_grid, xi_grid, std::move(out));
}

}  // namespace

TauParameter::TauParameter(double tau) : tau_(tau) {
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw DomainError("tau must lie in (0, 1], got " + std::to_string(tau));
  }
}

std::size_t alignment_stride(double t) {
  for (std::size_t s = 1; s <= 8; ++s) {
    const double v = static_cast<double>(s) * t;
    if (std::abs(v - std::round(v)) <= 1e-12) return s;
  }
  return 1;
}

GridPtr z_grid_for(const UniformGrid& x_grid, std::size_t stride) {
  std::vector<Axis> axes;
  for (const Axis& a : x_grid.axes()) {
    const std::size_t cells = a.count - 1;
    const std::size_t half = (cells + stride - 1) / stride;
    const double step = a.step() * static_cast<double>(stride);
    const double ext = step * static_cast<double>(half);
    axes.push_back(Axis{-ext, ext, 2 * half + 1, AxisKind::closed});
  }
  return numerics::make_grid(UniformGrid(std::move(axes)));
}

numerics::DenseComplexMatrix tau_matrix(const EuclideanSymbol& sigma, TauParameter tau, const GridPtr& f_grid,
                                        Extension ext) {
  const UniformGrid& sx = sigma.row_grid();
  const UniformGrid& xig = sigma.col_grid();
  const UniformGrid& fg = *f_grid;
  euclid::require_desk_dimension(sx);
  if (fg.dimension() != sx.dimension()) throw DimensionError("tau_matrix: f-grid dimension differs from the symbol's");
  const double t = tau.value();
  const double edge = ext == Extension::zero
                          ? edge_ratio(sx, sigma.cols(), [&](std::size_t i, std::size_t j) { return sigma(i, j); })
                          : 0.0;
  const Sampler sampler(sx, ext, edge, "tau_apply");
  const std::size_t n = sx.dimension();
  const auto m = static_cast<Eigen::Index>(fg.size());
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(m, m);
  std::vector<double> pt(n);
  std::vector<double> diff(n);
  std::vector<cplx> col(xig.size());
  for (std::size_t i = 0; i < fg.size(); ++i) {
    const auto x = fg.node(i);
    for (std::size_t j = 0; j < fg.size(); ++j) {
      const auto y = fg.node(j);
      for (std::size_t d = 0; d < n; ++d) {
        pt[d] = t * x[d] + (1.0 - t) * y[d];
        diff[d] = x[d] - y[d];
      }
      const Stencil st = sampler.at(pt, i);
      if (st.outside) continue;
      ComplexCompensatedSum acc;
      for (std::size_t l = 0; l < xig.size(); ++l) {
        cplx s{};
        for (std::size_t k = 0; k < st.index.size(); ++k) s += st.weight[k] * sigma(st.index[k], l);
        if (s == cplx{}) continue;
        acc.add(xig.weight(l) * unit_phase(kTwoPi * dot(diff, xig.node(l))) * s);
      }
      mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = fg.weight(j) * acc.value();
    }
  }
  return numerics::DenseComplexMatrix(std::move(mat));
}

SampledField tau_apply(const EuclideanSymbol& sigma, TauParameter tau, const SampledField& f, Extension ext) {
  const auto m = tau_matrix(sigma, tau, f.grid_ptr(), ext);
  return SampledField(f.grid_ptr(), m.apply(f.values()));
}

EuclideanSymbol tau_convert(const EuclideanSymbol& b, TauParameter tau, TauParameter tau_prime, Extension ext) {
  const GridPtr& xg = b.row_grid_ptr();
  const GridPtr& xig = b.col_grid_ptr();
  euclid::require_desk_dimension(*xg);
  require_closed_box(*xg, "tau_convert");
  const double t = tau_prime.value() - tau.value();
  const GridPtr zg = z_grid_for(*xg, alignment_stride(t));
  require_resolved_band(*zg, *xig, "tau_convert");
  const std::size_t n = xg->dimension();
  const std::size_t nx = xg->size();
  const std::size_t nz = zg->size();
  const std::size_t nxi = xig->size();

  // B(x', z) = sum_eta w(eta) e^{2 pi i eta.z} b(x', eta)
  const ExpTable inv(*xig, *zg, +1.0);
  std::vector<cplx> big(nx * nz);
  for (std::size_t i = 0; i < nx; ++i) {
    const auto row = b.row(i);
    for (std::size_t a = 0; a < nz; ++a) {
      ComplexCompensatedSum acc;
      for (std::size_t l = 0; l < nxi; ++l) {
        if (row[l] == cplx{}) continue;
        acc.add(inv(l, a) * row[l]);
      }
      big[i * nz + a] = acc.value();
    }
  }
  const double edge =
      ext == Extension::zero ? edge_ratio(*xg, nz, [&](std::size_t i, std::size_t a) { return big[i * nz + a]; }) : 0.0;
  const Sampler sampler(*xg, ext, edge, "tau_convert");
  const ExpTable fwd(*zg, *xig, -1.0);
  std::vector<cplx> out(nx * nxi);
  std::vector<double> pt(n);
  std::vector<cplx> vals(nz);
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < nx; ++i) {
    const auto x = xg->node(i);
    live.clear();
    for (std::size_t a = 0; a < nz; ++a) {
      const auto z = zg->node(a);
      for (std::size_t d = 0; d < n; ++d) pt[d] = x[d] + t * z[d];
      const Stencil st = sampler.at(pt, i);
      if (st.outside) continue;
      cplx v{};
      for (std::size_t k = 0; k < st.index.size(); ++k) v += st.weight[k] * big[st.index[k] * nz + a];
      vals[a] = v;
      if (v != cplx{}) live.push_back(a);
    }
    for (std::size_t j = 0; j < nxi; ++j) {
      ComplexCompensatedSum acc;
      for (const std::size_t a : live) acc.add(fwd(a, j) * vals[a]);
      out[i * nxi + j] = acc.value();
    }
  }
  return EuclideanSymbol(xg, xig, std::move(out));
}

EuclideanSymbol wigner(const SampledField& h, const SampledField& g, const GridPtr& xi_grid) {
  return synthesize({&h}, {&g}, true, 0.5, h.grid_ptr(), xi_grid, "wigner");
}

EuclideanSymbol weyl_symbol_from_decomposition(const nuclear::RankOneSequence& d, TauParameter tau,
                                               const GridPtr& xi_grid) {
  numerics::require_same_grid(*d.h_grid(), *d.g_grid(), "weyl_symbol_from_decomposition");
  std::vector<const SampledField*> hs;
  std::vector<const SampledField*> gs;
  for (const auto& t : d.terms()) {
    hs.push_back(&t.h);
    gs.push_back(&t.g);
  }
  return synthesize(hs, gs, false, tau.value(), d.h_grid(), xi_grid, "weyl_symbol_from_decomposition");
}

cplx phase_space_integral(const EuclideanSymbol& a) {
  ComplexCompensatedSum acc;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    ComplexCompensatedSum row;
    for (std::size_t j = 0; j < a.cols(); ++j) row.add(a.col_grid().weight(j) * a(i, j));
    acc.add(a.row_grid().weight(i) * row.value());
  }
  return acc.value();
}

}  // namespace nuctrace::quantize
