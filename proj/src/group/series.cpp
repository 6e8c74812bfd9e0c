#include "nuctrace/group/series.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "nuctrace/numerics/norms.hpp"
#include "nuctrace/numerics/summation.hpp"

namespace nuctrace::group {

using numerics::ComplexCompensatedSum;

namespace {

std::string where(const RepresentationTable& t, std::size_t p, std::size_t node) {
  return "irrep " + t.irrep(p).label + " at node " + std::to_string(node);
}

void store(std::vector<cplx>& block, std::size_t node, std::size_t d, const Eigen::MatrixXcd& m) {
  const std::size_t off = node * d * d;
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t r = 0; r < d; ++r) {
      block[off + c * d + r] = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
}

// Inverse of Phi together with 1/sigma_min; refuses ill-conditioned phases.
Eigen::MatrixXcd checked_inverse(const MatrixMap& phi, double limit, double& inv_norm, const std::string& at) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(phi, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (!(smin > 0.0) || smax / smin > limit) {
    throw ConditionError("matrix phase is singular or ill-conditioned at " + at + " (condition number " +
                         (smin > 0.0 ? std::to_string(smax / smin) : std::string("inf")) + ", limit " +
                         std::to_string(limit) + ")");
  }
  inv_norm = 1.0 / smin;
  return svd.matrixV() * s.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();
}

}  // namespace

RepresentationTable::RepresentationTable(QuadPtr quad, std::vector<IrrepInfo> irreps, const Evaluator& eval,
                                         double unitarity_tolerance)
    : quad_(std::move(quad)), irreps_(std::move(irreps)) {
  if (!quad_) throw GridError("representation table needs a quadrature");
  const std::size_t n = quad_->size();
  data_.resize(irreps_.size());
  for (std::size_t p = 0; p < irreps_.size(); ++p) {
    const std::size_t d = irreps_[p].dim;
    if (d == 0) throw DomainError("irrep " + irreps_[p].label + " has dimension 0");
    data_[p].resize(n * d * d);
    const auto id = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t x = 0; x < n; ++x) {
      const Eigen::MatrixXcd m = eval(p, x);
      if (m.rows() != static_cast<Eigen::Index>(d) || m.cols() != static_cast<Eigen::Index>(d)) {
        throw ShapeError("representation evaluator returned the wrong shape for " + where(*this, p, x));
      }
      const double err = (m.adjoint() * m - id).cwiseAbs().maxCoeff();
      if (!(err <= unitarity_tolerance)) {
        throw InvariantError("representation is not unitary for " + where(*this, p, x) +
                             " (error " + std::to_string(err) + ")");
      }
      store(data_[p], x, d, m);
    }
  }
}

MatrixMap RepresentationTable::matrix(std::size_t irrep, std::size_t node) const {
  const auto d = static_cast<Eigen::Index>(irreps_[irrep].dim);
  return MatrixMap(data_[irrep].data() + node * static_cast<std::size_t>(d * d), d, d);
}

std::size_t RepresentationTable::basis_dimension(std::size_t limit) const {
  std::size_t s = 0;
  for (std::size_t p = 0; p < limit && p < irreps_.size(); ++p) s += irreps_[p].dim * irreps_[p].dim;
  return s;
}

NodeFunction::NodeFunction(QuadPtr q, std::vector<cplx> v) : quad(std::move(q)), values(std::move(v)) {
  if (!quad) throw GridError("node function needs a quadrature");
  if (values.size() != quad->size()) {
    throw ShapeError("node function has " + std::to_string(values.size()) + " values for " +
                     std::to_string(quad->size()) + " nodes");
  }
  for (const cplx z : values) {
    if (!is_finite(z)) throw NumericError("node function has a non-finite value");
  }
}

NodeFunction NodeFunction::zeros(QuadPtr q) {
  const std::size_t n = q->size();
  return NodeFunction(std::move(q), std::vector<cplx>(n));
}

MatrixField::MatrixField(TablePtr table, std::vector<std::vector<cplx>> blocks)
    : table_(std::move(table)), blocks_(std::move(blocks)) {
  if (!table_) throw GridError("matrix field needs a representation table");
  if (blocks_.size() != table_->irrep_count()) throw ShapeError("matrix field: one block per irrep expected");
  for (std::size_t p = 0; p < blocks_.size(); ++p) {
    const std::size_t d = table_->irrep(p).dim;
    if (blocks_[p].size() != table_->nodes() * d * d) {
      throw ShapeError("matrix field: block for irrep " + table_->irrep(p).label + " has the wrong size");
    }
    for (const cplx z : blocks_[p]) {
      if (!is_finite(z)) throw NumericError("matrix field: non-finite entry");
    }
  }
}

MatrixField MatrixField::zeros(TablePtr table) {
  std::vector<std::vector<cplx>> b(table->irrep_count());
  for (std::size_t p = 0; p < b.size(); ++p) {
    const std::size_t d = table->irrep(p).dim;
    b[p].assign(table->nodes() * d * d, cplx{});
  }
  return MatrixField(std::move(table), std::move(b));
}

MatrixField MatrixField::generate(TablePtr table, const Generator& gen) {
  std::vector<std::vector<cplx>> b(table->irrep_count());
  for (std::size_t p = 0; p < b.size(); ++p) {
    const std::size_t d = table->irrep(p).dim;
    b[p].resize(table->nodes() * d * d);
    for (std::size_t x = 0; x < table->nodes(); ++x) {
      const Eigen::MatrixXcd m = gen(p, x);
      if (m.rows() != static_cast<Eigen::Index>(d) || m.cols() != static_cast<Eigen::Index>(d)) {
        throw ShapeError("matrix field generator returned the wrong shape for " + where(*table, p, x));
      }
      store(b[p], x, d, m);
    }
  }
  return MatrixField(std::move(table), std::move(b));
}

MatrixField MatrixField::identity(TablePtr table) {
  return generate(table, [&](std::size_t p, std::size_t) {
    const auto d = static_cast<Eigen::Index>(table->irrep(p).dim);
    return Eigen::MatrixXcd::Identity(d, d).eval();
  });
}

MatrixField MatrixField::representation(TablePtr table) {
  std::vector<std::vector<cplx>> b(table->irrep_count());
  for (std::size_t p = 0; p < b.size(); ++p) {
    const std::size_t d = table->irrep(p).dim;
    const auto m = table->matrix(p, 0);
    b[p].assign(m.data(), m.data() + table->nodes() * d * d);
  }
  return MatrixField(std::move(table), std::move(b));
}

MatrixMap MatrixField::at(std::size_t irrep, std::size_t node) const {
  const auto d = static_cast<Eigen::Index>(table_->irrep(irrep).dim);
  return MatrixMap(blocks_[irrep].data() + node * static_cast<std::size_t>(d * d), d, d);
}

GroupSymbol::GroupSymbol(MatrixField phase, MatrixField symbol, SymbolOptions options)
    : phase_(std::move(phase)), symbol_(std::move(symbol)) {
  if (phase_.table_ptr() != symbol_.table_ptr()) {
    throw GridError("group symbol: phase and symbol use different representation tables");
  }
  const auto& t = table();
  for (std::size_t p = 0; p < t.irrep_count(); ++p) {
    for (std::size_t x = 0; x < t.nodes(); ++x) {
      double inv = 0.0;
      checked_inverse(phase_.at(p, x), options.condition_limit, inv, where(t, p, x));
      inverse_bound_ = std::max(inverse_bound_, inv);
    }
  }
}

GroupRankOneSequence::GroupRankOneSequence(QuadPtr quad, std::vector<GroupTerm> terms, nuclear::Exponents e)
    : quad_(std::move(quad)), terms_(std::move(terms)), exp_(e) {
  if (!quad_) throw GridError("group decomposition needs a quadrature");
  if (!(exp_.r > 0.0 && exp_.r <= 1.0)) throw DomainError("decomposition order r must lie in (0, 1]");
  if (exp_.p1 < 1.0 || exp_.p2 < 1.0) throw DomainError("decomposition exponents must be >= 1");
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (terms_[k].h.size() != quad_->size() || terms_[k].g.size() != quad_->size()) {
      throw GridError("group term " + std::to_string(k) + " does not match the quadrature");
    }
    for (const cplx z : terms_[k].h) {
      if (!is_finite(z)) throw NumericError("group term has a non-finite value");
    }
    for (const cplx z : terms_[k].g) {
      if (!is_finite(z)) throw NumericError("group term has a non-finite value");
    }
  }
}

cplx group_delgado_trace(const GroupRankOneSequence& d) {
  const auto& q = *d.quadrature();
  ComplexCompensatedSum acc;
  for (std::size_t x = 0; x < q.size(); ++x) {
    ComplexCompensatedSum local;
    for (const auto& t : d.terms()) local.add(t.g[x] * t.h[x]);
    acc.add(q.weight(x) * local.value());
  }
  return acc.value();
}

double group_lp_norm(const GroupQuadrature& q, std::span<const cplx> f, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (const cplx z : f) m = std::max(m, std::abs(z));
    return m;
  }
  return numerics::weighted_lp(f, q.weights(), p);
}

double group_quasinorm_bound(const GroupRankOneSequence& d) {
  const auto& e = d.exponents();
  const double q = numerics::conjugate_exponent(e.p1);
  numerics::CompensatedSum acc;
  for (const auto& t : d.terms()) {
    acc.add(std::pow(group_lp_norm(*d.quadrature(), t.g, q) * group_lp_norm(*d.quadrature(), t.h, e.p2), e.r));
  }
  return std::pow(acc.value(), 1.0 / e.r);
}

double group_term_norm_sum(const GroupRankOneSequence& d) {
  const auto& e = d.exponents();
  const double q = numerics::conjugate_exponent(e.p1);
  numerics::CompensatedSum acc;
  for (const auto& t : d.terms()) {
    acc.add(group_lp_norm(*d.quadrature(), t.h, e.p2) * group_lp_norm(*d.quadrature(), t.g, q));
  }
  return acc.value();
}

std::vector<Eigen::MatrixXcd> series_fourier(const RepresentationTable& t, std::span<const cplx> f,
                                             std::size_t limit) {
  if (f.size() != t.nodes()) throw ShapeError("series_fourier: function does not match the quadrature");
  const std::size_t np = std::min(limit, t.irrep_count());
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(np);
  const auto& q = t.quadrature();
  for (std::size_t p = 0; p < np; ++p) {
    const auto d = static_cast<Eigen::Index>(t.irrep(p).dim);
    std::vector<ComplexCompensatedSum> acc(static_cast<std::size_t>(d * d));
    for (std::size_t x = 0; x < t.nodes(); ++x) {
      if (f[x] == cplx{}) continue;
      const cplx c = q.weight(x) * f[x];
      const auto m = t.matrix(p, x);
      // (pi^*)_{ij} = conj(pi_{ji})
      for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) acc[static_cast<std::size_t>(j * d + i)].add(c * std::conj(m(j, i)));
      }
    }
    Eigen::MatrixXcd fh(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index i = 0; i < d; ++i) fh(i, j) = acc[static_cast<std::size_t>(j * d + i)].value();
    }
    out.push_back(std::move(fh));
  }
  return out;
}

void require_within_cutoff(const GroupSymbol& sym, std::size_t limit) {
  const auto& t = sym.table();
  if (limit == 0 || limit > t.irrep_count()) {
    throw DomainError("cutoff selects " + std::to_string(limit) + " irreps but the table holds " +
                      std::to_string(t.irrep_count()));
  }
  for (std::size_t p = limit; p < t.irrep_count(); ++p) {
    for (const cplx z : sym.symbol().block(p)) {
      if (z != cplx{}) {
        throw DomainError("symbol has content at irrep " + t.irrep(p).label +
                          ", above the cutoff; refusing to truncate it");
      }
    }
  }
}

NodeFunction series_fio_apply(const GroupSymbol& sym, const NodeFunction& f, std::size_t limit) {
  require_within_cutoff(sym, limit);
  const auto& t = sym.table();
  if (!(*f.quad == t.quadrature())) throw GridError("series_fio_apply: function lives on another quadrature");
  const auto fh = series_fourier(t, f.values, limit);
  std::vector<cplx> out(t.nodes());
  for (std::size_t x = 0; x < t.nodes(); ++x) {
    ComplexCompensatedSum acc;
    for (std::size_t p = 0; p < limit; ++p) {
      const auto d = static_cast<double>(t.irrep(p).dim);
      acc.add(d * (sym.phase().at(p, x) * sym.symbol().at(p, x) * fh[p]).trace());
    }
    out[x] = acc.value();
  }
  return NodeFunction(t.quadrature_ptr(), std::move(out));
}

cplx series_nuclear_trace(const GroupSymbol& sym, std::size_t limit) {
  require_within_cutoff(sym, limit);
  const auto& t = sym.table();
  const auto& q = t.quadrature();
  ComplexCompensatedSum acc;
  for (std::size_t x = 0; x < t.nodes(); ++x) {
    ComplexCompensatedSum local;
    for (std::size_t p = 0; p < limit; ++p) {
      const auto d = static_cast<double>(t.irrep(p).dim);
      local.add(d * (t.matrix(p, x).adjoint() * sym.phase().at(p, x) * sym.symbol().at(p, x)).trace());
    }
    acc.add(q.weight(x) * local.value());
  }
  return acc.value();
}

MatrixField series_symbol_from_decomposition(const MatrixField& phase, const GroupRankOneSequence& d) {
  const auto& t = phase.table();
  if (!(*d.quadrature() == t.quadrature())) {
    throw GridError("series_symbol_from_decomposition: decomposition lives on another quadrature");
  }
  const auto& q = t.quadrature();
  // G_k(pi) = (F conj(g_k))(pi)^* = sum_y w(y) g_k(y) pi(y)
  std::vector<std::vector<Eigen::MatrixXcd>> gk(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    for (std::size_t p = 0; p < t.irrep_count(); ++p) {
      const auto dim = static_cast<Eigen::Index>(t.irrep(p).dim);
      std::vector<ComplexCompensatedSum> acc(static_cast<std::size_t>(dim * dim));
      for (std::size_t y = 0; y < t.nodes(); ++y) {
        const cplx c = q.weight(y) * d.terms()[k].g[y];
        if (c == cplx{}) continue;
        const auto m = t.matrix(p, y);
        for (Eigen::Index e = 0; e < dim * dim; ++e) acc[static_cast<std::size_t>(e)].add(c * m.data()[e]);
      }
      Eigen::MatrixXcd g(dim, dim);
      for (Eigen::Index e = 0; e < dim * dim; ++e) g.data()[e] = acc[static_cast<std::size_t>(e)].value();
      gk[k].push_back(std::move(g));
    }
  }
  SymbolOptions opts;
  return MatrixField::generate(phase.table_ptr(), [&](std::size_t p, std::size_t x) {
    const auto dim = static_cast<Eigen::Index>(t.irrep(p).dim);
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t k = 0; k < d.size(); ++k) s += d.terms()[k].h[x] * gk[k][p];
    double inv = 0.0;
    return (checked_inverse(phase.at(p, x), opts.condition_limit, inv, where(t, p, x)) * s).eval();
  });
}

numerics::DenseComplexMatrix series_matrix(const GroupSymbol& sym, std::size_t limit) {
  require_within_cutoff(sym, limit);
  const auto& t = sym.table();
  const auto& q = t.quadrature();
  const auto n = static_cast<Eigen::Index>(t.nodes());
  const auto b = static_cast<Eigen::Index>(t.basis_dimension(limit));
  Eigen::MatrixXcd psi(n, b);
  Eigen::MatrixXcd act(n, b);
  Eigen::Index col = 0;
  for (std::size_t p = 0; p < limit; ++p) {
    const auto d = static_cast<Eigen::Index>(t.irrep(p).dim);
    const double s = std::sqrt(static_cast<double>(d));
    for (Eigen::Index x = 0; x < n; ++x) {
      const auto xs = static_cast<std::size_t>(x);
      const Eigen::MatrixXcd pa = sym.phase().at(p, xs) * sym.symbol().at(p, xs);
      const auto m = t.matrix(p, xs);
      for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
          psi(x, col + i * d + j) = q.weight(xs) * s * std::conj(m(i, j));
          act(x, col + i * d + j) = s * pa(i, j);
        }
      }
    }
    col += d * d;
  }
  return numerics::DenseComplexMatrix(psi.transpose() * act);
}

}  // namespace nuctrace::group
