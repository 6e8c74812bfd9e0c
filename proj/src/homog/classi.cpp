#include "nuctrace/homog/classi.hpp"

#include <cmath>

#include "nuctrace/group/su2.hpp"
#include "nuctrace/numerics/norms.hpp"
#include "nuctrace/numerics/summation.hpp"

namespace nuctrace::homog {

using group::IrrepInfo;
using numerics::CompensatedSum;

Eigen::MatrixXcd classI_mask(const Eigen::MatrixXcd& m, int k) {
  if (m.rows() != m.cols()) throw ShapeError("classI_mask: matrix must be square");
  if (k < 1) throw DomainError("classI_mask: k must be >= 1, got " + std::to_string(k));
  if (k > m.rows()) {
    throw DomainError("classI_mask: k = " + std::to_string(k) + " exceeds the dimension " + std::to_string(m.rows()));
  }
  Eigen::MatrixXcd out = m;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i >= k || j >= k) out(i, j) = cplx{};
    }
  }
  return out;
}

ClassIIrrepTable::ClassIIrrepTable(TablePtr table, std::vector<int> k) : table_(std::move(table)), k_(std::move(k)) {
  if (!table_) throw GridError("class-I table needs a representation table");
  if (k_.size() != table_->irrep_count()) throw ShapeError("class-I table: one k_pi per irrep expected");
  for (std::size_t p = 0; p < k_.size(); ++p) {
    if (k_[p] < 1 || static_cast<std::size_t>(k_[p]) > table_->irrep(p).dim) {
      throw DomainError("class-I table: irrep " + table_->irrep(p).label + " needs 1 <= k_pi <= " +
                        std::to_string(table_->irrep(p).dim) + ", got " + std::to_string(k_[p]));
    }
  }
}

HomogSymbol::HomogSymbol(ClassIPtr irreps, group::GroupSymbol symbol)
    : irreps_(std::move(irreps)), symbol_(std::move(symbol)) {
  if (!irreps_) throw GridError("homogeneous symbol needs a class-I table");
  if (symbol_.symbol().table_ptr() != irreps_->table()) {
    throw GridError("homogeneous symbol: symbol and class-I table use different representation tables");
  }
  const auto& t = *irreps_->table();
  for (std::size_t p = 0; p < t.irrep_count(); ++p) {
    const auto k = static_cast<Eigen::Index>(irreps_->k(p));
    for (std::size_t x = 0; x < t.nodes(); ++x) {
      const auto m = symbol_.symbol().at(p, x);
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
          if ((i >= k || j >= k) && m(i, j) != cplx{}) {
            throw InvariantError("homogeneous symbol violates the class-I mask at irrep " + t.irrep(p).label +
                                 ", node " + std::to_string(x) + ", entry (" + std::to_string(i + 1) + ", " +
                                 std::to_string(j + 1) + ")");
          }
        }
      }
    }
  }
}

MatrixField mask_field(const ClassIIrrepTable& irreps, const MatrixField& a) {
  return MatrixField::generate(a.table_ptr(), [&](std::size_t p, std::size_t x) {
    return classI_mask(a.at(p, x), irreps.k(p));
  });
}

NodeFunction homog_fio_apply(const HomogSymbol& sym, const NodeFunction& f) {
  return group::series_fio_apply(sym.symbol(), f, sym.irreps().size());
}

cplx homog_nuclear_trace(const HomogSymbol& sym) {
  return group::series_nuclear_trace(sym.symbol(), sym.irreps().size());
}

double homog_mixed_norm(const HomogSymbol& sym, double p1, double p2) {
  if (p1 < 2.0) throw DomainError("homog_mixed_norm: p1 must be >= 2, got " + std::to_string(p1));
  if (p2 < 1.0) throw DomainError("homog_mixed_norm: p2 must be >= 1, got " + std::to_string(p2));
  const auto& irr = sym.irreps();
  const auto& t = *irr.table();
  const auto& q = t.quadrature();
  std::vector<double> coef(irr.size());
  for (std::size_t p = 0; p < irr.size(); ++p) {
    coef[p] = static_cast<double>(irr.dim(p)) * std::pow(static_cast<double>(irr.k(p)), p1 * (1.0 / p1 - 0.5));
  }
  CompensatedSum outer;
  for (std::size_t x = 0; x < t.nodes(); ++x) {
    CompensatedSum inner;
    for (std::size_t p = 0; p < irr.size(); ++p) {
      const double hs = sym.symbol().symbol().at(p, x).norm();
      inner.add(coef[p] * std::pow(hs, p1));
    }
    outer.add(q.weight(x) * std::pow(inner.value(), p2 / p1));
  }
  return std::pow(outer.value(), 1.0 / p2);
}

HomogSymbol homog_symbol_from_decomposition(ClassIPtr irreps, const MatrixField& phase,
                                            const GroupRankOneSequence& d) {
  const MatrixField raw = group::series_symbol_from_decomposition(phase, d);
  MatrixField masked = mask_field(*irreps, raw);
  return HomogSymbol(std::move(irreps), group::GroupSymbol(phase, std::move(masked)));
}

double phase_inverse_bound(const HomogSymbol& sym) { return sym.symbol().inverse_phase_bound(); }

ClassIPtr torus_instance(std::size_t n, std::size_t count, int cutoff) {
  const auto quad = group::torus_quadrature(n, count);
  const auto window = group::frequency_window(n, cutoff);
  std::vector<IrrepInfo> irreps;
  for (std::size_t l = 0; l < window->size(); ++l) {
    std::string label;
    for (const double c : window->node(l)) label += (label.empty() ? "" : ",") + std::to_string(static_cast<int>(c));
    irreps.push_back({"e(" + label + ")", 1});
  }
  auto table = std::make_shared<const group::RepresentationTable>(
      quad, std::move(irreps), [&](std::size_t p, std::size_t x) {
        const auto l = window->node(p);
        const auto xs = quad->parameters(x);
        double dot = 0.0;
        for (std::size_t d = 0; d < n; ++d) dot += l[d] * xs[d];
        Eigen::MatrixXcd m(1, 1);
        m(0, 0) = unit_phase(kTwoPi * dot);
        return m;
      });
  std::vector<int> k(window->size(), 1);
  return std::make_shared<const ClassIIrrepTable>(std::move(table), std::move(k));
}

ClassIPtr su2_instance(group::QuadPtr quad, int max_twoL) {
  auto table = group::su2_table(std::move(quad), max_twoL);
  std::vector<int> k;
  for (std::size_t p = 0; p < table->irrep_count(); ++p) k.push_back(static_cast<int>(table->irrep(p).dim));
  return std::make_shared<const ClassIIrrepTable>(std::move(table), std::move(k));
}

HomogSymbol homog_symbol_from_torus(ClassIPtr irreps, const group::PhaseSpec& phi, const group::TorusSymbol& a) {
  const auto& t = irreps->table();
  if (a.cols() != t->irrep_count() || a.rows() != t->nodes()) {
    throw ShapeError("homog_symbol_from_torus: symbol does not match the torus instance");
  }
  const auto& xg = a.row_grid();
  const auto& fr = a.col_grid();
  phi.require_compatible(xg, fr);
  auto phase = MatrixField::generate(t, [&](std::size_t p, std::size_t x) {
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = unit_phase(phi.value(xg, x, fr, p));
    return m;
  });
  auto sym = MatrixField::generate(t, [&](std::size_t p, std::size_t x) {
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = a(x, p);
    return m;
  });
  return HomogSymbol(std::move(irreps), group::GroupSymbol(std::move(phase), std::move(sym)));
}

}  // namespace nuctrace::homog
