#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "nuctrace/group/quadrature.hpp"
#include "nuctrace/nuclear/rank_one.hpp"
#include "nuctrace/numerics/dense.hpp"

namespace nuctrace::group {

using MatrixMap = Eigen::Map<const Eigen::MatrixXcd>;

struct IrrepInfo {
  std::string label;
  std::size_t dim = 1;
};

// Unitary irreducible representations evaluated once at every quadrature
// node and shared read-only.
class RepresentationTable {
 public:
  using Evaluator = std::function<Eigen::MatrixXcd(std::size_t irrep, std::size_t node)>;

  RepresentationTable(QuadPtr quad, std::vector<IrrepInfo> irreps, const Evaluator& eval,
                      double unitarity_tolerance = 1e-10);

  const GroupQuadrature& quadrature() const { return *quad_; }
  const QuadPtr& quadrature_ptr() const { return quad_; }
  std::size_t irrep_count() const { return irreps_.size(); }
  const IrrepInfo& irrep(std::size_t p) const { return irreps_[p]; }
  std::size_t nodes() const { return quad_->size(); }
  MatrixMap matrix(std::size_t irrep, std::size_t node) const;
  // sum of d_pi^2 over the irreps below the limit
  std::size_t basis_dimension(std::size_t limit) const;

 private:
  QuadPtr quad_;
  std::vector<IrrepInfo> irreps_;
  std::vector<std::vector<cplx>> data_;
};

using TablePtr = std::shared_ptr<const RepresentationTable>;

// Complex function on the quadrature nodes.
struct NodeFunction {
  NodeFunction(QuadPtr quad, std::vector<cplx> values);
  static NodeFunction zeros(QuadPtr quad);
  QuadPtr quad;
  std::vector<cplx> values;
};

// A d_pi x d_pi matrix at every node and irrep of a table.
class MatrixField {
 public:
  using Generator = std::function<Eigen::MatrixXcd(std::size_t irrep, std::size_t node)>;

  MatrixField(TablePtr table, std::vector<std::vector<cplx>> blocks);
  static MatrixField zeros(TablePtr table);
  static MatrixField identity(TablePtr table);
  // Phi(x, pi) = pi(x)
  static MatrixField representation(TablePtr table);
  static MatrixField generate(TablePtr table, const Generator& gen);

  const RepresentationTable& table() const { return *table_; }
  const TablePtr& table_ptr() const { return table_; }
  MatrixMap at(std::size_t irrep, std::size_t node) const;
  const std::vector<cplx>& block(std::size_t irrep) const { return blocks_[irrep]; }

 private:
  TablePtr table_;
  std::vector<std::vector<cplx>> blocks_;
};

struct SymbolOptions {
  double condition_limit = 1e8;
};

// Symbol a(x, pi) with its matrix phase Phi(x, pi); Phi is checked to be
// invertible with condition number <= condition_limit at every node.
class GroupSymbol {
 public:
  GroupSymbol(MatrixField phase, MatrixField symbol, SymbolOptions options = {});

  const MatrixField& phase() const { return phase_; }
  const MatrixField& symbol() const { return symbol_; }
  const RepresentationTable& table() const { return phase_.table(); }
  // sup over nodes and irreps of ||Phi(x,pi)^{-1}||_op
  double inverse_phase_bound() const { return inverse_bound_; }

 private:
  MatrixField phase_;
  MatrixField symbol_;
  double inverse_bound_ = 0.0;
};

// Decomposition on the nodes of a group quadrature; norms and pairings use
// the normalized Haar weights.
struct GroupTerm {
  std::vector<cplx> h;
  std::vector<cplx> g;
};

class GroupRankOneSequence {
 public:
  GroupRankOneSequence(QuadPtr quad, std::vector<GroupTerm> terms, nuclear::Exponents e = {});
  const QuadPtr& quadrature() const { return quad_; }
  const std::vector<GroupTerm>& terms() const { return terms_; }
  const nuclear::Exponents& exponents() const { return exp_; }
  std::size_t size() const { return terms_.size(); }

 private:
  QuadPtr quad_;
  std::vector<GroupTerm> terms_;
  nuclear::Exponents exp_;
};

// sum_x w(x) sum_k g_k(x) h_k(x)
cplx group_delgado_trace(const GroupRankOneSequence& d);
double group_lp_norm(const GroupQuadrature& q, std::span<const cplx> f, double p);
double group_quasinorm_bound(const GroupRankOneSequence& d);
double group_term_norm_sum(const GroupRankOneSequence& d);

// f^(pi) = sum_x w(x) f(x) pi(x)^*, one matrix per irrep below limit.
std::vector<Eigen::MatrixXcd> series_fourier(const RepresentationTable& t, std::span<const cplx> f,
                                             std::size_t limit);

// Irreps [0, limit) take part; content at or above the limit is refused.
void require_within_cutoff(const GroupSymbol& sym, std::size_t limit);

// Ff(x) = sum_pi d_pi Tr[Phi(x,pi) a(x,pi) f^(pi)]
NodeFunction series_fio_apply(const GroupSymbol& sym, const NodeFunction& f, std::size_t limit);

// sum_x w(x) sum_pi d_pi Tr[pi(x)^* Phi(x,pi) a(x,pi)]
cplx series_nuclear_trace(const GroupSymbol& sym, std::size_t limit);

// a(x,pi) = Phi(x,pi)^{-1} sum_k h_k(x) (F conj(g_k))(pi)^*
MatrixField series_symbol_from_decomposition(const MatrixField& phase, const GroupRankOneSequence& d);

// Compression of F to the span of sqrt(d_pi) pi_ij, pi below limit.
numerics::DenseComplexMatrix series_matrix(const GroupSymbol& sym, std::size_t limit);

}  // namespace nuctrace::group
