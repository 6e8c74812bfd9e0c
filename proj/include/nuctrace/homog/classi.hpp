#pragma once

#include "nuctrace/group/series.hpp"
#include "nuctrace/group/torus.hpp"

namespace nuctrace::homog {

using group::GroupRankOneSequence;
using group::MatrixField;
using group::NodeFunction;
using group::TablePtr;

// Zeroes every entry whose row or column index (1-based) exceeds k.
Eigen::MatrixXcd classI_mask(const Eigen::MatrixXcd& m, int k);

// Class-I irreps of G relative to K: a representation table over a Haar
// quadrature of G plus k_pi, the dimension of the K-invariant subspace.
class ClassIIrrepTable {
 public:
  ClassIIrrepTable(TablePtr table, std::vector<int> k);

  const TablePtr& table() const { return table_; }
  std::size_t size() const { return k_.size(); }
  int k(std::size_t irrep) const { return k_[irrep]; }
  std::size_t dim(std::size_t irrep) const { return table_->irrep(irrep).dim; }

 private:
  TablePtr table_;
  std::vector<int> k_;
};

using ClassIPtr = std::shared_ptr<const ClassIIrrepTable>;

// a(x,pi) with a(x,pi)_ij = 0 whenever i > k_pi or j > k_pi.
class HomogSymbol {
 public:
  HomogSymbol(ClassIPtr irreps, group::GroupSymbol symbol);

  const ClassIIrrepTable& irreps() const { return *irreps_; }
  const group::GroupSymbol& symbol() const { return symbol_; }

 private:
  ClassIPtr irreps_;
  group::GroupSymbol symbol_;
};

// Masks every block of a matrix field with the k_pi of the table.
MatrixField mask_field(const ClassIIrrepTable& irreps, const MatrixField& a);

// F f(x) = sum_pi d_pi Tr[Phi(x,pi) a(x,pi) f^(pi)], f given by its lift to G.
NodeFunction homog_fio_apply(const HomogSymbol& sym, const NodeFunction& f);

// sum_x w(x) sum_pi d_pi Tr[pi(x)^* Phi(x,pi) a(x,pi)]
cplx homog_nuclear_trace(const HomogSymbol& sym);

// (sum_x w (sum_pi d_pi k_pi^{p1(1/p1 - 1/2)} ||a(x,pi)||_HS^{p1})^{p2/p1})^{1/p2}
double homog_mixed_norm(const HomogSymbol& sym, double p1, double p2);

// Series synthesis followed by the class-I mask.
HomogSymbol homog_symbol_from_decomposition(ClassIPtr irreps, const MatrixField& phase,
                                            const GroupRankOneSequence& d);

// sup ||Phi(x,pi)^{-1}||_op
double phase_inverse_bound(const HomogSymbol& sym);

// T^n as G/{e}: irreps e^{2 pi i l.x} for |l|_inf <= cutoff, in window order,
// on a periodic grid with count nodes per axis; k_pi = d_pi = 1.
ClassIPtr torus_instance(std::size_t n, std::size_t count, int cutoff);

// SU(2) as G/{e} on the given quadrature; k_pi = d_pi.
ClassIPtr su2_instance(group::QuadPtr quad, int max_twoL);

// Scalar torus symbol and phase e^{i phi} carried over to a torus instance.
HomogSymbol homog_symbol_from_torus(ClassIPtr irreps, const group::PhaseSpec& phi, const group::TorusSymbol& a);

}  // namespace nuctrace::homog
