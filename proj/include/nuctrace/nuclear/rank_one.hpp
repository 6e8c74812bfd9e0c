#pragma once

#include <vector>

#include "nuctrace/numerics/dense.hpp"
#include "nuctrace/numerics/field.hpp"

namespace nuctrace::nuclear {

using numerics::GridPtr;
using numerics::SampledField;

struct Exponents {
  double p1 = 2.0;
  double p2 = 2.0;
  double r = 1.0;
};

struct RankOneTerm {
  SampledField h;
  SampledField g;
};

// A finite decomposition {(h_k, g_k)} of a nuclear operator, K(x,y) =
// sum_k h_k(x) g_k(y). The grids are held explicitly so that an empty
// decomposition still knows its domain.
class RankOneSequence {
 public:
  RankOneSequence(GridPtr h_grid, GridPtr g_grid, std::vector<RankOneTerm> terms, Exponents e = {});
  RankOneSequence(GridPtr grid, std::vector<RankOneTerm> terms, Exponents e = {});

  const std::vector<RankOneTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const GridPtr& h_grid() const { return h_grid_; }
  const GridPtr& g_grid() const { return g_grid_; }
  const Exponents& exponents() const { return exp_; }
  double p1() const { return exp_.p1; }
  double p2() const { return exp_.p2; }
  double r() const { return exp_.r; }

 private:
  GridPtr h_grid_;
  GridPtr g_grid_;
  std::vector<RankOneTerm> terms_;
  Exponents exp_;
};

struct KernelTag {};
using SampledKernel = numerics::ProductField<KernelTag>;

// (sum_k ||g_k||_{p1'}^r ||h_k||_{p2}^r)^{1/r} for this decomposition. An
// upper bound for n_r(T), not the infimum over decompositions.
double r_quasinorm_bound(const RankOneSequence& d);

// sum_k ||h_k||_{p2} ||g_k||_{p1'}.
double term_norm_sum(const RankOneSequence& d);

struct KernelOptions {
  std::size_t max_nodes = 4096;
};

SampledKernel kernel_from_decomposition(const RankOneSequence& d, KernelOptions options = {});

// sum_x w(x) sum_k g_k(x) h_k(x)
cplx delgado_trace(const RankOneSequence& d);

SampledField apply_kernel(const SampledKernel& k, const SampledField& f);

// M[i][j] = w(y_j) K(x_i, y_j)
numerics::DenseComplexMatrix kernel_matrix(const SampledKernel& k);

}  // namespace nuctrace::nuclear
