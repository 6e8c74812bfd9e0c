#pragma once

#include "nuctrace/euclid/phase.hpp"
#include "nuctrace/nuclear/rank_one.hpp"
#include "nuctrace/nuclear/report.hpp"

namespace nuctrace::euclid {

using numerics::SampledField;

struct SymbolTag {};
// a(x, xi): rows are x-grid nodes, columns xi-grid nodes.
using EuclideanSymbol = numerics::ProductField<SymbolTag>;

inline constexpr std::size_t kMaxDimension = 2;

void require_desk_dimension(const UniformGrid& grid);

// Ff(x) = sum_xi w(xi) e^{i phi(x,xi)} a(x,xi) (Ff)(xi), on a's x-grid.
SampledField fio_apply(const PhaseSpec& phase, const EuclideanSymbol& a, const SampledField& f);

// a(x,xi) = e^{-i phi(x,xi)} sum_k h_k(x) (F^{-1} g_k)(xi), x-grid = d.h_grid().
EuclideanSymbol symbol_from_decomposition(const PhaseSpec& phase, const nuclear::RankOneSequence& d,
                                          const GridPtr& xi_grid);

// Rejects phases whose reduced phase phi - 2 pi x.xi moves by more than
// 2 pi / 8 between neighbouring nodes.
void check_phase_density(const PhaseSpec& phase, const UniformGrid& x_grid, const UniformGrid& xi_grid);

// sum_x sum_xi w e^{i phi - 2 pi i x.xi} a(x,xi)
cplx nuclear_trace_euclid(const PhaseSpec& phase, const EuclideanSymbol& a);

struct MixedNorms {
  double x_first = 0.0;   // (int (int |a|^{p2} dx)^{p1/p2} dxi)^{1/p1}
  double xi_first = 0.0;  // (int (int |a|^{p1} dxi)^{p2/p1} dx)^{1/p2}
};

MixedNorms decay_norms(const EuclideanSymbol& a, double p1, double p2);

// 1/r = 1 + |1/p - 1/2|
double implied_r(double p);

nuclear::TraceReport lidskii_report(const PhaseSpec& phase, const nuclear::RankOneSequence& d, double p,
                                    const GridPtr& xi_grid);

}  // namespace nuctrace::euclid
