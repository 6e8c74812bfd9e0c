#pragma once

#include "nuctrace/euclid/fio.hpp"

namespace nuctrace::lattice {

using euclid::PhaseSpec;
using numerics::GridPtr;
using numerics::SampledField;
using numerics::UniformGrid;

// {n' in Z^n : |n'|_inf <= N} as a grid of counting axes (unit weights).
GridPtr window(std::size_t n, int radius);
// Periodic grid on [0,1)^n with 2(2N+1) nodes per axis, enough for every
// identity on the window to hold exactly.
GridPtr xi_grid_for(std::size_t n, int radius);

struct LatticeTag {};
// a(n', xi): rows are window points, columns torus nodes.
using LatticeSymbol = numerics::ProductField<LatticeTag>;
// Sequences on a window are fields on the window grid.
using LatticeSequence = SampledField;

// sum_m e^{-2 pi i m.xi} f(m)
SampledField lattice_dft(const LatticeSequence& f, const GridPtr& xi_grid);

// f(n') = sum_xi w(xi) e^{i phi(n',xi)} a(n',xi) (F f)(xi)
LatticeSequence lattice_fio_apply(const PhaseSpec& phi, const LatticeSymbol& a, const LatticeSequence& f);

// a(n',xi) = e^{-i phi(n',xi)} sum_k h_k(n') (F g_k)(-xi)
LatticeSymbol lattice_symbol_from_decomposition(const PhaseSpec& phi, const nuclear::RankOneSequence& d,
                                                const GridPtr& xi_grid);

// sum_n' sum_xi w(xi) e^{i phi(n',xi) - 2 pi i n'.xi} a(n',xi)
cplx lattice_nuclear_trace(const PhaseSpec& phi, const LatticeSymbol& a);

// M[n'][m] = sum_xi w(xi) e^{i phi(n',xi) - 2 pi i m.xi} a(n',xi)
numerics::DenseComplexMatrix lattice_matrix(const PhaseSpec& phi, const LatticeSymbol& a);

// (l^{p2}_{n'} L^{p1}_xi, L^{p1}_xi l^{p2}_{n'}) in the same layout as
// euclid::decay_norms.
euclid::MixedNorms lattice_mixed_norms(const LatticeSymbol& a, double p1, double p2);

}  // namespace nuctrace::lattice
