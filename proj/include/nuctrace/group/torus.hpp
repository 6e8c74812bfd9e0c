#pragma once

#include "nuctrace/euclid/fio.hpp"

namespace nuctrace::group {

using euclid::PhaseSpec;
using numerics::GridPtr;
using numerics::SampledField;

struct TorusTag {};
// a(x, l): rows are nodes of a periodic x-grid on [0,1)^n, columns the
// frequencies {-L..L}^n.
using TorusSymbol = numerics::ProductField<TorusTag>;

GridPtr frequency_window(std::size_t n, int cutoff);

// F f(x) = sum_l e^{i phi(x,l)} a(x,l) f^(l), f^(l) = sum_x w e^{-2 pi i l.x} f(x)
SampledField torus_fio_apply(const PhaseSpec& phi, const TorusSymbol& a, const SampledField& f);

// sum_x w(x) sum_l e^{i phi(x,l) - 2 pi i x.l} a(x,l)
cplx torus_nuclear_trace(const PhaseSpec& phi, const TorusSymbol& a);

// Matrix of F on the basis e^{2 pi i l.x}, |l|_inf <= L.
numerics::DenseComplexMatrix torus_matrix(const PhaseSpec& phi, const TorusSymbol& a);

// a(x,l) = e^{-i phi(x,l)} sum_k h_k(x) (F g_k)(-l)
TorusSymbol torus_symbol_from_decomposition(const PhaseSpec& phi, const nuclear::RankOneSequence& d, int cutoff);

}  // namespace nuctrace::group
