#pragma once

#include "nuctrace/numerics/field.hpp"

namespace nuctrace::numerics {

// Quadrature approximation of  Ff(xi) = int e^{-2 pi i x.xi} f(x) dx,
// evaluated at every node of xi_grid. Direct O(N*M) summation; values are
// accumulated in ascending node order with compensated summation.
SampledField dft_forward(const SampledField& f, const GridPtr& xi_grid);

// Quadrature approximation of  F^{-1}g(x) = int e^{+2 pi i x.xi} g(xi) dxi,
// evaluated at every node of x_grid.
SampledField dft_inverse(const SampledField& g, const GridPtr& x_grid);

}  // namespace nuctrace::numerics
