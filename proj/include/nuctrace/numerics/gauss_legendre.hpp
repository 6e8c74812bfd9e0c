#pragma once

#include <cstddef>
#include <vector>

namespace nuctrace::numerics {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule mapped to [lo, hi], nodes ascending.
QuadratureRule gauss_legendre(std::size_t n, double lo, double hi);

// Periodic trapezoid rule: n equal weights at lo + i*(hi-lo)/n.
QuadratureRule periodic_trapezoid(std::size_t n, double lo, double hi);

}  // namespace nuctrace::numerics
