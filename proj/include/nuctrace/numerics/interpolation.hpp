#pragma once

#include <span>
#include <vector>

#include "nuctrace/numerics/grid.hpp"

namespace nuctrace::numerics {

// Behaviour for points outside a closed axis.
//   zero  - the function is taken to vanish outside the box
//   clamp - the nearest boundary value is used
enum class Extension { zero, clamp };

// Multilinear interpolation weights at one point: value = sum_k weight[k] *
// samples[index[k]]. Points within 1e-9 cells of a node collapse onto it.
struct Stencil {
  std::vector<std::size_t> index;
  std::vector<double> weight;
  bool outside = false;
};

Stencil locate(const UniformGrid& grid, std::span<const double> point, Extension ext);

// True when the node lies on a face of a closed axis.
bool on_boundary(const UniformGrid& grid, std::size_t flat);

}  // namespace nuctrace::numerics
