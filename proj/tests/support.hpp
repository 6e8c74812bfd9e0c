#pragma once

#include <cmath>

#include "doctest.h"
#include "nuctrace/numerics/field.hpp"
#include "nuctrace/numerics/rng.hpp"

namespace support {

using nuctrace::cplx;
using nuctrace::kPi;
using nuctrace::kTwoPi;
using nuctrace::numerics::GridPtr;
using nuctrace::numerics::SampledField;
using nuctrace::numerics::UniformGrid;

inline GridPtr box(std::size_t n, double lo, double hi, std::size_t count) {
  return nuctrace::numerics::make_grid(UniformGrid::box(n, lo, hi, count));
}

inline double gauss(double x) { return std::exp(-kPi * x * x); }

inline SampledField gaussian(const GridPtr& g, double center = 0.0, double width = 1.0) {
  return SampledField::from_function(g, [&](auto x) {
    double r2 = 0.0;
    for (const double v : x) r2 += (v - center) * (v - center);
    return std::exp(-kPi * r2 / (width * width));
  });
}

inline SampledField random_field(const GridPtr& g, nuctrace::numerics::SeededRng& rng) {
  std::vector<cplx> v(g->size());
  for (auto& z : v) z = rng.complex_normal();
  return SampledField(g, std::move(v));
}

template <class A, class B>
double max_diff(const A& a, const B& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(cplx(a[i]) - cplx(b[i])));
  return m;
}

}  // namespace support
