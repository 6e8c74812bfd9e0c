#include "nuctrace/numerics/fourier.hpp"

#include "nuctrace/numerics/summation.hpp"

namespace nuctrace::numerics {

namespace {

SampledField fourier_sum(const SampledField& f, const GridPtr& target, double sign) {
  const UniformGrid& src = f.grid();
  if (src.dimension() != target->dimension()) {
    throw DimensionError("Fourier transform: source grid has dimension " +
                         std::to_string(src.dimension()) + ", target grid " +
                         std::to_string(target->dimension()));
  }
  const std::size_t n = src.dimension();
  std::vector<cplx> out(target->size());
  for (std::size_t j = 0; j < target->size(); ++j) {
    const auto xi = target->node(j);
    ComplexCompensatedSum acc;
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (f[i] == cplx{}) continue;
      const auto x = src.node(i);
      double dot = 0.0;
      for (std::size_t d = 0; d < n; ++d) dot += x[d] * xi[d];
      acc.add(src.weight(i) * unit_phase(sign * kTwoPi * dot) * f[i]);
    }
    out[j] = acc.value();
  }
  return SampledField(target, std::move(out));
}

}  // namespace

SampledField dft_forward(const SampledField& f, const GridPtr& xi_grid) {
  return fourier_sum(f, xi_grid, -1.0);
}

SampledField dft_inverse(const SampledField& g, const GridPtr& x_grid) {
  return fourier_sum(g, x_grid, +1.0);
}

}  // namespace nuctrace::numerics
