#include "nuctrace/numerics/norms.hpp"

#include <algorithm>

#include "nuctrace/numerics/fourier.hpp"

namespace nuctrace::numerics {

double conjugate_exponent(double p) {
  if (p < 1.0) throw DomainError("conjugate_exponent: p must be >= 1");
  if (p == 1.0) return kInfinity;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double weighted_lp(std::span<const cplx> values, std::span<const double> weights, double p) {
  if (p < 1.0 || !std::isfinite(p)) throw DomainError("p-norm requires 1 <= p < infinity");
  CompensatedSum acc;
  if (p == 2.0) {
    for (std::size_t i = 0; i < values.size(); ++i) acc.add(weights[i] * std::norm(values[i]));
    return std::sqrt(acc.value());
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    acc.add(weights[i] * std::pow(std::abs(values[i]), p));
  }
  return std::pow(acc.value(), 1.0 / p);
}

double lp_norm(const SampledField& f, double p) {
  if (p < 1.0) throw DomainError("lp_norm: p must be >= 1, got " + std::to_string(p));
  return weighted_lp(f.values(), f.grid().weights(), p);
}

double sup_norm(const SampledField& f) {
  double m = 0.0;
  for (const cplx z : f.values()) m = std::max(m, std::abs(z));
  return m;
}

double lp_or_sup_norm(const SampledField& f, double p) {
  return std::isinf(p) ? sup_norm(f) : lp_norm(f, p);
}

double hausdorff_young_ratio(const SampledField& f, double p, const GridPtr& xi_grid) {
  if (!(p > 1.0 && p <= 2.0)) {
    throw DomainError("hausdorff_young_ratio: need 1 < p <= 2, got " + std::to_string(p));
  }
  const double denom = lp_norm(f, p);
  if (denom == 0.0) throw DomainError("hausdorff_young_ratio: ||f||_p = 0, ratio undefined");
  const SampledField ff = dft_forward(f, xi_grid);
  return lp_norm(ff, conjugate_exponent(p)) / denom;
}

double hausdorff_young_ratio(const SampledField& f, double p) {
  return hausdorff_young_ratio(f, p, f.grid_ptr());
}

}  // namespace nuctrace::numerics
