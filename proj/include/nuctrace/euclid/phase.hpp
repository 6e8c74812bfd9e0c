#pragma once

#include <vector>

#include "nuctrace/numerics/field.hpp"

namespace nuctrace::euclid {

using numerics::GridPtr;
using numerics::UniformGrid;

struct PhaseTag {};
using SampledPhase = numerics::ProductField<PhaseTag, double>;

// Real phase phi(x, xi) of a Fourier integral operator.
//   linear  - phi = 2 pi (x + shift).xi + offset  (shift 0, offset 0: the
//             pseudo-differential case)
//   sampled - phi given at every node pair of an x-grid and a xi-grid
class PhaseSpec {
 public:
  enum class Kind { linear, sampled };

  static PhaseSpec linear(std::vector<double> shift = {}, double offset = 0.0);
  static PhaseSpec sampled(SampledPhase values);

  Kind kind() const { return kind_; }
  const std::vector<double>& shift() const { return shift_; }
  double offset() const { return offset_; }

  // Checks that the phase can be evaluated on the given grid pair.
  void require_compatible(const UniformGrid& x_grid, const UniformGrid& xi_grid) const;

  // phi(x_i, xi_j)
  double value(const UniformGrid& x_grid, std::size_t i, const UniformGrid& xi_grid, std::size_t j) const;
  // phi(x_i, xi_j) - 2 pi x_i.xi_j, evaluated without cancellation for the
  // linear kind.
  double reduced(const UniformGrid& x_grid, std::size_t i, const UniformGrid& xi_grid, std::size_t j) const;

 private:
  PhaseSpec() = default;
  Kind kind_ = Kind::linear;
  std::vector<double> shift_;
  double offset_ = 0.0;
  std::shared_ptr<const SampledPhase> values_;
};

}  // namespace nuctrace::euclid
