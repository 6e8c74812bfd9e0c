#pragma once

#include <cmath>

#include "nuctrace/numerics/types.hpp"

namespace nuctrace::numerics {

// Neumaier's variant of Kahan summation. All quadratures in the library
// accumulate through this type in ascending node order, which makes every
// reduction bit-reproducible for a fixed grid.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

class ComplexCompensatedSum {
 public:
  void add(cplx z) {
    re_.add(z.real());
    im_.add(z.imag());
  }

  cplx value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

}  // namespace nuctrace::numerics
