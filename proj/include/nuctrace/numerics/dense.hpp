#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "nuctrace/numerics/types.hpp"

namespace nuctrace::numerics {

// Finite complex matrix. Thin immutable wrapper over Eigen storage; use
// eigen() for linear algebra.
class DenseComplexMatrix {
 public:
  explicit DenseComplexMatrix(Eigen::MatrixXcd m);

  std::size_t rows() const { return static_cast<std::size_t>(m_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(m_.cols()); }
  cplx operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXcd& eigen() const { return m_; }

  // Compensated sum of the diagonal; requires a square matrix.
  cplx trace() const;
  std::vector<cplx> apply(std::span<const cplx> v) const;
  // Maximum absolute row sum.
  double norm_inf() const;

 private:
  Eigen::MatrixXcd m_;
};

struct EigenOptions {
  // QR sweeps allowed per matrix dimension.
  int iterations_per_dimension = 100;
};

// All eigenvalues with multiplicity, ordered by descending modulus; values
// whose moduli agree to 1e-12 relative are ordered by ascending argument.
std::vector<cplx> dense_eigenvalues(const DenseComplexMatrix& m, EigenOptions options = {});

// The ordering used by dense_eigenvalues, exposed for comparing spectra.
void sort_spectrum(std::vector<cplx>& values);

cplx compensated_total(std::span<const cplx> values);

}  // namespace nuctrace::numerics
