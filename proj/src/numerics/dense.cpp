#include "nuctrace/numerics/dense.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "nuctrace/error.hpp"
#include "nuctrace/numerics/summation.hpp"

namespace nuctrace::numerics {

DenseComplexMatrix::DenseComplexMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.cols() == 0) throw ShapeError("matrix must be non-empty");
  for (Eigen::Index j = 0; j < m_.cols(); ++j) {
    for (Eigen::Index i = 0; i < m_.rows(); ++i) {
      if (!is_finite(m_(i, j))) throw NumericError("matrix has a non-finite entry");
    }
  }
}

cplx DenseComplexMatrix::trace() const {
  if (m_.rows() != m_.cols()) throw ShapeError("trace of a non-square matrix");
  ComplexCompensatedSum acc;
  for (Eigen::Index i = 0; i < m_.rows(); ++i) acc.add(m_(i, i));
  return acc.value();
}

std::vector<cplx> DenseComplexMatrix::apply(std::span<const cplx> v) const {
  if (v.size() != cols()) throw ShapeError("matrix-vector product: length mismatch");
  std::vector<cplx> out(rows());
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    ComplexCompensatedSum acc;
    for (Eigen::Index j = 0; j < m_.cols(); ++j) acc.add(m_(i, j) * v[static_cast<std::size_t>(j)]);
    out[static_cast<std::size_t>(i)] = acc.value();
  }
  return out;
}

double DenseComplexMatrix::norm_inf() const {
  return m_.cwiseAbs().rowwise().sum().maxCoeff();
}

cplx compensated_total(std::span<const cplx> values) {
  ComplexCompensatedSum acc;
  for (const cplx z : values) acc.add(z);
  return acc.value();
}

void sort_spectrum(std::vector<cplx>& values) {
  std::sort(values.begin(), values.end(),
            [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
  double scale = 1.0;
  for (const cplx z : values) scale = std::max(scale, std::abs(z));
  const double tie = 1e-12 * scale;
  auto first = values.begin();
  while (first != values.end()) {
    auto last = first + 1;
    while (last != values.end() && std::abs(*(last - 1)) - std::abs(*last) <= tie) ++last;
    std::stable_sort(first, last, [](cplx a, cplx b) { return std::arg(a) < std::arg(b); });
    first = last;
  }
}

std::vector<cplx> dense_eigenvalues(const DenseComplexMatrix& m, EigenOptions options) {
  if (m.rows() != m.cols()) {
    throw ShapeError("dense_eigenvalues: matrix is " + std::to_string(m.rows()) + " x " +
                     std::to_string(m.cols()));
  }
  const auto n = static_cast<Eigen::Index>(m.rows());
  const Eigen::Index cap = static_cast<Eigen::Index>(options.iterations_per_dimension) * n;
  // Hessenberg reduction followed by shifted complex QR (Eigen's ComplexSchur).
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver;
  solver.setMaxIterations(cap);
  solver.compute(m.eigen(), /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericError("dense_eigenvalues: QR iteration did not converge within the cap of " +
                       std::to_string(cap) + " iterations");
  }
  std::vector<cplx> values(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  sort_spectrum(values);
  return values;
}

}  // namespace nuctrace::numerics
