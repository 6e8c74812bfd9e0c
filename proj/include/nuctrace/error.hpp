#pragma once

#include <stdexcept>
#include <string>

namespace nuctrace {

// Root of every error raised by the library. Callers that only care about
// "the computation was refused" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched spatial dimensions (e.g. a 2-D field fed to a 1-D grid).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Parameter outside its admissible range (exponents, tau, k_pi, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Fields, kernels or symbols living on incompatible grids, or a grid too
// coarse for the integrand it has to resolve.
class GridError : public Error {
 public:
  using Error::Error;
};

// Matrix shape errors.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Iterative numerics that failed (non-convergence, non-finite results).
class NumericError : public Error {
 public:
  using Error::Error;
};

// Off-grid evaluation outside the truncated box where the sampled function
// is not negligible.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// Matrix phase that is singular or too ill-conditioned to invert.
class ConditionError : public Error {
 public:
  using Error::Error;
};

// A structural invariant of a domain object does not hold.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Configuration that does not parse or does not satisfy its schema.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace nuctrace
