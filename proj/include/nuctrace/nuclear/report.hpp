#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nuctrace/numerics/types.hpp"

namespace nuctrace::nuclear {

// Outcome of one trace experiment. The discrepancies are derived fields:
// call update_discrepancies() after filling the values.
struct TraceReport {
  std::string setting;
  cplx nuclear_trace{};
  cplx matrix_trace{};
  std::vector<cplx> eigenvalues;
  cplx eigensum{};
  double quasinorm_bound = 0.0;
  double mixed_norm_x_first = 0.0;
  double mixed_norm_xi_first = 0.0;
  double discrepancy_trace_vs_matrix = 0.0;
  double discrepancy_trace_vs_eigensum = 0.0;
  double discrepancy_matrix_vs_eigensum = 0.0;
  std::optional<double> implied_r;
  double runtime_ms = 0.0;

  // Recomputes eigensum from the eigenvalue list and the three gaps.
  void update_discrepancies();
};

}  // namespace nuctrace::nuclear
