#include "nuctrace/nuclear/report.hpp"

#include "nuctrace/numerics/dense.hpp"

namespace nuctrace::nuclear {

void TraceReport::update_discrepancies() {
  eigensum = numerics::compensated_total(eigenvalues);
  discrepancy_trace_vs_matrix = std::abs(nuclear_trace - matrix_trace);
  discrepancy_trace_vs_eigensum = std::abs(nuclear_trace - eigensum);
  discrepancy_matrix_vs_eigensum = std::abs(matrix_trace - eigensum);
}

}  // namespace nuctrace::nuclear
