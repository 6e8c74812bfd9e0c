#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nuctrace/cli/scenario.hpp"
#include "nuctrace/nuclear/report.hpp"

namespace nuctrace::cli {

struct RunOptions {
  std::string out_dir = ".";
  std::string format = "json";  // json | csv
  double tolerance = 1e-5;
};

inline const std::vector<std::string> kVerbs{"trace", "spectrum", "decompose", "wigner",
                                             "quantize", "verify", "haar-check"};

// Exit codes of run_verb.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumeric = 3;

// The trace experiment of a scenario: nuclear trace, matrix trace and
// spectrum of the discretized operator, with norms and gaps.
nuclear::TraceReport run_trace(const Scenario& s);

json complex_json(cplx z);
json report_json(const nuclear::TraceReport& r, const std::string& name);
// The report without its timing field; equal across re-runs.
json report_payload(const nuclear::TraceReport& r, const std::string& name);
// index,re,im,modulus
std::string spectrum_csv(const std::vector<cplx>& eigenvalues);

json decompose_summary(const Scenario& s);
json wigner_summary(const Scenario& s);
json quantize_summary(const Scenario& s);
json haar_check(const Scenario& s);

struct VerifyResult {
  nuclear::TraceReport report;
  std::vector<std::string> failures;
};
VerifyResult verify(const Scenario& s, double tolerance);

// Runs one verb on a config file and writes its output under options.out_dir.
// Errors are reported on log and mapped to the exit codes above.
int run_verb(const std::string& verb, const std::string& config_path, const RunOptions& options, std::ostream& log);

// Exit code for a library error.
int exit_code_for(const std::exception& e);

}  // namespace nuctrace::cli
