#pragma once

#include <cstdint>
#include "json.hpp"
#include <optional>
#include <string>
#include <vector>

#include "nuctrace/numerics/types.hpp"

namespace nuctrace::cli {

using nlohmann::json;

inline const std::vector<std::string> kSettings{"euclid", "lattice", "torus", "su2", "homog"};

struct TrigCoeff {
  std::vector<int> k;
  cplx c;
};

// A named function family with its parameters.
struct FunctionSpec {
  std::string family;
  std::vector<double> center;      // gaussian
  double width = 1.0;              // gaussian
  int k = 0;                       // hermite
  std::vector<long long> node;     // delta: flat index, or lattice point
  std::vector<TrigCoeff> coeffs;   // trigpoly
  cplx value{1.0, 0.0};            // constant
  int twoL = 0;                    // coefficient
  int row = 0;
  int col = 0;
  cplx scale{1.0, 0.0};
};

struct GridSpec {
  std::size_t dimension = 1;
  double lo = -6.0;
  double hi = 6.0;
  std::size_t count = 512;
};

struct WindowSpec {
  std::size_t dimension = 1;
  int radius = 3;
  std::optional<std::size_t> xi_count;
};

struct TorusSpec {
  std::size_t dimension = 1;
  std::size_t count = 16;
  int cutoff = 2;
};

struct GroupSpec {
  std::string chart = "euler";  // euler | s3 | su3
  std::size_t resolution = 16;
  std::size_t phi_resolution = 4;
  int cutoff_twoL = 2;
};

struct InstanceSpec {
  std::string kind = "torus";  // torus | su2
  std::vector<int> k;
};

struct PhaseConfig {
  std::string kind = "linear";  // linear | perturbed | representation | identity
  std::vector<double> shift;
  double offset = 0.0;
  double amplitude = 0.0;
};

struct RandomSpec {
  std::size_t terms = 1;
};

struct TermSpec {
  FunctionSpec h;
  FunctionSpec g;
};

struct DecompositionSpec {
  std::vector<TermSpec> terms;
  std::optional<RandomSpec> random;
  double p1 = 2.0;
  double p2 = 2.0;
  double r = 1.0;
};

struct QuantizeSpec {
  std::vector<double> taus{0.25, 0.5, 0.75, 1.0};
  std::vector<FunctionSpec> test_functions;
  std::size_t f_stride = 4;
};

struct Scenario {
  std::string name;
  std::string setting;
  std::optional<std::uint64_t> seed;
  GridSpec grid;
  std::optional<GridSpec> xi_grid;
  WindowSpec window;
  TorusSpec torus;
  GroupSpec group;
  InstanceSpec instance;
  PhaseConfig phase;
  std::string symbol = "decomposition";  // decomposition | identity | zero
  std::optional<DecompositionSpec> decomposition;
  double p = 2.0;
  QuantizeSpec quantize;
  double wigner_tau = 0.5;
};

// Strict parse: unknown keys, wrong types and out-of-range values raise
// ValidationError with the offending path.
Scenario parse_scenario(const json& doc);
Scenario load_scenario(const std::string& path);

}  // namespace nuctrace::cli
