#include <filesystem>
#include <fstream>
#include <sstream>

#include "nuctrace/cli/runner.hpp"
#include "nuctrace/error.hpp"
#include "nuctrace/numerics/dense.hpp"
#include "support.hpp"

using namespace nuctrace;
using namespace nuctrace::cli;
namespace fs = std::filesystem;

namespace {

std::string bundled(const std::string& name) { return std::string(SCENARIO_DIR) + "/" + name + ".json"; }

std::string message_of(const json& doc) {
  try {
    parse_scenario(doc);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

cplx read_complex(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("nuctrace_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("parser") {
  TEST_CASE("defaults") {
    const auto s = parse_scenario(json{{"setting", "lattice"}, {"symbol", "identity"}});
    CHECK(s.setting == "lattice");
    CHECK(s.window.radius == 3);
    CHECK(s.symbol == "identity");
    CHECK(s.phase.kind == "linear");
    CHECK(s.quantize.taus.size() == 4);
    CHECK(!s.seed);
  }

  TEST_CASE("unknown settings list the valid ones") {
    const auto msg = message_of(json{{"setting", "banach"}});
    CHECK(msg.find("banach") != std::string::npos);
    for (const auto& s : kSettings) CHECK(msg.find(s) != std::string::npos);
  }

  TEST_CASE("strict keys and types") {
    CHECK(message_of(json{{"setting", "euclid"}, {"foo", 1}}).find("foo") != std::string::npos);
    CHECK(message_of(json{{"setting", "euclid"}, {"grid", {{"count", "many"}}}}).find("grid") != std::string::npos);
    CHECK(!message_of(json{{"setting", "euclid"}, {"grid", {{"lo", 1.0}, {"hi", 0.0}}}}).empty());
    CHECK(!message_of(json::parse(R"({"setting": "euclid", "decomposition": {"terms": [{"h": {"family": "bessel"},
                                     "g": {"family": "gaussian"}}]}})"))
               .empty());
    CHECK(!message_of(json{{"setting", "euclid"}, {"phase", {{"kind", "quadratic"}}}}).empty());
    CHECK(!message_of(json{{"setting", "su2"}, {"group", {{"chart", "hopf"}}}}).empty());
    CHECK(!message_of(json{{"setting", "euclid"}, {"symbol", "projector"}}).empty());
    CHECK(!message_of(json::array()).empty());
    CHECK(message_of(json{{"setting", "euclid"}, {"grid", {{"dimension", 2}}}, {"p", 2}}).find("decomposition") !=
          std::string::npos);
  }

  TEST_CASE("random corpora need a seed") {
    const auto doc = json::parse(R"({"setting": "lattice", "decomposition": {"random": {"terms": 3}}})");
    CHECK(message_of(doc).find("seed") != std::string::npos);
    auto seeded = doc;
    seeded["seed"] = 5;
    CHECK(message_of(seeded).empty());
  }

  TEST_CASE("file errors") {
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ValidationError);
    const auto dir = scratch("bad_json");
    std::ofstream(dir / "bad.json") << "{\"setting\": ";
    CHECK_THROWS_AS(load_scenario((dir / "bad.json").string()), ValidationError);
  }

  TEST_CASE("every bundled scenario parses") {
    for (const auto& entry : fs::directory_iterator(SCENARIO_DIR)) {
      if (entry.path().extension() != ".json") continue;
      CAPTURE(entry.path().string());
      const auto s = load_scenario(entry.path().string());
      CHECK(s.name == entry.path().stem().string());
    }
  }
}

TEST_SUITE("runner") {
  TEST_CASE("bundled traces") {
    const auto g = run_trace(load_scenario(bundled("gaussian_rank1")));
    CHECK(std::abs(g.nuclear_trace - std::sqrt(0.5)) <= 1e-5);
    CHECK(g.discrepancy_trace_vs_matrix <= 1e-5);
    CHECK(g.discrepancy_trace_vs_eigensum <= 1e-5);
    CHECK(g.discrepancy_matrix_vs_eigensum <= 1e-5);
    const auto l = run_trace(load_scenario(bundled("lattice_identity")));
    CHECK(std::abs(l.nuclear_trace - 7.0) <= 1e-12);
    CHECK(std::abs(l.matrix_trace - 7.0) <= 1e-12);
    const auto s = run_trace(load_scenario(bundled("su2_identity_L1")));
    CHECK(std::abs(s.nuclear_trace - 14.0) <= 1e-6);
    CHECK(std::abs(s.eigensum - 14.0) <= 1e-6);
  }

  TEST_CASE("report fields") {
    const auto r = run_trace(load_scenario(bundled("lattice_random")));
    const auto j = report_json(r, "lattice_random");
    for (const char* key : {"setting", "nuclear_trace", "matrix_trace", "eigenvalues", "quasinorm_bound",
                            "mixed_norm_x_first", "mixed_norm_xi_first", "discrepancy_trace_vs_matrix",
                            "discrepancy_trace_vs_eigensum", "runtime_ms"}) {
      CHECK(j.contains(key));
    }
    CHECK(j.at("setting") == "lattice");
    CHECK(!report_payload(r, "lattice_random").contains("runtime_ms"));

    const cplx nt = read_complex(j.at("nuclear_trace"));
    const cplx mt = read_complex(j.at("matrix_trace"));
    std::vector<cplx> ev;
    for (const auto& e : j.at("eigenvalues")) ev.push_back(read_complex(e));
    const cplx es = numerics::compensated_total(ev);
    CHECK(std::abs(j.at("discrepancy_trace_vs_matrix").get<double>() - std::abs(nt - mt)) <= 1e-15);
    CHECK(std::abs(j.at("discrepancy_trace_vs_eigensum").get<double>() - std::abs(nt - es)) <= 1e-15);
  }

  TEST_CASE("determinism") {
    for (const char* name : {"lattice_random", "torus_trigpoly", "homog_torus_random", "su2_coefficients"}) {
      CAPTURE(name);
      const auto s = load_scenario(bundled(name));
      CHECK(report_payload(run_trace(s), name).dump() == report_payload(run_trace(s), name).dump());
    }
  }

  TEST_CASE("spectrum csv") {
    const auto csv = spectrum_csv({{3.0, 0.0}, {0.0, -2.0}, {1.0, 1.0}});
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "index,re,im,modulus");
    std::getline(in, line);
    CHECK(line.rfind("0,3", 0) == 0);
    int rows = 0;
    while (std::getline(in, line)) rows += !line.empty();
    CHECK(rows == 2);
  }

  TEST_CASE("verify") {
    const auto ok = verify(load_scenario(bundled("lattice_identity")), 1e-8);
    CHECK(ok.failures.empty());
    const auto bad = verify(load_scenario(bundled("gaussian_rank1")), 0.0);
    REQUIRE(!bad.failures.empty());
    CHECK(bad.failures.front().find("discrepancy") != std::string::npos);
  }

  TEST_CASE("verbs and exit codes") {
    const auto dir = scratch("verbs");
    std::ostringstream log;
    RunOptions opt;
    opt.out_dir = dir.string();
    CHECK(run_verb("trace", bundled("lattice_identity"), opt, log) == kExitOk);
    CHECK(fs::exists(dir / "lattice_identity.json"));
    opt.format = "csv";
    CHECK(run_verb("spectrum", bundled("lattice_identity"), opt, log) == kExitOk);
    CHECK(fs::exists(dir / "lattice_identity.spectrum.csv"));
    opt.format = "json";
    CHECK(run_verb("decompose", bundled("lattice_random"), opt, log) == kExitOk);
    CHECK(fs::exists(dir / "lattice_random.decompose.json"));
    opt.tolerance = 0.0;
    CHECK(run_verb("verify", bundled("torus_trigpoly"), opt, log) == kExitNumeric);
    CHECK(run_verb("trace", (dir / "missing.json").string(), opt, log) == kExitValidation);
    CHECK(run_verb("integrate", bundled("lattice_identity"), opt, log) == kExitValidation);
    std::ofstream(dir / "banach.json") << R"({"setting": "banach"})";
    CHECK(run_verb("trace", (dir / "banach.json").string(), opt, log) == kExitValidation);
    CHECK(log.str().find("valid settings") != std::string::npos);

    CHECK(exit_code_for(ValidationError("x")) == kExitValidation);
    CHECK(exit_code_for(DomainError("x")) == kExitValidation);
    CHECK(exit_code_for(GridError("x")) == kExitValidation);
    CHECK(exit_code_for(NumericError("x")) == kExitNumeric);
    CHECK(exit_code_for(ConditionError("x")) == kExitNumeric);
    CHECK(exit_code_for(std::runtime_error("x")) == kExitNumeric);
  }
}
