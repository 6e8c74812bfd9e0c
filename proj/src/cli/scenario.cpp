#include "nuctrace/cli/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "nuctrace/error.hpp"

namespace nuctrace::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError((path.empty() ? std::string("config") : path) + ": " + what);
}

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!ok.count(key)) {
      std::string list;
      for (const auto& k : ok) list += (list.empty() ? "" : ", ") + k;
      fail(path, "unknown key '" + key + "' (allowed: " + list + ")");
    }
  }
}

std::string sub(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

long long integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long long>();
}

std::size_t count(const json& j, const std::string& path, long long min) {
  const long long v = integer(j, path);
  if (v < min) fail(path, "must be >= " + std::to_string(min));
  return static_cast<std::size_t>(v);
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::string choice(const json& j, const std::string& path, std::initializer_list<const char*> options) {
  const std::string v = text(j, path);
  std::string list;
  for (const char* o : options) {
    if (v == o) return v;
    list += (list.empty() ? "" : ", ") + std::string(o);
  }
  fail(path, "'" + v + "' is not one of: " + list);
}

cplx complex_value(const json& j, const std::string& path) {
  if (j.is_number()) return {number(j, path), 0.0};
  only_keys(j, path, {"re", "im"});
  cplx c{};
  if (j.contains("re")) c.real(number(j["re"], sub(path, "re")));
  if (j.contains("im")) c.imag(number(j["im"], sub(path, "im")));
  return c;
}

std::vector<double> numbers(const json& j, const std::string& path) {
  if (j.is_number()) return {number(j, path)};
  if (!j.is_array()) fail(path, "expected a number or an array of numbers");
  std::vector<double> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

template <class T>
void read(const json& j, const char* key, const std::string& path, T& out, T (*conv)(const json&, const std::string&)) {
  if (j.contains(key)) out = conv(j[key], sub(path, key));
}

FunctionSpec parse_function(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("family")) fail(path, "function needs a 'family'");
  FunctionSpec f;
  f.family = choice(j["family"], sub(path, "family"),
                    {"gaussian", "hermite", "delta", "trigpoly", "constant", "coefficient"});
  if (j.contains("scale")) f.scale = complex_value(j["scale"], sub(path, "scale"));
  if (f.family == "gaussian") {
    only_keys(j, path, {"family", "center", "width", "scale"});
    if (j.contains("center")) f.center = numbers(j["center"], sub(path, "center"));
    if (j.contains("width")) f.width = number(j["width"], sub(path, "width"));
    if (!(f.width > 0.0)) fail(sub(path, "width"), "must be > 0");
  } else if (f.family == "hermite") {
    only_keys(j, path, {"family", "k", "scale"});
    if (!j.contains("k")) fail(path, "hermite needs 'k'");
    f.k = static_cast<int>(count(j["k"], sub(path, "k"), 0));
    if (f.k > 40) fail(sub(path, "k"), "must be <= 40");
  } else if (f.family == "delta") {
    only_keys(j, path, {"family", "node", "scale"});
    if (!j.contains("node")) fail(path, "delta needs 'node'");
    const json& n = j["node"];
    if (n.is_array()) {
      for (std::size_t i = 0; i < n.size(); ++i) f.node.push_back(integer(n[i], sub(path, "node") + "[" + std::to_string(i) + "]"));
    } else {
      f.node.push_back(integer(n, sub(path, "node")));
    }
  } else if (f.family == "trigpoly") {
    only_keys(j, path, {"family", "coeffs", "scale"});
    if (!j.contains("coeffs") || !j["coeffs"].is_array()) fail(path, "trigpoly needs a 'coeffs' array");
    for (std::size_t i = 0; i < j["coeffs"].size(); ++i) {
      const std::string p = sub(path, "coeffs") + "[" + std::to_string(i) + "]";
      const json& c = j["coeffs"][i];
      only_keys(c, p, {"k", "re", "im"});
      if (!c.contains("k")) fail(p, "coefficient needs 'k'");
      TrigCoeff t;
      for (const double v : numbers(c["k"], sub(p, "k"))) {
        if (v != std::floor(v)) fail(sub(p, "k"), "frequencies must be integers");
        t.k.push_back(static_cast<int>(v));
      }
      if (c.contains("re")) t.c.real(number(c["re"], sub(p, "re")));
      if (c.contains("im")) t.c.imag(number(c["im"], sub(p, "im")));
      f.coeffs.push_back(std::move(t));
    }
  } else if (f.family == "constant") {
    only_keys(j, path, {"family", "c", "scale"});
    if (j.contains("c")) f.value = complex_value(j["c"], sub(path, "c"));
  } else {
    only_keys(j, path, {"family", "twoL", "row", "col", "scale"});
    if (j.contains("twoL")) f.twoL = static_cast<int>(count(j["twoL"], sub(path, "twoL"), 0));
    if (j.contains("row")) f.row = static_cast<int>(count(j["row"], sub(path, "row"), 0));
    if (j.contains("col")) f.col = static_cast<int>(count(j["col"], sub(path, "col"), 0));
    if (f.row > f.twoL || f.col > f.twoL) fail(path, "row and col must be <= twoL");
  }
  return f;
}

GridSpec parse_grid(const json& j, const std::string& path) {
  only_keys(j, path, {"dimension", "lo", "hi", "count"});
  GridSpec g;
  if (j.contains("dimension")) g.dimension = count(j["dimension"], sub(path, "dimension"), 1);
  if (j.contains("lo")) g.lo = number(j["lo"], sub(path, "lo"));
  if (j.contains("hi")) g.hi = number(j["hi"], sub(path, "hi"));
  if (j.contains("count")) g.count = count(j["count"], sub(path, "count"), 2);
  if (!(g.hi > g.lo)) fail(path, "need hi > lo");
  if (g.dimension > 2) fail(sub(path, "dimension"), "Euclidean grids are limited to dimension <= 2");
  return g;
}

PhaseConfig parse_phase(const json& j, const std::string& path) {
  only_keys(j, path, {"kind", "shift", "offset", "amplitude"});
  PhaseConfig p;
  if (j.contains("kind")) p.kind = choice(j["kind"], sub(path, "kind"), {"linear", "perturbed", "representation", "identity"});
  if (j.contains("shift")) p.shift = numbers(j["shift"], sub(path, "shift"));
  if (j.contains("offset")) p.offset = number(j["offset"], sub(path, "offset"));
  if (j.contains("amplitude")) p.amplitude = number(j["amplitude"], sub(path, "amplitude"));
  return p;
}

DecompositionSpec parse_decomposition(const json& j, const std::string& path) {
  only_keys(j, path, {"terms", "random", "p1", "p2", "r"});
  DecompositionSpec d;
  if (j.contains("terms")) {
    if (!j["terms"].is_array()) fail(sub(path, "terms"), "expected an array");
    for (std::size_t i = 0; i < j["terms"].size(); ++i) {
      const std::string p = sub(path, "terms") + "[" + std::to_string(i) + "]";
      const json& t = j["terms"][i];
      only_keys(t, p, {"h", "g"});
      if (!t.contains("h") || !t.contains("g")) fail(p, "term needs 'h' and 'g'");
      d.terms.push_back({parse_function(t["h"], sub(p, "h")), parse_function(t["g"], sub(p, "g"))});
    }
  }
  if (j.contains("random")) {
    const std::string p = sub(path, "random");
    only_keys(j["random"], p, {"terms"});
    RandomSpec r;
    if (j["random"].contains("terms")) r.terms = count(j["random"]["terms"], sub(p, "terms"), 1);
    d.random = r;
  }
  if (j.contains("p1")) d.p1 = number(j["p1"], sub(path, "p1"));
  if (j.contains("p2")) d.p2 = number(j["p2"], sub(path, "p2"));
  if (j.contains("r")) d.r = number(j["r"], sub(path, "r"));
  if (d.p1 < 1.0 || d.p2 < 1.0) fail(path, "exponents p1, p2 must be >= 1");
  if (!(d.r > 0.0 && d.r <= 1.0)) fail(sub(path, "r"), "must lie in (0, 1]");
  return d;
}

}  // namespace

Scenario parse_scenario(const json& doc) {
  only_keys(doc, "", {"name", "setting", "seed", "grid", "xi_grid", "window", "torus", "group", "instance",
                      "phase", "symbol", "decomposition", "p", "quantize", "wigner"});
  Scenario s;
  if (!doc.contains("setting")) fail("setting", "missing (valid settings: euclid, lattice, torus, su2, homog)");
  s.setting = text(doc["setting"], "setting");
  if (std::find(kSettings.begin(), kSettings.end(), s.setting) == kSettings.end()) {
    fail("setting", "unknown setting '" + s.setting + "' (valid settings: euclid, lattice, torus, su2, homog)");
  }
  s.name = doc.contains("name") ? text(doc["name"], "name") : s.setting;
  if (doc.contains("seed")) s.seed = static_cast<std::uint64_t>(count(doc["seed"], "seed", 0));
  if (doc.contains("grid")) s.grid = parse_grid(doc["grid"], "grid");
  if (doc.contains("xi_grid")) s.xi_grid = parse_grid(doc["xi_grid"], "xi_grid");
  if (doc.contains("window")) {
    const json& w = doc["window"];
    only_keys(w, "window", {"dimension", "radius", "xi_count"});
    if (w.contains("dimension")) s.window.dimension = count(w["dimension"], "window.dimension", 1);
    if (w.contains("radius")) s.window.radius = static_cast<int>(count(w["radius"], "window.radius", 0));
    if (w.contains("xi_count")) s.window.xi_count = count(w["xi_count"], "window.xi_count", 1);
  }
  if (doc.contains("torus")) {
    const json& t = doc["torus"];
    only_keys(t, "torus", {"dimension", "count", "cutoff"});
    if (t.contains("dimension")) s.torus.dimension = count(t["dimension"], "torus.dimension", 1);
    if (t.contains("count")) s.torus.count = count(t["count"], "torus.count", 1);
    if (t.contains("cutoff")) s.torus.cutoff = static_cast<int>(count(t["cutoff"], "torus.cutoff", 0));
  }
  if (doc.contains("group")) {
    const json& g = doc["group"];
    only_keys(g, "group", {"chart", "resolution", "phi_resolution", "cutoff_twoL"});
    if (g.contains("chart")) s.group.chart = choice(g["chart"], "group.chart", {"euler", "s3", "su3"});
    if (g.contains("resolution")) s.group.resolution = count(g["resolution"], "group.resolution", 2);
    if (g.contains("phi_resolution")) s.group.phi_resolution = count(g["phi_resolution"], "group.phi_resolution", 3);
    if (g.contains("cutoff_twoL")) s.group.cutoff_twoL = static_cast<int>(count(g["cutoff_twoL"], "group.cutoff_twoL", 0));
  }
  if (doc.contains("instance")) {
    const json& i = doc["instance"];
    only_keys(i, "instance", {"kind", "k"});
    if (i.contains("kind")) s.instance.kind = choice(i["kind"], "instance.kind", {"torus", "su2"});
    if (i.contains("k")) {
      if (!i["k"].is_array()) fail("instance.k", "expected an array of integers");
      for (std::size_t n = 0; n < i["k"].size(); ++n) {
        s.instance.k.push_back(static_cast<int>(count(i["k"][n], "instance.k[" + std::to_string(n) + "]", 1)));
      }
    }
  }
  if (doc.contains("phase")) s.phase = parse_phase(doc["phase"], "phase");
  if (doc.contains("symbol")) s.symbol = choice(doc["symbol"], "symbol", {"decomposition", "identity", "zero"});
  if (doc.contains("decomposition")) s.decomposition = parse_decomposition(doc["decomposition"], "decomposition");
  if (doc.contains("p")) {
    s.p = number(doc["p"], "p");
    if (s.p < 1.0) fail("p", "must be >= 1");
  }
  if (doc.contains("quantize")) {
    const json& q = doc["quantize"];
    only_keys(q, "quantize", {"taus", "test_functions", "f_stride"});
    if (q.contains("taus")) s.quantize.taus = numbers(q["taus"], "quantize.taus");
    for (const double t : s.quantize.taus) {
      if (!(t > 0.0 && t <= 1.0)) fail("quantize.taus", "every tau must lie in (0, 1]");
    }
    if (q.contains("test_functions")) {
      if (!q["test_functions"].is_array()) fail("quantize.test_functions", "expected an array");
      for (std::size_t i = 0; i < q["test_functions"].size(); ++i) {
        s.quantize.test_functions.push_back(
            parse_function(q["test_functions"][i], "quantize.test_functions[" + std::to_string(i) + "]"));
      }
    }
    if (q.contains("f_stride")) s.quantize.f_stride = count(q["f_stride"], "quantize.f_stride", 1);
  }
  if (doc.contains("wigner")) {
    const json& w = doc["wigner"];
    only_keys(w, "wigner", {"tau"});
    if (w.contains("tau")) s.wigner_tau = number(w["tau"], "wigner.tau");
    if (!(s.wigner_tau > 0.0 && s.wigner_tau <= 1.0)) fail("wigner.tau", "must lie in (0, 1]");
  }
  if (s.symbol == "decomposition") {
    if (!s.decomposition) fail("decomposition", "required when symbol is 'decomposition'");
    if (s.decomposition->random && !s.seed) fail("seed", "a random decomposition needs an integer seed");
    if (s.decomposition->terms.empty() && !s.decomposition->random) {
      // an empty decomposition is a legitimate (zero) operator
    }
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_scenario(doc);
}

}  // namespace nuctrace::cli
