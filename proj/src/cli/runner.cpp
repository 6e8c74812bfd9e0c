#include "nuctrace/cli/runner.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "nuctrace/euclid/fio.hpp"
#include "nuctrace/group/su2.hpp"
#include "nuctrace/group/torus.hpp"
#include "nuctrace/homog/classi.hpp"
#include "nuctrace/homog/su3.hpp"
#include "nuctrace/lattice/lattice.hpp"
#include "nuctrace/numerics/norms.hpp"
#include "nuctrace/numerics/rng.hpp"
#include "nuctrace/quantize/quantize.hpp"

namespace nuctrace::cli {

namespace {

using euclid::MixedNorms;
using euclid::PhaseSpec;
using group::GroupRankOneSequence;
using group::GroupSymbol;
using group::GroupTerm;
using group::MatrixField;
using group::NodeFunction;
using group::QuadPtr;
using group::TablePtr;
using nuclear::Exponents;
using nuclear::RankOneSequence;
using nuclear::RankOneTerm;
using nuclear::TraceReport;
using numerics::GridPtr;
using numerics::SampledField;
using numerics::UniformGrid;
using Values = std::vector<cplx>;

// Where test functions live: grid nodes (euclid, lattice, torus) or the
// nodes of a group quadrature, with the representation table when matrix
// coefficients are available.
struct Domain {
  std::string setting;
  GridPtr grid;
  QuadPtr quad;
  TablePtr table;
  bool lattice = false;

  std::size_t size() const { return grid ? grid->size() : quad->size(); }
  double weight(std::size_t i) const { return grid ? grid->weight(i) : quad->weight(i); }
  bool has_coordinates() const { return grid || (quad && quad->chart() == group::Chart::torus); }
  std::size_t dimension() const { return grid ? grid->dimension() : quad->parameter_count(); }
  std::vector<double> coords(std::size_t i) const {
    if (grid) {
      const auto n = grid->node(i);
      return {n.begin(), n.end()};
    }
    return quad->parameters(i);
  }
};

[[noreturn]] void invalid(const std::string& msg) { throw ValidationError(msg); }

double hermite_function(int k, double x) {
  // L2-normalized Hermite functions adapted to e^{-pi x^2}.
  const double u = std::sqrt(kTwoPi) * x;
  double prev = 0.0;
  double cur = std::pow(kPi, -0.25) * std::exp(-0.5 * u * u);
  for (int n = 0; n < k; ++n) {
    const double next = std::sqrt(2.0 / (n + 1)) * u * cur - std::sqrt(static_cast<double>(n) / (n + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return std::pow(kTwoPi, 0.25) * cur;
}

Values evaluate(const FunctionSpec& f, const Domain& dom) {
  const std::size_t n = dom.size();
  Values v(n);
  const auto need_coords = [&] {
    if (!dom.has_coordinates()) {
      invalid("function family '" + f.family + "' is not available in setting '" + dom.setting + "'");
    }
  };
  if (f.family == "gaussian") {
    need_coords();
    const std::size_t dim = dom.dimension();
    std::vector<double> c = f.center;
    if (c.empty()) c.assign(dim, 0.0);
    if (c.size() == 1 && dim > 1) c.assign(dim, c[0]);
    if (c.size() != dim) invalid("gaussian center has " + std::to_string(c.size()) + " entries, domain dimension is " + std::to_string(dim));
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = dom.coords(i);
      double r2 = 0.0;
      for (std::size_t d = 0; d < dim; ++d) r2 += (x[d] - c[d]) * (x[d] - c[d]);
      v[i] = std::exp(-kPi * r2 / (f.width * f.width));
    }
  } else if (f.family == "hermite") {
    need_coords();
    for (std::size_t i = 0; i < n; ++i) {
      double p = 1.0;
      for (const double x : dom.coords(i)) p *= hermite_function(f.k, x);
      v[i] = p;
    }
  } else if (f.family == "delta") {
    std::size_t flat = 0;
    if (dom.lattice) {
      const auto& g = *dom.grid;
      if (f.node.size() != g.dimension()) invalid("delta node must be a lattice point with " + std::to_string(g.dimension()) + " coordinates");
      std::vector<std::size_t> multi(g.dimension());
      for (std::size_t d = 0; d < g.dimension(); ++d) {
        const long long off = f.node[d] - static_cast<long long>(g.axis(d).lo);
        if (off < 0 || off >= static_cast<long long>(g.axis(d).count)) invalid("delta node lies outside the window");
        multi[d] = static_cast<std::size_t>(off);
      }
      flat = g.flat_index(multi);
      v[flat] = 1.0;
    } else {
      if (f.node.size() != 1 || f.node[0] < 0 || f.node[0] >= static_cast<long long>(n)) {
        invalid("delta node must be a flat node index below " + std::to_string(n));
      }
      flat = static_cast<std::size_t>(f.node[0]);
      v[flat] = 1.0 / dom.weight(flat);
    }
  } else if (f.family == "trigpoly") {
    need_coords();
    const std::size_t dim = dom.dimension();
    for (const auto& t : f.coeffs) {
      if (t.k.size() != dim) invalid("trigpoly frequency needs " + std::to_string(dim) + " components");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = dom.coords(i);
      cplx s{};
      for (const auto& t : f.coeffs) {
        double dot = 0.0;
        for (std::size_t d = 0; d < dim; ++d) dot += t.k[d] * x[d];
        s += t.c * unit_phase(kTwoPi * dot);
      }
      v[i] = s;
    }
  } else if (f.family == "constant") {
    std::fill(v.begin(), v.end(), f.value);
  } else if (f.family == "coefficient") {
    if (!dom.table || dom.quad->chart() == group::Chart::torus) {
      invalid("function family 'coefficient' needs an SU(2) setting");
    }
    const auto p = static_cast<std::size_t>(f.twoL);
    if (p >= dom.table->irrep_count()) invalid("coefficient twoL exceeds the cutoff");
    const double s = std::sqrt(static_cast<double>(dom.table->irrep(p).dim));
    for (std::size_t x = 0; x < n; ++x) v[x] = s * dom.table->matrix(p, x)(f.row, f.col);
  } else {
    invalid("unknown function family '" + f.family + "'");
  }
  if (f.scale != cplx{1.0, 0.0}) {
    for (cplx& z : v) z *= f.scale;
  }
  return v;
}

// Randomized corpora. The draws depend only on the seed and the scenario
// parameters, never on the grid resolution.
std::vector<std::pair<Values, Values>> random_terms(const Scenario& s, const Domain& dom, std::size_t count) {
  numerics::SeededRng rng(*s.seed);
  std::vector<std::pair<Values, Values>> out;
  const auto gaussian = [&] {
    FunctionSpec f;
    f.family = "gaussian";
    for (std::size_t d = 0; d < dom.dimension(); ++d) f.center.push_back(rng.uniform(-1.5, 1.5));
    f.width = rng.uniform(0.6, 1.4);
    f.scale = rng.complex_normal();
    return evaluate(f, dom);
  };
  const auto trig = [&](int cutoff) {
    const auto win = group::frequency_window(dom.dimension(), cutoff);
    FunctionSpec f;
    f.family = "trigpoly";
    for (std::size_t l = 0; l < win->size(); ++l) {
      TrigCoeff t;
      for (const double c : win->node(l)) t.k.push_back(static_cast<int>(c));
      t.c = rng.complex_normal();
      f.coeffs.push_back(std::move(t));
    }
    return evaluate(f, dom);
  };
  const auto lattice_values = [&] {
    Values v(dom.size());
    for (cplx& z : v) z = rng.complex_normal();
    return v;
  };
  const auto series = [&] {
    const auto& t = *dom.table;
    Values v(dom.size());
    for (std::size_t p = 0; p < t.irrep_count(); ++p) {
      const auto d = static_cast<Eigen::Index>(t.irrep(p).dim);
      const double sd = std::sqrt(static_cast<double>(d));
      for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
          const cplx c = rng.complex_normal() * sd;
          for (std::size_t x = 0; x < v.size(); ++x) v[x] += c * t.matrix(p, x)(i, j);
        }
      }
    }
    return v;
  };
  for (std::size_t k = 0; k < count; ++k) {
    if (dom.setting == "euclid") {
      Values h = gaussian();
      out.push_back({std::move(h), gaussian()});
    } else if (dom.lattice) {
      Values h = lattice_values();
      out.push_back({std::move(h), lattice_values()});
    } else if (dom.quad && dom.quad->chart() != group::Chart::torus) {
      Values h = series();
      out.push_back({std::move(h), series()});
    } else {
      Values h = trig(s.torus.cutoff);
      out.push_back({std::move(h), trig(s.torus.cutoff)});
    }
  }
  return out;
}

std::vector<std::pair<Values, Values>> decomposition_values(const Scenario& s, const Domain& dom) {
  if (!s.decomposition) invalid("decomposition: required for this verb");
  std::vector<std::pair<Values, Values>> out;
  for (const auto& t : s.decomposition->terms) out.push_back({evaluate(t.h, dom), evaluate(t.g, dom)});
  if (s.decomposition->random) {
    auto r = random_terms(s, dom, s.decomposition->random->terms);
    for (auto& t : r) out.push_back(std::move(t));
  }
  return out;
}

Exponents exponents_of(const Scenario& s) {
  if (!s.decomposition) return {};
  return {s.decomposition->p1, s.decomposition->p2, s.decomposition->r};
}

RankOneSequence grid_sequence(const Scenario& s, const Domain& dom) {
  std::vector<RankOneTerm> terms;
  if (s.symbol == "decomposition") {
    for (auto& [h, g] : decomposition_values(s, dom)) {
      terms.push_back({SampledField(dom.grid, std::move(h)), SampledField(dom.grid, std::move(g))});
    }
  }
  return RankOneSequence(dom.grid, std::move(terms), exponents_of(s));
}

GroupRankOneSequence group_sequence(const Scenario& s, const Domain& dom) {
  std::vector<GroupTerm> terms;
  if (s.symbol == "decomposition") {
    for (auto& [h, g] : decomposition_values(s, dom)) terms.push_back({std::move(h), std::move(g)});
  }
  return GroupRankOneSequence(dom.quad, std::move(terms), exponents_of(s));
}

double norm_p(std::span<const cplx> v, std::span<const double> w, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (const cplx z : v) m = std::max(m, std::abs(z));
    return m;
  }
  return numerics::weighted_lp(v, w, p);
}

// Bound from the decomposition T = sum_c (T b_c) (x) <., b_c> over an
// orthonormal basis of the range of the discretized operator.
double canonical_bound(const std::vector<Values>& basis, std::span<const double> w,
                       const std::function<Values(const Values&)>& apply, const Exponents& e) {
  const double q = numerics::conjugate_exponent(e.p1);
  numerics::CompensatedSum acc;
  for (const Values& b : basis) acc.add(std::pow(norm_p(apply(b), w, e.p2) * norm_p(b, w, q), e.r));
  return std::pow(acc.value(), 1.0 / e.r);
}

std::vector<Values> table_basis(const group::RepresentationTable& t) {
  std::vector<Values> basis;
  for (std::size_t p = 0; p < t.irrep_count(); ++p) {
    const auto d = static_cast<Eigen::Index>(t.irrep(p).dim);
    const double sd = std::sqrt(static_cast<double>(d));
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        Values b(t.nodes());
        for (std::size_t x = 0; x < b.size(); ++x) b[x] = sd * t.matrix(p, x)(i, j);
        basis.push_back(std::move(b));
      }
    }
  }
  return basis;
}

MixedNorms group_mixed_norms(const MatrixField& a, const std::vector<int>& k, double p1, double p2) {
  const auto& t = a.table();
  const auto& q = t.quadrature();
  std::vector<double> coef(t.irrep_count());
  for (std::size_t p = 0; p < coef.size(); ++p) {
    coef[p] = static_cast<double>(t.irrep(p).dim) * std::pow(static_cast<double>(k[p]), p1 * (1.0 / p1 - 0.5));
  }
  MixedNorms out;
  numerics::CompensatedSum outer;
  for (std::size_t x = 0; x < t.nodes(); ++x) {
    numerics::CompensatedSum inner;
    for (std::size_t p = 0; p < coef.size(); ++p) inner.add(coef[p] * std::pow(a.at(p, x).norm(), p1));
    outer.add(q.weight(x) * std::pow(inner.value(), p2 / p1));
  }
  out.xi_first = std::pow(outer.value(), 1.0 / p2);
  numerics::CompensatedSum by_irrep;
  for (std::size_t p = 0; p < coef.size(); ++p) {
    numerics::CompensatedSum inner;
    for (std::size_t x = 0; x < t.nodes(); ++x) inner.add(q.weight(x) * std::pow(a.at(p, x).norm(), p2));
    by_irrep.add(coef[p] * std::pow(inner.value(), p1 / p2));
  }
  out.x_first = std::pow(by_irrep.value(), 1.0 / p1);
  return out;
}

PhaseSpec grid_phase(const Scenario& s, const GridPtr& xg, const GridPtr& xig) {
  const auto& pc = s.phase;
  const std::size_t n = xg->dimension();
  if (!pc.shift.empty() && pc.shift.size() != n) {
    invalid("phase.shift has " + std::to_string(pc.shift.size()) + " entries, dimension is " + std::to_string(n));
  }
  if (pc.kind == "identity") return PhaseSpec::linear();
  if (pc.kind == "linear") return PhaseSpec::linear(pc.shift, pc.offset);
  if (pc.kind == "perturbed") {
    std::vector<double> shift = pc.shift;
    shift.resize(n, 0.0);
    auto values = euclid::SampledPhase::from_function(xg, xig, [&](auto x, auto xi) {
      double lin = 0.0;
      double bump = 0.0;
      for (std::size_t d = 0; d < n; ++d) {
        lin += (x[d] + shift[d]) * xi[d];
        bump += std::cos(x[d]) * std::sin(kTwoPi * xi[d]);
      }
      return kTwoPi * lin + pc.offset + pc.amplitude * bump;
    });
    return PhaseSpec::sampled(std::move(values));
  }
  invalid("phase.kind '" + pc.kind + "' is not available in setting '" + s.setting + "' (use linear, perturbed or identity)");
}

MatrixField group_phase(const Scenario& s, const TablePtr& table) {
  if (s.phase.kind == "representation") return MatrixField::representation(table);
  if (s.phase.kind == "identity") return MatrixField::identity(table);
  invalid("phase.kind '" + s.phase.kind + "' is not available in setting '" + s.setting +
          "' (use representation or identity)");
}

GridPtr euclid_grid(const GridSpec& g) { return numerics::make_grid(UniformGrid::box(g.dimension, g.lo, g.hi, g.count)); }

GridPtr euclid_xi_grid(const Scenario& s, const GridPtr& xg) {
  if (!s.xi_grid) return xg;
  if (s.xi_grid->dimension != s.grid.dimension) invalid("xi_grid.dimension must equal grid.dimension");
  return euclid_grid(*s.xi_grid);
}

QuadPtr su2_quadrature(const GroupSpec& g) {
  if (g.chart == "euler") return group::su2_euler_quadrature(g.resolution);
  if (g.chart == "s3") return group::s3_quadrature(g.resolution);
  invalid("group.chart '" + g.chart + "' does not parametrize SU(2) (use euler or s3)");
}

void finish(TraceReport& r, const Scenario& s, const numerics::DenseComplexMatrix& m) {
  r.matrix_trace = m.trace();
  r.eigenvalues = numerics::dense_eigenvalues(m);
  r.implied_r = euclid::implied_r(s.p);
  r.update_discrepancies();
}

TraceReport euclid_trace(const Scenario& s) {
  if (s.symbol == "identity") invalid("symbol: 'identity' is not a nuclear symbol on a Euclidean box");
  Domain dom{"euclid", euclid_grid(s.grid), nullptr, nullptr, false};
  const GridPtr xig = euclid_xi_grid(s, dom.grid);
  const PhaseSpec phase = grid_phase(s, dom.grid, xig);
  const RankOneSequence d = grid_sequence(s, dom);
  TraceReport r = euclid::lidskii_report(phase, d, s.p, xig);
  return r;
}

TraceReport lattice_trace(const Scenario& s) {
  const std::size_t n = s.window.dimension;
  Domain dom{"lattice", lattice::window(n, s.window.radius), nullptr, nullptr, true};
  const GridPtr xig = s.window.xi_count ? numerics::make_grid(UniformGrid::torus(n, *s.window.xi_count))
                                        : lattice::xi_grid_for(n, s.window.radius);
  const PhaseSpec phi = grid_phase(s, dom.grid, xig);
  const Exponents e = exponents_of(s);
  TraceReport r;
  r.setting = "lattice";
  std::optional<lattice::LatticeSymbol> a;
  if (s.symbol == "decomposition") {
    const RankOneSequence d = grid_sequence(s, dom);
    a = lattice::lattice_symbol_from_decomposition(phi, d, xig);
    r.quasinorm_bound = nuclear::r_quasinorm_bound(d);
  } else {
    const cplx c = s.symbol == "identity" ? cplx{1.0, 0.0} : cplx{};
    a = lattice::LatticeSymbol::from_function(dom.grid, xig, [&](auto, auto) { return c; });
    std::vector<Values> basis;
    for (std::size_t m = 0; m < dom.size(); ++m) {
      Values b(dom.size());
      b[m] = 1.0;
      basis.push_back(std::move(b));
    }
    r.quasinorm_bound = canonical_bound(basis, dom.grid->weights(), [&](const Values& b) {
      const auto out = lattice::lattice_fio_apply(phi, *a, SampledField(dom.grid, b));
      return Values(out.values().begin(), out.values().end());
    }, e);
  }
  r.nuclear_trace = lattice::lattice_nuclear_trace(phi, *a);
  const MixedNorms mn = lattice::lattice_mixed_norms(*a, e.p1, e.p2);
  r.mixed_norm_x_first = mn.x_first;
  r.mixed_norm_xi_first = mn.xi_first;
  finish(r, s, lattice::lattice_matrix(phi, *a));
  return r;
}

TraceReport torus_trace(const Scenario& s) {
  const std::size_t n = s.torus.dimension;
  Domain dom{"torus", numerics::make_grid(UniformGrid::torus(n, s.torus.count)), nullptr, nullptr, false};
  const GridPtr fw = group::frequency_window(n, s.torus.cutoff);
  const PhaseSpec phi = grid_phase(s, dom.grid, fw);
  const Exponents e = exponents_of(s);
  TraceReport r;
  r.setting = "torus";
  std::optional<group::TorusSymbol> a;
  if (s.symbol == "decomposition") {
    const RankOneSequence d = grid_sequence(s, dom);
    a = group::torus_symbol_from_decomposition(phi, d, s.torus.cutoff);
    r.quasinorm_bound = nuclear::r_quasinorm_bound(d);
  } else {
    const cplx c = s.symbol == "identity" ? cplx{1.0, 0.0} : cplx{};
    a = group::TorusSymbol::from_function(dom.grid, fw, [&](auto, auto) { return c; });
    std::vector<Values> basis;
    for (std::size_t l = 0; l < fw->size(); ++l) {
      const auto k = fw->node(l);
      Values b(dom.size());
      for (std::size_t i = 0; i < b.size(); ++i) {
        const auto x = dom.grid->node(i);
        double dot = 0.0;
        for (std::size_t d = 0; d < n; ++d) dot += k[d] * x[d];
        b[i] = unit_phase(kTwoPi * dot);
      }
      basis.push_back(std::move(b));
    }
    r.quasinorm_bound = canonical_bound(basis, dom.grid->weights(), [&](const Values& b) {
      const auto out = group::torus_fio_apply(phi, *a, SampledField(dom.grid, b));
      return Values(out.values().begin(), out.values().end());
    }, e);
  }
  r.nuclear_trace = group::torus_nuclear_trace(phi, *a);
  r.mixed_norm_x_first = numerics::mixed_norm(*a, numerics::Variable::x, e.p2, e.p1);
  r.mixed_norm_xi_first = numerics::mixed_norm(*a, numerics::Variable::xi, e.p1, e.p2);
  finish(r, s, group::torus_matrix(phi, *a));
  return r;
}

TraceReport su2_trace(const Scenario& s) {
  const QuadPtr quad = su2_quadrature(s.group);
  const TablePtr table = group::su2_table(quad, s.group.cutoff_twoL);
  Domain dom{"su2", nullptr, quad, table, false};
  const MatrixField phase = group_phase(s, table);
  const Exponents e = exponents_of(s);
  TraceReport r;
  r.setting = "su2";
  std::optional<GroupSymbol> sym;
  if (s.symbol == "decomposition") {
    const GroupRankOneSequence d = group_sequence(s, dom);
    sym = group::group_symbol_from_decomposition(phase, d);
    r.quasinorm_bound = group::group_quasinorm_bound(d);
  } else {
    sym = GroupSymbol(phase, s.symbol == "identity" ? MatrixField::identity(table) : MatrixField::zeros(table));
    r.quasinorm_bound = canonical_bound(table_basis(*table), quad->weights(), [&](const Values& b) {
      return group::group_fio_apply(*sym, s.group.cutoff_twoL, NodeFunction(quad, b)).values;
    }, e);
  }
  r.nuclear_trace = group::group_nuclear_trace(*sym, s.group.cutoff_twoL);
  std::vector<int> k;
  for (std::size_t p = 0; p < table->irrep_count(); ++p) k.push_back(static_cast<int>(table->irrep(p).dim));
  const MixedNorms mn = group_mixed_norms(sym->symbol(), k, e.p1, e.p2);
  r.mixed_norm_x_first = mn.x_first;
  r.mixed_norm_xi_first = mn.xi_first;
  finish(r, s, group::group_matrix(*sym, s.group.cutoff_twoL));
  return r;
}

homog::ClassIPtr homog_irreps(const Scenario& s) {
  homog::ClassIPtr irreps;
  if (s.instance.kind == "torus") {
    irreps = homog::torus_instance(s.torus.dimension, s.torus.count, s.torus.cutoff);
  } else {
    irreps = homog::su2_instance(su2_quadrature(s.group), s.group.cutoff_twoL);
  }
  if (!s.instance.k.empty()) {
    if (s.instance.k.size() != irreps->size()) {
      invalid("instance.k has " + std::to_string(s.instance.k.size()) + " entries, the instance has " +
              std::to_string(irreps->size()) + " irreps");
    }
    irreps = std::make_shared<const homog::ClassIIrrepTable>(irreps->table(), s.instance.k);
  }
  return irreps;
}

TraceReport homog_trace(const Scenario& s) {
  const homog::ClassIPtr irreps = homog_irreps(s);
  const TablePtr& table = irreps->table();
  const QuadPtr& quad = table->quadrature_ptr();
  const bool torus = s.instance.kind == "torus";
  Domain dom{"homog", nullptr, quad, torus ? nullptr : table, false};
  const Exponents e = exponents_of(s);
  TraceReport r;
  r.setting = "homog";
  std::optional<homog::HomogSymbol> sym;
  const bool scalar_phase = s.phase.kind == "linear" || s.phase.kind == "perturbed";
  if (scalar_phase) {
    if (!torus) invalid("phase.kind '" + s.phase.kind + "' needs instance.kind 'torus'");
    const std::size_t n = s.torus.dimension;
    Domain tdom{"homog", numerics::make_grid(UniformGrid::torus(n, s.torus.count)), nullptr, nullptr, false};
    const GridPtr fw = group::frequency_window(n, s.torus.cutoff);
    const PhaseSpec phi = grid_phase(s, tdom.grid, fw);
    std::optional<group::TorusSymbol> a;
    if (s.symbol == "decomposition") {
      a = group::torus_symbol_from_decomposition(phi, grid_sequence(s, tdom), s.torus.cutoff);
    } else {
      const cplx c = s.symbol == "identity" ? cplx{1.0, 0.0} : cplx{};
      a = group::TorusSymbol::from_function(tdom.grid, fw, [&](auto, auto) { return c; });
    }
    sym = homog::homog_symbol_from_torus(irreps, phi, *a);
  } else {
    const MatrixField phase = group_phase(s, table);
    if (s.symbol == "decomposition") {
      sym = homog::homog_symbol_from_decomposition(irreps, phase, group_sequence(s, dom));
    } else {
      const MatrixField a = s.symbol == "identity" ? homog::mask_field(*irreps, MatrixField::identity(table))
                                                   : MatrixField::zeros(table);
      sym = homog::HomogSymbol(irreps, GroupSymbol(phase, a));
    }
  }
  if (s.symbol == "decomposition") {
    r.quasinorm_bound = group::group_quasinorm_bound(group_sequence(s, dom));
  } else {
    r.quasinorm_bound = canonical_bound(table_basis(*table), quad->weights(), [&](const Values& b) {
      return homog::homog_fio_apply(*sym, NodeFunction(quad, b)).values;
    }, e);
  }
  r.nuclear_trace = homog::homog_nuclear_trace(*sym);
  std::vector<int> k;
  for (std::size_t p = 0; p < irreps->size(); ++p) k.push_back(irreps->k(p));
  r.mixed_norm_x_first = group_mixed_norms(sym->symbol().symbol(), k, e.p1, e.p2).x_first;
  r.mixed_norm_xi_first = homog::homog_mixed_norm(*sym, e.p1, e.p2);
  finish(r, s, group::series_matrix(sym->symbol(), irreps->size()));
  return r;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string fmt(cplx z) { return fmt(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt(std::abs(z.imag())) + "i"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << text;
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

Domain euclid_domain(const Scenario& s, const GridSpec& g) {
  if (s.setting != "euclid") invalid("this verb needs setting 'euclid'");
  return Domain{"euclid", euclid_grid(g), nullptr, nullptr, false};
}

double max_abs(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs(std::span<const cplx> a) {
  double m = 0.0;
  for (const cplx z : a) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

TraceReport run_trace(const Scenario& s) {
  const auto start = std::chrono::steady_clock::now();
  TraceReport r;
  if (s.setting == "euclid") {
    r = euclid_trace(s);
  } else if (s.setting == "lattice") {
    r = lattice_trace(s);
  } else if (s.setting == "torus") {
    r = torus_trace(s);
  } else if (s.setting == "su2") {
    r = su2_trace(s);
  } else if (s.setting == "homog") {
    r = homog_trace(s);
  } else {
    invalid("unknown setting '" + s.setting + "' (valid settings: euclid, lattice, torus, su2, homog)");
  }
  r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

json complex_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json report_payload(const TraceReport& r, const std::string& name) {
  json eig = json::array();
  for (const cplx z : r.eigenvalues) eig.push_back(complex_json(z));
  json j = json::object();
  j["name"] = name;
  j["setting"] = r.setting;
  j["nuclear_trace"] = complex_json(r.nuclear_trace);
  j["matrix_trace"] = complex_json(r.matrix_trace);
  j["eigenvalues"] = std::move(eig);
  j["eigensum"] = complex_json(r.eigensum);
  j["quasinorm_bound"] = r.quasinorm_bound;
  j["mixed_norm_x_first"] = r.mixed_norm_x_first;
  j["mixed_norm_xi_first"] = r.mixed_norm_xi_first;
  j["discrepancy_trace_vs_matrix"] = r.discrepancy_trace_vs_matrix;
  j["discrepancy_trace_vs_eigensum"] = r.discrepancy_trace_vs_eigensum;
  j["discrepancy_matrix_vs_eigensum"] = r.discrepancy_matrix_vs_eigensum;
  if (r.implied_r) j["implied_r"] = *r.implied_r;
  return j;
}

json report_json(const TraceReport& r, const std::string& name) {
  json j = report_payload(r, name);
  j["runtime_ms"] = r.runtime_ms;
  return j;
}

std::string spectrum_csv(const std::vector<cplx>& eigenvalues) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "index,re,im,modulus\n";
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    const cplx z = eigenvalues[i];
    os << i << ',' << z.real() << ',' << z.imag() << ',' << std::abs(z) << '\n';
  }
  return os.str();
}

json decompose_summary(const Scenario& s) {
  if (s.symbol != "decomposition") invalid("decompose needs symbol 'decomposition'");
  json j = json::object();
  j["name"] = s.name;
  j["setting"] = s.setting;
  const Exponents e = exponents_of(s);
  j["p1"] = e.p1;
  j["p2"] = e.p2;
  j["r"] = e.r;
  if (s.setting == "euclid" || s.setting == "lattice" || s.setting == "torus" ||
      (s.setting == "homog" && s.instance.kind == "torus" && s.phase.kind != "representation" &&
       s.phase.kind != "identity")) {
    Domain dom;
    if (s.setting == "euclid") {
      dom = Domain{"euclid", euclid_grid(s.grid), nullptr, nullptr, false};
    } else if (s.setting == "lattice") {
      dom = Domain{"lattice", lattice::window(s.window.dimension, s.window.radius), nullptr, nullptr, true};
    } else {
      dom = Domain{s.setting, numerics::make_grid(UniformGrid::torus(s.torus.dimension, s.torus.count)), nullptr,
                   nullptr, false};
    }
    const RankOneSequence d = grid_sequence(s, dom);
    j["terms"] = d.size();
    j["quasinorm_bound"] = nuclear::r_quasinorm_bound(d);
    j["term_norm_sum"] = nuclear::term_norm_sum(d);
    j["delgado_trace"] = complex_json(nuclear::delgado_trace(d));
  } else {
    Domain dom;
    if (s.setting == "su2") {
      const QuadPtr quad = su2_quadrature(s.group);
      dom = Domain{"su2", nullptr, quad, group::su2_table(quad, s.group.cutoff_twoL), false};
    } else {
      const auto irreps = homog_irreps(s);
      const bool torus = s.instance.kind == "torus";
      dom = Domain{"homog", nullptr, irreps->table()->quadrature_ptr(), torus ? nullptr : irreps->table(), false};
    }
    const GroupRankOneSequence d = group_sequence(s, dom);
    j["terms"] = d.size();
    j["quasinorm_bound"] = group::group_quasinorm_bound(d);
    j["term_norm_sum"] = group::group_term_norm_sum(d);
    j["delgado_trace"] = complex_json(group::group_delgado_trace(d));
  }
  return j;
}

json wigner_summary(const Scenario& s) {
  const Domain dom = euclid_domain(s, s.grid);
  const GridPtr xig = euclid_xi_grid(s, dom.grid);
  const RankOneSequence d = grid_sequence(s, dom);
  if (d.empty()) invalid("wigner needs at least one decomposition term");
  const auto& t0 = d.terms().front();
  const euclid::EuclideanSymbol w = quantize::wigner(t0.h, t0.g, xig);
  std::size_t bi = 0;
  std::size_t bj = 0;
  for (std::size_t i = 0; i < w.rows(); ++i) {
    for (std::size_t j = 0; j < w.cols(); ++j) {
      if (std::abs(w(i, j)) > std::abs(w(bi, bj))) {
        bi = i;
        bj = j;
      }
    }
  }
  numerics::ComplexCompensatedSum inner;
  for (std::size_t i = 0; i < dom.size(); ++i) inner.add(dom.weight(i) * t0.h[i] * std::conj(t0.g[i]));
  const auto sym = quantize::weyl_symbol_from_decomposition(d, quantize::TauParameter(s.wigner_tau), xig);
  const auto x = dom.grid->node(bi);
  const auto xi = xig->node(bj);
  json j = json::object();
  j["name"] = s.name;
  j["setting"] = s.setting;
  j["peak"] = complex_json(w(bi, bj));
  j["peak_modulus"] = std::abs(w(bi, bj));
  j["peak_x"] = std::vector<double>(x.begin(), x.end());
  j["peak_xi"] = std::vector<double>(xi.begin(), xi.end());
  j["phase_space_integral"] = complex_json(quantize::phase_space_integral(w));
  j["inner_product"] = complex_json(inner.value());
  j["tau"] = s.wigner_tau;
  j["tau_symbol_integral"] = complex_json(quantize::phase_space_integral(sym));
  j["delgado_trace"] = complex_json(nuclear::delgado_trace(d));
  return j;
}

json quantize_summary(const Scenario& s) {
  const Domain dom = euclid_domain(s, s.grid);
  const GridPtr xig = euclid_xi_grid(s, dom.grid);
  const RankOneSequence d = grid_sequence(s, dom);
  const auto& taus = s.quantize.taus;
  if (taus.empty()) invalid("quantize.taus must not be empty");

  GridSpec fs = s.grid;
  fs.count = (s.grid.count - 1) / s.quantize.f_stride + 1;
  if (fs.count < 2) invalid("quantize.f_stride leaves fewer than two nodes");
  const Domain fdom{"euclid", euclid_grid(fs), nullptr, nullptr, false};
  const RankOneSequence df = grid_sequence(s, fdom);

  std::vector<FunctionSpec> tests = s.quantize.test_functions;
  if (tests.empty()) {
    for (const double c : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      FunctionSpec f;
      f.family = "gaussian";
      f.center.assign(s.grid.dimension, c);
      tests.push_back(f);
    }
  }
  std::vector<SampledField> fs_in;
  for (const auto& f : tests) fs_in.emplace_back(fdom.grid, evaluate(f, fdom));

  // Reference: the kernel sum_k h_k(x) g_k(y) applied by quadrature.
  std::vector<Values> reference;
  for (const auto& f : fs_in) {
    Values out(fdom.size());
    for (const auto& t : df.terms()) {
      numerics::ComplexCompensatedSum pair;
      for (std::size_t y = 0; y < fdom.size(); ++y) pair.add(fdom.weight(y) * t.g[y] * f[y]);
      const cplx c = pair.value();
      for (std::size_t x = 0; x < out.size(); ++x) out[x] += t.h[x] * c;
    }
    reference.push_back(std::move(out));
  }

  std::vector<euclid::EuclideanSymbol> symbols;
  std::vector<std::vector<Values>> outputs;
  json per_tau = json::array();
  double worst_reference = 0.0;
  for (const double tau : taus) {
    const quantize::TauParameter tp(tau);
    symbols.push_back(quantize::weyl_symbol_from_decomposition(d, tp, xig));
    const auto m = quantize::tau_matrix(symbols.back(), tp, fdom.grid);
    std::vector<Values> outs;
    double err = 0.0;
    for (std::size_t k = 0; k < fs_in.size(); ++k) {
      outs.push_back(m.apply(fs_in[k].values()));
      err = std::max(err, max_abs(outs.back(), reference[k]));
    }
    worst_reference = std::max(worst_reference, err);
    per_tau.push_back(json{{"tau", tau}, {"max_error_vs_kernel", err}});
    outputs.push_back(std::move(outs));
  }
  double pairwise = 0.0;
  for (std::size_t a = 0; a < outputs.size(); ++a) {
    for (std::size_t b = a + 1; b < outputs.size(); ++b) {
      for (std::size_t k = 0; k < fs_in.size(); ++k) pairwise = std::max(pairwise, max_abs(outputs[a][k], outputs[b][k]));
    }
  }
  json j = json::object();
  j["name"] = s.name;
  j["setting"] = s.setting;
  j["taus"] = taus;
  j["test_functions"] = fs_in.size();
  j["per_tau"] = std::move(per_tau);
  j["max_error_vs_kernel"] = worst_reference;
  j["max_pairwise_discrepancy"] = pairwise;
  if (taus.size() >= 2) {
    const quantize::TauParameter t0(taus.front());
    const quantize::TauParameter t1(taus.back());
    // c^{t1} = b^{t0}, then back again.
    const auto c = quantize::tau_convert(symbols.front(), t1, t0);
    const auto back = quantize::tau_convert(c, t0, t1);
    j["convert_from"] = taus.front();
    j["convert_to"] = taus.back();
    j["convert_error"] = max_abs(c.values(), symbols.back().values());
    j["round_trip_error"] = max_abs(back.values(), symbols.front().values());
    j["symbol_scale"] = max_abs(symbols.front().values());
  }
  return j;
}

json haar_check(const Scenario& s) {
  json j = json::object();
  j["name"] = s.name;
  j["chart"] = s.group.chart;
  j["resolution"] = s.group.resolution;
  if (s.group.chart == "su3") {
    if (!s.seed) invalid("seed: haar-check on su3 samples random elements and needs an integer seed");
    const QuadPtr q = homog::su3_haar_quadrature(s.group.resolution, s.group.phi_resolution);
    std::vector<numerics::ComplexCompensatedSum> acc(81);
    for (std::size_t x = 0; x < q->size(); ++x) {
      const Eigen::Matrix3cd u = homog::su3_node(*q, x);
      const double w = q->weight(x);
      for (int a = 0; a < 9; ++a) {
        for (int b = 0; b < 9; ++b) acc[a * 9 + b].add(w * u(a / 3, a % 3) * std::conj(u(b / 3, b % 3)));
      }
    }
    double schur = 0.0;
    for (int a = 0; a < 9; ++a) {
      for (int b = 0; b < 9; ++b) schur = std::max(schur, std::abs(acc[a * 9 + b].value() - (a == b ? 1.0 / 3.0 : 0.0)));
    }
    numerics::SeededRng rng(*s.seed);
    double unitarity = 0.0;
    double det = 0.0;
    const std::size_t samples = 10000;
    for (std::size_t k = 0; k < samples; ++k) {
      homog::Su3Angles ang{};
      for (int i = 0; i < 3; ++i) ang[i] = rng.uniform(0.0, kPi / 2);
      for (int i = 3; i < 8; ++i) ang[i] = rng.uniform(0.0, kTwoPi);
      const Eigen::Matrix3cd u = homog::su3_fundamental(ang);
      unitarity = std::max(unitarity, (u.adjoint() * u - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff());
      det = std::max(det, std::abs(u.determinant() - 1.0));
    }
    j["phi_resolution"] = s.group.phi_resolution;
    j["nodes"] = q->size();
    j["total_mass"] = q->raw_mass();
    j["mass_error"] = std::abs(q->raw_mass() - 1.0);
    j["schur_error"] = schur;
    j["samples"] = samples;
    j["unitarity_error"] = unitarity;
    j["determinant_error"] = det;
    return j;
  }
  const QuadPtr q = su2_quadrature(s.group);
  const TablePtr t = group::su2_table(q, s.group.cutoff_twoL);
  const double expected = s.group.chart == "euler" ? 16.0 * kPi * kPi : 4.0 * kPi * kPi;
  double unitarity = 0.0;
  for (std::size_t p = 0; p < t->irrep_count(); ++p) {
    for (std::size_t x = 0; x < t->nodes(); ++x) {
      const Eigen::MatrixXcd m = t->matrix(p, x);
      unitarity = std::max(unitarity,
                           (m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff());
    }
  }
  double schur = 0.0;
  for (std::size_t p = 0; p < t->irrep_count(); ++p) {
    for (std::size_t pp = 0; pp < t->irrep_count(); ++pp) {
      const auto d = static_cast<Eigen::Index>(t->irrep(p).dim);
      const auto dd = static_cast<Eigen::Index>(t->irrep(pp).dim);
      for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index jx = 0; jx < d; ++jx) {
          for (Eigen::Index k = 0; k < dd; ++k) {
            for (Eigen::Index l = 0; l < dd; ++l) {
              numerics::ComplexCompensatedSum acc;
              for (std::size_t x = 0; x < t->nodes(); ++x) {
                acc.add(q->weight(x) * t->matrix(p, x)(i, jx) * std::conj(t->matrix(pp, x)(k, l)));
              }
              const double want = (p == pp && i == k && jx == l) ? 1.0 / static_cast<double>(d) : 0.0;
              schur = std::max(schur, std::abs(acc.value() - want));
            }
          }
        }
      }
    }
  }
  j["nodes"] = q->size();
  j["cutoff_twoL"] = s.group.cutoff_twoL;
  j["raw_mass"] = q->raw_mass();
  j["expected_raw_mass"] = expected;
  j["mass_error"] = std::abs(q->raw_mass() - expected);
  j["schur_error"] = schur;
  j["unitarity_error"] = unitarity;
  return j;
}

VerifyResult verify(const Scenario& s, double tolerance) {
  if (!(tolerance >= 0.0)) throw ValidationError("--tolerance must be >= 0");
  VerifyResult v{run_trace(s), {}};
  const auto& r = v.report;
  const auto check = [&](const char* name, double value) {
    if (!(value <= tolerance)) {
      v.failures.push_back(std::string(name) + " = " + fmt(value) + " exceeds tolerance " + fmt(tolerance));
    }
  };
  check("discrepancy_trace_vs_matrix", r.discrepancy_trace_vs_matrix);
  check("discrepancy_trace_vs_eigensum", r.discrepancy_trace_vs_eigensum);
  check("discrepancy_matrix_vs_eigensum", r.discrepancy_matrix_vs_eigensum);
  const auto recomputed = [&](const char* name, double stored, cplx a, cplx b) {
    if (std::abs(stored - std::abs(a - b)) > 1e-15) {
      v.failures.push_back(std::string(name) + " does not equal the gap of its own fields");
    }
  };
  recomputed("discrepancy_trace_vs_matrix", r.discrepancy_trace_vs_matrix, r.nuclear_trace, r.matrix_trace);
  recomputed("discrepancy_trace_vs_eigensum", r.discrepancy_trace_vs_eigensum, r.nuclear_trace, r.eigensum);
  recomputed("discrepancy_matrix_vs_eigensum", r.discrepancy_matrix_vs_eigensum, r.matrix_trace, r.eigensum);
  return v;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const GridError*>(&e) || dynamic_cast<const ShapeError*>(&e) ||
      dynamic_cast<const DimensionError*>(&e) || dynamic_cast<const TruncationError*>(&e)) {
    return kExitValidation;
  }
  if (dynamic_cast<const json::exception*>(&e)) return kExitValidation;
  return kExitNumeric;
}

int run_verb(const std::string& verb, const std::string& config_path, const RunOptions& options, std::ostream& log) {
  try {
    if (std::find(kVerbs.begin(), kVerbs.end(), verb) == kVerbs.end()) {
      throw ValidationError("unknown verb '" + verb + "'");
    }
    if (options.format != "json" && options.format != "csv") {
      throw ValidationError("--format must be json or csv, got '" + options.format + "'");
    }
    const Scenario s = load_scenario(config_path);
    const std::filesystem::path dir(options.out_dir);
    std::filesystem::create_directories(dir);
    const auto file = [&](const std::string& suffix) { return dir / (s.name + suffix); };

    if (verb == "trace" || verb == "spectrum") {
      const TraceReport r = run_trace(s);
      if (verb == "trace") {
        write_json(file(".json"), report_json(r, s.name));
        log << "trace " << s.name << ": nuclear_trace " << fmt(r.nuclear_trace) << ", matrix_trace "
            << fmt(r.matrix_trace) << ", eigensum " << fmt(r.eigensum) << '\n';
      }
      if (verb == "spectrum" || options.format == "csv") {
        if (options.format == "csv") {
          write_text(file(".spectrum.csv"), spectrum_csv(r.eigenvalues));
        } else {
          json eig = json::array();
          for (const cplx z : r.eigenvalues) eig.push_back(complex_json(z));
          write_json(file(".spectrum.json"), json{{"name", s.name}, {"setting", r.setting}, {"eigenvalues", eig}});
        }
        log << "spectrum " << s.name << ": " << r.eigenvalues.size() << " eigenvalues\n";
      }
      return kExitOk;
    }
    if (verb == "decompose") {
      const json j = decompose_summary(s);
      write_json(file(".decompose.json"), j);
      log << "decompose " << s.name << ": quasinorm_bound " << fmt(j["quasinorm_bound"].get<double>()) << '\n';
      return kExitOk;
    }
    if (verb == "wigner") {
      const json j = wigner_summary(s);
      write_json(file(".wigner.json"), j);
      log << "wigner " << s.name << ": peak modulus " << fmt(j["peak_modulus"].get<double>()) << '\n';
      return kExitOk;
    }
    if (verb == "quantize") {
      const json j = quantize_summary(s);
      write_json(file(".quantize.json"), j);
      log << "quantize " << s.name << ": max pairwise discrepancy "
          << fmt(j["max_pairwise_discrepancy"].get<double>()) << '\n';
      return kExitOk;
    }
    if (verb == "haar-check") {
      const json j = haar_check(s);
      write_json(file(".haar.json"), j);
      log << "haar-check " << s.name << ": mass error " << fmt(j["mass_error"].get<double>()) << ", schur error "
          << fmt(j["schur_error"].get<double>()) << '\n';
      return kExitOk;
    }
    const VerifyResult v = verify(s, options.tolerance);
    json j = report_json(v.report, s.name);
    j["tolerance"] = options.tolerance;
    j["failures"] = v.failures;
    write_json(file(".verify.json"), j);
    if (!v.failures.empty()) {
      for (const auto& f : v.failures) log << "verify " << s.name << ": FAILED " << f << '\n';
      return kExitNumeric;
    }
    log << "verify " << s.name << ": ok (tolerance " << fmt(options.tolerance) << ")\n";
    return kExitOk;
  } catch (const std::exception& e) {
    const int code = exit_code_for(e);
    log << (code == kExitValidation ? "validation error: " : "numeric error: ") << e.what() << '\n';
    return code;
  }
}

}  // namespace nuctrace::cli
