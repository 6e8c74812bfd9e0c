#include "nuctrace/euclid/fio.hpp"
#include "nuctrace/numerics/norms.hpp"
#include "support.hpp"

using namespace nuctrace;
using namespace nuctrace::euclid;
using nuclear::RankOneSequence;
using nuclear::RankOneTerm;
using support::box;

namespace {

EuclideanSymbol ones(const GridPtr& x, const GridPtr& xi) {
  return EuclideanSymbol::from_function(x, xi, [](auto, auto) { return 1.0; });
}

RankOneSequence random_mixture(const GridPtr& x, numerics::SeededRng& rng, int terms, nuclear::Exponents e = {}) {
  std::vector<RankOneTerm> t;
  for (int k = 0; k < terms; ++k) {
    t.push_back({support::gaussian(x, rng.uniform(-1, 1), rng.uniform(0.7, 1.3)).scaled(rng.complex_normal()),
                 support::gaussian(x, rng.uniform(-1, 1), rng.uniform(0.7, 1.3)).scaled(rng.complex_normal())});
  }
  return RankOneSequence(x, t, e);
}

// Kernel action sum_k h_k(x) sum_y w g_k(y) f(y).
SampledField kernel_action(const RankOneSequence& d, const SampledField& f) {
  std::vector<cplx> out(f.size());
  for (const auto& t : d.terms()) {
    cplx c{};
    for (std::size_t y = 0; y < f.size(); ++y) c += f.grid().weight(y) * t.g[y] * f[y];
    for (std::size_t x = 0; x < out.size(); ++x) out[x] += t.h[x] * c;
  }
  return SampledField(f.grid_ptr(), out);
}

}  // namespace

TEST_CASE("identity and shift operators") {
  const auto x = box(1, -6, 6, 256);
  const auto xi = box(1, -5, 5, 256);
  const auto f = support::gaussian(x, 0.2, 0.9);
  const auto id = fio_apply(PhaseSpec::linear(), ones(x, xi), f);
  CHECK(numerics::max_abs_difference(id, f) <= 1e-6);
  CHECK(numerics::sup_norm(fio_apply(PhaseSpec::linear(), EuclideanSymbol::zeros(x, xi), f)) == 0.0);
  const auto shifted = fio_apply(PhaseSpec::linear({1.0}), ones(x, xi), f);
  const auto want = support::gaussian(x, -0.8, 0.9);
  CHECK(numerics::max_abs_difference(shifted, want) <= 1e-6);
}

TEST_CASE("symbol synthesis") {
  const auto x = box(1, -6, 6, 257);
  const auto xi = box(1, -6, 6, 257);
  const RankOneSequence d(x, {{support::gaussian(x), support::gaussian(x)}});
  const auto a = symbol_from_decomposition(PhaseSpec::linear(), d, xi);
  CHECK(std::abs(std::abs(a(128, 128)) - 1.0) <= 1e-8);
  for (std::size_t i = 0; i < x->size(); i += 37) {
    for (std::size_t j = 0; j < xi->size(); j += 41) {
      const double s = x->node(i)[0];
      const double t = xi->node(j)[0];
      const cplx want = unit_phase(-kTwoPi * s * t) * support::gauss(s) * support::gauss(t);
      CHECK(std::abs(a(i, j) - want) <= 1e-8);
    }
  }
  const auto empty = symbol_from_decomposition(PhaseSpec::linear(), RankOneSequence(x, {}), xi);
  for (const cplx z : empty.values()) CHECK(z == cplx{});
  const auto b = symbol_from_decomposition(PhaseSpec::linear({}, kTwoPi), d, xi);
  CHECK(support::max_diff(a.values(), b.values()) <= 1e-12);
}

TEST_CASE("trace formula") {
  const auto x = box(1, -6, 6, 512);
  const RankOneSequence d(x, {{support::gaussian(x), support::gaussian(x)}});
  const auto a = symbol_from_decomposition(PhaseSpec::linear(), d, x);
  CHECK(std::abs(nuclear_trace_euclid(PhaseSpec::linear(), a) - std::sqrt(0.5)) <= 1e-5);
  CHECK(nuclear_trace_euclid(PhaseSpec::linear(), EuclideanSymbol::zeros(x, x)) == cplx{});
  // <g1,h1> + <g2,h2> = 0
  const auto h = support::gaussian(x, 0.4);
  const auto g = support::gaussian(x, -0.1, 1.2);
  const RankOneSequence c(x, {{h, g}, {h.scaled(-1.0), g}});
  const auto ac = symbol_from_decomposition(PhaseSpec::linear(), c, x);
  CHECK(std::abs(nuclear_trace_euclid(PhaseSpec::linear(), ac)) <= 1e-6);
}

TEST_CASE("phase independence and synthesis consistency") {
  const auto x = box(1, -5, 5, 160);
  const auto xi = box(1, -5, 5, 161);
  numerics::SeededRng rng(4);
  const auto d = random_mixture(x, rng, 3);
  const cplx want = nuclear::delgado_trace(d);
  const auto bent = PhaseSpec::sampled(SampledPhase::from_function(x, xi, [](auto p, auto q) {
    return kTwoPi * p[0] * q[0] + 0.4 * std::cos(p[0]) * std::sin(q[0]) + 0.3;
  }));
  const auto f = support::gaussian(x, 0.3, 1.1);
  for (const auto& phase : {PhaseSpec::linear(), PhaseSpec::linear({0.25}, 0.7), bent}) {
    const auto a = symbol_from_decomposition(phase, d, xi);
    CHECK(std::abs(nuclear_trace_euclid(phase, a) - want) <= 1e-6);
    CHECK(numerics::max_abs_difference(fio_apply(phase, a, f), kernel_action(d, f)) <= 1e-6);
  }
}

TEST_CASE("phase density is enforced") {
  const auto x = box(1, -5, 5, 40);
  const auto xi = box(1, -5, 5, 40);
  const auto wild = PhaseSpec::sampled(SampledPhase::from_function(x, xi, [](auto p, auto q) {
    return kTwoPi * p[0] * q[0] + 20.0 * std::sin(3.0 * p[0]);
  }));
  CHECK_THROWS_AS(check_phase_density(wild, *x, *xi), GridError);
  CHECK_NOTHROW(check_phase_density(PhaseSpec::linear({0.25}), *x, *xi));
  const auto other = box(1, -5, 5, 41);
  CHECK_THROWS_AS(wild.require_compatible(*other, *xi), GridError);
}

TEST_CASE("decay norms") {
  const auto x = box(1, -6, 6, 512);
  const RankOneSequence d(x, {{support::gaussian(x), support::gaussian(x)}});
  const auto a = symbol_from_decomposition(PhaseSpec::linear(), d, x);
  const auto n = decay_norms(a, 2, 2);
  CHECK(std::abs(n.x_first - std::sqrt(0.5)) <= 1e-5);
  CHECK(std::abs(n.xi_first - std::sqrt(0.5)) <= 1e-5);
  CHECK(std::abs(nuclear::r_quasinorm_bound(d) - std::sqrt(0.5)) <= 1e-6);
  const auto z = decay_norms(EuclideanSymbol::zeros(x, x), 2, 2);
  CHECK(z.x_first == 0.0);
  CHECK(z.xi_first == 0.0);
  CHECK_THROWS_AS(decay_norms(a, 1.5, 2), DomainError);

  const auto y = box(1, -5, 5, 200);
  numerics::SeededRng rng(12);
  for (const auto& e : {nuclear::Exponents{2, 2, 1}, nuclear::Exponents{4, 2, 1}, nuclear::Exponents{3, 1.5, 1}}) {
    const auto dm = random_mixture(y, rng, 3, e);
    const auto am = symbol_from_decomposition(PhaseSpec::linear(), dm, y);
    const auto nm = decay_norms(am, e.p1, e.p2);
    const double bound = nuclear::term_norm_sum(dm);
    CHECK(nm.x_first <= bound + 1e-6);
    CHECK(nm.xi_first <= bound + 1e-6);
  }
}

TEST_CASE("lidskii report") {
  const auto x = box(1, -6, 6, 512);
  const RankOneSequence d(x, {{support::gaussian(x), support::gaussian(x)}});
  const auto r = lidskii_report(PhaseSpec::linear(), d, 2, x);
  CHECK(std::abs(r.nuclear_trace - std::sqrt(0.5)) <= 1e-5);
  CHECK(std::abs(r.matrix_trace - std::sqrt(0.5)) <= 1e-5);
  CHECK(std::abs(r.eigensum - std::sqrt(0.5)) <= 1e-5);
  CHECK(r.discrepancy_trace_vs_matrix <= 1e-5);
  CHECK(r.discrepancy_trace_vs_eigensum <= 1e-5);
  CHECK(*r.implied_r == 1.0);

  const auto y = box(1, -5, 5, 128);
  const auto empty = lidskii_report(PhaseSpec::linear(), RankOneSequence(y, {}), 2, y);
  CHECK(empty.nuclear_trace == cplx{});
  CHECK(empty.matrix_trace == cplx{});
  CHECK(std::abs(empty.eigensum) == 0.0);

  numerics::SeededRng rng(30);
  const auto d5 = random_mixture(y, rng, 5);
  const auto r4 = lidskii_report(PhaseSpec::linear(), d5, 4, y);
  CHECK(*r4.implied_r == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(r4.discrepancy_trace_vs_matrix <= 1e-6);
  CHECK(r4.discrepancy_trace_vs_eigensum <= 1e-6);
  CHECK_THROWS_AS(lidskii_report(PhaseSpec::linear(), RankOneSequence(y, {}, {1.5, 2, 1}), 2, y), DomainError);
}

TEST_CASE("implied r") {
  CHECK(implied_r(2) == 1.0);
  CHECK(implied_r(4) == doctest::Approx(0.8));
  CHECK(implied_r(1) == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(implied_r(0.5), DomainError);
}

TEST_CASE("desk dimensions") {
  CHECK_NOTHROW(require_desk_dimension(*box(2, -1, 1, 4)));
  CHECK_THROWS_AS(require_desk_dimension(*box(3, -1, 1, 4)), DimensionError);
}

TEST_CASE("two-dimensional trace") {
  const auto x = box(2, -4, 4, 65);
  const auto xi = box(2, -3, 3, 49);
  const RankOneSequence d(x, {{support::gaussian(x), support::gaussian(x)}});
  const auto a = symbol_from_decomposition(PhaseSpec::linear({0.1, -0.2}), d, xi);
  CHECK(std::abs(nuclear_trace_euclid(PhaseSpec::linear({0.1, -0.2}), a) - 0.5) <= 1e-6);
}
