#include "nuctrace/lattice/lattice.hpp"
#include "nuctrace/numerics/norms.hpp"
#include "support.hpp"

using namespace nuctrace;
using namespace nuctrace::lattice;
using nuclear::RankOneSequence;
using nuclear::RankOneTerm;

namespace {

LatticeSequence delta(const GridPtr& w, int m, int radius) {
  std::vector<cplx> v(w->size());
  v[static_cast<std::size_t>(m + radius)] = 1.0;
  return LatticeSequence(w, v);
}

LatticeSymbol ones(const GridPtr& w, const GridPtr& xi) {
  return LatticeSymbol::from_function(w, xi, [](auto, auto) { return 1.0; });
}

RankOneSequence random_terms(const GridPtr& w, numerics::SeededRng& rng, int terms, nuclear::Exponents e = {}) {
  std::vector<RankOneTerm> t;
  for (int k = 0; k < terms; ++k) t.push_back({support::random_field(w, rng), support::random_field(w, rng)});
  return RankOneSequence(w, t, e);
}

}  // namespace

TEST_CASE("window layout") {
  const auto w = window(1, 4);
  CHECK(w->size() == 9);
  CHECK(w->node(0)[0] == -4.0);
  CHECK(w->weight(3) == 1.0);
  CHECK(window(2, 2)->size() == 25);
  CHECK(xi_grid_for(1, 4)->size() == 18);
}

TEST_CASE("lattice dft") {
  const int n = 4;
  const auto w = window(1, n);
  const auto xi = xi_grid_for(1, n);
  const auto f0 = lattice_dft(delta(w, 0, n), xi);
  for (const cplx z : f0.values()) CHECK(std::abs(z - 1.0) <= 1e-14);
  const auto f3 = lattice_dft(delta(w, 3, n), xi);
  for (std::size_t j = 0; j < xi->size(); ++j) {
    CHECK(std::abs(f3[j] - unit_phase(-kTwoPi * 3.0 * xi->node(j)[0])) <= 1e-14);
  }
  numerics::SeededRng rng(11);
  const auto f = support::random_field(w, rng);
  const auto ff = lattice_dft(f, xi);
  double lhs = 0.0;
  for (const cplx z : f.values()) lhs += std::norm(z);
  const double rhs = std::pow(numerics::lp_norm(ff, 2), 2);
  CHECK(std::abs(lhs - rhs) <= 1e-10);
}

TEST_CASE("identity and shift") {
  const int n = 4;
  const auto w = window(1, n);
  const auto xi = xi_grid_for(1, n);
  numerics::SeededRng rng(2);
  const auto f = support::random_field(w, rng);
  CHECK(numerics::max_abs_difference(lattice_fio_apply(PhaseSpec::linear(), ones(w, xi), f), f) <= 1e-12);
  CHECK(numerics::sup_norm(lattice_fio_apply(PhaseSpec::linear(), LatticeSymbol::zeros(w, xi), f)) == 0.0);
  const auto shifted = lattice_fio_apply(PhaseSpec::linear({1.0}), ones(w, xi), f);
  for (std::size_t i = 0; i + 1 < w->size(); ++i) CHECK(std::abs(shifted[i] - f[i + 1]) <= 1e-12);
  CHECK(std::abs(shifted[w->size() - 1]) <= 1e-12);

  const auto m = lattice_matrix(PhaseSpec::linear(), ones(w, xi));
  CHECK((m.eigen() - Eigen::MatrixXcd::Identity(9, 9)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("traces") {
  for (const int n : {0, 1, 3, 4}) {
    const auto w = window(1, n);
    const auto xi = xi_grid_for(1, n);
    CHECK(std::abs(lattice_nuclear_trace(PhaseSpec::linear(), ones(w, xi)) - double(2 * n + 1)) <= 1e-12);
  }
  const auto w = window(1, 3);
  const auto xi = xi_grid_for(1, 3);
  CHECK(std::abs(lattice_nuclear_trace(PhaseSpec::linear({1.0}), ones(w, xi))) <= 1e-12);
  const auto d0 = delta(w, 0, 3);
  const auto a = lattice_symbol_from_decomposition(PhaseSpec::linear(), RankOneSequence(w, {{d0, d0}}), xi);
  CHECK(std::abs(lattice_nuclear_trace(PhaseSpec::linear(), a) - 1.0) <= 1e-12);
  const auto w2 = window(2, 1);
  CHECK(std::abs(lattice_nuclear_trace(PhaseSpec::linear(), ones(w2, xi_grid_for(2, 1))) - 9.0) <= 1e-12);
}

TEST_CASE("symbol synthesis") {
  const int n = 4;
  const auto w = window(1, n);
  const auto xi = xi_grid_for(1, n);
  const auto d0 = delta(w, 0, n);
  const auto phase = PhaseSpec::linear({0.5}, 0.3);
  const auto a = lattice_symbol_from_decomposition(phase, RankOneSequence(w, {{d0, d0}}), xi);
  for (std::size_t i = 0; i < w->size(); ++i) {
    for (std::size_t j = 0; j < xi->size(); ++j) {
      const cplx want = i == 4 ? unit_phase(-phase.value(*w, i, *xi, j)) : cplx{};
      CHECK(std::abs(a(i, j) - want) <= 1e-12);
    }
  }
  const auto empty = lattice_symbol_from_decomposition(phase, RankOneSequence(w, {}), xi);
  for (const cplx z : empty.values()) CHECK(z == cplx{});

  numerics::SeededRng rng(9);
  const auto d = random_terms(w, rng, 3);
  const auto f = support::random_field(w, rng);
  std::vector<cplx> want(w->size());
  for (const auto& t : d.terms()) {
    cplx c{};
    for (std::size_t m = 0; m < w->size(); ++m) c += t.g[m] * f[m];
    for (std::size_t i = 0; i < want.size(); ++i) want[i] += t.h[i] * c;
  }
  const auto bent = PhaseSpec::sampled(euclid::SampledPhase::from_function(
      w, xi, [](auto p, auto q) { return kTwoPi * p[0] * q[0] + 0.7 * std::sin(p[0]) * std::cos(kTwoPi * q[0]); }));
  for (const auto& ph : {PhaseSpec::linear(), phase, bent}) {
    const auto s = lattice_symbol_from_decomposition(ph, d, xi);
    CHECK(support::max_diff(lattice_fio_apply(ph, s, f).values(), want) <= 1e-10);
    const auto m = lattice_matrix(ph, s);
    CHECK(support::max_diff(m.apply(f.values()), lattice_fio_apply(ph, s, f).values()) <= 1e-12);
    CHECK(std::abs(m.trace() - lattice_nuclear_trace(ph, s)) <= 1e-12);
    CHECK(std::abs(lattice_nuclear_trace(ph, s) - nuclear::delgado_trace(d)) <= 1e-10);
  }
}

TEST_CASE("rank-one and random spectra") {
  const int n = 4;
  const auto w = window(1, n);
  const auto xi = xi_grid_for(1, n);
  numerics::SeededRng rng(14);
  const auto one = random_terms(w, rng, 1);
  const auto m1 = lattice_matrix(PhaseSpec::linear(), lattice_symbol_from_decomposition(PhaseSpec::linear(), one, xi));
  const auto e1 = numerics::dense_eigenvalues(m1);
  CHECK(std::abs(numerics::compensated_total(e1) - nuclear::delgado_trace(one)) <= 1e-9);
  for (std::size_t i = 1; i < e1.size(); ++i) CHECK(std::abs(e1[i]) <= 1e-9);
  for (int trial = 0; trial < 5; ++trial) {
    const auto d = random_terms(w, rng, 3);
    const auto a = lattice_symbol_from_decomposition(PhaseSpec::linear({0.25}), d, xi);
    const cplx tr = lattice_nuclear_trace(PhaseSpec::linear({0.25}), a);
    const auto m = lattice_matrix(PhaseSpec::linear({0.25}), a);
    CHECK(std::abs(tr - m.trace()) <= 1e-8);
    CHECK(std::abs(tr - numerics::compensated_total(numerics::dense_eigenvalues(m))) <= 1e-8);
  }
}

TEST_CASE("mixed norms") {
  const int n = 3;
  const auto w = window(1, n);
  const auto xi = xi_grid_for(1, n);
  const auto a0 = LatticeSymbol::from_function(w, xi, [](auto p, auto) { return p[0] == 0.0 ? 1.0 : 0.0; });
  for (const auto& [p1, p2] : {std::pair{2.0, 2.0}, std::pair{4.0, 1.0}, std::pair{3.0, 1.5}}) {
    const auto m = lattice_mixed_norms(a0, p1, p2);
    CHECK(std::abs(m.x_first - 1.0) <= 1e-12);
    CHECK(std::abs(m.xi_first - 1.0) <= 1e-12);
  }
  const auto z = lattice_mixed_norms(LatticeSymbol::zeros(w, xi), 2, 2);
  CHECK(z.x_first == 0.0);
  CHECK(z.xi_first == 0.0);
  CHECK_THROWS_AS(lattice_mixed_norms(a0, 1.5, 2), DomainError);
  CHECK_THROWS_AS(lattice_mixed_norms(a0, 2, 0.5), DomainError);

  numerics::SeededRng rng(6);
  for (const auto& e : {nuclear::Exponents{2, 2, 1}, nuclear::Exponents{4, 1, 1}, nuclear::Exponents{3, 2, 1}}) {
    for (const int terms : {1, 3}) {
      const auto d = random_terms(w, rng, terms, e);
      const auto a = lattice_symbol_from_decomposition(PhaseSpec::linear({0.5}), d, xi);
      const auto m = lattice_mixed_norms(a, e.p1, e.p2);
      const double bound = nuclear::term_norm_sum(d);
      CHECK(m.x_first <= bound + 1e-8);
      CHECK(m.xi_first <= bound + 1e-8);
    }
  }
}

TEST_CASE("window mismatch") {
  const auto w = window(1, 3);
  const auto other = window(1, 4);
  const auto xi = xi_grid_for(1, 3);
  CHECK_THROWS(lattice_fio_apply(PhaseSpec::linear(), ones(w, xi), LatticeSequence::zeros(other)));
}
