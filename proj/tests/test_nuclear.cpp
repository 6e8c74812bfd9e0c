#include <Eigen/SVD>

#include "nuctrace/nuclear/rank_one.hpp"
#include "nuctrace/nuclear/report.hpp"
#include "nuctrace/numerics/norms.hpp"
#include "support.hpp"

using namespace nuctrace;
using namespace nuctrace::nuclear;
using support::box;

namespace {

RankOneSequence gaussian_term(const GridPtr& x) {
  return RankOneSequence(x, {{support::gaussian(x), support::gaussian(x)}});
}

}  // namespace

TEST_CASE("quasinorm bound") {
  const auto x = box(1, -6, 6, 512);
  CHECK(r_quasinorm_bound(RankOneSequence(x, {})) == 0.0);
  CHECK(std::abs(r_quasinorm_bound(gaussian_term(x)) - std::sqrt(0.5)) <= 1e-6);
  const auto g = support::gaussian(x);
  std::vector<RankOneTerm> many(5, RankOneTerm{g, g});
  CHECK(std::abs(r_quasinorm_bound(RankOneSequence(x, many)) - 5 * r_quasinorm_bound(gaussian_term(x))) <= 1e-10);
  const RankOneSequence scaled(x, {{g.scaled(3.0), g.scaled(1.0 / 3.0)}});
  CHECK(std::abs(r_quasinorm_bound(scaled) - r_quasinorm_bound(gaussian_term(x))) <= 1e-10);
  CHECK(term_norm_sum(RankOneSequence(x, many)) == doctest::Approx(5 * std::sqrt(0.5)).epsilon(1e-6));
}

TEST_CASE("kernel synthesis") {
  const auto x = box(1, -3, 3, 13);
  std::vector<cplx> hv(13), gv(13);
  hv[4] = 1.0;
  gv[9] = 1.0;
  const SampledField h(x, hv);
  const SampledField g(x, gv);
  const auto k = kernel_from_decomposition(RankOneSequence(x, {{h, g}}));
  int nonzero = 0;
  for (const cplx z : k.values()) nonzero += z != cplx{};
  CHECK(nonzero == 1);
  CHECK(k(4, 9) == cplx(1.0));

  const auto y = box(1, -6, 6, 121);
  const auto kg = kernel_from_decomposition(gaussian_term(y));
  CHECK(std::abs(kg(60, 60) - 1.0) <= 1e-12);
  const auto gg = support::gaussian(y);
  const auto zero = kernel_from_decomposition(RankOneSequence(y, {{gg, gg}, {gg, gg.scaled(-1.0)}}));
  for (const cplx z : zero.values()) CHECK(z == cplx{});
  CHECK_THROWS_AS(kernel_from_decomposition(gaussian_term(y), KernelOptions{100}), GridError);
}

TEST_CASE("delgado trace") {
  const auto x = box(1, -6, 6, 512);
  CHECK(std::abs(delgado_trace(gaussian_term(x)) - std::sqrt(0.5)) <= 1e-6);
  CHECK(delgado_trace(RankOneSequence(x, {})) == cplx{});
  // Orthonormal windowed sinusoids on [0, 1].
  const auto u = numerics::make_grid(numerics::UniformGrid::torus(1, 64));
  std::vector<RankOneTerm> terms;
  for (int m = 1; m <= 4; ++m) {
    const auto e = SampledField::from_function(u, [&](auto p) { return unit_phase(kTwoPi * m * p[0]); });
    terms.push_back({e, e.conj()});
  }
  CHECK(std::abs(delgado_trace(RankOneSequence(u, terms)) - 4.0) <= 1e-6);
}

TEST_CASE("kernel action") {
  const auto x = box(1, -6, 6, 256);
  const auto g = support::gaussian(x);
  const auto k = kernel_from_decomposition(gaussian_term(x));
  const auto out = apply_kernel(k, g);
  double err = 0.0;
  for (std::size_t i = 0; i < x->size(); ++i) err = std::max(err, std::abs(out[i] - std::sqrt(0.5) * g[i]));
  CHECK(err <= 1e-6);
  CHECK(numerics::sup_norm(apply_kernel(k, SampledField::zeros(x))) == 0.0);

  numerics::SeededRng rng(3);
  const auto f = support::random_field(x, rng);
  const auto v = support::random_field(x, rng);
  const cplx a(0.3, -1.2), b(2.0, 0.5);
  const auto lhs = apply_kernel(k, numerics::combine(a, f, b, v));
  const auto rhs = numerics::combine(a, apply_kernel(k, f), b, apply_kernel(k, v));
  CHECK(numerics::max_abs_difference(lhs, rhs) <= 1e-12);
}

TEST_CASE("kernel matrix of a rank-one operator") {
  const auto x = box(1, -6, 6, 128);
  numerics::SeededRng rng(8);
  const auto h = support::gaussian(x, 0.5);
  const auto g = support::gaussian(x, -0.3, 1.3).scaled(cplx(0.2, 0.9));
  const RankOneSequence d(x, {{h, g}});
  const auto m = kernel_matrix(kernel_from_decomposition(d));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m.eigen());
  CHECK(svd.singularValues()(1) <= 1e-10 * svd.singularValues()(0));
  const auto e = numerics::dense_eigenvalues(m);
  CHECK(std::abs(e[0] - delgado_trace(d)) <= 1e-10);
  for (std::size_t i = 1; i < e.size(); ++i) CHECK(std::abs(e[i]) <= 1e-10);
  const auto mg = kernel_matrix(kernel_from_decomposition(gaussian_term(box(1, -6, 6, 512))));
  CHECK(std::abs(mg.trace() - std::sqrt(0.5)) <= 1e-6);
  const auto f = support::random_field(x, rng);
  const auto direct = apply_kernel(kernel_from_decomposition(d), f);
  CHECK(support::max_diff(m.apply(f.values()), direct.values()) <= 1e-12);
}

TEST_CASE("finite lidskii on random decompositions") {
  const auto x = box(1, -4, 4, 96);
  numerics::SeededRng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<RankOneTerm> terms;
    for (int k = 0; k < 4; ++k) {
      terms.push_back({support::gaussian(x, rng.uniform(-1, 1)).scaled(rng.complex_normal()),
                       support::gaussian(x, rng.uniform(-1, 1), rng.uniform(0.6, 1.4))});
    }
    const RankOneSequence d(x, terms);
    const auto m = kernel_matrix(kernel_from_decomposition(d));
    CHECK(std::abs(delgado_trace(d) - m.trace()) <= 1e-10);
    CHECK(std::abs(delgado_trace(d) - numerics::compensated_total(numerics::dense_eigenvalues(m))) <= 1e-8);
  }
}

TEST_CASE("grid checks") {
  const auto x = box(1, -1, 1, 9);
  const auto y = box(1, -1, 1, 11);
  CHECK_THROWS_AS(RankOneSequence(x, {{SampledField::zeros(y), SampledField::zeros(x)}}), GridError);
  CHECK_THROWS_AS(RankOneSequence(x, {}, Exponents{0.5, 2, 1}), DomainError);
  CHECK_THROWS_AS(RankOneSequence(x, {}, Exponents{2, 2, 1.5}), DomainError);
}

TEST_CASE("report discrepancies are recomputable") {
  TraceReport r;
  r.nuclear_trace = {1.0, 0.5};
  r.matrix_trace = {1.0, 0.25};
  r.eigenvalues = {{0.5, 0.1}, {0.25, 0.1}};
  r.update_discrepancies();
  CHECK(r.eigensum == cplx(0.75, 0.2));
  CHECK(r.discrepancy_trace_vs_matrix == std::abs(r.nuclear_trace - r.matrix_trace));
  CHECK(r.discrepancy_trace_vs_eigensum == std::abs(r.nuclear_trace - r.eigensum));
  CHECK(r.discrepancy_matrix_vs_eigensum == std::abs(r.matrix_trace - r.eigensum));
}
