#include "nuctrace/group/su2.hpp"
#include "nuctrace/homog/classi.hpp"
#include "nuctrace/homog/su3.hpp"
#include "nuctrace/numerics/norms.hpp"
#include "support.hpp"

using namespace nuctrace;
using namespace nuctrace::homog;
using group::GroupSymbol;
using group::TorusSymbol;
using numerics::GridPtr;
using numerics::SampledField;

namespace {

GridPtr torus_grid(std::size_t count) { return numerics::make_grid(numerics::UniformGrid::torus(1, count)); }

NodeFunction lift(const ClassIPtr& inst, const SampledField& f) {
  return NodeFunction(inst->table()->quadrature_ptr(), std::vector<cplx>(f.values().begin(), f.values().end()));
}

Su3Angles random_su3(numerics::SeededRng& rng) {
  Su3Angles a{};
  for (int i = 0; i < 3; ++i) a[i] = rng.uniform(0, kPi / 2);
  for (int i = 3; i < 8; ++i) a[i] = rng.uniform(0, kTwoPi);
  return a;
}

std::vector<cplx> su2_band_limited(const group::GroupQuadrature& q, numerics::SeededRng& rng, int max_twoL) {
  std::vector<cplx> v(q.size());
  for (int l = 0; l <= max_twoL; ++l) {
    Eigen::MatrixXcd c(l + 1, l + 1);
    for (int i = 0; i <= l; ++i)
      for (int j = 0; j <= l; ++j) c(i, j) = rng.complex_normal();
    for (std::size_t x = 0; x < q.size(); ++x) {
      v[x] += (c.cwiseProduct(group::wigner_matrix(group::Su2Irrep(l), group::su2_node_angles(q, x)))).sum();
    }
  }
  return v;
}

}  // namespace

TEST_CASE("class-I mask") {
  numerics::SeededRng rng(1);
  Eigen::MatrixXcd m(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = rng.complex_normal();
  CHECK(classI_mask(m, 3) == m);
  CHECK_THROWS_AS(classI_mask(m, 0), DomainError);
  CHECK_THROWS_AS(classI_mask(m, 4), DomainError);
  const Eigen::MatrixXcd ones = Eigen::MatrixXcd::Ones(3, 3);
  const auto one = classI_mask(ones, 1);
  CHECK(one(0, 0) == cplx(1.0));
  CHECK(one.cwiseAbs().sum() == 1.0);
  const auto two = classI_mask(m, 2);
  CHECK(classI_mask(two, 2) == two);
  CHECK(two(2, 0) == cplx{});
  CHECK(two(1, 2) == cplx{});
  CHECK(two(1, 1) == m(1, 1));
}

TEST_CASE("class-I tables") {
  const auto q = group::su2_euler_quadrature(8);
  const auto table = group::su2_table(q, 2);
  CHECK_NOTHROW(ClassIIrrepTable(table, {1, 1, 3}));
  CHECK_THROWS_AS(ClassIIrrepTable(table, {1, 3, 3}), DomainError);
  CHECK_THROWS_AS(ClassIIrrepTable(table, {0, 1, 1}), DomainError);
  CHECK_THROWS_AS(ClassIIrrepTable(table, {1, 1}), ShapeError);
  const auto irreps = std::make_shared<const ClassIIrrepTable>(table, std::vector<int>{1, 1, 2});
  CHECK_THROWS_AS(HomogSymbol(irreps, GroupSymbol(MatrixField::representation(table), MatrixField::identity(table))),
                  InvariantError);
}

TEST_CASE("torus instance") {
  const int cutoff = 3;
  const std::size_t count = 16;
  const auto inst = torus_instance(1, count, cutoff);
  const auto x = torus_grid(count);
  const auto l = group::frequency_window(1, cutoff);
  numerics::SeededRng rng(8);
  const auto a = TorusSymbol::from_function(x, l, [&](auto p, auto q) {
    return std::cos(kTwoPi * p[0]) + cplx(0.2, q[0]) / (1.0 + q[0] * q[0]);
  });
  const auto f = support::random_field(x, rng);
  const auto phase = group::PhaseSpec::linear({0.15}, 0.5);
  const auto sym = homog_symbol_from_torus(inst, phase, a);
  const auto got = homog_fio_apply(sym, lift(inst, f));
  CHECK(support::max_diff(got.values, group::torus_fio_apply(phase, a, f).values()) <= 1e-10);
  CHECK(std::abs(homog_nuclear_trace(sym) - group::torus_nuclear_trace(phase, a)) <= 1e-10);

  const auto ones = TorusSymbol::from_function(x, l, [](auto, auto) { return 1.0; });
  const auto id = homog_symbol_from_torus(inst, group::PhaseSpec::linear(), ones);
  CHECK(std::abs(homog_nuclear_trace(id) - double(2 * cutoff + 1)) <= 1e-10);
  const auto poly = SampledField::from_function(x, [](auto p) {
    return cplx(1.0, -0.5) * unit_phase(-kTwoPi * 3 * p[0]) + std::sin(kTwoPi * 2 * p[0]);
  });
  const auto back = homog_fio_apply(id, lift(inst, poly));
  CHECK(support::max_diff(back.values, poly.values()) <= 1e-10);
  const auto zero = homog_symbol_from_torus(inst, phase, TorusSymbol::zeros(x, l));
  CHECK(homog_nuclear_trace(zero) == cplx{});
  CHECK(homog_mixed_norm(zero, 2, 2) == 0.0);

  for (const auto& [p1, p2] : {std::pair{2.0, 2.0}, std::pair{4.0, 1.0}, std::pair{3.0, 1.5}}) {
    CHECK(std::abs(homog_mixed_norm(sym, p1, p2) - numerics::mixed_norm(a, numerics::Variable::xi, p1, p2)) <= 1e-10);
  }
  CHECK_THROWS_AS(homog_mixed_norm(sym, 1.5, 2), DomainError);
  CHECK_THROWS_AS(homog_symbol_from_torus(torus_instance(1, count, 2), phase, a), ShapeError);
}

TEST_CASE("su2 instance") {
  const auto q = group::su2_euler_quadrature(16);
  const auto inst = su2_instance(q, 2);
  const auto& table = inst->table();
  const GroupSymbol gs(MatrixField::representation(table), MatrixField::identity(table));
  const HomogSymbol sym(inst, gs);
  CHECK(std::abs(homog_nuclear_trace(sym) - 14.0) <= 1e-6);
  CHECK(homog_nuclear_trace(sym) == group::group_nuclear_trace(gs, 2));
  numerics::SeededRng rng(40);
  const NodeFunction f(q, su2_band_limited(*q, rng, 2));
  CHECK(homog_fio_apply(sym, f).values == group::group_fio_apply(gs, 2, f).values);
  CHECK(homog_nuclear_trace(HomogSymbol(inst, GroupSymbol(MatrixField::representation(table), MatrixField::zeros(table)))) ==
        cplx{});
}

TEST_CASE("mask idempotence") {
  const auto q = group::su2_euler_quadrature(8);
  const auto table = group::su2_table(q, 2);
  const auto irreps = std::make_shared<const ClassIIrrepTable>(table, std::vector<int>{1, 1, 2});
  numerics::SeededRng rng(3);
  const auto raw = MatrixField::generate(table, [&](std::size_t p, std::size_t) {
    Eigen::MatrixXcd m(p + 1, p + 1);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.complex_normal();
    return m;
  });
  const auto masked = mask_field(*irreps, raw);
  const HomogSymbol sym(irreps, GroupSymbol(MatrixField::representation(table), masked));
  const HomogSymbol again(irreps, GroupSymbol(MatrixField::representation(table), mask_field(*irreps, masked)));
  const NodeFunction f(q, su2_band_limited(*q, rng, 2));
  CHECK(homog_fio_apply(sym, f).values == homog_fio_apply(again, f).values);
  CHECK(homog_nuclear_trace(sym) == homog_nuclear_trace(again));
  for (std::size_t x = 0; x < q->size(); x += 13) {
    CHECK(masked.at(2, x)(2, 0) == cplx{});
    CHECK(masked.at(2, x)(1, 1) == raw.at(2, x)(1, 1));
    CHECK(masked.at(1, x)(1, 1) == cplx{});
  }
}

TEST_CASE("synthesized homogeneous symbols") {
  const auto q = group::su2_euler_quadrature(12);
  const auto inst = su2_instance(q, 2);
  const auto phase = MatrixField::representation(inst->table());
  numerics::SeededRng rng(12);
  std::vector<group::GroupTerm> terms;
  for (int k = 0; k < 2; ++k) terms.push_back({su2_band_limited(*q, rng, 2), su2_band_limited(*q, rng, 2)});
  const GroupRankOneSequence d(q, terms);
  const auto sym = homog_symbol_from_decomposition(inst, phase, d);
  CHECK(std::abs(homog_nuclear_trace(sym) - group::group_delgado_trace(d)) <= 1e-6);
  CHECK(std::abs(phase_inverse_bound(sym) - 1.0) <= 1e-10);

  // p1 = p2 = 2: the L2 norm of the kernel sum_k h_k(x) g_k(y)
  double mass = 0.0;
  for (std::size_t x = 0; x < q->size(); ++x) {
    for (std::size_t y = 0; y < q->size(); ++y) {
      cplx k{};
      for (const auto& t : d.terms()) k += t.h[x] * t.g[y];
      mass += q->weight(x) * q->weight(y) * std::norm(k);
    }
  }
  CHECK(std::abs(homog_mixed_norm(sym, 2, 2) - std::sqrt(mass)) <= 1e-6);

  for (const auto& e : {nuclear::Exponents{2, 2, 1}, nuclear::Exponents{4, 1, 1}, nuclear::Exponents{3, 2, 1}}) {
    const GroupRankOneSequence de(q, terms, e);
    const auto s = homog_symbol_from_decomposition(inst, phase, de);
    CHECK(homog_mixed_norm(s, e.p1, e.p2) <= phase_inverse_bound(s) * group::group_term_norm_sum(de) + 1e-6);
  }
}

TEST_SUITE("su3") {
  TEST_CASE("dimensions") {
    CHECK(su3_dim(0, 0) == 1);
    CHECK(su3_dim(1, 0) == 3);
    CHECK(su3_dim(0, 1) == 3);
    CHECK(su3_dim(1, 1) == 8);
    CHECK(su3_dim(2, 0) == 6);
    CHECK(su3_dim(3, 0) == 10);
    CHECK(su3_dim(2, 2) == 27);
    CHECK_THROWS_AS(su3_dim(-1, 0), DomainError);
  }

  TEST_CASE("fundamental representation") {
    CHECK((su3_fundamental({}) - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff() <= 1e-15);
    Su3Angles a{};
    a[0] = kPi / 2;
    CHECK(std::abs(su3_fundamental(a)(0, 1) - 1.0) <= 1e-15);
    numerics::SeededRng rng(99);
    double unit = 0.0;
    double det = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
      const auto u = su3_fundamental(random_su3(rng));
      unit = std::max(unit, (u.adjoint() * u - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff());
      det = std::max(det, std::abs(u.determinant() - 1.0));
    }
    CHECK(unit <= 1e-10);
    CHECK(det <= 1e-10);
    a[1] = 2.0;
    CHECK_THROWS_AS(su3_fundamental(a), DomainError);
    a[1] = 0.0;
    a[5] = -0.1;
    CHECK_THROWS_AS(su3_fundamental(a), DomainError);
  }

  TEST_CASE("haar quadrature") {
    const auto q = su3_haar_quadrature(16);
    CHECK(std::abs(q->raw_mass() - 1.0) <= 1e-6);
    numerics::CompensatedSum s;
    for (const double w : q->weights()) s.add(w);
    CHECK(std::abs(s.value() - 1.0) <= 1e-10);
    CHECK_THROWS_AS(su3_haar_quadrature(4), DomainError);

    numerics::SeededRng rng(7);
    const Eigen::Matrix3cd g0 = su3_fundamental(random_su3(rng));
    // entries of U (x) conj(U), the means of U, and tr U before and after translation
    Eigen::Matrix<cplx, 9, 9> gram = Eigen::Matrix<cplx, 9, 9>::Zero();
    Eigen::Matrix3cd mean = Eigen::Matrix3cd::Zero();
    cplx tr{};
    cplx tr_moved{};
    for (std::size_t x = 0; x < q->size(); ++x) {
      const Eigen::Matrix3cd u = su3_node(*q, x);
      const double w = q->weight(x);
      const Eigen::Map<const Eigen::Matrix<cplx, 9, 1>> v(u.data());
      gram.noalias() += w * v * v.adjoint();
      mean += w * u;
      tr += w * u.trace();
      tr_moved += w * (g0 * u).trace();
    }
    CHECK((gram - Eigen::Matrix<cplx, 9, 9>::Identity() / 3.0).cwiseAbs().maxCoeff() <= 1e-3);
    CHECK(mean.cwiseAbs().maxCoeff() <= 1e-4);
    CHECK(std::abs(tr_moved - tr) <= 2e-3);
  }
}
