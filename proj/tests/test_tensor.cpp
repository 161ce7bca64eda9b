#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "support.hpp"
#include "tenclass/tensor.hpp"

using namespace tenclass;
using namespace testing_support;

TEST_CASE("construction validates shape and values") {
  CHECK_THROWS_AS(Tensor(3, 2, Vector(7, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(Tensor(3, 0), std::invalid_argument);
  Vector bad(8, 0.0);
  bad[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(Tensor(3, 2, bad), std::invalid_argument);
  bad[3] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(Tensor(3, 2, bad), std::invalid_argument);
  CHECK_THROWS_AS(Tensor::from_coo(3, 2, {{{0, 0, 0}, 1.0}, {{0, 0, 0}, 2.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Tensor::from_coo(3, 2, {{{0, 2, 0}, 1.0}}), std::out_of_range);
  const Tensor t(3, 2);
  CHECK(t.size() == 8);
  CHECK(t.row_size() == 4);
}

TEST_CASE("linear and multi indices are inverse, first index most significant") {
  const Tensor t(3, 3);
  CHECK(t.linear_index(MultiIndex{1, 0, 2}) == 1 * 9 + 0 * 3 + 2);
  for (Index lin = 0; lin < t.size(); ++lin) CHECK(t.linear_index(t.multi_index(lin)) == lin);
}

TEST_CASE("apply examples") {
  const Vector x{2, 3};
  CHECK(tenclass::apply(Tensor::identity(3, 2), x) == Vector{4, 9});
  CHECK(tenclass::apply(almost_e0_basic(), Vector{1, 2}) == Vector{-1, -2});
  CHECK(tenclass::apply(completely_s_not_e(), Vector{1, 1}) == Vector{0, 0});
  CHECK_THROWS_AS(tenclass::apply(Tensor::identity(3, 2), Vector{1, 2, 3}), std::invalid_argument);
}

TEST_CASE("form_value examples") {
  CHECK(form_value(Tensor(3, 2), Vector{0.3, 7}) == 0.0);
  CHECK(form_value(almost_c_basic(), Vector{1, 1}) == -3.0);
  CHECK(form_value(almost_c0_not_almost_e0(), Vector{1, 2}) == -3.0);
}

TEST_CASE("principal and row subtensors") {
  const Tensor a = almost_e0_basic();
  CHECK(principal_subtensor(a, IndexSet::full(2)) == a);
  const Tensor s = principal_subtensor(almost_c0_not_almost_e0(), IndexSet({1}));
  CHECK(s.dim() == 1);
  CHECK(s.entries()[0] == 0.0);
  const Tensor j = principal_subtensor(almost_e0_dim3(), IndexSet({0, 1}));
  CHECK(j == coo(3, 2, {{{0, 0, 0}, 1}, {{0, 0, 1}, -2}}));

  const Tensor r0 = row_subtensor(Tensor::identity(3, 2), 0);
  CHECK(r0.order() == 2);
  CHECK(r0 == coo(2, 2, {{{0, 0}, 1}}));
  CHECK(row_subtensor(almost_c0_not_almost_e0(), 1) == Tensor(2, 2));
  CHECK(row_subtensor(a, 0) == coo(2, 2, {{{0, 0}, 1}, {{0, 1}, -1}}));
}

TEST_CASE("hadamard, add and scale examples") {
  const Tensor a = almost_e0_basic();
  CHECK(hadamard(a, Tensor::ones(3, 2)) == a);
  CHECK(add(a, Tensor(3, 2)) == a);
  const Vector d = diag(scale(Tensor::identity(3, 2), 2.5));
  CHECK(d == Vector{2.5, 2.5});

  // (A o B) x^2 = (x1^2 - 2 x2^2, 2 x1^2 + x2^2) for the listed factors.
  const Tensor h = hadamard(hadamard_factor_a(), hadamard_factor_b());
  for (const Vector& x : {Vector{1, 1}, Vector{0.3, 2.0}, Vector{5, 0}}) {
    const Vector f = tenclass::apply(h, x);
    CHECK(f[0] == doctest::Approx(x[0] * x[0] - 2 * x[1] * x[1]));
    CHECK(f[1] == doctest::Approx(2 * x[0] * x[0] + x[1] * x[1]));
  }

  // Sum and product of the non-closed almost pair.
  const Tensor s = add(almost_sum_a(), almost_sum_b());
  const Tensor p = hadamard(almost_sum_a(), almost_sum_b());
  for (const Vector& x : {Vector{1, 1}, Vector{0.7, 1.9}}) {
    const Vector fs = tenclass::apply(s, x);
    CHECK(fs[0] == doctest::Approx(x[0] * x[0] - x[1] * x[1]));
    CHECK(fs[1] == doctest::Approx(-x[0] * x[0] + x[1] * x[1]));
    const Vector fp = tenclass::apply(p, x);
    CHECK(fp[0] == doctest::Approx(0.25 * x[1] * x[1]));
    CHECK(fp[1] == doctest::Approx(0.25 * x[0] * x[0]));
  }
  CHECK_THROWS_AS(add(a, Tensor(3, 3)), std::invalid_argument);
}

TEST_CASE("permute examples") {
  const Tensor a = almost_e0_basic();
  CHECK(permute(a, std::vector<Index>{0, 1}) == a);
  const std::vector<Index> swap{1, 0};
  CHECK(permute(a, swap) == coo(3, 2, {{{1, 1, 1}, 1}, {{1, 1, 0}, -1}, {{0, 1, 0}, -1}}));
  std::mt19937_64 rng(11);
  const Tensor b = random_tensor(rng, 4, 3);
  const std::vector<Index> sigma{2, 0, 1};
  CHECK(permute(permute(b, sigma), inverse_permutation(sigma)) == b);
  CHECK_THROWS_AS(permute(b, std::vector<Index>{0, 0, 1}), std::invalid_argument);
}

TEST_CASE("row and mode scaling examples") {
  const Tensor a = almost_e0_basic();
  CHECK(scale_rows(a, Vector{1, 1}) == a);
  CHECK(scale_modes(a, Vector{1, 1}) == a);
  CHECK(tenclass::apply(scale_rows(a, Vector{2, 3}), Vector{1, 2}) == Vector{-2, -6});
  CHECK(diag(scale_rows(Tensor::identity(3, 2), Vector{2, 3})) == Vector{2, 3});
  const Tensor o = scale_modes(Tensor::ones(3, 2), Vector{2, 3});
  CHECK(o.at({0, 1, 1}) == 9.0);
  CHECK(o.at({1, 0, 1}) == 6.0);
  CHECK_THROWS_AS(scale_modes(a, Vector{1, 0}), std::invalid_argument);

  const Tensor e = almost_e_basic();
  const Vector d{2, 2};
  const Vector x{1, 1};
  const Vector lhs = tenclass::apply(scale_modes(e, d), x);
  const Vector rhs = tenclass::apply(scale_rows(e, d), Vector{d[0] * x[0], d[1] * x[1]});
  for (Index i = 0; i < 2; ++i) CHECK(lhs[i] == doctest::Approx(rhs[i] / d[i]));
}

TEST_CASE("symmetry, diagonal and sign predicates") {
  const Tensor i3 = Tensor::identity(3, 2);
  CHECK(is_symmetric(i3));
  CHECK(diag(i3) == Vector{1, 1});
  CHECK(is_nonneg(i3));
  CHECK_FALSE(is_positive(i3));
  CHECK_FALSE(is_symmetric(almost_e_basic()));
  CHECK(is_positive(Tensor::ones(3, 2)));
  std::mt19937_64 rng(3);
  const Tensor s = symmetrize(random_tensor(rng, 4, 3));
  CHECK(is_symmetric(s, 1e-15));
}

TEST_CASE("property: contraction agrees with an index-decoding reference") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + trial % 4;
    const Index n = 1 + static_cast<Index>(trial % 5);
    const Tensor a = random_tensor(rng, m, n);
    Vector x(n);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (double& v : x) v = u(rng);
    const Vector f = tenclass::apply(a, x);
    const Vector g = naive_apply(a, x);
    for (Index i = 0; i < n; ++i) CHECK(rel_err(f[i], g[i]) < 1e-12);
    CHECK(rel_err(form_value(a, x), dot(x, f)) < 1e-12);
  }
}

TEST_CASE("property: homogeneity of apply") {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + trial % 3;
    const Index n = 2 + static_cast<Index>(trial % 3);
    const Tensor a = random_tensor(rng, m, n);
    const Vector x = random_simplex_point(rng, n);
    const double t = u(rng);
    Vector tx = x;
    for (double& v : tx) v *= t;
    const Vector f = tenclass::apply(a, x);
    const Vector g = tenclass::apply(a, tx);
    for (Index i = 0; i < n; ++i) CHECK(rel_err(g[i], std::pow(t, m - 1) * f[i]) < 1e-12);
  }
}

TEST_CASE("property: support locality of principal subtensors") {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 3 + static_cast<Index>(trial % 2);
    const Tensor a = random_tensor(rng, 3 + trial % 2, n);
    const std::uint64_t mask = 1 + static_cast<std::uint64_t>(trial) % ((1u << n) - 1);
    const IndexSet j = IndexSet::from_mask(mask);
    const Vector y = random_simplex_point(rng, j.size());
    const Vector x = embed(y, j, n);
    const Vector full = tenclass::apply(a, x);
    const Vector sub = tenclass::apply(principal_subtensor(a, j), y);
    for (Index k = 0; k < j.size(); ++k) CHECK(rel_err(sub[k], full[j[k]]) < 1e-12);
  }
}

TEST_CASE("property: component equals the row subtensor form") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + static_cast<Index>(trial % 3);
    const Tensor a = random_tensor(rng, 3 + trial % 2, n);
    const Vector x = random_simplex_point(rng, n);
    const Vector f = tenclass::apply(a, x);
    for (Index i = 0; i < n; ++i) CHECK(rel_err(form_value(row_subtensor(a, i), x), f[i]) < 1e-12);
  }
}

TEST_CASE("property: hadamard and add commute with subtensor extraction") {
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 50; ++trial) {
    const Tensor a = random_tensor(rng, 3, 4);
    const Tensor b = random_tensor(rng, 3, 4);
    const IndexSet j = IndexSet::from_mask(1 + static_cast<std::uint64_t>(trial) % 15);
    CHECK(principal_subtensor(hadamard(a, b), j) ==
          hadamard(principal_subtensor(a, j), principal_subtensor(b, j)));
    CHECK(principal_subtensor(add(a, b), j) == add(principal_subtensor(a, j), principal_subtensor(b, j)));
  }
}

TEST_CASE("property: permutation conjugation") {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 3 + static_cast<Index>(trial % 2);
    const Tensor a = random_tensor(rng, 3 + trial % 2, n);
    std::vector<Index> sigma(n);
    std::iota(sigma.begin(), sigma.end(), Index{0});
    std::shuffle(sigma.begin(), sigma.end(), rng);
    const auto inv = inverse_permutation(sigma);
    const Vector x = random_simplex_point(rng, n);
    Vector y(n);
    for (Index k = 0; k < n; ++k) y[k] = x[inv[k]];
    const Vector lhs = tenclass::apply(permute(a, sigma), x);
    const Vector rhs = tenclass::apply(a, y);
    for (Index i = 0; i < n; ++i) CHECK(rel_err(lhs[i], rhs[sigma[i]]) < 1e-12);
  }
}

TEST_CASE("property: conjugation with x o sigma holds for involutions") {
  std::mt19937_64 rng(707);
  const std::vector<Index> sigma{2, 1, 0, 3};
  for (int trial = 0; trial < 50; ++trial) {
    const Tensor a = random_tensor(rng, 3, 4);
    const Vector x = random_simplex_point(rng, 4);
    Vector xs(4);
    for (Index j = 0; j < 4; ++j) xs[j] = x[sigma[j]];
    const Vector lhs = tenclass::apply(permute(a, sigma), x);
    const Vector rhs = tenclass::apply(a, xs);
    for (Index i = 0; i < 4; ++i) CHECK(rel_err(lhs[i], rhs[sigma[i]]) < 1e-12);
  }
}

TEST_CASE("index sets enumerate by size then lexicographically") {
  const auto subsets = enumerate_subsets(3, false);
  REQUIRE(subsets.size() == 7);
  CHECK(subsets[0] == IndexSet({0}));
  CHECK(subsets[3] == IndexSet({0, 1}));
  CHECK(subsets[5] == IndexSet({1, 2}));
  CHECK(subsets[6] == IndexSet({0, 1, 2}));
  CHECK(enumerate_subsets(3, true).size() == 6);
  CHECK_THROWS(IndexSet({1, 1}));
}
