#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "grid_oracle.hpp"
#include "support.hpp"
#include "tenclass/subdivision.hpp"

using namespace tenclass;
using namespace testing_support;

namespace {

Simplex random_simplex(std::mt19937_64& rng, Index r) {
  for (;;) {
    std::vector<Vector> verts;
    for (Index j = 0; j < r; ++j) verts.push_back(random_simplex_point(rng, r));
    if (normalized_volume(verts) > 1e-3) return Simplex(std::move(verts));
  }
}

}  // namespace

TEST_CASE("simplex construction") {
  const Simplex s = Simplex::standard(3);
  CHECK(s.dim() == 3);
  CHECK(s.centroid()[1] == doctest::Approx(1.0 / 3.0));
  CHECK(s.diameter() == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(Simplex({{0.5, 0.6}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Simplex({{0.5, 0.5}, {0.5, 0.5}}), std::invalid_argument);
  const Vector lambda = s.barycentric(Vector{0.2, 0.3, 0.5});
  CHECK(lambda[0] == doctest::Approx(0.2));
  CHECK(lambda[2] == doctest::Approx(0.5));
}

TEST_CASE("refine examples") {
  const auto [a, b] = refine(Simplex::standard(2));
  CHECK(a.vertex(0) == Vector{1, 0});
  CHECK(a.vertex(1) == Vector{0.5, 0.5});
  CHECK(b.vertex(0) == Vector{0.5, 0.5});
  CHECK(b.vertex(1) == Vector{0, 1});
  CHECK(a.depth() == 1);

  const auto [t1, t2] = refine(Simplex::standard(3));
  // Longest-edge tie goes to (0, 1); both halves share the median to (0.5, 0.5, 0).
  CHECK(t1.vertex(1) == Vector{0.5, 0.5, 0});
  CHECK(t2.vertex(0) == Vector{0.5, 0.5, 0});
  CHECK(t1.vertex(2) == Vector{0, 0, 1});
  CHECK(t2.vertex(2) == Vector{0, 0, 1});
}

TEST_CASE("repeated refinement shrinks every leaf") {
  for (Index r = 2; r <= 4; ++r) {
    std::vector<Simplex> leaves{Simplex::standard(r)};
    double prev = leaves.front().diameter();
    for (int round = 0; round < 3; ++round) {
      for (Index step = 0; step < 2 * (r - 1); ++step) {
        std::vector<Simplex> next;
        for (const auto& s : leaves) {
          auto [c1, c2] = refine(s);
          next.push_back(std::move(c1));
          next.push_back(std::move(c2));
        }
        leaves = std::move(next);
      }
      double worst = 0.0;
      for (const auto& s : leaves) worst = std::max(worst, s.diameter());
      CHECK(worst <= std::sqrt(3.0) / 2.0 * prev + 1e-15);
      prev = worst;
    }
  }
}

TEST_CASE("property: refine partitions the parent") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const Index r = 2 + static_cast<Index>(trial % 3);
    const Simplex s = random_simplex(rng, r);
    const auto [c1, c2] = refine(s);
    const Vector x = s.point(random_simplex_point(rng, r));
    int inside = 0;
    for (const Simplex* c : {&c1, &c2}) {
      const Vector l = c->barycentric(x);
      if (*std::min_element(l.begin(), l.end()) >= -1e-12) ++inside;
    }
    CHECK(inside >= 1);
    const Vector l1 = c1.barycentric(x);
    const Vector l2 = c2.barycentric(x);
    const double m1 = *std::min_element(l1.begin(), l1.end());
    const double m2 = *std::min_element(l2.begin(), l2.end());
    // A point strictly inside one child is outside the other.
    if (m1 > 1e-9) CHECK(m2 < 1e-9);
    if (m2 > 1e-9) CHECK(m1 < 1e-9);
  }
}

TEST_CASE("component_coeffs examples") {
  const Tensor a = almost_e0_basic();
  const auto c = component_coeffs(a, Simplex::standard(2));
  CHECK(c[0] == Vector{1, -1, 0, 0});
  CHECK(c[1] == Vector{0, -1, 0, 0});
  const auto z = component_coeffs(Tensor(3, 2), Simplex::standard(2));
  for (const auto& row : z) CHECK(std::all_of(row.begin(), row.end(), [](double v) { return v == 0.0; }));
  std::mt19937_64 rng(5);
  const Tensor b = random_tensor(rng, 4, 3);
  const auto cb = component_coeffs(b, Simplex::standard(3));
  for (Index k = 0; k < 3; ++k) {
    const auto row = b.row(k);
    CHECK(Vector(row.begin(), row.end()) == cb[k]);
  }
}

TEST_CASE("property: coefficient bounds sandwich the components and the form") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int m = 2 + trial % 3;
    const Index r = 2 + static_cast<Index>(trial % 3);
    const Tensor a = random_tensor(rng, m, r);
    const Simplex s = random_simplex(rng, r);
    const Vector x = s.point(random_simplex_point(rng, r));
    const Vector f = naive_apply(a, x);
    const ComponentBounds b = component_bounds(a, s);
    for (Index k = 0; k < r; ++k) {
      CHECK(b.lower[k] <= f[k] + 1e-10);
      CHECK(f[k] <= b.upper[k] + 1e-10);
    }
    const auto [lo, hi] = form_bounds(a, s);
    const double g = naive_form(a, x);
    CHECK(lo <= g + 1e-10);
    CHECK(g <= hi + 1e-10);
    ++checked;
  }
  CHECK(checked == 10000);
}

TEST_CASE("decide_all_components_negative examples") {
  EngineConfig cfg;
  CHECK(decide_all_components_negative(Tensor::identity(3, 2), true, cfg).is_holds());
  CHECK(decide_all_components_negative(Tensor::identity(4, 3), false, cfg).is_holds());

  const Tensor a = almost_e0_basic();
  const Verdict v = decide_all_components_negative(a, true, cfg);
  REQUIRE(v.is_fails());
  REQUIRE(v.witness());
  const Vector f = tenclass::apply(a, *v.witness());
  CHECK(f[0] < 0.0);
  CHECK(f[1] < 0.0);
  CHECK(*std::min_element(v.witness()->begin(), v.witness()->end()) >= cfg.interior_margin * (1 - 1e-9));
  // The direction (1,2) is itself a witness.
  const Vector g = tenclass::apply(a, Vector{1.0 / 3, 2.0 / 3});
  CHECK(g[0] < 0.0);
  CHECK(g[1] < 0.0);

  const Verdict w = decide_all_components_negative(almost_e_basic(), false, cfg);
  REQUIRE(w.is_fails());
  const Vector h = tenclass::apply(almost_e_basic(), *w.witness());
  CHECK(h[0] <= 1e-9);
  CHECK(h[1] <= 1e-9);
  CHECK(tenclass::apply(almost_e_basic(), Vector{0.5, 0.5}) == Vector{0, -0.5});
}

TEST_CASE("decide_form_nonneg examples") {
  EngineConfig cfg;
  CHECK(decide_form_nonneg(Tensor::ones(3, 3), false, cfg).is_holds());
  CHECK(decide_form_nonneg(Tensor::ones(4, 2), true, cfg).is_holds());

  const Verdict v = decide_form_nonneg(almost_c_basic(), false, cfg);
  REQUIRE(v.is_fails());
  CHECK(form_value(almost_c_basic(), *v.witness()) < 0.0);
  CHECK(form_value(almost_c_basic(), Vector{0.5, 0.5}) == -3.0 / 8.0);

  const Verdict u = decide_form_nonneg(almost_c0_not_almost_e0(), false, cfg);
  REQUIRE(u.is_fails());
  CHECK(form_value(almost_c0_not_almost_e0(), *u.witness()) < 0.0);
  CHECK(form_value(almost_c0_not_almost_e0(), Vector{1.0 / 3, 2.0 / 3}) == doctest::Approx(-1.0 / 9));
}

TEST_CASE("every Fails verdict re-verifies through its claim") {
  const Tensor a = almost_e0_basic();
  const Claim wrong{Claim::Kind::SupportComponentsBelow, -10.0, true, 0.0};
  CHECK_THROWS_AS(Verdict::fails(a, Vector{0.5, 0.5}, wrong, 1e-9), std::logic_error);
  const Claim right{Claim::Kind::SupportComponentsBelow, 0.0, true, 0.0};
  CHECK(Verdict::fails(a, Vector{1.0 / 3, 2.0 / 3}, right, 1e-9).is_fails());
}

TEST_CASE("property: best-first bounds never decrease on zero-free forms") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 2 + static_cast<Index>(trial % 3);
    const int m = 3 + trial % 2;
    // Positive diagonal plus small noise keeps the form away from zero.
    const Tensor a = add(Tensor::diagonal(m, Vector(n, 1.0)), random_tensor(rng, m, n, 0.0, 0.05));
    std::vector<double> trace;
    EngineConfig cfg;
    cfg.bound_trace = &trace;
    const Verdict v = decide_form_nonneg(a, true, cfg);
    CHECK(v.is_holds());
    for (std::size_t k = 1; k < trace.size(); ++k) CHECK(trace[k] >= trace[k - 1] - 1e-15);
  }
}

TEST_CASE("decisions on random dimension-2 tensors agree with a grid scan") {
  std::mt19937_64 rng(31);
  EngineConfig cfg;
  for (int trial = 0; trial < 40; ++trial) {
    const Tensor a = random_tensor(rng, 3 + trial % 2, 2);
    const double tol = cfg.epsilon * tolerance_scale(a);
    const grid_oracle::Grid2 grid(a, tol, 20000);
    const Verdict form = decide_form_nonneg(a, false, cfg);
    REQUIRE(form.decisive());
    if (form.is_holds()) CHECK_FALSE(grid.form_negative_somewhere(true));
    if (form.is_fails()) CHECK(form_value(a, *form.witness()) < -tol);
    const Verdict comp = decide_all_components_negative(a, true, cfg);
    REQUIRE(comp.decisive());
    if (comp.is_holds()) CHECK_FALSE(grid.components_negative_somewhere(true, true));
  }
}

TEST_CASE("tensors whose components vanish together are still decided") {
  // A singular M-tensor: components all vanish at the Perron direction.
  for (Index n = 2; n <= 4; ++n) {
    const double rho = std::pow(static_cast<double>(n), 2);
    const Tensor a = diag_minus_ones(3, n, rho, 1.0);
    const Verdict v = decide_all_components_negative(a, true, EngineConfig{});
    CHECK(v.is_holds());
  }
}

TEST_CASE("engine configuration is validated") {
  EngineConfig bad;
  bad.epsilon = 0.0;
  CHECK_THROWS_AS(decide_form_nonneg(Tensor::ones(3, 2), false, bad), std::invalid_argument);
  EngineConfig shallow;
  shallow.max_depth = 0;
  CHECK_THROWS_AS(decide_form_nonneg(Tensor::ones(3, 2), false, shallow), std::invalid_argument);
}
