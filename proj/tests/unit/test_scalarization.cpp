#include <doctest.h>

#include <cmath>
#include <limits>

#include "paretolab/error.hpp"
#include "paretolab/rng.hpp"
#include "paretolab/scalarization.hpp"

using namespace paretolab;

namespace {

using Vec = std::vector<double>;

Vec random_vec(Rng& rng, std::size_t m, double lo, double hi) {
  Vec v(m);
  for (auto& x : v) x = rng.uniform(lo, hi);
  return v;
}

// a general scalarizer with random rows and a k that keeps every <a, k> positive
GeneralScalarizer random_general(Rng& rng, std::size_t m, bool nonnegative_rows) {
  const Vec k = random_vec(rng, m, 0.2, 2.0);
  std::vector<HalfSpace> rows;
  const std::size_t count = 1 + rng.below(5);
  while (rows.size() < count) {
    HalfSpace h{random_vec(rng, m, nonnegative_rows ? 0.0 : -1.0, 1.0), rng.uniform(-0.5, 0.5)};
    double ak = 0;
    for (std::size_t i = 0; i < m; ++i) ak += h.a[i] * k[i];
    if (ak > 0.05) rows.push_back(std::move(h));
  }
  return GeneralScalarizer(PolyhedralSet(std::move(rows)), random_vec(rng, m, -1, 1), k);
}

}  // namespace

TEST_CASE("general functional on simple sets") {
  const GeneralScalarizer first(PolyhedralSet({{{1, 0, 0}, 0}}), {0, 0, 0}, {1, 5, -3});
  CHECK(first(Vec{0.4, 9, 9}) == 0.4);

  std::vector<HalfSpace> units;
  for (int i = 0; i < 3; ++i) {
    Vec a(3, 0.0);
    a[i] = 1;
    units.push_back({a, 0});
  }
  const GeneralScalarizer maxf(PolyhedralSet(units), {0, 0, 0}, {1, 1, 1});
  CHECK(maxf(Vec{0.1, 0.7, -2}) == 0.7);
  CHECK(phi_general(maxf, Vec{0.1, 0.7, -2}) == 0.7);

  CHECK_THROWS_AS(GeneralScalarizer(PolyhedralSet({{{1, 0}, 0}}), {0, 0}, {0, 1}), DomainError);
  CHECK_THROWS_AS(PolyhedralSet({{{0, 0}, 0}}), DomainError);
  CHECK_THROWS_AS(PolyhedralSet({}), DomainError);
  CHECK_THROWS_AS(maxf(Vec{1, 2}), DimensionError);
}

TEST_CASE("named functionals") {
  CHECK(chebyshev(Vec{0.3, 0.7}, Vec{1, 1}, Vec{0, 0}) == 0.7);
  CHECK(chebyshev(Vec{0.3, 0.7}, Vec{2, 1}, Vec{0.3, 0.7}) == 0.0);
  CHECK_THROWS_AS(chebyshev(Vec{0.3, 0.7}, Vec{0, 1}, Vec{0, 0}), DomainError);

  CHECK(weighted_sum(Vec{0.3, 0.7}, Vec{1, 0}) == 0.3);
  CHECK(weighted_sum(Vec{1, 1}, Vec{0.5, 0.5}) == 1.0);
  CHECK_THROWS_AS(weighted_sum(Vec{1, 1}, Vec{0, 0}), DomainError);
  CHECK_THROWS_AS(weighted_sum(Vec{1, 1}, Vec{-1, 2}), DomainError);

  const Vec eps{0.5};
  CHECK(epsilon_constraint(Vec{0.3, 0.4}, 0, eps) == 0.3);
  CHECK_FALSE(epsilon_constraint(Vec{0.3, 0.6}, 0, eps).has_value());
  CHECK(epsilon_constraint(Vec{0.3, 0.5}, 0, eps) == 0.3);
  CHECK(epsilon_constraint(Vec{0.9, 0.2, 0.1}, 1, Vec{1.0, 0.1}) == 0.2);
  CHECK_FALSE(epsilon_constraint(Vec{0.9, 0.2, 0.1}, 1, Vec{0.8, 0.1}).has_value());
  CHECK_THROWS_AS(epsilon_constraint(Vec{0.3, 0.4}, 2, eps), DomainError);
  CHECK_THROWS_AS(epsilon_constraint(Vec{0.3, 0.4}, 0, Vec{1, 1}), DimensionError);

  CHECK(pascoletti_serafini(Vec{0.2, 0.9}, Vec{0.2, 0.9}, Vec{1, 3}) == 0.0);
  CHECK(pascoletti_serafini(Vec{0.2, 0.9, 0.4}, Vec{0, 0, 0}, Vec{1, 1, 1}) == 0.9);
  CHECK_THROWS_AS(pascoletti_serafini(Vec{0.2, 0.9}, Vec{0, 0}, Vec{1, 0}), DomainError);
}

TEST_CASE("named functionals equal their general encodings") {
  Rng rng(31);
  for (std::size_t m : {2u, 3u, 7u}) {
    const Vec lambda = random_vec(rng, m, 0.1, 3.0);
    const Vec w = random_vec(rng, m, -1, 1);
    const Vec a = random_vec(rng, m, 0.0, 2.0);
    const Vec k = random_vec(rng, m, 0.1, 2.0);
    const auto cheb = chebyshev_as_general(lambda, w);
    const auto ws = weighted_sum_as_general(a);
    const auto ps = pascoletti_serafini_as_general(w, k);
    for (int t = 0; t < 1000; ++t) {
      const Vec y = random_vec(rng, m, -5, 5);
      CHECK(std::abs(cheb(y) - chebyshev(y, lambda, w)) <= 1e-12);
      CHECK(std::abs(ws(y) - weighted_sum(y, a)) <= 1e-12);
      CHECK(std::abs(ps(y) - pascoletti_serafini(y, w, k)) <= 1e-12);
    }
  }
}

TEST_CASE("monotone, convex, translation along k, level sets") {
  Rng rng(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = 2 + rng.below(5);
    const auto phi = random_general(rng, m, false);
    const Vec y1 = random_vec(rng, m, -2, 2);
    Vec up = y1;
    for (auto& x : up) x += rng.uniform(0, 1);
    // monotone only when A_L - R^m_+ lies in A_L, i.e. every row is nonnegative
    const auto mono = random_general(rng, m, true);
    CHECK(mono(up) >= mono(y1) - 1e-12);

    const Vec y2 = random_vec(rng, m, -2, 2);
    const double theta = rng.uniform();
    Vec mid(m);
    for (std::size_t i = 0; i < m; ++i) mid[i] = theta * y1[i] + (1 - theta) * y2[i];
    CHECK(phi(mid) <= theta * phi(y1) + (1 - theta) * phi(y2) + 1e-12);

    const double t = rng.uniform(-3, 3);
    Vec moved = y1;
    for (std::size_t i = 0; i < m; ++i) moved[i] += t * phi.direction()[i];
    CHECK(std::abs(phi(moved) - (phi(y1) + t)) <= 1e-12);

    Vec rel(m);
    for (std::size_t i = 0; i < m; ++i) rel[i] = y1[i] - phi.reference()[i];
    const double v = phi(y1);
    if (v < -1e-12) CHECK(phi.set().contains(rel, 1e-12));
    if (v > 1e-12) CHECK_FALSE(phi.set().contains(rel, 1e-12));
    // project onto the level set boundary
    Vec edge = y1;
    for (std::size_t i = 0; i < m; ++i) edge[i] -= v * phi.direction()[i];
    for (std::size_t i = 0; i < m; ++i) rel[i] = edge[i] - phi.reference()[i];
    CHECK(std::abs(phi(edge)) <= 1e-12);
    CHECK(phi.set().contains(rel, 1e-12));
  }
}

TEST_CASE("a row with mixed signs breaks monotonicity") {
  const GeneralScalarizer phi(PolyhedralSet({{{1, -1}, 0}}), {0, 0}, {1, 0});
  CHECK(phi(Vec{0, 1}) < phi(Vec{0, 0}));
}

TEST_CASE("exhaustive scalarization of a landscape") {
  const auto one = generate_instance(10, 2, 1, 5);
  const auto rows = evaluate_all(one);
  std::size_t best = 0;
  for (std::size_t s = 1; s < rows.size(); ++s) {
    if (rows[s] > rows[best]) best = s;
  }
  const Functional ws1 = [](std::span<const double> y) { return weighted_sum(y, Vec{1}); };
  const auto r = scalarize_landscape(one, ws1);
  CHECK(r.solution.index() == best);
  CHECK(r.value == -rows[best]);
  const auto rmax = scalarize_landscape(one, ws1, Sense::Maximize);
  CHECK(rmax.solution.index() == best);

  const auto inst = generate_instance(12, 1, 3, 6);
  const auto all = evaluate_all(inst);
  const Vec lambda{0.5, 1.0, 2.0};
  const Functional cheb = [&](std::span<const double> y) { return chebyshev(y, lambda, Vec{-1, -1, -1}); };
  const auto c = scalarize_landscape(inst, cheb);
  CHECK(c.value == scalarize_landscape_serial(inst, cheb).value);
  for (std::size_t s = 0; s < all.size() / 3; ++s) {
    bool strictly_better = true;
    for (int i = 0; i < 3; ++i) strictly_better = strictly_better && all[s * 3 + i] > c.objectives[i];
    CHECK_FALSE(strictly_better);
  }

  const Vec a{0.2, 0.3, 0.5};
  const auto general = weighted_sum_as_general(a);
  const Functional direct = [&](std::span<const double> y) { return weighted_sum(y, a); };
  const Functional encoded = [&](std::span<const double> y) { return general(y); };
  CHECK(scalarize_landscape(inst, direct).solution == scalarize_landscape(inst, encoded).solution);

  const Functional eps = [](std::span<const double> y) {
    const auto v = epsilon_constraint(y, 0, Vec{-0.5, -0.5});
    return v ? *v : std::numeric_limits<double>::infinity();
  };
  const auto e = scalarize_landscape(inst, eps);
  CHECK(e.objectives[1] >= 0.5);
  CHECK(e.objectives[2] >= 0.5);
  CHECK(scalarize_landscape_serial(inst, eps).solution == e.solution);

  const Functional none = [](std::span<const double>) { return std::numeric_limits<double>::infinity(); };
  CHECK_THROWS_AS(scalarize_landscape(inst, none), DomainError);

  // constant functional: tie goes to the all-zero string
  const Functional flat = [](std::span<const double>) { return 1.0; };
  CHECK(scalarize_landscape(inst, flat).solution.index() == 0);
}
