#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "paretolab/dominance.hpp"
#include "paretolab/error.hpp"
#include "paretolab/rng.hpp"

using namespace paretolab;

namespace {

std::vector<ObjectiveVector> random_points(std::size_t count, std::size_t m, std::uint64_t seed, int levels = 0) {
  Rng rng(seed);
  std::vector<ObjectiveVector> out;
  for (std::size_t p = 0; p < count; ++p) {
    std::vector<double> v(m);
    for (auto& x : v) x = levels > 0 ? static_cast<double>(rng.below(levels)) : rng.uniform();
    out.emplace_back(std::move(v));
  }
  return out;
}

// plain double loop, written without compare()
std::vector<ObjectiveVector> naive_front(const std::vector<ObjectiveVector>& pts) {
  std::vector<ObjectiveVector> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
      bool ge = true, gt = false;
      for (std::size_t k = 0; k < pts[i].size(); ++k) {
        ge = ge && pts[j][k] >= pts[i][k];
        gt = gt || pts[j][k] > pts[i][k];
      }
      dominated = ge && gt;
    }
    if (!dominated) out.push_back(pts[i]);
  }
  return out;
}

}  // namespace

TEST_CASE("compare on small vectors") {
  CHECK(compare(ObjectiveVector{1, 2}, ObjectiveVector{0, 1}) == Dominance::Dominates);
  CHECK(compare(ObjectiveVector{0, 1}, ObjectiveVector{1, 2}) == Dominance::DominatedBy);
  CHECK(compare(ObjectiveVector{1, 0}, ObjectiveVector{0, 1}) == Dominance::Incomparable);
  CHECK(compare(ObjectiveVector{0.5, 0.5}, ObjectiveVector{0.5, 0.5}) == Dominance::Equal);
  CHECK(compare(ObjectiveVector{1, 1}, ObjectiveVector{1, 0}) == Dominance::Dominates);
  CHECK_THROWS_AS(compare(ObjectiveVector{1, 2}, ObjectiveVector{1, 2, 3}), DimensionError);
}

TEST_CASE("weak dominance") {
  CHECK(weakly_dominates(ObjectiveVector{1, 1}, ObjectiveVector{1, 0}));
  CHECK(weakly_dominates(ObjectiveVector{1, 1}, ObjectiveVector{1, 1}));
  CHECK_FALSE(weakly_dominates(ObjectiveVector{0, 1}, ObjectiveVector{1, 0}));
  CHECK_THROWS_AS(weakly_dominates(ObjectiveVector{1}, ObjectiveVector{1, 0}), DimensionError);
}

TEST_CASE("relation is antisymmetric and transitive on random triples") {
  const auto pts = random_points(60, 3, 7, 4);
  for (const auto& a : pts) {
    for (const auto& b : pts) {
      const auto ab = compare(a, b);
      const auto ba = compare(b, a);
      if (ab == Dominance::Dominates) CHECK(ba == Dominance::DominatedBy);
      if (ab == Dominance::Equal) CHECK(ba == Dominance::Equal);
      if (ab == Dominance::Incomparable) CHECK(ba == Dominance::Incomparable);
      if (ab != Dominance::Dominates) continue;
      for (const auto& c : pts) {
        if (compare(b, c) == Dominance::Dominates) CHECK(compare(a, c) == Dominance::Dominates);
      }
    }
  }
}

TEST_CASE("pair probabilities") {
  CHECK(nd_pair_probability(1) == 0.0);
  CHECK(nd_pair_probability(2) == 0.5);
  CHECK(nd_pair_probability(5) == 0.9375);
  CHECK_THROWS_AS(nd_pair_probability(0), DomainError);
  CHECK(all_pairs_nd_probability(2, 0) == 1.0);
  CHECK(all_pairs_nd_probability(2, 1) == 0.5);
  CHECK(all_pairs_nd_probability(2, 10) == 0.0009765625);
  CHECK(all_pairs_nd_probability(10, 100) == doctest::Approx(std::pow(1.0 - 1.0 / 512, 100)).epsilon(1e-12));
}

TEST_CASE("filter_nondominated") {
  const std::vector<ObjectiveVector> three{{1, 0}, {0, 1}, {0, 0}};
  CHECK(filter_nondominated(three) == std::vector<ObjectiveVector>{{1, 0}, {0, 1}});
  const std::vector<ObjectiveVector> one{{1, 1}};
  CHECK(filter_nondominated(one) == one);
  CHECK(filter_nondominated(std::vector<ObjectiveVector>{}).empty());

  const std::vector<ObjectiveVector> dup{{1, 0}, {1, 0}, {0, 0}};
  CHECK(filter_nondominated(dup).size() == 2);

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto pts = random_points(100, 3, seed);
    CHECK(filter_nondominated(pts) == naive_front(pts));
    const auto ties = random_points(100, 3, seed + 100, 5);
    const auto front = filter_nondominated(ties);
    CHECK(front == naive_front(ties));
    CHECK(filter_nondominated(front) == front);
  }
}

TEST_CASE("mask kernels agree with the filter") {
  for (std::size_t m : {2u, 3u, 6u}) {
    const auto pts = random_points(400, m, 40 + m, 6);
    std::vector<double> rows;
    for (const auto& p : pts) rows.insert(rows.end(), p.begin(), p.end());
    const auto mask = nondominated_mask(rows, m);
    CHECK(mask == nondominated_mask_serial(rows, m));
    std::vector<ObjectiveVector> kept;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (mask[i]) kept.push_back(pts[i]);
    }
    CHECK(kept == naive_front(pts));
  }
}
