#include <doctest.h>

#include <algorithm>

#include "paretolab/archive.hpp"
#include "paretolab/error.hpp"
#include "paretolab/landscape.hpp"
#include "paretolab/rng.hpp"

using namespace paretolab;

namespace {

constexpr Backend kBackends[] = {Backend::List, Backend::NdTree, Backend::QuadTree};

std::vector<ObjectiveVector> sorted(std::vector<ObjectiveVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<ObjectiveVector> random_stream(std::size_t count, std::size_t m, std::uint64_t seed, int levels) {
  Rng rng(seed);
  std::vector<ObjectiveVector> out;
  for (std::size_t p = 0; p < count; ++p) {
    std::vector<double> v(m);
    for (auto& x : v) x = levels > 0 ? static_cast<double>(rng.below(levels)) / levels : rng.uniform();
    out.emplace_back(std::move(v));
  }
  return out;
}

// the oracle keeps duplicates; an archive keeps one copy
std::vector<ObjectiveVector> oracle(const std::vector<ObjectiveVector>& pts) {
  auto front = sorted(filter_nondominated(pts));
  front.erase(std::unique(front.begin(), front.end()), front.end());
  return front;
}

}  // namespace

TEST_CASE("fresh archives") {
  CHECK(ParetoArchive(Backend::List, 3).size() == 0);
  CHECK(ParetoArchive(Backend::NdTree, 20).size() == 0);
  CHECK(ParetoArchive(Backend::QuadTree, 2).size() == 0);
  CHECK(ParetoArchive(Backend::List, 3).snapshot().empty());
  CHECK(ParetoArchive(Backend::NdTree, 3).comparison_count() == 0);
  CHECK(parse_backend("ND-Tree") == Backend::NdTree);
  CHECK(parse_backend("quadtree") == Backend::QuadTree);
  CHECK(std::string(to_string(Backend::List)) == "list");
  CHECK_THROWS_AS(parse_backend("heap"), DomainError);
  CHECK_THROWS_AS(ParetoArchive(Backend::List, 0), DomainError);
}

TEST_CASE("update outcomes") {
  for (auto b : kBackends) {
    CAPTURE(to_string(b));
    ParetoArchive a(b, 2);
    CHECK(a.update({1, 1}) == UpdateOutcome::inserted(0));
    CHECK(a.comparison_count() == 0);
    CHECK(a.update({1, 1}) == UpdateOutcome::duplicate());
    CHECK(a.update({0.5, 1}) == UpdateOutcome::dominated());
    CHECK(a.size() == 1);
    CHECK_THROWS_AS(a.update({1, 1, 1}), DimensionError);

    ParetoArchive c(b, 2);
    c.update({1, 0});
    c.update({0, 1});
    CHECK(c.snapshot() == std::vector<ObjectiveVector>{{0, 1}, {1, 0}});
    CHECK(c.update({1, 1}) == UpdateOutcome::inserted(2));
    CHECK(c.snapshot() == std::vector<ObjectiveVector>{{1, 1}});

    ParetoArchive d(b, 2);
    d.update({0, 1});
    d.update({1, 0});
    CHECK(d.snapshot() == std::vector<ObjectiveVector>{{0, 1}, {1, 0}});
    CHECK_FALSE(d.is_dominated({0.6, 0.6}));
    CHECK(d.is_dominated({1, 0}));
    CHECK(c.is_dominated({0.5, 0.5}));
  }
}

TEST_CASE("backends agree with the oracle on random streams") {
  for (std::size_t m : {2u, 3u, 5u, 8u}) {
    for (int levels : {0, 4}) {
      const auto stream = random_stream(1500, m, 300 + m + levels, levels);
      const auto expected = oracle(stream);
      for (auto b : kBackends) {
        CAPTURE(to_string(b));
        CAPTURE(m);
        ParetoArchive a(b, m);
        for (std::size_t i = 0; i < stream.size(); ++i) a.update(stream[i], i);
        CHECK(a.snapshot() == expected);
      }
    }
  }
}

TEST_CASE("small tree capacity forces deep splits") {
  ArchiveOptions opts;
  opts.nd_tree.leaf_capacity = 2;
  opts.nd_tree.max_children = 3;
  const auto stream = random_stream(2000, 4, 11, 0);
  ParetoArchive a(Backend::NdTree, 4, opts);
  for (const auto& y : stream) a.update(y);
  CHECK(a.snapshot() == oracle(stream));
}

TEST_CASE("insertion order does not change the final set") {
  auto stream = random_stream(800, 3, 21, 6);
  const auto expected = oracle(stream);
  Rng rng(1);
  for (int round = 0; round < 3; ++round) {
    for (std::size_t i = stream.size() - 1; i > 0; --i) std::swap(stream[i], stream[rng.below(i + 1)]);
    for (auto b : kBackends) {
      ParetoArchive a(b, 3);
      for (const auto& y : stream) a.update(y);
      CHECK(a.snapshot() == expected);
    }
  }
}

TEST_CASE("is_dominated agrees with the list backend") {
  const auto stream = random_stream(3000, 5, 5, 0);
  ParetoArchive list(Backend::List, 5);
  ParetoArchive nd(Backend::NdTree, 5);
  ParetoArchive quad(Backend::QuadTree, 5);
  for (const auto& y : stream) {
    list.update(y);
    nd.update(y);
    quad.update(y);
  }
  const auto queries = random_stream(1000, 5, 6, 0);
  int dominated = 0;
  for (const auto& q : queries) {
    const bool expected = list.is_dominated(q);
    dominated += expected;
    CHECK(nd.is_dominated(q) == expected);
    CHECK(quad.is_dominated(q) == expected);
  }
  CHECK(dominated > 0);
  CHECK(dominated < 1000);
  for (const auto& member : list.snapshot()) {
    CHECK(nd.is_dominated(member));
    CHECK(quad.is_dominated(member));
  }
}

TEST_CASE("list comparison bounds on an incomparable query") {
  const std::size_t m = 4;
  ParetoArchive a(Backend::List, m);
  const std::size_t n = 50;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / n;
    a.update({t, 1 - t, t, 1 - t});
  }
  REQUIRE(a.size() == n);
  const auto before = a.comparison_count();
  a.update({0.5, 0.5, 2.0, -1.0});
  const auto used = a.comparison_count() - before;
  CHECK(used >= n);
  CHECK(used <= m * n);
}

TEST_CASE("full landscape stream") {
  const auto inst = generate_instance(16, 0, 5, 3);
  const auto rows = evaluate_all(inst);
  std::vector<ObjectiveVector> all;
  for (std::size_t s = 0; s < rows.size() / 5; ++s) {
    all.emplace_back(std::vector<double>(rows.begin() + s * 5, rows.begin() + (s + 1) * 5));
  }
  const auto expected = oracle(all);
  std::vector<std::size_t> order(all.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(9);
  for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
  for (auto b : {Backend::NdTree, Backend::QuadTree}) {
    ParetoArchive a(b, 5);
    for (auto i : order) a.update(all[i], i);
    CHECK(a.snapshot() == expected);
    for (const auto& e : a.entries()) CHECK(all[e.payload] == e.point);
  }
}
