#include <doctest.h>

#include <cmath>
#include <set>

#include "paretolab/rng.hpp"

using namespace paretolab;

TEST_CASE("same seed, same stream") {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    differs = differs || x != c();
  }
  CHECK(differs);
}

TEST_CASE("derived streams depend on every label") {
  std::set<std::uint64_t> keys;
  for (std::uint64_t i = 0; i < 10; ++i) {
    for (std::uint64_t j = 0; j < 10; ++j) keys.insert(derive_stream(1, {i, j}));
  }
  CHECK(keys.size() == 100);
  CHECK(derive_stream(1, {2, 3}) == derive_stream(1, {2, 3}));
  CHECK(derive_stream(1, {2, 3}) != derive_stream(1, {3, 2}));
  CHECK(derive_stream(1, {2}) != derive_stream(2, {2}));
}

TEST_CASE("splitmix_at is the sequence") {
  std::uint64_t state = 99;
  for (std::uint64_t n = 0; n < 5; ++n) {
    state += kGoldenGamma;
    CHECK(splitmix_at(99, n) == mix64(state));
  }
}

TEST_CASE("below and uniform stay in range with sane moments") {
  Rng rng(5);
  double sum = 0, sq = 0;
  std::array<int, 7> counts{};
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const auto k = rng.below(7);
    REQUIRE(k < 7);
    ++counts[k];
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  for (int c : counts) CHECK(std::abs(c - 10000) < 500);
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sq / n - 1.0) < 0.03);
  CHECK(rng.below(1) == 0);
}
