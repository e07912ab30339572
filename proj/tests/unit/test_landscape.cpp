#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <string>

#include "paretolab/dominance.hpp"
#include "paretolab/error.hpp"
#include "paretolab/landscape.hpp"

using namespace paretolab;

namespace {

std::size_t naive_pareto_count(const NkInstance& inst) {
  const auto rows = evaluate_all_serial(inst);
  const std::size_t m = inst.m();
  const std::size_t total = rows.size() / m;
  std::size_t count = 0;
  for (std::size_t i = 0; i < total; ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < total && !dominated; ++j) {
      bool ge = true, gt = false;
      for (std::size_t k = 0; k < m; ++k) {
        ge = ge && rows[j * m + k] >= rows[i * m + k];
        gt = gt || rows[j * m + k] > rows[i * m + k];
      }
      dominated = ge && gt;
    }
    count += !dominated;
  }
  return count;
}

}  // namespace

TEST_CASE("solutions and indices") {
  const auto x = Solution::from_string("1011");
  CHECK(x.index() == 11);
  CHECK(Solution::from_index(11, 4) == x);
  CHECK(x.to_string() == "1011");
  CHECK(x[0] == 1);
  CHECK(hamming_distance(x, Solution::from_string("0010")) == 2);
  CHECK(Solution::from_index(3, 4) < Solution::from_index(4, 4));
  CHECK_THROWS_AS(Solution::from_string("10a"), DomainError);
  CHECK_THROWS_AS(hamming_distance(x, Solution::from_string("10")), DimensionError);
}

TEST_CASE("generation") {
  const auto a = generate_instance(10, 0, 2, 17);
  for (const auto& l : a.links()) CHECK(l.empty());
  CHECK(serialize_instance(a) == serialize_instance(generate_instance(10, 0, 2, 17)));
  CHECK(serialize_instance(a) != serialize_instance(generate_instance(10, 0, 2, 18)));

  const auto big = generate_instance(16, 0, 20, 3);
  CHECK(big.tables().size() == 20 * 16 * 2);
  for (double v : big.tables()) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }

  const auto epi = generate_instance(12, 3, 2, 9);
  for (int j = 0; j < 12; ++j) {
    const auto& l = epi.links()[j];
    CHECK(l.size() == 3);
    for (int v : l) CHECK(v != j);
  }
  CHECK_THROWS_AS(generate_instance(4, 4, 2, 1), DomainError);
  CHECK_THROWS_AS(generate_instance(4, 0, 0, 1), DomainError);
}

TEST_CASE("evaluation by hand") {
  const NkInstance one(1, 0, 1, 0, {{}}, {0.3, 0.8});
  CHECK(one.evaluate(Solution::from_string("0"))[0] == 0.3);
  CHECK(one.evaluate(Solution::from_string("1"))[0] == 0.8);
  const auto best = enumerate_pareto_set(one);
  REQUIRE(best.size() == 1);
  CHECK(best[0].solution.to_string() == "1");
  CHECK(proportion_pareto_optimal(one) == 0.5);

  const NkInstance two(2, 0, 1, 0, {{}, {}}, {0.2, 0.9, 0.6, 0.1});
  CHECK(two.evaluate(Solution::from_string("00"))[0] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(two.evaluate(Solution::from_string("10"))[0] == doctest::Approx(0.75).epsilon(1e-15));

  // x_2 linked to x_1: pattern = x_2 + 2 x_1
  const NkInstance linked(2, 1, 1, 0, {{1}, {0}}, {0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7});
  CHECK(linked.evaluate(Solution::from_string("10"))[0] == doctest::Approx((0.1 + 0.6) / 2));
  CHECK_THROWS_AS(linked.evaluate(Solution::from_string("1")), DimensionError);
}

TEST_CASE("mean over all solutions equals mean table entry") {
  for (int k : {0, 2, 5}) {
    const auto inst = generate_instance(12, k, 3, 100 + k);
    const auto rows = evaluate_all(inst);
    for (int i = 0; i < 3; ++i) {
      double f = 0;
      for (std::size_t s = 0; s < rows.size() / 3; ++s) f += rows[s * 3 + i];
      f /= static_cast<double>(rows.size() / 3);
      double t = 0;
      for (int j = 0; j < 12; ++j) {
        for (std::size_t p = 0; p < inst.patterns(); ++p) t += inst.contribution(i, j, p);
      }
      t /= 12.0 * inst.patterns();
      CHECK(f == doctest::Approx(t).epsilon(1e-12));
    }
  }
}

TEST_CASE("k = 0 is additive under single bit flips") {
  const auto inst = generate_instance(8, 0, 2, 4);
  const auto x = Solution::from_string("01101001");
  const auto fx = inst.evaluate(x);
  for (int j = 0; j < 8; ++j) {
    const auto y = Solution::from_index(x.index() ^ (std::uint64_t{1} << (7 - j)), 8);
    const auto fy = inst.evaluate(y);
    for (int i = 0; i < 2; ++i) {
      const double expected = (inst.contribution(i, j, y[j]) - inst.contribution(i, j, x[j])) / 8;
      CHECK(fy[i] - fx[i] == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("parallel evaluation matches serial") {
  const auto inst = generate_instance(14, 3, 4, 8);
  const auto rows = evaluate_all(inst);
  CHECK(rows == evaluate_all_serial(inst));
  double out[4];
  inst.evaluate_index(12345, out);
  const auto v = inst.evaluate(Solution::from_index(12345, 14));
  for (int i = 0; i < 4; ++i) CHECK(out[i] == v[i]);
}

TEST_CASE("pareto set matches a double-loop scan") {
  for (int m : {2, 3, 5}) {
    const auto inst = generate_instance(9, 1, m, 50 + m);
    const auto count = naive_pareto_count(inst);
    CHECK(enumerate_pareto_set(inst).size() == count);
    CHECK(proportion_pareto_optimal(inst) == doctest::Approx(count / 512.0));
  }
  CHECK_THROWS_AS(enumerate_pareto_set(generate_instance(25, 0, 2, 1)), CapacityError);
}

TEST_CASE("instance files") {
  const auto inst = generate_instance(6, 2, 3, 77);
  const auto path = std::filesystem::temp_directory_path() / "paretolab_instance_test.nk";
  save_instance(inst, path);
  CHECK(load_instance(path) == inst);
  std::filesystem::remove(path);

  const auto text = serialize_instance(inst);
  CHECK(parse_instance(text) == inst);
  CHECK_THROWS_AS(parse_instance(text.substr(0, text.size() / 2)), FormatError);
  CHECK_THROWS_AS(parse_instance("garbage"), FormatError);

  std::string bad = text;
  bad.replace(bad.find("k 2"), 3, "k 6");
  CHECK_THROWS_AS(parse_instance(bad), DomainError);
  CHECK_THROWS_AS(load_instance("/nonexistent/dir/x.nk"), IoError);
}
