#include <doctest.h>

#include <cmath>
#include <numeric>

#include "paretolab/error.hpp"
#include "paretolab/weights.hpp"

using namespace paretolab;

TEST_CASE("binomials and lattice sizes") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(60, 30) == 118264581564861424ULL);
  CHECK(binomial(3, 5) == 0);
  CHECK_THROWS_AS(binomial(200, 100), CapacityError);
  CHECK(lattice_size(3, 13) == 105);
  CHECK(lattice_size(5, 7) == 330);
}

TEST_CASE("simplex lattice") {
  const auto two = simplex_lattice(2, 2);
  CHECK(two.vectors == std::vector<std::vector<double>>{{0, 1}, {0.5, 0.5}, {1, 0}});
  CHECK(simplex_lattice(3, 1).vectors == std::vector<std::vector<double>>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  for (auto [m, h] : {std::pair{3, 13}, std::pair{5, 7}}) {
    const auto set = simplex_lattice(m, h);
    CHECK(set.size() == lattice_size(m, h));
    for (std::size_t i = 0; i < set.size(); ++i) {
      CHECK(std::accumulate(set.lattice[i].begin(), set.lattice[i].end(), 0) == h);
      CHECK(std::accumulate(set.vectors[i].begin(), set.vectors[i].end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
      if (i) CHECK(set.lattice[i - 1] < set.lattice[i]);
    }
  }
  CHECK_THROWS_AS(simplex_lattice(1, 3), DomainError);
}

TEST_CASE("smallest H") {
  CHECK(smallest_h(2, 100) == 99);
  CHECK(smallest_h(3, 100) == 13);
  CHECK(smallest_h(2, 1) == 1);
  for (int m = 2; m <= 20; ++m) {
    const int h = smallest_h(m, 100);
    CHECK(lattice_size(m, h) >= 100);
    if (h > 1) CHECK(lattice_size(m, h - 1) < 100);
  }
}

TEST_CASE("neighborhoods") {
  const auto set = simplex_lattice(3, 13);
  const auto all = neighborhood(set, 7, 1.0);
  CHECK(all.size() == set.size());
  CHECK(all.front() == 7);
  CHECK(neighborhood(set, 7, 0.1).size() == 11);
  CHECK(neighborhood(set, 7, 0.2).size() == 21);
  CHECK(neighborhood_size(105, 0.1) == 11);
  CHECK(neighborhood_size(100, 0.1) == 10);
  CHECK(neighborhood_size(5, 0.01) == 1);

  const auto two = simplex_lattice(2, 2);
  CHECK(neighborhood(two, 0, 2.0 / 3.0) == std::vector<std::size_t>{0, 1});

  const auto hood = neighborhood(set, 40, 0.2);
  double farthest_in = 0;
  for (auto i : hood) farthest_in = std::max(farthest_in, euclidean_distance(set.vectors[40], set.vectors[i]));
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (std::find(hood.begin(), hood.end(), i) == hood.end()) {
      CHECK(euclidean_distance(set.vectors[40], set.vectors[i]) >= farthest_in - 1e-12);
    }
  }
  CHECK_THROWS_AS(neighborhood(set, 500, 0.1), DomainError);
  CHECK_THROWS_AS(neighborhood(set, 0, 0.0), DomainError);
}

TEST_CASE("mean neighbor distance") {
  const auto two = simplex_lattice(2, smallest_h(2, 100));
  const auto d = mean_neighbor_distance(two, 1.0, 900, 1);
  CHECK(d.pairs == 900);
  CHECK(d.mean > 0.4);
  CHECK(d.mean < 0.6);
  CHECK(d.half_width > 0.0);
  CHECK(mean_neighbor_distance(two, 1.0, 900, 1).mean == d.mean);
  CHECK(mean_neighbor_distance(two, 0.1, 900, 1).mean < d.mean);

  const auto many = simplex_lattice(16, smallest_h(16, 100));
  CHECK(mean_neighbor_distance(many, 1.0, 900, 1).mean > 0.85);
  CHECK_THROWS_AS(mean_neighbor_distance(simplex_lattice(2, 3), 0.1, 10, 1), DomainError);
  CHECK(euclidean_distance({0, 1}, {1, 0}) == doctest::Approx(std::sqrt(2.0)));
}
