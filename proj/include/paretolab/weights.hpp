#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace paretolab {

/// Simplex-lattice design: every (h_1/H, ..., h_m/H) with nonnegative
/// integers summing to H, in lexicographic order of (h_1, ..., h_m).
struct WeightSet {
  int m = 0;
  int h = 0;
  std::vector<std::vector<int>> lattice;  // the integer numerators h_i
  std::vector<std::vector<double>> vectors;

  std::size_t size() const noexcept { return vectors.size(); }
};

/// C(n, k) as an exact integer; throws CapacityError on overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// C(H + m - 1, m - 1).
std::uint64_t lattice_size(int m, int h);

WeightSet simplex_lattice(int m, int h);

/// Smallest H with lattice_size(m, H) >= min_count.
int smallest_h(int m, std::uint64_t min_count);

/// Size of a T-neighborhood: ceil(T * mu), at least 1.
std::size_t neighborhood_size(std::size_t mu, double t);

/// The neighborhood_size(|set|, t) vectors closest to vectors[index] in
/// Euclidean distance, the vector itself included. Ties go to the
/// lexicographically smaller vector. Returned nearest first.
std::vector<std::size_t> neighborhood(const WeightSet& set, std::size_t index, double t);

struct DistanceSummary {
  double mean = 0.0;
  double half_width = 0.0;  // 95% normal approximation
  std::size_t pairs = 0;
};

/// Samples `pairs` anchors uniformly, then a neighbor uniformly from the
/// anchor's T-neighborhood without the anchor itself, and reports the mean
/// Euclidean distance of the pairs.
DistanceSummary mean_neighbor_distance(const WeightSet& set, double t, std::size_t pairs, std::uint64_t seed);

double euclidean_distance(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace paretolab
