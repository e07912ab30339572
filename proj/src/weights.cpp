#include "paretolab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "paretolab/error.hpp"
#include "paretolab/rng.hpp"

namespace paretolab {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i is exact at every step since r = C(n - k + i - 1, i - 1).
    const std::uint64_t f = n - k + i;
    const std::uint64_t g = std::gcd(r, i);
    const std::uint64_t rr = r / g;
    const std::uint64_t ff = f / (i / g);
    if (rr > std::numeric_limits<std::uint64_t>::max() / ff) throw CapacityError("binomial coefficient overflows");
    r = rr * ff;
  }
  return r;
}

std::uint64_t lattice_size(int m, int h) {
  if (m < 1 || h < 0) throw DomainError("lattice needs m >= 1 and H >= 0");
  return binomial(static_cast<std::uint64_t>(h + m - 1), static_cast<std::uint64_t>(m - 1));
}

namespace {

constexpr std::uint64_t kMaxLattice = 50'000'000;

void fill(int m, int h, int i, int left, std::vector<int>& cur, WeightSet& out) {
  if (i == m - 1) {
    cur[i] = left;
    out.lattice.push_back(cur);
    return;
  }
  for (int v = 0; v <= left; ++v) {
    cur[i] = v;
    fill(m, h, i + 1, left - v, cur, out);
  }
}

}  // namespace

WeightSet simplex_lattice(int m, int h) {
  if (m < 2) throw DomainError("simplex lattice needs m >= 2");
  if (h < 1) throw DomainError("simplex lattice needs H >= 1");
  const std::uint64_t mu = lattice_size(m, h);
  if (mu > kMaxLattice) throw CapacityError("simplex lattice of " + std::to_string(mu) + " vectors is too large");
  WeightSet set;
  set.m = m;
  set.h = h;
  set.lattice.reserve(mu);
  std::vector<int> cur(static_cast<std::size_t>(m));
  fill(m, h, 0, h, cur, set);
  set.vectors.reserve(mu);
  for (const auto& row : set.lattice) {
    std::vector<double> v(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) v[i] = static_cast<double>(row[i]) / h;
    set.vectors.push_back(std::move(v));
  }
  return set;
}

int smallest_h(int m, std::uint64_t min_count) {
  if (m < 2) throw DomainError("smallest_h needs m >= 2");
  if (min_count < 1) throw DomainError("smallest_h needs min_count >= 1");
  int h = 1;
  while (lattice_size(m, h) < min_count) ++h;
  return h;
}

std::size_t neighborhood_size(std::size_t mu, double t) {
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("neighborhood fraction must lie in (0, 1]");
  // Guard against 0.1 * 100 landing just above 10.
  const auto n = static_cast<std::size_t>(std::ceil(t * static_cast<double>(mu) - 1e-9));
  return std::clamp<std::size_t>(n, 1, mu);
}

std::vector<std::size_t> neighborhood(const WeightSet& set, std::size_t index, double t) {
  if (index >= set.size()) throw DomainError("weight index out of range");
  const std::size_t size = neighborhood_size(set.size(), t);
  // Squared distances on the integer lattice are exact; the index order is
  // lexicographic, so it breaks ties.
  std::vector<std::pair<std::int64_t, std::size_t>> d(set.size());
  const auto& a = set.lattice[index];
  for (std::size_t j = 0; j < set.size(); ++j) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::int64_t diff = a[i] - set.lattice[j][i];
      s += diff * diff;
    }
    d[j] = {s, j};
  }
  std::partial_sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(size), d.end());
  std::vector<std::size_t> out(size);
  for (std::size_t j = 0; j < size; ++j) out[j] = d[j].second;
  return out;
}

double euclidean_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

DistanceSummary mean_neighbor_distance(const WeightSet& set, double t, std::size_t pairs, std::uint64_t seed) {
  if (pairs < 1) throw DomainError("need at least one pair");
  if (neighborhood_size(set.size(), t) < 2) throw DomainError("neighborhood has no member besides the anchor");
  Rng rng(derive_stream(seed, {0x77u, static_cast<std::uint64_t>(set.m), static_cast<std::uint64_t>(set.h)}));
  double sum = 0.0;
  double sum2 = 0.0;
  for (std::size_t p = 0; p < pairs; ++p) {
    const std::size_t anchor = rng.below(set.size());
    const auto hood = neighborhood(set, anchor, t);
    // hood[0] is the anchor itself: its distance 0 is strictly smallest.
    const std::size_t other = hood[1 + rng.below(hood.size() - 1)];
    const double dist = euclidean_distance(set.vectors[anchor], set.vectors[other]);
    sum += dist;
    sum2 += dist * dist;
  }
  DistanceSummary s;
  s.pairs = pairs;
  const double n = static_cast<double>(pairs);
  s.mean = sum / n;
  if (pairs > 1) {
    const double var = std::max(0.0, (sum2 - n * s.mean * s.mean) / (n - 1.0));
    s.half_width = 1.959963984540054 * std::sqrt(var / n);
  }
  return s;
}

}  // namespace paretolab
