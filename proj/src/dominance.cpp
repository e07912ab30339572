#include "paretolab/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <omp.h>

#include "paretolab/error.hpp"

namespace paretolab {

namespace {

void validate(const std::vector<double>& values) {
  if (values.empty()) throw DomainError("objective vector must have at least one entry");
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("objective vector entries must be finite");
  }
}

// True iff row j dominates row i (both of length m).
bool row_dominates(const double* j, const double* i, std::size_t m) {
  bool strict = false;
  for (std::size_t d = 0; d < m; ++d) {
    if (j[d] < i[d]) return false;
    if (j[d] > i[d]) strict = true;
  }
  return strict;
}

}  // namespace

ObjectiveVector::ObjectiveVector(std::vector<double> values) : values_(std::move(values)) {
  validate(values_);
}

ObjectiveVector::ObjectiveVector(std::initializer_list<double> values) : values_(values) {
  validate(values_);
}

std::string ObjectiveVector::to_string() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) os << ',';
    os << values_[i];
  }
  return os.str();
}

const char* to_string(Dominance d) noexcept {
  switch (d) {
    case Dominance::Dominates: return "Dominates";
    case Dominance::DominatedBy: return "DominatedBy";
    case Dominance::Incomparable: return "Incomparable";
    case Dominance::Equal: return "Equal";
  }
  return "?";
}

void require_same_dimension(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
}

Dominance compare(std::span<const double> a, std::span<const double> b) {
  require_same_dimension(a, b);
  bool better = false;
  bool worse = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) better = true;
    else if (a[i] < b[i]) worse = true;
    if (better && worse) return Dominance::Incomparable;
  }
  if (better) return Dominance::Dominates;
  if (worse) return Dominance::DominatedBy;
  return Dominance::Equal;
}

bool weakly_dominates(std::span<const double> a, std::span<const double> b) {
  require_same_dimension(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
  }
  return true;
}

double nd_pair_probability(int m) {
  if (m < 1) throw DomainError("objective count must be >= 1");
  return 1.0 - std::ldexp(1.0, -(m - 1));
}

double all_pairs_nd_probability(int m, std::uint64_t mu) {
  return std::pow(nd_pair_probability(m), static_cast<double>(mu));
}

std::vector<ObjectiveVector> filter_nondominated(std::span<const ObjectiveVector> points) {
  for (const auto& p : points) require_same_dimension(p.values(), points.front().values());
  std::vector<ObjectiveVector> kept;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      dominated = j != i && compare(points[j], points[i]) == Dominance::Dominates;
    }
    if (!dominated) kept.push_back(points[i]);
  }
  return kept;
}

std::vector<std::uint8_t> nondominated_mask_serial(std::span<const double> rows, std::size_t m) {
  if (m == 0 || rows.size() % m != 0) throw DimensionError("row block is not a multiple of m");
  const std::size_t count = rows.size() / m;
  std::vector<std::uint8_t> mask(count, 1);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      if (j != i && row_dominates(&rows[j * m], &rows[i * m], m)) {
        mask[i] = 0;
        break;
      }
    }
  }
  return mask;
}

std::vector<std::uint8_t> nondominated_mask(std::span<const double> rows, std::size_t m) {
  if (m == 0 || rows.size() % m != 0) throw DimensionError("row block is not a multiple of m");
  const std::size_t count = rows.size() / m;

  // A dominator never has a smaller objective sum (rounding is monotone), so
  // each row only needs to be checked against rows at or above its sum.
  std::vector<double> sums(count);
  for (std::size_t i = 0; i < count; ++i) {
    sums[i] = std::accumulate(&rows[i * m], &rows[i * m] + m, 0.0);
  }
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sums[a] > sums[b]; });

  std::vector<std::uint8_t> mask(count, 1);
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const double si = sums[i];
    for (std::size_t r = 0; r < count; ++r) {
      const std::size_t j = order[r];
      if (sums[j] < si) break;
      if (j != i && row_dominates(&rows[j * m], &rows[i * m], m)) {
        mask[i] = 0;
        break;
      }
    }
  }
  return mask;
}

}  // namespace paretolab
