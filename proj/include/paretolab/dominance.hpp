#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace paretolab {

/// A point in objective space. All objectives are maximized.
class ObjectiveVector {
 public:
  explicit ObjectiveVector(std::vector<double> values);
  ObjectiveVector(std::initializer_list<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
  // Lexicographic order on the values; used for deterministic snapshots.
  friend bool operator<(const ObjectiveVector& a, const ObjectiveVector& b) noexcept {
    return a.values_ < b.values_;
  }

  std::string to_string() const;

 private:
  std::vector<double> values_;
};

enum class Dominance { Dominates, DominatedBy, Incomparable, Equal };

const char* to_string(Dominance d) noexcept;

void require_same_dimension(std::span<const double> a, std::span<const double> b);

Dominance compare(std::span<const double> a, std::span<const double> b);
inline Dominance compare(const ObjectiveVector& a, const ObjectiveVector& b) {
  return compare(a.values(), b.values());
}

/// True iff a >= b componentwise.
bool weakly_dominates(std::span<const double> a, std::span<const double> b);
inline bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  return weakly_dominates(a.values(), b.values());
}

/// Probability that two random vectors with independent objectives are
/// mutually non-dominated: 1 - 1/2^(m-1).
double nd_pair_probability(int m);

/// Probability that mu independent random pairs are all mutually
/// non-dominated: nd_pair_probability(m)^mu.
double all_pairs_nd_probability(int m, std::uint64_t mu);

/// Every input point not dominated by another input point, in input order.
/// Duplicates of a retained vector are all retained. Naive O(N^2 m) scan.
std::vector<ObjectiveVector> filter_nondominated(std::span<const ObjectiveVector> points);

/// Mask form of the non-dominated filter over a row-major block of `count`
/// vectors of dimension m. The OpenMP kernel and the serial reference
/// return identical masks.
std::vector<std::uint8_t> nondominated_mask(std::span<const double> rows, std::size_t m);
std::vector<std::uint8_t> nondominated_mask_serial(std::span<const double> rows, std::size_t m);

}  // namespace paretolab
