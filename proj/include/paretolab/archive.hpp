#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "paretolab/dominance.hpp"

namespace paretolab {

enum class Backend { List, NdTree, QuadTree };

const char* to_string(Backend b) noexcept;
/// Accepts "list", "ndtree"/"nd-tree", "quadtree"/"quad-tree" (case-insensitive).
Backend parse_backend(std::string_view name);

struct ArchiveEntry {
  ObjectiveVector point;
  std::uint64_t payload = 0;
};

class UpdateOutcome {
 public:
  enum class Kind { Inserted, RejectedDominated, RejectedDuplicate };

  static UpdateOutcome inserted(std::size_t removed) { return {Kind::Inserted, removed}; }
  static UpdateOutcome dominated() { return {Kind::RejectedDominated, 0}; }
  static UpdateOutcome duplicate() { return {Kind::RejectedDuplicate, 0}; }

  Kind kind() const noexcept { return kind_; }
  bool was_inserted() const noexcept { return kind_ == Kind::Inserted; }
  /// Members removed because the inserted vector dominates them.
  std::size_t removed() const noexcept { return removed_; }

  friend bool operator==(const UpdateOutcome&, const UpdateOutcome&) = default;

 private:
  UpdateOutcome(Kind kind, std::size_t removed) : kind_(kind), removed_(removed) {}
  Kind kind_;
  std::size_t removed_;
};

/// Storage strategy behind ParetoArchive. `comparisons` is advanced by one
/// for every per-objective comparison of two objective values made while
/// testing dominance (including tests against node bounding points).
class ArchiveBackend {
 public:
  virtual ~ArchiveBackend() = default;
  virtual UpdateOutcome update(ArchiveEntry entry, std::uint64_t& comparisons) = 0;
  /// True iff some member weakly dominates y.
  virtual bool is_dominated(std::span<const double> y, std::uint64_t& comparisons) const = 0;
  virtual void collect(std::vector<ArchiveEntry>& out) const = 0;
  virtual std::size_t size() const noexcept = 0;
};

struct NdTreeOptions {
  std::size_t leaf_capacity = 20;
  /// Children created when a leaf splits; 0 means m + 1.
  std::size_t max_children = 0;
};

struct ArchiveOptions {
  NdTreeOptions nd_tree;
};

/// Unbounded set of mutually non-dominated objective vectors (maximization).
class ParetoArchive {
 public:
  ParetoArchive(Backend backend, std::size_t m, ArchiveOptions options = {});

  Backend backend() const noexcept { return backend_; }
  std::size_t dimension() const noexcept { return m_; }
  std::size_t size() const noexcept { return impl_->size(); }
  std::uint64_t comparison_count() const noexcept { return comparisons_; }

  UpdateOutcome update(const ObjectiveVector& y, std::uint64_t payload = 0);
  bool is_dominated(const ObjectiveVector& y);

  /// Members in lexicographic order of objective values.
  std::vector<ObjectiveVector> snapshot() const;
  std::vector<ArchiveEntry> entries() const;

 private:
  void check_dimension(const ObjectiveVector& y) const;

  Backend backend_;
  std::size_t m_;
  std::unique_ptr<ArchiveBackend> impl_;
  std::uint64_t comparisons_ = 0;
};

std::unique_ptr<ArchiveBackend> make_backend(Backend backend, std::size_t m, const ArchiveOptions& options);

namespace detail {

// Relation of x to y, scanning objectives until the outcome is known.
inline Dominance compare_counted(std::span<const double> x, std::span<const double> y,
                                 std::uint64_t& comparisons) noexcept {
  bool better = false;
  bool worse = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    ++comparisons;
    if (x[i] > y[i]) {
      better = true;
    } else if (x[i] < y[i]) {
      worse = true;
    }
    if (better && worse) return Dominance::Incomparable;
  }
  if (better) return Dominance::Dominates;
  if (worse) return Dominance::DominatedBy;
  return Dominance::Equal;
}

inline bool weakly_dominates_counted(std::span<const double> a, std::span<const double> b,
                                     std::uint64_t& comparisons) noexcept {
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++comparisons;
    if (a[i] < b[i]) return false;
  }
  return true;
}

}  // namespace detail

}  // namespace paretolab
