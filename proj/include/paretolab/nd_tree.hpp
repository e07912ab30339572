#pragma once

#include <memory>
#include <vector>

#include "paretolab/archive.hpp"

namespace paretolab {

/// ND-Tree archive (Jaszkiewicz & Lust). Each node keeps approximate ideal and
/// nadir points of its subtree; they are widened on insertion and never
/// tightened on removal, so they stay valid bounds. Leaves hold up to
/// `leaf_capacity` points and split into at most `max_children` leaves.
class NdTree final : public ArchiveBackend {
 public:
  NdTree(std::size_t m, NdTreeOptions options = {});
  ~NdTree() override;
  NdTree(NdTree&&) noexcept;
  NdTree& operator=(NdTree&&) noexcept;

  UpdateOutcome update(ArchiveEntry entry, std::uint64_t& comparisons) override;
  bool is_dominated(std::span<const double> y, std::uint64_t& comparisons) const override;
  void collect(std::vector<ArchiveEntry>& out) const override;
  std::size_t size() const noexcept override { return size_; }

  /// Depth of the deepest leaf (root only = 1); 0 when empty.
  std::size_t depth() const noexcept;

 private:
  struct Node;
  enum class Verdict { Continue, Dominated, Duplicate, RemoveNode };

  Verdict update_node(Node& node, std::span<const double> x, std::size_t& removed, std::uint64_t& comparisons);
  void insert(Node& node, ArchiveEntry entry);
  void split(Node& leaf);
  static std::size_t count_points(const Node& node);

  std::size_t m_;
  std::size_t leaf_capacity_;
  std::size_t max_children_;
  std::unique_ptr<Node> root_;
  std::size_t size_ = 0;
};

/// Quad-tree archive keyed by the successorship bit-vector of a point relative
/// to the node point (bit i set iff the point is strictly better in objective
/// i). Only 2^m - 2 keys can occur; children are stored sparsely. A dominated
/// node is detached with its subtree and the non-dominated descendants are
/// reinserted into the vacated slot.
class QuadTree final : public ArchiveBackend {
 public:
  explicit QuadTree(std::size_t m);
  ~QuadTree() override;
  QuadTree(QuadTree&&) noexcept;
  QuadTree& operator=(QuadTree&&) noexcept;

  UpdateOutcome update(ArchiveEntry entry, std::uint64_t& comparisons) override;
  bool is_dominated(std::span<const double> y, std::uint64_t& comparisons) const override;
  void collect(std::vector<ArchiveEntry>& out) const override;
  std::size_t size() const noexcept override { return size_; }

 private:
  struct Node;
  struct Key;

  Key successor_key(std::span<const double> x, std::span<const double> node, std::uint64_t& comparisons) const;
  std::size_t prune(std::unique_ptr<Node>& slot, std::span<const double> x, std::uint64_t& comparisons);
  void insert_at(std::unique_ptr<Node>& slot, ArchiveEntry entry, std::uint64_t& comparisons);
  static void collect_subtree(const std::unique_ptr<Node>& root, std::vector<ArchiveEntry>& out);

  std::size_t m_;
  std::unique_ptr<Node> root_;
  std::size_t size_ = 0;
};

}  // namespace paretolab
