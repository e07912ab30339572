#include "paretolab/nd_tree.hpp"

#include <algorithm>

#include "paretolab/error.hpp"

namespace paretolab {

struct QuadTree::Node {
  explicit Node(ArchiveEntry e) : entry(std::move(e)) {}
  ArchiveEntry entry;
  std::vector<std::pair<std::uint64_t, std::unique_ptr<Node>>> children;

  std::unique_ptr<Node>* child(std::uint64_t key) {
    for (auto& [k, c] : children) {
      if (k == key) return &c;
    }
    return nullptr;
  }
};

struct QuadTree::Key {
  std::uint64_t bits = 0;  // bit i: x strictly better than the node point
  bool worse = false;      // x strictly worse in some objective

  bool node_weakly_dominates() const noexcept { return bits == 0; }
  bool equal() const noexcept { return bits == 0 && !worse; }
  bool dominates_node() const noexcept { return bits != 0 && !worse; }
};

QuadTree::QuadTree(std::size_t m) : m_(m) {
  if (m < 1 || m > 63) throw DomainError("quad-tree archive supports 1 <= m <= 63");
}

QuadTree::~QuadTree() = default;
QuadTree::QuadTree(QuadTree&&) noexcept = default;
QuadTree& QuadTree::operator=(QuadTree&&) noexcept = default;

QuadTree::Key QuadTree::successor_key(std::span<const double> x, std::span<const double> node,
                                      std::uint64_t& comparisons) const {
  Key key;
  for (std::size_t i = 0; i < m_; ++i) {
    ++comparisons;
    if (x[i] > node[i]) {
      key.bits |= std::uint64_t{1} << i;
      continue;
    }
    ++comparisons;
    if (x[i] < node[i]) key.worse = true;
  }
  return key;
}

UpdateOutcome QuadTree::update(ArchiveEntry entry, std::uint64_t& comparisons) {
  const auto x = entry.point.values();
  if (!root_) {
    root_ = std::make_unique<Node>(std::move(entry));
    size_ = 1;
    return UpdateOutcome::inserted(0);
  }

  // A member weakly dominating x can only sit under keys that are supersets
  // of x's key at every node on the way down.
  std::vector<const Node*> stack{root_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    const Key k = successor_key(x, n->entry.point.values(), comparisons);
    if (k.node_weakly_dominates()) return k.equal() ? UpdateOutcome::duplicate() : UpdateOutcome::dominated();
    for (auto it = n->children.rbegin(); it != n->children.rend(); ++it) {
      if ((it->first & k.bits) == k.bits) stack.push_back(it->second.get());
    }
  }

  const std::size_t removed = prune(root_, x, comparisons);
  size_ -= removed;
  insert_at(root_, std::move(entry), comparisons);
  ++size_;
  return UpdateOutcome::inserted(removed);
}

std::size_t QuadTree::prune(std::unique_ptr<Node>& slot, std::span<const double> x, std::uint64_t& comparisons) {
  Node& n = *slot;
  const Key k = successor_key(x, n.entry.point.values(), comparisons);
  if (k.dominates_node()) {
    std::vector<ArchiveEntry> below;
    for (const auto& [key, c] : n.children) collect_subtree(c, below);
    std::unique_ptr<Node> detached = std::move(slot);
    std::size_t removed = 1;
    for (auto& e : below) {
      if (detail::compare_counted(x, e.point.values(), comparisons) == Dominance::Dominates) {
        ++removed;
      } else {
        insert_at(slot, std::move(e), comparisons);
      }
    }
    return removed;
  }
  // Members dominated by x can only sit under keys that are subsets of x's key.
  std::size_t removed = 0;
  for (std::size_t c = 0; c < n.children.size();) {
    auto& [key, child] = n.children[c];
    if ((key & k.bits) == key) {
      removed += prune(child, x, comparisons);
      if (!child) {
        n.children.erase(n.children.begin() + static_cast<std::ptrdiff_t>(c));
        continue;
      }
    }
    ++c;
  }
  return removed;
}

void QuadTree::insert_at(std::unique_ptr<Node>& slot, ArchiveEntry entry, std::uint64_t& comparisons) {
  std::unique_ptr<Node>* s = &slot;
  while (*s) {
    Node& n = **s;
    const Key k = successor_key(entry.point.values(), n.entry.point.values(), comparisons);
    std::unique_ptr<Node>* next = n.child(k.bits);
    if (!next) {
      n.children.emplace_back(k.bits, std::make_unique<Node>(std::move(entry)));
      return;
    }
    s = next;
  }
  *s = std::make_unique<Node>(std::move(entry));
}

bool QuadTree::is_dominated(std::span<const double> y, std::uint64_t& comparisons) const {
  if (!root_) return false;
  std::vector<const Node*> stack{root_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    const Key k = successor_key(y, n->entry.point.values(), comparisons);
    if (k.node_weakly_dominates()) return true;
    for (auto it = n->children.rbegin(); it != n->children.rend(); ++it) {
      if ((it->first & k.bits) == k.bits) stack.push_back(it->second.get());
    }
  }
  return false;
}

void QuadTree::collect_subtree(const std::unique_ptr<Node>& root, std::vector<ArchiveEntry>& out) {
  if (!root) return;
  std::vector<const Node*> stack{root.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    out.push_back(n->entry);
    for (auto it = n->children.rbegin(); it != n->children.rend(); ++it) stack.push_back(it->second.get());
  }
}

void QuadTree::collect(std::vector<ArchiveEntry>& out) const { collect_subtree(root_, out); }

}  // namespace paretolab
