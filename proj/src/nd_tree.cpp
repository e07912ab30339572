#include "paretolab/nd_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "paretolab/error.hpp"

namespace paretolab {

struct NdTree::Node {
  Node* parent = nullptr;
  bool leaf = true;
  std::vector<double> ideal;
  std::vector<double> nadir;
  std::vector<ArchiveEntry> points;
  std::vector<std::unique_ptr<Node>> children;

  void widen(std::span<const double> x) {
    if (ideal.empty()) {
      ideal.assign(x.begin(), x.end());
      nadir.assign(x.begin(), x.end());
      return;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      ideal[i] = std::max(ideal[i], x[i]);
      nadir[i] = std::min(nadir[i], x[i]);
    }
  }

  double distance_to_middle(std::span<const double> x) const {
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double diff = x[i] - 0.5 * (ideal[i] + nadir[i]);
      d += diff * diff;
    }
    return d;
  }
};

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
  return d;
}


}  // namespace

std::size_t NdTree::count_points(const Node& node) {
  std::size_t count = 0;
  std::vector<const Node*> stack{&node};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    count += n->points.size();
    for (const auto& c : n->children) stack.push_back(c.get());
  }
  return count;
}

NdTree::NdTree(std::size_t m, NdTreeOptions options)
    : m_(m),
      leaf_capacity_(options.leaf_capacity),
      max_children_(options.max_children == 0 ? m + 1 : options.max_children),
      root_(std::make_unique<Node>()) {
  if (m < 1) throw DomainError("ND-Tree dimension must be >= 1");
  if (leaf_capacity_ < 1) throw DomainError("ND-Tree leaf capacity must be >= 1");
  if (max_children_ < 2) throw DomainError("ND-Tree needs at least two children per split");
}

NdTree::~NdTree() = default;
NdTree::NdTree(NdTree&&) noexcept = default;
NdTree& NdTree::operator=(NdTree&&) noexcept = default;

UpdateOutcome NdTree::update(ArchiveEntry entry, std::uint64_t& comparisons) {
  const auto x = entry.point.values();
  if (size_ == 0) {
    insert(*root_, std::move(entry));
    ++size_;
    return UpdateOutcome::inserted(0);
  }
  std::size_t removed = 0;
  switch (update_node(*root_, x, removed, comparisons)) {
    case Verdict::Dominated: return UpdateOutcome::dominated();
    case Verdict::Duplicate: return UpdateOutcome::duplicate();
    case Verdict::RemoveNode: root_ = std::make_unique<Node>(); break;
    case Verdict::Continue: break;
  }
  size_ -= removed;
  insert(*root_, std::move(entry));
  ++size_;
  return UpdateOutcome::inserted(removed);
}

NdTree::Verdict NdTree::update_node(Node& node, std::span<const double> x, std::size_t& removed,
                                    std::uint64_t& comparisons) {
  // Relation of x to the bounding points decides whether the subtree can be
  // skipped, rejected wholesale, or dropped wholesale.
  const Dominance vs_nadir = detail::compare_counted(x, node.nadir, comparisons);
  if (vs_nadir == Dominance::DominatedBy) return Verdict::Dominated;
  const Dominance vs_ideal = detail::compare_counted(x, node.ideal, comparisons);
  if (vs_ideal == Dominance::Dominates) {
    removed += count_points(node);
    return Verdict::RemoveNode;
  }
  const bool may_be_dominated = vs_ideal == Dominance::DominatedBy || vs_ideal == Dominance::Equal;
  const bool may_dominate = vs_nadir == Dominance::Dominates || vs_nadir == Dominance::Equal;
  if (!may_be_dominated && !may_dominate) return Verdict::Continue;

  if (node.leaf) {
    for (std::size_t i = 0; i < node.points.size();) {
      switch (detail::compare_counted(x, node.points[i].point.values(), comparisons)) {
        case Dominance::DominatedBy: return Verdict::Dominated;
        case Dominance::Equal: return Verdict::Duplicate;
        case Dominance::Dominates:
          node.points[i] = std::move(node.points.back());
          node.points.pop_back();
          ++removed;
          break;
        case Dominance::Incomparable: ++i; break;
      }
    }
    return node.points.empty() ? Verdict::RemoveNode : Verdict::Continue;
  }

  for (std::size_t c = 0; c < node.children.size();) {
    const Verdict v = update_node(*node.children[c], x, removed, comparisons);
    if (v == Verdict::Dominated || v == Verdict::Duplicate) return v;
    if (v == Verdict::RemoveNode) {
      node.children.erase(node.children.begin() + static_cast<std::ptrdiff_t>(c));
    } else {
      ++c;
    }
  }
  if (node.children.empty()) return Verdict::RemoveNode;
  if (node.children.size() == 1) {
    // Collapse a single-child internal node into its child.
    std::unique_ptr<Node> only = std::move(node.children.front());
    node.children.clear();
    node.leaf = only->leaf;
    node.ideal = std::move(only->ideal);
    node.nadir = std::move(only->nadir);
    node.points = std::move(only->points);
    node.children = std::move(only->children);
    for (auto& c : node.children) c->parent = &node;
  }
  return Verdict::Continue;
}

void NdTree::insert(Node& node, ArchiveEntry entry) {
  Node* n = &node;
  while (true) {
    n->widen(entry.point.values());
    if (n->leaf) break;
    Node* best = nullptr;
    double best_d = std::numeric_limits<double>::infinity();
    for (auto& c : n->children) {
      const double d = c->distance_to_middle(entry.point.values());
      if (d < best_d) {
        best_d = d;
        best = c.get();
      }
    }
    n = best;
  }
  n->points.push_back(std::move(entry));
  if (n->points.size() > leaf_capacity_) split(*n);
}

void NdTree::split(Node& leaf) {
  auto& pts = leaf.points;
  const std::size_t count = pts.size();
  const std::size_t groups = std::min(max_children_, count);

  // Seeds: the two most mutually distant points, then repeatedly the point
  // with the largest mean distance to the seeds chosen so far.
  std::vector<std::vector<double>> dist(count, std::vector<double>(count, 0.0));
  std::size_t sa = 0, sb = 1;
  double far = -1.0;
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a + 1; b < count; ++b) {
      dist[a][b] = dist[b][a] = squared_distance(pts[a].point.values(), pts[b].point.values());
      if (dist[a][b] > far) {
        far = dist[a][b];
        sa = a;
        sb = b;
      }
    }
  }
  std::vector<std::size_t> seeds{sa, sb};
  std::vector<char> used(count, 0);
  used[sa] = used[sb] = 1;
  while (seeds.size() < groups) {
    std::size_t pick = count;
    double best = -1.0;
    for (std::size_t p = 0; p < count; ++p) {
      if (used[p]) continue;
      double total = 0.0;
      for (auto s : seeds) total += std::sqrt(dist[p][s]);
      if (total > best) {
        best = total;
        pick = p;
      }
    }
    seeds.push_back(pick);
    used[pick] = 1;
  }

  std::vector<std::unique_ptr<Node>> children;
  for (auto s : seeds) {
    auto child = std::make_unique<Node>();
    child->parent = &leaf;
    child->widen(pts[s].point.values());
    child->points.push_back(std::move(pts[s]));
    children.push_back(std::move(child));
  }
  for (std::size_t p = 0; p < count; ++p) {
    if (used[p]) continue;
    Node* best = nullptr;
    double best_d = std::numeric_limits<double>::infinity();
    for (auto& c : children) {
      const double d = c->distance_to_middle(pts[p].point.values());
      if (d < best_d) {
        best_d = d;
        best = c.get();
      }
    }
    best->widen(pts[p].point.values());
    best->points.push_back(std::move(pts[p]));
  }
  leaf.points.clear();
  leaf.leaf = false;
  leaf.children = std::move(children);
}

bool NdTree::is_dominated(std::span<const double> y, std::uint64_t& comparisons) const {
  if (size_ == 0) return false;
  std::vector<const Node*> stack{root_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (detail::weakly_dominates_counted(n->nadir, y, comparisons)) return true;
    if (!detail::weakly_dominates_counted(n->ideal, y, comparisons)) continue;
    if (n->leaf) {
      for (const auto& p : n->points) {
        if (detail::weakly_dominates_counted(p.point.values(), y, comparisons)) return true;
      }
    } else {
      for (auto it = n->children.rbegin(); it != n->children.rend(); ++it) stack.push_back(it->get());
    }
  }
  return false;
}

void NdTree::collect(std::vector<ArchiveEntry>& out) const {
  std::vector<const Node*> stack{root_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    out.insert(out.end(), n->points.begin(), n->points.end());
    for (const auto& c : n->children) stack.push_back(c.get());
  }
}

std::size_t NdTree::depth() const noexcept {
  if (size_ == 0) return 0;
  std::size_t best = 0;
  std::vector<std::pair<const Node*, std::size_t>> stack{{root_.get(), 1}};
  while (!stack.empty()) {
    auto [n, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    for (const auto& c : n->children) stack.push_back({c.get(), d + 1});
  }
  return best;
}

}  // namespace paretolab
