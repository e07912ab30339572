#include "paretolab/archive.hpp"

#include <algorithm>
#include <cctype>

#include "paretolab/error.hpp"
#include "paretolab/nd_tree.hpp"

namespace paretolab {

namespace {

class ListArchive final : public ArchiveBackend {
 public:
  UpdateOutcome update(ArchiveEntry entry, std::uint64_t& comparisons) override {
    const auto x = entry.point.values();
    std::size_t removed = 0;
    for (std::size_t i = 0; i < members_.size();) {
      switch (detail::compare_counted(x, members_[i].point.values(), comparisons)) {
        case Dominance::DominatedBy:
          return UpdateOutcome::dominated();
        case Dominance::Equal:
          return UpdateOutcome::duplicate();
        case Dominance::Dominates:
          members_[i] = std::move(members_.back());
          members_.pop_back();
          ++removed;
          break;
        case Dominance::Incomparable:
          ++i;
          break;
      }
    }
    members_.push_back(std::move(entry));
    return UpdateOutcome::inserted(removed);
  }

  bool is_dominated(std::span<const double> y, std::uint64_t& comparisons) const override {
    return std::any_of(members_.begin(), members_.end(), [&](const ArchiveEntry& e) {
      return detail::weakly_dominates_counted(e.point.values(), y, comparisons);
    });
  }

  void collect(std::vector<ArchiveEntry>& out) const override {
    out.insert(out.end(), members_.begin(), members_.end());
  }

  std::size_t size() const noexcept override { return members_.size(); }

 private:
  std::vector<ArchiveEntry> members_;
};

}  // namespace

const char* to_string(Backend b) noexcept {
  switch (b) {
    case Backend::List: return "list";
    case Backend::NdTree: return "ndtree";
    case Backend::QuadTree: return "quadtree";
  }
  return "?";
}

Backend parse_backend(std::string_view name) {
  std::string s;
  for (char c : name) {
    if (c != '-' && c != '_') s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (s == "list") return Backend::List;
  if (s == "ndtree") return Backend::NdTree;
  if (s == "quadtree") return Backend::QuadTree;
  throw DomainError("unknown archive backend '" + std::string(name) + "'");
}

std::unique_ptr<ArchiveBackend> make_backend(Backend backend, std::size_t m, const ArchiveOptions& options) {
  switch (backend) {
    case Backend::List: return std::make_unique<ListArchive>();
    case Backend::NdTree: return std::make_unique<NdTree>(m, options.nd_tree);
    case Backend::QuadTree: return std::make_unique<QuadTree>(m);
  }
  throw DomainError("unknown archive backend");
}

ParetoArchive::ParetoArchive(Backend backend, std::size_t m, ArchiveOptions options)
    : backend_(backend), m_(m) {
  if (m < 1) throw DomainError("archive dimension must be >= 1");
  impl_ = make_backend(backend, m, options);
}

void ParetoArchive::check_dimension(const ObjectiveVector& y) const {
  if (y.size() != m_) {
    throw DimensionError("archive has dimension " + std::to_string(m_) + ", got " + std::to_string(y.size()));
  }
}

UpdateOutcome ParetoArchive::update(const ObjectiveVector& y, std::uint64_t payload) {
  check_dimension(y);
  return impl_->update(ArchiveEntry{y, payload}, comparisons_);
}

bool ParetoArchive::is_dominated(const ObjectiveVector& y) {
  check_dimension(y);
  return impl_->is_dominated(y.values(), comparisons_);
}

std::vector<ArchiveEntry> ParetoArchive::entries() const {
  std::vector<ArchiveEntry> out;
  out.reserve(impl_->size());
  impl_->collect(out);
  std::sort(out.begin(), out.end(),
            [](const ArchiveEntry& a, const ArchiveEntry& b) { return a.point < b.point; });
  return out;
}

std::vector<ObjectiveVector> ParetoArchive::snapshot() const {
  std::vector<ObjectiveVector> out;
  for (auto& e : entries()) out.push_back(std::move(e.point));
  return out;
}

}  // namespace paretolab
