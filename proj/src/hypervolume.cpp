#include "paretolab/hypervolume.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>
#include <string>

#include <omp.h>

#include "paretolab/error.hpp"
#include "paretolab/nd_tree.hpp"
#include "paretolab/rng.hpp"

namespace paretolab {

namespace {

// Points translated by -reference and flattened; every coordinate >= 0.
struct Translated {
  std::size_t m = 0;
  std::vector<double> rows;
  std::vector<std::size_t> source;  // index of each row in the input problem
  std::size_t count() const noexcept { return m ? rows.size() / m : 0; }
};

Translated translate(const HvProblem& problem) {
  Translated t;
  t.m = problem.reference.size();
  for (std::size_t p = 0; p < problem.points.size(); ++p) {
    const auto& pt = problem.points[p];
    require_same_dimension(pt.values(), problem.reference.values());
    bool inside = true;
    for (std::size_t i = 0; i < t.m; ++i) inside = inside && pt[i] >= problem.reference[i];
    if (!inside) continue;
    for (std::size_t i = 0; i < t.m; ++i) t.rows.push_back(pt[i] - problem.reference[i]);
    t.source.push_back(p);
  }
  return t;
}

double box_volume(const double* p, std::size_t m) {
  double v = 1.0;
  for (std::size_t i = 0; i < m; ++i) v *= p[i];
  return v;
}

bool row_weakly_dominates(const double* a, const double* b, std::size_t m) {
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i] < b[i]) return false;
  }
  return true;
}

class Wfg {
 public:
  explicit Wfg(std::size_t m) : m_(m) {}

  /// Keeps the non-dominated rows of rows[0..count) (stride d), dropping
  /// duplicates. Survivors are compacted to the front; returns their count.
  std::size_t reduce(std::vector<double>& rows, std::size_t count, std::size_t d) {
    if (count < 2) return count;
    order_.resize(count);
    std::iota(order_.begin(), order_.end(), 0);
    // Any weak dominator precedes its target in descending lexicographic order.
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(&rows[b * d], &rows[b * d] + d, &rows[a * d], &rows[a * d] + d);
    });
    scratch_.clear();
    std::size_t kept = 0;
    for (std::size_t idx : order_) {
      const double* p = &rows[idx * d];
      bool dominated = false;
      for (std::size_t k = 0; k < kept && !dominated; ++k) {
        dominated = row_weakly_dominates(&scratch_[k * d], p, d);
      }
      if (!dominated) {
        scratch_.insert(scratch_.end(), p, p + d);
        ++kept;
      }
    }
    std::copy(scratch_.begin(), scratch_.end(), rows.begin());
    return kept;
  }

  std::size_t reduce(std::vector<double>& rows, std::size_t count) { return reduce(rows, count, m_); }

  double volume(const std::vector<double>& rows, std::size_t count) { return volume(rows.data(), count, m_, 0); }

  /// Volume dominated by p alone and not by any row of others.
  double exclusive(const double* p, const std::vector<double>& others, std::size_t count) {
    auto& limit = level(0).limit;
    limit.resize(count * m_);
    for (std::size_t j = 0; j < count; ++j) {
      for (std::size_t d = 0; d < m_; ++d) limit[j * m_ + d] = std::min(p[d], others[j * m_ + d]);
    }
    const std::size_t k = reduce(limit, count, m_);
    return box_volume(p, m_) - volume(limit.data(), k, m_, 1);
  }

 private:
  struct Level {
    std::vector<double> sorted;
    std::vector<double> limit;
  };

  Level& level(std::size_t depth) {
    while (levels_.size() <= depth) levels_.emplace_back();
    return levels_[depth];
  }

  // Rows sorted by decreasing last coordinate; the part of p_i not covered by
  // p_0..p_{i-1} is a slab of height p_i[last] over an (d-1)-dimensional
  // exclusive region, since every earlier row reaches at least as far.
  double volume(const double* rows, std::size_t count, std::size_t d, std::size_t depth) {
    if (count == 0) return 0.0;
    if (count == 1) return box_volume(rows, d);
    if (d == 1) {
      double best = 0.0;
      for (std::size_t i = 0; i < count; ++i) best = std::max(best, rows[i]);
      return best;
    }
    if (d == 2) return sweep2d(rows, count);

    auto& sorted = level(depth).sorted;
    sort_descending_last(rows, count, d, sorted);
    const std::size_t e = d - 1;
    double total = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const double* p = &sorted[i * d];
      double slab = box_volume(p, e);
      if (i > 0) {
        auto& limit = level(depth).limit;
        limit.resize(i * e);
        for (std::size_t j = 0; j < i; ++j) {
          const double* q = &sorted[j * d];
          for (std::size_t c = 0; c < e; ++c) limit[j * e + c] = std::min(p[c], q[c]);
        }
        const std::size_t k = reduce(limit, i, e);
        slab -= volume(limit.data(), k, e, depth + 1);
      }
      total += p[e] * slab;
    }
    return total;
  }

  void sort_descending_last(const double* rows, std::size_t count, std::size_t d, std::vector<double>& out) {
    order_.resize(count);
    std::iota(order_.begin(), order_.end(), 0);
    const std::size_t last = d - 1;
    std::sort(order_.begin(), order_.end(),
              [&](std::size_t a, std::size_t b) { return rows[a * d + last] > rows[b * d + last]; });
    out.resize(count * d);
    for (std::size_t r = 0; r < count; ++r) std::copy(rows + order_[r] * d, rows + order_[r] * d + d, &out[r * d]);
  }

  double sweep2d(const double* rows, std::size_t count) {
    order_.resize(count);
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return rows[a * 2] > rows[b * 2]; });
    double area = 0.0;
    double height = 0.0;
    for (std::size_t idx : order_) {
      const double y = rows[idx * 2 + 1];
      if (y > height) {
        area += rows[idx * 2] * (y - height);
        height = y;
      }
    }
    return area;
  }

  std::size_t m_;
  std::deque<Level> levels_;
  std::vector<std::size_t> order_;
  std::vector<double> scratch_;
};

void check_capacity(std::size_t m, std::size_t n, const HvExactOptions& options) {
  if (m >= options.cap_dimension && n > options.cap) {
    throw CapacityError("exact hypervolume capped at " + std::to_string(options.cap) + " points for m >= " +
                        std::to_string(options.cap_dimension) + " (got " + std::to_string(n) + ")");
  }
}

}  // namespace

HvEstimate hv_exact(const HvProblem& problem, const HvExactOptions& options) {
  Translated t = translate(problem);
  check_capacity(t.m, t.count(), options);
  Wfg wfg(t.m);
  const std::size_t k = wfg.reduce(t.rows, t.count());
  HvEstimate est;
  est.value = std::max(0.0, wfg.volume(t.rows, k));
  est.exact = true;
  return est;
}

double hv_contribution(const HvProblem& problem, std::size_t index, const HvExactOptions& options) {
  if (index >= problem.points.size()) throw DomainError("point index out of range");
  Translated t = translate(problem);
  check_capacity(t.m, t.count(), options);
  const auto pos = std::find(t.source.begin(), t.source.end(), index);
  if (pos == t.source.end()) return 0.0;
  const auto row = static_cast<std::size_t>(pos - t.source.begin());
  std::vector<double> others;
  others.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.count(); ++r) {
    if (r != row) others.insert(others.end(), &t.rows[r * t.m], &t.rows[r * t.m] + t.m);
  }
  Wfg wfg(t.m);
  return std::max(0.0, wfg.exclusive(&t.rows[row * t.m], others, t.count() - 1));
}

std::vector<double> hv_contributions(const HvProblem& problem, const HvExactOptions& options) {
  Translated t = translate(problem);
  check_capacity(t.m, t.count(), options);
  std::vector<double> out(problem.points.size(), 0.0);
  const auto n = static_cast<std::ptrdiff_t>(t.count());
#pragma omp parallel
  {
    Wfg wfg(t.m);
    std::vector<double> others;
#pragma omp for schedule(dynamic)
    for (std::ptrdiff_t rr = 0; rr < n; ++rr) {
      const auto row = static_cast<std::size_t>(rr);
      others.clear();
      for (std::size_t r = 0; r < t.count(); ++r) {
        if (r != row) others.insert(others.end(), &t.rows[r * t.m], &t.rows[r * t.m] + t.m);
      }
      out[t.source[row]] = std::max(0.0, wfg.exclusive(&t.rows[row * t.m], others, t.count() - 1));
    }
  }
  return out;
}

double z_quantile(double confidence) {
  struct Entry {
    double confidence;
    double z;
  };
  static constexpr Entry table[] = {{0.90, 1.6448536269514722}, {0.95, 1.959963984540054}, {0.99, 2.5758293035489004}};
  for (const auto& e : table) {
    if (std::abs(confidence - e.confidence) < 1e-9) return e.z;
  }
  throw DomainError("confidence must be one of 0.90, 0.95, 0.99");
}

Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double confidence) {
  if (trials == 0) throw DomainError("Wilson interval needs at least one trial");
  if (hits > trials) throw DomainError("hits cannot exceed trials");
  const double z = z_quantile(confidence);
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double denom = 2.0 * (n + z2);
  double lo = 0.0;
  double hi = 1.0;
  if (hits > 0) {
    lo = (2.0 * n * p + z2 - 1.0 - z * std::sqrt(z2 - 2.0 - 1.0 / n + 4.0 * p * (n * (1.0 - p) + 1.0))) / denom;
  }
  if (hits < trials) {
    hi = (2.0 * n * p + z2 + 1.0 + z * std::sqrt(z2 + 2.0 - 1.0 / n + 4.0 * p * (n * (1.0 - p) - 1.0))) / denom;
  }
  return {std::clamp(lo, 0.0, 1.0), std::clamp(hi, 0.0, 1.0)};
}

namespace {

struct SamplingBox {
  std::vector<double> lo;
  std::vector<double> extent;
  double volume = 0.0;
};

class MonteCarloRun {
 public:
  MonteCarloRun(const HvProblem& problem, const MonteCarloOptions& options) : options_(options) {
    if (!(options.target_width > 0.0)) throw DomainError("target width must be positive");
    if (options.batch < 1) throw DomainError("batch must be >= 1");
    if (options.max_samples < 1) throw DomainError("max_samples must be >= 1");
    z_quantile(options.confidence);
    m_ = problem.reference.size();
    key_ = derive_stream(options.seed, {0x6876u});
    Translated t = translate(problem);
    count_ = t.count();
    if (count_ == 0) return;
    box_.lo.assign(problem.reference.begin(), problem.reference.end());
    box_.extent.assign(m_, 0.0);
    for (std::size_t r = 0; r < count_; ++r) {
      for (std::size_t i = 0; i < m_; ++i) box_.extent[i] = std::max(box_.extent[i], t.rows[r * m_ + i]);
    }
    box_.volume = 1.0;
    for (double e : box_.extent) box_.volume *= e;
    tree_ = std::make_unique<NdTree>(m_);
    std::uint64_t ignored = 0;
    for (std::size_t r = 0; r < count_; ++r) tree_->update(ArchiveEntry{problem.points[t.source[r]]}, ignored);
  }

  template <class CountHits>
  HvEstimate run(CountHits count_hits) const {
    HvEstimate est;
    if (count_ == 0 || !(box_.volume > 0.0)) {
      est.exact = true;
      return est;
    }
    std::uint64_t hits = 0;
    std::uint64_t s = 0;
    while (s < options_.max_samples) {
      const std::uint64_t b = std::min(options_.batch, options_.max_samples - s);
      hits += count_hits(*this, s, b);
      s += b;
      const Interval w = wilson_interval(hits, s, options_.confidence);
      est.interval = Interval{w.lo * box_.volume, w.hi * box_.volume};
      if (est.interval->width() <= options_.target_width) break;
    }
    est.samples = s;
    est.value = static_cast<double>(hits) / static_cast<double>(s) * box_.volume;
    return est;
  }

  bool hit(std::uint64_t g, std::vector<double>& q) const {
    for (std::size_t i = 0; i < m_; ++i) {
      q[i] = box_.lo[i] + to_unit(splitmix_at(key_, g * m_ + i)) * box_.extent[i];
    }
    std::uint64_t ignored = 0;
    return tree_->is_dominated(q, ignored);
  }

  std::size_t m() const noexcept { return m_; }

 private:
  MonteCarloOptions options_;
  std::size_t m_ = 0;
  std::size_t count_ = 0;
  std::uint64_t key_ = 0;
  SamplingBox box_;
  std::unique_ptr<NdTree> tree_;
};

}  // namespace

HvEstimate hv_monte_carlo_serial(const HvProblem& problem, const MonteCarloOptions& options) {
  const MonteCarloRun mc(problem, options);
  return mc.run([](const MonteCarloRun& run, std::uint64_t start, std::uint64_t count) {
    std::vector<double> q(run.m());
    std::uint64_t hits = 0;
    for (std::uint64_t g = start; g < start + count; ++g) hits += run.hit(g, q);
    return hits;
  });
}

HvEstimate hv_monte_carlo(const HvProblem& problem, const MonteCarloOptions& options) {
  const MonteCarloRun mc(problem, options);
  return mc.run([](const MonteCarloRun& run, std::uint64_t start, std::uint64_t count) {
    std::uint64_t hits = 0;
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel reduction(+ : hits)
    {
      std::vector<double> q(run.m());
#pragma omp for schedule(static)
      for (std::int64_t g = 0; g < n; ++g) hits += run.hit(start + static_cast<std::uint64_t>(g), q);
    }
    return hits;
  });
}

const char* to_string(FrontKind kind) noexcept {
  switch (kind) {
    case FrontKind::Linear: return "linear";
    case FrontKind::Concave: return "concave";
    case FrontKind::Convex: return "convex";
  }
  return "?";
}

FrontKind parse_front_kind(std::string_view name) {
  if (name == "linear") return FrontKind::Linear;
  if (name == "concave") return FrontKind::Concave;
  if (name == "convex") return FrontKind::Convex;
  throw DomainError("unknown front kind '" + std::string(name) + "'");
}

std::vector<ObjectiveVector> generate_front(FrontKind kind, int m, std::size_t count, std::uint64_t seed) {
  if (m < 2) throw DomainError("fronts need m >= 2");
  if (count < 1) throw DomainError("front size must be >= 1");
  Rng rng(derive_stream(seed, {0x66726f6eu, static_cast<std::uint64_t>(kind), static_cast<std::uint64_t>(m)}));
  std::vector<ObjectiveVector> out;
  out.reserve(count);
  std::vector<double> v(static_cast<std::size_t>(m));
  while (out.size() < count) {
    double norm = 0.0;
    if (kind == FrontKind::Linear) {
      for (auto& x : v) {
        x = -std::log(1.0 - rng.uniform());
        norm += x;
      }
    } else {
      for (auto& x : v) {
        x = std::abs(rng.normal());
        norm += x * x;
      }
      norm = std::sqrt(norm);
    }
    if (!(norm > 0.0)) continue;
    for (auto& x : v) x /= norm;
    if (kind != FrontKind::Convex) {
      for (auto& x : v) x = 1.0 - x;
    }
    out.emplace_back(v);
  }
  return out;
}

ObjectiveVector parse_vector(std::string_view text) {
  std::vector<double> values;
  std::string token;
  std::istringstream in{std::string(text)};
  while (std::getline(in, token, ',')) {
    const auto first = token.find_first_not_of(" \t\r");
    if (first == std::string::npos) throw FormatError("empty field in vector '" + std::string(text) + "'");
    const auto last = token.find_last_not_of(" \t\r");
    token = token.substr(first, last - first + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      throw FormatError("malformed number '" + token + "'");
    }
    if (used != token.size()) throw FormatError("malformed number '" + token + "'");
    values.push_back(v);
  }
  if (values.empty()) throw FormatError("empty vector");
  return ObjectiveVector(std::move(values));
}

std::vector<ObjectiveVector> parse_points(std::string_view text) {
  std::vector<ObjectiveVector> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(parse_vector(line));
    if (out.back().size() != out.front().size()) throw DimensionError("points have different dimensions");
  }
  return out;
}

}  // namespace paretolab
