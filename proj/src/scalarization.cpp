#include "paretolab/scalarization.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <omp.h>

#include "paretolab/error.hpp"

namespace paretolab {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void require_length(std::span<const double> v, std::size_t m, const char* what) {
  if (v.size() != m) {
    throw DimensionError(std::string(what) + " has length " + std::to_string(v.size()) + ", expected " +
                         std::to_string(m));
  }
}

std::vector<double> to_vector(std::span<const double> v) { return {v.begin(), v.end()}; }

}  // namespace

PolyhedralSet::PolyhedralSet(std::vector<HalfSpace> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw DomainError("polyhedral set needs at least one row");
  const std::size_t m = rows_.front().a.size();
  if (m == 0) throw DomainError("polyhedral set rows must be non-empty vectors");
  for (const auto& row : rows_) {
    require_length(row.a, m, "row");
    bool nonzero = false;
    for (double x : row.a) {
      if (!std::isfinite(x)) throw DomainError("row coefficients must be finite");
      nonzero = nonzero || x != 0.0;
    }
    if (!nonzero) throw DomainError("row vectors must be nonzero");
    if (!std::isfinite(row.alpha)) throw DomainError("row bounds must be finite");
  }
}

bool PolyhedralSet::contains(std::span<const double> y, double tolerance) const {
  require_length(y, dimension(), "point");
  for (const auto& row : rows_) {
    if (dot(row.a, y) > row.alpha + tolerance) return false;
  }
  return true;
}

GeneralScalarizer::GeneralScalarizer(PolyhedralSet set, std::vector<double> w, std::vector<double> k)
    : set_(std::move(set)), w_(std::move(w)), k_(std::move(k)) {
  const std::size_t m = set_.dimension();
  require_length(w_, m, "reference w");
  require_length(k_, m, "direction k");
  for (const auto& row : set_.rows()) {
    const double ak = dot(row.a, k_);
    if (!(ak > 0.0)) throw DomainError("<a, k> must be positive for every row (got " + std::to_string(ak) + ")");
    offset_.push_back(dot(row.a, w_) + row.alpha);
    scale_.push_back(ak);
  }
}

double GeneralScalarizer::operator()(std::span<const double> y) const {
  require_length(y, set_.dimension(), "point");
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < scale_.size(); ++i) {
    best = std::max(best, (dot(set_.rows()[i].a, y) - offset_[i]) / scale_[i]);
  }
  return best;
}

double phi_general(const GeneralScalarizer& s, std::span<const double> y) { return s(y); }

double chebyshev(std::span<const double> y, std::span<const double> lambda, std::span<const double> w) {
  require_length(lambda, y.size(), "weights");
  require_length(w, y.size(), "reference");
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(lambda[i] > 0.0)) throw DomainError("Chebyshev weights must be positive");
    best = std::max(best, lambda[i] * (y[i] - w[i]));
  }
  return best;
}

double weighted_sum(std::span<const double> y, std::span<const double> a) {
  require_length(a, y.size(), "weights");
  bool nonzero = false;
  for (double x : a) {
    if (!(x >= 0.0)) throw DomainError("weighted-sum weights must be nonnegative");
    nonzero = nonzero || x > 0.0;
  }
  if (!nonzero) throw DomainError("weighted-sum weights must not all be zero");
  return dot(a, y);
}

std::optional<double> epsilon_constraint(std::span<const double> y, std::size_t j, std::span<const double> eps) {
  if (j >= y.size()) throw DomainError("objective index out of range");
  require_length(eps, y.size() - 1, "epsilon bounds");
  std::size_t e = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i == j) continue;
    if (y[i] > eps[e++]) return std::nullopt;
  }
  return y[j];
}

double pascoletti_serafini(std::span<const double> y, std::span<const double> a, std::span<const double> k) {
  require_length(a, y.size(), "reference a");
  require_length(k, y.size(), "direction k");
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(k[i] > 0.0)) throw DomainError("direction k must be strictly positive");
    best = std::max(best, (y[i] - a[i]) / k[i]);
  }
  return best;
}

GeneralScalarizer chebyshev_as_general(std::span<const double> lambda, std::span<const double> w) {
  const std::size_t m = lambda.size();
  std::vector<HalfSpace> rows;
  std::vector<double> k(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(lambda[i] > 0.0)) throw DomainError("Chebyshev weights must be positive");
    HalfSpace h{std::vector<double>(m, 0.0), 0.0};
    h.a[i] = lambda[i];
    rows.push_back(std::move(h));
    k[i] = 1.0 / lambda[i];
  }
  return GeneralScalarizer(PolyhedralSet(std::move(rows)), to_vector(w), std::move(k));
}

GeneralScalarizer weighted_sum_as_general(std::span<const double> a) {
  const double norm2 = dot(a, a);
  if (!(norm2 > 0.0)) throw DomainError("weighted-sum weights must not all be zero");
  std::vector<double> k(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) k[i] = a[i] / norm2;
  return GeneralScalarizer(PolyhedralSet({HalfSpace{to_vector(a), 0.0}}), std::vector<double>(a.size(), 0.0),
                           std::move(k));
}

GeneralScalarizer pascoletti_serafini_as_general(std::span<const double> a, std::span<const double> k) {
  const std::size_t m = a.size();
  std::vector<HalfSpace> rows;
  for (std::size_t i = 0; i < m; ++i) {
    HalfSpace h{std::vector<double>(m, 0.0), 0.0};
    h.a[i] = 1.0;
    rows.push_back(std::move(h));
  }
  return GeneralScalarizer(PolyhedralSet(std::move(rows)), to_vector(a), to_vector(k));
}

namespace {

struct Best {
  double key = std::numeric_limits<double>::infinity();
  std::uint64_t index = std::numeric_limits<std::uint64_t>::max();

  void offer(double k, std::uint64_t i) {
    if (k < key || (k == key && i < index)) {
      key = k;
      index = i;
    }
  }
};

double scan_key(const Functional& functional, Sense sense, std::vector<double>& y, const NkInstance& inst,
                std::uint64_t x) {
  inst.evaluate_index(x, y.data());
  if (sense == Sense::Minimize) {
    for (double& v : y) v = -v;
  }
  const double value = functional(y);
  if (!std::isfinite(value)) return std::numeric_limits<double>::infinity();
  return sense == Sense::Minimize ? value : -value;
}

void require_enumerable(const NkInstance& inst) {
  if (inst.n() > NkInstance::kMaxEnumerationBits) {
    throw CapacityError("exhaustive scan limited to n <= " + std::to_string(NkInstance::kMaxEnumerationBits));
  }
}

ScalarizeResult finish(const NkInstance& inst, const Best& best, Sense sense) {
  if (best.index == std::numeric_limits<std::uint64_t>::max()) throw DomainError("no feasible solution");
  const double value = sense == Sense::Minimize ? best.key : -best.key;
  Solution x = Solution::from_index(best.index, inst.n());
  ObjectiveVector f = inst.evaluate(x);
  return {std::move(x), std::move(f), value};
}

}  // namespace

ScalarizeResult scalarize_landscape_serial(const NkInstance& inst, const Functional& functional, Sense sense) {
  require_enumerable(inst);
  const std::uint64_t total = std::uint64_t{1} << inst.n();
  std::vector<double> y(static_cast<std::size_t>(inst.m()));
  Best best;
  for (std::uint64_t x = 0; x < total; ++x) {
    const double key = scan_key(functional, sense, y, inst, x);
    if (std::isfinite(key)) best.offer(key, x);
  }
  return finish(inst, best, sense);
}

ScalarizeResult scalarize_landscape(const NkInstance& inst, const Functional& functional, Sense sense) {
  require_enumerable(inst);
  const auto total = static_cast<std::int64_t>(std::uint64_t{1} << inst.n());
  Best best;
#pragma omp parallel
  {
    std::vector<double> y(static_cast<std::size_t>(inst.m()));
    Best local;
#pragma omp for schedule(static) nowait
    for (std::int64_t x = 0; x < total; ++x) {
      const double key = scan_key(functional, sense, y, inst, static_cast<std::uint64_t>(x));
      if (std::isfinite(key)) local.offer(key, static_cast<std::uint64_t>(x));
    }
#pragma omp critical
    best.offer(local.key, local.index);
  }
  return finish(inst, best, sense);
}

}  // namespace paretolab
