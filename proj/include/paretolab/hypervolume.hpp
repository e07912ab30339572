#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "paretolab/dominance.hpp"

namespace paretolab {

/// Point set and reference point, maximization convention. Points with any
/// coordinate below the reference contribute nothing and are dropped.
struct HvProblem {
  std::vector<ObjectiveVector> points;
  ObjectiveVector reference;
};

struct Interval {
  double lo;
  double hi;
  double width() const noexcept { return hi - lo; }
};

struct HvEstimate {
  double value = 0.0;
  std::optional<Interval> interval;
  std::uint64_t samples = 0;
  bool exact = false;
};

struct HvExactOptions {
  /// Largest point count accepted when m >= cap_dimension.
  std::size_t cap = 300;
  std::size_t cap_dimension = 7;
};

/// Exact hypervolume by the WFG exclusive-volume recursion (limit sets are
/// reduced to their non-dominated part; two objectives are a linear sweep).
HvEstimate hv_exact(const HvProblem& problem, const HvExactOptions& options = {});

/// hv_exact(all points) - hv_exact(all points except `index`).
double hv_contribution(const HvProblem& problem, std::size_t index, const HvExactOptions& options = {});
std::vector<double> hv_contributions(const HvProblem& problem, const HvExactOptions& options = {});

/// Two-sided standard normal quantile for 0.90, 0.95 or 0.99 confidence.
double z_quantile(double confidence);

/// Wilson score interval with continuity correction for a binomial
/// proportion, clamped to [0, 1].
Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double confidence);

struct MonteCarloOptions {
  double target_width = 0.01;
  double confidence = 0.95;
  std::uint64_t batch = 10'000;
  std::uint64_t max_samples = 100'000'000;
  std::uint64_t seed = 1;
};

/// Uniform sampling of the box [reference, ideal], with ideal the
/// componentwise maximum of the points. Sampling stops after the first batch
/// whose scaled Wilson interval is no wider than target_width, or at
/// max_samples. Sample g uses counter-based draws keyed by (seed, g), so
/// results do not depend on thread count or batch boundaries.
HvEstimate hv_monte_carlo(const HvProblem& problem, const MonteCarloOptions& options);
/// Single-threaded reference for hv_monte_carlo; returns identical results.
HvEstimate hv_monte_carlo_serial(const HvProblem& problem, const MonteCarloOptions& options);

/// Benchmark fronts in [0,1]^m, written in the maximization frame as
/// reflections y = 1 - x of the usual minimization sets:
///   linear:  x uniform on the simplex, so sum(1 - y) = 1
///   concave: x uniform on the unit sphere in the positive orthant, |1 - y| = 1
///   convex:  y uniform on the unit sphere in the positive orthant, |y| = 1
/// Convex fronts hug the reference point as m grows.
enum class FrontKind { Linear, Concave, Convex };

const char* to_string(FrontKind kind) noexcept;
FrontKind parse_front_kind(std::string_view name);

std::vector<ObjectiveVector> generate_front(FrontKind kind, int m, std::size_t count, std::uint64_t seed);

/// Reads one comma-separated vector per line; blank lines and '#' comments skipped.
std::vector<ObjectiveVector> parse_points(std::string_view text);
ObjectiveVector parse_vector(std::string_view text);

}  // namespace paretolab
