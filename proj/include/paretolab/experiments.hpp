#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "paretolab/config.hpp"
#include "paretolab/rng.hpp"

namespace paretolab {

struct ExperimentOptions {
  int jobs = 0;         // OpenMP threads; 0 keeps the runtime default
  bool timing = false;  // fill elapsed_ns columns with wall time instead of 0
};

/// A bound taken from the reference study, evaluated on the run's data.
struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentResult {
  std::string name;
  std::string csv;  // provenance comment line, header row, data rows
  std::vector<Check> checks;

  bool all_passed() const;
};

/// pareto-proportion, nd-pairs, nd-population, heterogeneity, distances,
/// archive-bench, hv-study, weight-distances.
const std::vector<std::string>& experiment_names();

/// Keys accepted by each experiment, with defaults, one `key = value` per line.
std::string default_config(std::string_view name);

/// Runs one experiment. The CSV depends only on the config (and on
/// options.timing); it is identical for every thread count.
ExperimentResult run_experiment(std::string_view name, const Config& config, const ExperimentOptions& options = {});

/// Fraction of `trials` in which mu independent pairs of uniform random
/// vectors in [0,1]^m are all mutually non-dominated.
double sample_all_nd_uniform(int m, std::uint64_t mu, std::uint64_t trials, std::uint64_t seed);

/// Draws a duration from "beta(a,b)" or "uniform(lo,hi)".
class LatencyModel {
 public:
  static LatencyModel parse(std::string_view spec);

  std::string name() const;
  double sample(Rng& rng) const;

  enum class Kind { Beta, Uniform };
  Kind kind() const noexcept { return kind_; }
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

 private:
  Kind kind_ = Kind::Uniform;
  double p_ = 0.0;
  double q_ = 1.0;
};

/// Min and max pairwise absolute difference of m durations.
struct LatencySpread {
  double min_diff;
  double max_diff;
};
LatencySpread latency_spread(std::vector<double> durations);

}  // namespace paretolab
