#include "paretolab/experiments.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <tuple>

#include <omp.h>

#include "paretolab/archive.hpp"
#include "paretolab/dominance.hpp"
#include "paretolab/error.hpp"
#include "paretolab/hypervolume.hpp"
#include "paretolab/landscape.hpp"
#include "paretolab/weights.hpp"

#ifndef PARETOLAB_VERSION
#define PARETOLAB_VERSION "dev"
#endif

namespace paretolab {

bool ExperimentResult::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string num(std::uint64_t v) { return std::to_string(v); }
std::string num(std::int64_t v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : "NA"; }

template <class... T>
std::string row(const T&... fields) {
  std::string out;
  ((out += (out.empty() ? "" : ","), out += fields), ...);
  return out + "\n";
}

struct Stats {
  double sum = 0.0;
  double sum2 = 0.0;
  std::size_t n = 0;

  void add(double x) {
    sum += x;
    sum2 += x * x;
    ++n;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  double var() const {
    if (n < 2) return 0.0;
    const double m = mean();
    return std::max(0.0, (sum2 - static_cast<double>(n) * m * m) / static_cast<double>(n - 1));
  }
  double se() const { return n ? std::sqrt(var() / static_cast<double>(n)) : 0.0; }
};

// Runs f(cell) for every cell on the worker pool. Cells write only to their
// own slots, so the output never depends on scheduling.
void for_cells(std::size_t count, const ExperimentOptions& options, const std::function<void(std::size_t)>& f) {
  std::exception_ptr error;
  const int threads = options.jobs > 0 ? options.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(paretolab_cell_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

void add_check(ExperimentResult& result, std::string name, bool passed, std::string detail) {
  result.checks.push_back({std::move(name), passed, std::move(detail)});
}

std::string provenance(std::string_view name, const Config& cfg, std::string_view protocol) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a(std::string(name) + "\n" + cfg.resolved())));
  std::string line = "# pareto-lab " PARETOLAB_VERSION " experiment=" + std::string(name) + " config=" + hash;
  if (!protocol.empty()) line += " protocol=" + std::string(protocol);
  return line + "\n";
}

std::vector<int> int_list(const Config& cfg, const std::string& key, const std::string& fallback, int lo) {
  std::vector<int> out;
  for (auto v : cfg.get_int_list(key, fallback)) {
    if (v < lo) throw DomainError("key '" + key + "': values must be >= " + std::to_string(lo));
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw DomainError("key '" + key + "' is empty");
  return out;
}

std::uint64_t positive(const Config& cfg, const std::string& key, std::uint64_t fallback) {
  const auto v = cfg.get_uint(key, fallback);
  if (v < 1) throw DomainError("key '" + key + "' must be >= 1");
  return v;
}

struct LandscapeParams {
  int n;
  int k;
  std::vector<int> ms;
  std::uint64_t instances;
  std::uint64_t seed;

  static LandscapeParams read(const Config& cfg, int n_default, const std::string& m_default) {
    LandscapeParams p;
    p.n = static_cast<int>(cfg.get_int("n", n_default));
    p.k = static_cast<int>(cfg.get_int("k", 0));
    p.ms = int_list(cfg, "m", m_default, 1);
    p.instances = positive(cfg, "instances", 30);
    p.seed = cfg.get_uint("seed", 1);
    if (p.n < 1 || p.n > NkInstance::kMaxEnumerationBits) {
      throw CapacityError("n must lie in 1.." + std::to_string(NkInstance::kMaxEnumerationBits));
    }
    if (p.k < 0 || p.k >= p.n) throw DomainError("k must satisfy 0 <= k < n");
    return p;
  }

  // The same instance seeds are used for every m; objective tables are per
  // (objective, variable) streams, so instance s at m is a prefix of instance s at m + 1.
  std::uint64_t instance_seed(std::uint64_t s) const { return derive_stream(seed, {0x696e7374u, s}); }
};

// Draws a solution index pair a != b.
std::pair<std::uint64_t, std::uint64_t> distinct_pair(Rng& rng, std::uint64_t count) {
  const std::uint64_t a = rng.below(count);
  std::uint64_t b = rng.below(count - 1);
  if (b >= a) ++b;
  return {a, b};
}

bool nondominated_pair(const double* a, const double* b, int m) {
  const auto r = compare(std::span<const double>(a, m), std::span<const double>(b, m));
  return r != Dominance::Dominates && r != Dominance::DominatedBy;
}

// ---------------------------------------------------------------- pareto-proportion

ExperimentResult exp_pareto_proportion(const Config& cfg, const ExperimentOptions& options) {
  const auto p = LandscapeParams::read(cfg, 10, "2..20");
  cfg.require_all_used();
  const std::size_t cells = p.ms.size() * p.instances;
  std::vector<double> prop(cells);
  for_cells(cells, options, [&](std::size_t c) {
    const int m = p.ms[c / p.instances];
    const auto inst = generate_instance(p.n, p.k, m, p.instance_seed(c % p.instances));
    prop[c] = proportion_pareto_optimal(inst);
  });

  ExperimentResult result{"pareto-proportion", {}, {}};
  std::string body = "m,instance,seed,proportion\n";
  std::map<int, Stats> by_m;
  for (std::size_t c = 0; c < cells; ++c) {
    const int m = p.ms[c / p.instances];
    const std::uint64_t s = c % p.instances;
    body += row(num(m), num(s), num(p.instance_seed(s)), num(prop[c]));
    by_m[m].add(prop[c]);
  }
  if (by_m.count(2)) {
    const double v = by_m[2].mean();
    add_check(result, "m=2 mean proportion < 0.05", v < 0.05, "mean=" + num(v));
  }
  if (by_m.count(7)) {
    const double v = by_m[7].mean();
    add_check(result, "m=7 mean proportion in [0.35, 0.65]", v >= 0.35 && v <= 0.65, "mean=" + num(v));
  }
  if (by_m.count(20)) {
    const double v = by_m[20].mean();
    add_check(result, "m=20 mean proportion > 0.99", v > 0.99, "mean=" + num(v));
  }
  if (by_m.size() > 1) {
    int inversions = 0;
    double worst = 0.0;
    double prev = -1.0;
    for (const auto& [m, st] : by_m) {
      if (st.mean() < prev) {
        ++inversions;
        worst = std::max(worst, prev - st.mean());
      }
      prev = st.mean();
    }
    add_check(result, "mean proportion non-decreasing in m (one inversion < 0.02 allowed)",
              inversions == 0 || (inversions == 1 && worst < 0.02),
              "inversions=" + num(inversions) + " largest=" + num(worst));
  }
  result.csv = provenance(result.name, cfg, "") + body;
  return result;
}

}  // namespace

double sample_all_nd_uniform(int m, std::uint64_t mu, std::uint64_t trials, std::uint64_t seed) {
  if (m < 1) throw DomainError("m must be >= 1");
  if (trials < 1) throw DomainError("trials must be >= 1");
  Rng rng(derive_stream(seed, {0x756e6966u, static_cast<std::uint64_t>(m), mu}));
  std::uint64_t all = 0;
  std::vector<double> a(static_cast<std::size_t>(m));
  std::vector<double> b(static_cast<std::size_t>(m));
  for (std::uint64_t t = 0; t < trials; ++t) {
    bool ok = true;
    // Every pair is drawn even after a failure, so trial t always uses the same numbers.
    for (std::uint64_t i = 0; i < mu; ++i) {
      for (auto& x : a) x = rng.uniform();
      for (auto& x : b) x = rng.uniform();
      ok = ok && nondominated_pair(a.data(), b.data(), m);
    }
    all += ok;
  }
  return static_cast<double>(all) / static_cast<double>(trials);
}

namespace {

ExperimentResult exp_nd_pairs(const Config& cfg, const ExperimentOptions& options) {
  const auto p = LandscapeParams::read(cfg, 10, "2..20");
  const auto mus = cfg.get_int_list("mu", "1,10,100,1000");
  const auto samples = positive(cfg, "samples", 30);
  cfg.require_all_used();
  for (auto mu : mus) {
    if (mu < 1) throw DomainError("mu must be >= 1");
  }
  if (p.n < 2) throw DomainError("nd-pairs needs n >= 2");

  struct Cell {
    std::vector<double> all_nd;
    std::vector<double> pairwise;
  };
  const std::size_t cells = p.ms.size() * p.instances;
  std::vector<Cell> out(cells);
  for_cells(cells, options, [&](std::size_t c) {
    const int m = p.ms[c / p.instances];
    const std::uint64_t s = c % p.instances;
    const auto inst = generate_instance(p.n, p.k, m, p.instance_seed(s));
    const auto f = evaluate_all_serial(inst);
    const std::uint64_t count = std::uint64_t{1} << p.n;
    for (std::size_t u = 0; u < mus.size(); ++u) {
      const auto mu = static_cast<std::uint64_t>(mus[u]);
      Rng rng(derive_stream(p.seed, {0x70616972u, static_cast<std::uint64_t>(m), s, mu}));
      std::uint64_t all = 0;
      std::uint64_t nd = 0;
      for (std::uint64_t t = 0; t < samples; ++t) {
        std::uint64_t here = 0;
        for (std::uint64_t i = 0; i < mu; ++i) {
          const auto [a, b] = distinct_pair(rng, count);
          here += nondominated_pair(&f[a * m], &f[b * m], m);
        }
        nd += here;
        all += here == mu;
      }
      out[c].all_nd.push_back(static_cast<double>(all) / static_cast<double>(samples));
      out[c].pairwise.push_back(static_cast<double>(nd) / static_cast<double>(samples * mu));
    }
  });

  ExperimentResult result{"nd-pairs", {}, {}};
  std::string body = "m,mu,instance,seed,proportion_all_nd,proportion_pairwise_nd,theory\n";
  std::map<std::pair<int, std::int64_t>, Stats> all_by;
  bool single_pair_equal = true;
  for (std::size_t c = 0; c < cells; ++c) {
    const int m = p.ms[c / p.instances];
    const std::uint64_t s = c % p.instances;
    for (std::size_t u = 0; u < mus.size(); ++u) {
      const auto mu = static_cast<std::uint64_t>(mus[u]);
      body += row(num(m), num(mu), num(s), num(p.instance_seed(s)), num(out[c].all_nd[u]), num(out[c].pairwise[u]),
                  num(all_pairs_nd_probability(m, mu)));
      all_by[{m, mus[u]}].add(out[c].all_nd[u]);
      if (mu == 1) single_pair_equal = single_pair_equal && out[c].all_nd[u] == out[c].pairwise[u];
    }
  }
  if (all_by.count({16, 1000})) {
    const double v = all_by[{16, 1000}].mean();
    add_check(result, "m=16, mu=1000 all-ND proportion > 0.5", v > 0.5, "mean=" + num(v));
  }
  if (std::find(mus.begin(), mus.end(), 1) != mus.end()) {
    add_check(result, "mu=1 all-ND proportion equals pairwise proportion", single_pair_equal, "");
  }
  result.csv = provenance(result.name, cfg, "distinct-solution-pairs-resampled-per-instance") + body;
  return result;
}

// ---------------------------------------------------------------- nd-population

ExperimentResult exp_nd_population(const Config& cfg, const ExperimentOptions& options) {
  const auto p = LandscapeParams::read(cfg, 10, "2..20");
  const auto mus = cfg.get_int_list("mu", "1,10,100,1000");
  const auto samples = positive(cfg, "samples", 30);
  cfg.require_all_used();
  const std::uint64_t count = std::uint64_t{1} << p.n;
  for (auto mu : mus) {
    if (mu < 1 || static_cast<std::uint64_t>(mu) + 1 > count) {
      throw DomainError("mu must satisfy 1 <= mu < 2^n");
    }
  }

  struct Cell {
    std::vector<double> one;
    std::vector<double> prop;
  };
  const std::size_t cells = p.ms.size() * p.instances;
  std::vector<Cell> out(cells);
  for_cells(cells, options, [&](std::size_t c) {
    const int m = p.ms[c / p.instances];
    const std::uint64_t s = c % p.instances;
    const auto inst = generate_instance(p.n, p.k, m, p.instance_seed(s));
    const auto f = evaluate_all_serial(inst);
    std::vector<std::uint64_t> pool(count);
    std::vector<double> rows;
    for (std::size_t u = 0; u < mus.size(); ++u) {
      const auto mu = static_cast<std::uint64_t>(mus[u]);
      Rng rng(derive_stream(p.seed, {0x706f7075u, static_cast<std::uint64_t>(m), s, mu}));
      std::uint64_t probe_nd = 0;
      double prop_sum = 0.0;
      for (std::uint64_t t = 0; t < samples; ++t) {
        // mu + 1 distinct solutions: a probe and a population of mu others.
        std::iota(pool.begin(), pool.end(), 0);
        for (std::uint64_t i = 0; i <= mu; ++i) std::swap(pool[i], pool[i + rng.below(count - i)]);
        const double* probe = &f[pool[0] * m];
        bool dominated = false;
        rows.clear();
        for (std::uint64_t i = 1; i <= mu; ++i) {
          const double* q = &f[pool[i] * m];
          dominated = dominated ||
                      compare(std::span<const double>(q, m), std::span<const double>(probe, m)) == Dominance::Dominates;
          rows.insert(rows.end(), q, q + m);
        }
        probe_nd += !dominated;
        const auto mask = nondominated_mask(rows, static_cast<std::size_t>(m));
        prop_sum += static_cast<double>(std::count(mask.begin(), mask.end(), 1)) / static_cast<double>(mu);
      }
      out[c].one.push_back(static_cast<double>(probe_nd) / static_cast<double>(samples));
      out[c].prop.push_back(prop_sum / static_cast<double>(samples));
    }
  });

  ExperimentResult result{"nd-population", {}, {}};
  std::string body = "m,mu,instance,seed,prob_one_nondominated,proportion_nondominated\n";
  std::map<std::pair<int, std::int64_t>, Stats> one_by, prop_by;
  for (std::size_t c = 0; c < cells; ++c) {
    const int m = p.ms[c / p.instances];
    const std::uint64_t s = c % p.instances;
    for (std::size_t u = 0; u < mus.size(); ++u) {
      body += row(num(m), num(mus[u]), num(s), num(p.instance_seed(s)), num(out[c].one[u]), num(out[c].prop[u]));
      one_by[{m, mus[u]}].add(out[c].one[u]);
      prop_by[{m, mus[u]}].add(out[c].prop[u]);
    }
  }
  if (one_by.count({2, 1000})) {
    const double v = one_by[{2, 1000}].mean();
    add_check(result, "m=2, mu=1000 prob_one_nondominated < 0.05", v < 0.05, "mean=" + num(v));
  }
  {
    bool any = false;
    bool ok = true;
    std::string worst;
    double lowest = 2.0;
    for (const auto& [key, st] : one_by) {
      if (key.first < 13 || key.second > 1000) continue;
      any = true;
      for (double v : {st.mean(), prop_by[key].mean()}) {
        if (v < lowest) {
          lowest = v;
          worst = "m=" + num(key.first) + " mu=" + num(key.second) + " value=" + num(v);
        }
        ok = ok && v > 0.85;
      }
    }
    if (any) add_check(result, "m>=13, mu<=1000: both statistics > 0.85", ok, "lowest: " + worst);
  }
  if (prop_by.count({2, 10})) {
    const double v = prop_by[{2, 10}].mean();
    add_check(result, "m=2, mu=10 proportion_nondominated in [0.15, 0.45]", v >= 0.15 && v <= 0.45,
              "mean=" + num(v));
  }
  result.csv = provenance(result.name, cfg, "probe-plus-mu-distinct-solutions") + body;
  return result;
}

// ---------------------------------------------------------------- heterogeneity

ExperimentResult exp_heterogeneity(const Config& cfg, const ExperimentOptions& options) {
  std::vector<LatencyModel> models;
  for (const auto& spec : cfg.get_string_list("models", "beta(2,8);beta(8,2);beta(5,5);uniform(1,50)", ';')) {
    models.push_back(LatencyModel::parse(spec));
  }
  const auto ms = int_list(cfg, "m", "2..25", 2);
  const auto reps = positive(cfg, "reps", 100);
  const auto seed = cfg.get_uint("seed", 1);
  cfg.require_all_used();

  const std::size_t cells = models.size() * ms.size();
  std::vector<std::vector<LatencySpread>> out(cells);
  for_cells(cells, options, [&](std::size_t c) {
    const std::size_t model = c / ms.size();
    const int m = ms[c % ms.size()];
    Rng rng(derive_stream(seed, {0x6c617465u, model, static_cast<std::uint64_t>(m)}));
    std::vector<double> d(static_cast<std::size_t>(m));
    for (std::uint64_t r = 0; r < reps; ++r) {
      for (auto& x : d) x = models[model].sample(rng);
      out[c].push_back(latency_spread(d));
    }
  });

  ExperimentResult result{"heterogeneity", {}, {}};
  std::string body = "model,m,rep,min_diff,max_diff\n";
  std::vector<std::map<int, Stats>> max_by(models.size());
  bool pair_equal = true;
  bool saw_pair = false;
  for (std::size_t c = 0; c < cells; ++c) {
    const std::size_t model = c / ms.size();
    const int m = ms[c % ms.size()];
    for (std::size_t r = 0; r < out[c].size(); ++r) {
      const auto& s = out[c][r];
      body += row(models[model].name(), num(m), num(static_cast<std::uint64_t>(r)), num(s.min_diff), num(s.max_diff));
      max_by[model][m].add(s.max_diff);
      if (m == 2) {
        saw_pair = true;
        pair_equal = pair_equal && s.min_diff == s.max_diff;
      }
    }
  }
  if (saw_pair) add_check(result, "m=2: min_diff equals max_diff in every rep", pair_equal, "");
  for (std::size_t model = 0; model < models.size(); ++model) {
    std::vector<double> means;
    std::string detail;
    for (int m : {5, 10, 15, 20, 25}) {
      if (!max_by[model].count(m)) continue;
      means.push_back(max_by[model][m].mean());
      detail += (detail.empty() ? "" : " ") + ("m=" + num(m) + ":" + num(means.back()));
    }
    if (means.size() < 2) continue;
    bool increasing = true;
    for (std::size_t i = 1; i < means.size(); ++i) increasing = increasing && means[i] > means[i - 1];
    add_check(result, models[model].name() + ": mean max_diff strictly increasing over m = 5,10,...,25", increasing,
              detail);
  }
  std::optional<std::size_t> sym, skew;
  for (std::size_t model = 0; model < models.size(); ++model) {
    if (models[model].name() == "beta(5,5)") sym = model;
    if (models[model].name() == "beta(2,8)") skew = model;
  }
  if (sym && skew && max_by[*sym].count(25) && max_by[*skew].count(25)) {
    const auto& a = max_by[*sym][25];
    const auto& b = max_by[*skew][25];
    const double diff = a.mean() - b.mean();
    const double se = std::sqrt(a.se() * a.se() + b.se() * b.se());
    add_check(result, "m=25: beta(5,5) mean max_diff exceeds beta(2,8) by 3 standard errors", diff > 3.0 * se,
              "difference=" + num(diff) + " se=" + num(se));
  }
  result.csv = provenance(result.name, cfg, "") + body;
  return result;
}

// ---------------------------------------------------------------- distances

ExperimentResult exp_distances(const Config& cfg, const ExperimentOptions& options) {
  const auto p = LandscapeParams::read(cfg, 10, "2..20");
  const auto pairs = positive(cfg, "pairs", 30);
  cfg.require_all_used();
  if (p.n < 2) throw DomainError("distances needs n >= 2");

  struct Pair {
    int hamming;
    double euclidean;
  };
  struct Cell {
    std::vector<Pair> random;
    std::vector<Pair> pareto;
    bool pareto_skipped = false;
  };
  const std::size_t cells = p.ms.size() * p.instances;
  std::vector<Cell> out(cells);
  for_cells(cells, options, [&](std::size_t c) {
    const int m = p.ms[c / p.instances];
    const std::uint64_t s = c % p.instances;
    const auto inst = generate_instance(p.n, p.k, m, p.instance_seed(s));
    const auto f = evaluate_all_serial(inst);
    const std::uint64_t count = std::uint64_t{1} << p.n;
    auto dist = [&](const double* a, const double* b) {
      double d = 0.0;
      for (int i = 0; i < m; ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
      return std::sqrt(d);
    };
    Rng rng(derive_stream(p.seed, {0x64697374u, static_cast<std::uint64_t>(m), s}));
    for (std::uint64_t i = 0; i < pairs; ++i) {
      const auto [a, b] = distinct_pair(rng, count);
      out[c].random.push_back({std::popcount(a ^ b), dist(&f[a * m], &f[b * m])});
    }
    const auto mask = nondominated_mask(f, static_cast<std::size_t>(m));
    std::vector<std::uint64_t> set;
    for (std::uint64_t x = 0; x < count; ++x) {
      if (mask[x]) set.push_back(x);
    }
    if (set.size() < 2) {
      out[c].pareto_skipped = true;
      return;
    }
    for (std::uint64_t i = 0; i < pairs; ++i) {
      const auto [ia, ib] = distinct_pair(rng, set.size());
      const auto a = set[ia];
      const auto b = set[ib];
      out[c].pareto.push_back({std::popcount(a ^ b), dist(&f[a * m], &f[b * m])});
    }
  });

  ExperimentResult result{"distances", {}, {}};
  std::string body = "m,instance,seed,space,pair,hamming,euclidean\n";
  std::map<int, Stats> random_by, pareto_by;
  for (std::size_t c = 0; c < cells; ++c) {
    const int m = p.ms[c / p.instances];
    const std::uint64_t s = c % p.instances;
    const auto seed = num(p.instance_seed(s));
    for (std::size_t i = 0; i < out[c].random.size(); ++i) {
      const auto& q = out[c].random[i];
      body += row(num(m), num(s), seed, std::string("random"), num(static_cast<std::uint64_t>(i)), num(q.hamming),
                  num(q.euclidean));
      random_by[m].add(q.hamming);
    }
    if (out[c].pareto_skipped) {
      body += row(num(m), num(s), seed, std::string("pareto"), std::string("NA"), std::string("NA"),
                  std::string("NA"));
    }
    for (std::size_t i = 0; i < out[c].pareto.size(); ++i) {
      const auto& q = out[c].pareto[i];
      body += row(num(m), num(s), seed, std::string("pareto"), num(static_cast<std::uint64_t>(i)), num(q.hamming),
                  num(q.euclidean));
      pareto_by[m].add(q.hamming);
    }
  }
  {
    const double expect = p.n / 2.0;
    bool ok = true;
    std::string detail;
    for (const auto& [m, st] : random_by) {
      if (std::abs(st.mean() - expect) > 0.5) {
        ok = false;
        detail += "m=" + num(m) + ":" + num(st.mean()) + " ";
      }
    }
    add_check(result, "random-pair mean Hamming within n/2 +- 0.5 at every m", ok,
              ok ? "n/2=" + num(expect) : detail);
  }
  {
    bool any = false;
    bool ok = true;
    std::string detail;
    for (const auto& [m, st] : pareto_by) {
      if (m < 15) continue;
      any = true;
      const double gap = std::abs(st.mean() - random_by[m].mean());
      ok = ok && gap <= 0.5;
      detail += "m=" + num(m) + ":" + num(gap) + " ";
    }
    if (any) add_check(result, "m>=15: Pareto-pair mean Hamming within 0.5 of random", ok, "gaps " + detail);
  }
  if (pareto_by.count(2) && random_by.count(2)) {
    const auto& a = random_by[2];
    const auto& b = pareto_by[2];
    const double diff = a.mean() - b.mean();
    const double se = std::sqrt(a.se() * a.se() + b.se() * b.se());
    add_check(result, "m=2: Pareto-pair mean Hamming below random by 3 standard errors", diff > 3.0 * se,
              "difference=" + num(diff) + " se=" + num(se));
  }
  result.csv = provenance(result.name, cfg, "distinct-pairs-uniform") + body;
  return result;
}

// ---------------------------------------------------------------- archive-bench

struct DecileRow {
  std::uint64_t offered = 0;
  std::uint64_t inserted = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t elapsed_ns = 0;
};

struct BenchRun {
  std::vector<DecileRow> deciles;
  std::uint64_t snapshot_hash = 0;
  std::size_t final_size = 0;
};

// Streams every solution in `order` into a fresh archive. Decile d covers
// the solutions processed after the archive first reached (d-1)/10 of its
// final size until it first reached d/10 of it; the last decile runs to the
// end of the stream.
BenchRun bench_backend(Backend backend, int m, const std::vector<double>& f, const std::vector<std::uint64_t>& order,
                       bool timing) {
  using clock = std::chrono::steady_clock;
  ParetoArchive archive(backend, static_cast<std::size_t>(m));
  const std::size_t total = order.size();
  std::vector<std::uint64_t> comps(total + 1, 0), sizes(total + 1, 0), inserted(total + 1, 0), ns(total + 1, 0);
  const auto start = clock::now();
  std::vector<double> y(static_cast<std::size_t>(m));
  for (std::size_t s = 0; s < total; ++s) {
    std::copy(&f[order[s] * m], &f[order[s] * m] + m, y.begin());
    const auto outcome = archive.update(ObjectiveVector(y), order[s]);
    comps[s + 1] = archive.comparison_count();
    sizes[s + 1] = archive.size();
    inserted[s + 1] = inserted[s] + outcome.was_inserted();
    if (timing) {
      ns[s + 1] = static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - start).count());
    }
  }
  BenchRun run;
  run.final_size = archive.size();
  std::size_t prev = 0;
  for (std::size_t d = 1; d <= 10; ++d) {
    const std::size_t threshold = (d * run.final_size + 9) / 10;
    std::size_t s = prev;
    if (d == 10) {
      s = total;
    } else {
      while (s < total && sizes[s] < threshold) ++s;
    }
    run.deciles.push_back({s - prev, inserted[s] - inserted[prev], comps[s] - comps[prev], ns[s] - ns[prev]});
    prev = s;
  }
  std::string bytes;
  for (const auto& v : archive.snapshot()) bytes += v.to_string() + "\n";
  run.snapshot_hash = fnv1a(bytes);
  return run;
}

ExperimentResult exp_archive_bench(const Config& cfg, const ExperimentOptions& options) {
  const auto p = LandscapeParams::read(cfg, 16, "3,20");
  std::vector<Backend> backends;
  for (const auto& b : cfg.get_string_list("backends", "list,ndtree,quadtree")) backends.push_back(parse_backend(b));
  const auto heavy_m = cfg.get_int("heavy_m", 10);
  const auto heavy_instances = positive(cfg, "heavy_instances", 3);
  cfg.require_all_used();

  auto instances_for = [&](int m) { return m >= heavy_m ? std::min(heavy_instances, p.instances) : p.instances; };
  struct CellKey {
    int m;
    std::uint64_t instance;
    std::size_t backend;
  };
  std::vector<CellKey> keys;
  for (int m : p.ms) {
    for (std::uint64_t s = 0; s < instances_for(m); ++s) {
      for (std::size_t b = 0; b < backends.size(); ++b) keys.push_back({m, s, b});
    }
  }
  std::vector<BenchRun> runs(keys.size());
  // Heaviest cells first keeps the pool busy; results are stored by index.
  std::vector<std::size_t> schedule(keys.size());
  std::iota(schedule.begin(), schedule.end(), 0);
  std::stable_sort(schedule.begin(), schedule.end(), [&](std::size_t a, std::size_t b) { return keys[a].m > keys[b].m; });
  for_cells(keys.size(), options, [&](std::size_t i) {
    const auto& key = keys[schedule[i]];
    const auto inst = generate_instance(p.n, p.k, key.m, p.instance_seed(key.instance));
    const auto f = evaluate_all_serial(inst);
    std::vector<std::uint64_t> order(std::size_t{1} << p.n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(derive_stream(p.seed, {0x6f726465u, static_cast<std::uint64_t>(key.m), key.instance}));
    for (std::size_t j = order.size() - 1; j > 0; --j) std::swap(order[j], order[rng.below(j + 1)]);
    runs[schedule[i]] = bench_backend(backends[key.backend], key.m, f, order, options.timing);
  });

  ExperimentResult result{"archive-bench", {}, {}};
  std::string body = "backend,n,k,m,seed,decile,offered,inserted,comparisons,elapsed_ns\n";
  // Pooled per-solution cost of the first and last decile per (m, backend).
  std::map<std::pair<int, std::size_t>, std::array<double, 4>> pooled;
  bool agree = true;
  std::string disagreement;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto& key = keys[i];
    const auto& run = runs[i];
    for (std::size_t d = 0; d < run.deciles.size(); ++d) {
      const auto& r = run.deciles[d];
      body += row(std::string(to_string(backends[key.backend])), num(p.n), num(p.k), num(key.m),
                  num(p.instance_seed(key.instance)), num(static_cast<std::uint64_t>(d + 1)), num(r.offered),
                  num(r.inserted), num(r.comparisons), num(r.elapsed_ns));
    }
    auto& acc = pooled[{key.m, key.backend}];
    acc[0] += static_cast<double>(run.deciles.front().comparisons);
    acc[1] += static_cast<double>(run.deciles.front().offered);
    acc[2] += static_cast<double>(run.deciles.back().comparisons);
    acc[3] += static_cast<double>(run.deciles.back().offered);
    if (key.backend > 0) {
      const auto& first = runs[i - key.backend];
      if (first.snapshot_hash != run.snapshot_hash || first.final_size != run.final_size) {
        agree = false;
        disagreement = "m=" + num(key.m) + " instance=" + num(key.instance);
      }
    }
  }
  if (backends.size() > 1) {
    add_check(result, "final archives identical across backends", agree, agree ? "" : "first mismatch " + disagreement);
  }
  auto ratio = [&](int m, std::size_t b) {
    const auto& a = pooled[{m, b}];
    return (a[2] / std::max(1.0, a[3])) / std::max(1e-300, a[0] / std::max(1.0, a[1]));
  };
  auto index_of = [&](Backend b) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < backends.size(); ++i) {
      if (backends[i] == b) return i;
    }
    return std::nullopt;
  };
  const bool has3 = std::find(p.ms.begin(), p.ms.end(), 3) != p.ms.end();
  const bool has20 = std::find(p.ms.begin(), p.ms.end(), 20) != p.ms.end();
  const auto nd = index_of(Backend::NdTree);
  const auto list = index_of(Backend::List);
  if (has3 && nd && list) {
    const double r_nd = ratio(3, *nd);
    const double r_list = ratio(3, *list);
    add_check(result, "m=3: ND-Tree last/first decile cost ratio below the list's", r_nd < r_list,
              "ndtree=" + num(r_nd) + " list=" + num(r_list));
  }
  if (has20) {
    bool ok = true;
    std::string detail;
    for (std::size_t b = 0; b < backends.size(); ++b) {
      const double r = ratio(20, b);
      ok = ok && r > 2.0;
      detail += std::string(to_string(backends[b])) + "=" + num(r) + " ";
    }
    add_check(result, "m=20: every backend's last/first decile cost ratio > 2", ok, detail);
  }
  result.csv = provenance(result.name, cfg, "archive-size-deciles") + body;
  return result;
}

// ---------------------------------------------------------------- hv-study

ExperimentResult exp_hv_study(const Config& cfg, const ExperimentOptions& options) {
  std::vector<FrontKind> kinds;
  for (const auto& k : cfg.get_string_list("kinds", "linear,concave,convex")) kinds.push_back(parse_front_kind(k));
  const auto m_sweep = int_list(cfg, "m_sweep", "4,6,8,10", 2);
  const auto m_sweep_points = positive(cfg, "m_sweep_points", 100);
  const auto n_sweep = int_list(cfg, "n_sweep", "200,400,600,800,1000", 1);
  const auto n_sweep_m = static_cast<int>(cfg.get_int("n_sweep_m", 8));
  const auto contrib_m = static_cast<int>(cfg.get_int("contrib_m", 4));
  const auto contrib_max_m = static_cast<int>(cfg.get_int("contrib_max_m", 6));
  const auto reps = positive(cfg, "reps", 3);
  const double target_scale = cfg.get_double("target_scale", 5.0);
  MonteCarloOptions mc;
  mc.confidence = cfg.get_double("confidence", 0.95);
  mc.batch = positive(cfg, "mc_batch", 100);
  mc.max_samples = positive(cfg, "max_samples", 100'000'000);
  HvExactOptions exact;
  exact.cap = positive(cfg, "exact_cap", 300);
  const auto seed = cfg.get_uint("seed", 1);
  cfg.require_all_used();
  if (n_sweep_m < 2 || contrib_m < 2) throw DomainError("front dimensions must be >= 2");
  z_quantile(mc.confidence);

  struct Task {
    std::string sweep;
    FrontKind kind;
    int m;
    int n;
    std::uint64_t rep;
    bool exact;
    bool contributions;
    bool monte_carlo;
  };
  struct Out {
    std::uint64_t front_seed = 0;
    std::optional<double> hv;
    std::optional<double> contribution;
    std::optional<HvEstimate> mc;
  };
  std::vector<Task> tasks;
  auto exact_allowed = [&](int m, int n) { return static_cast<std::size_t>(m) < exact.cap_dimension || static_cast<std::size_t>(n) <= exact.cap; };
  for (auto kind : kinds) {
    for (int m : m_sweep) {
      for (std::uint64_t r = 0; r < reps; ++r) {
        const int n = static_cast<int>(m_sweep_points);
        tasks.push_back({"m", kind, m, n, r, exact_allowed(m, n), m <= contrib_max_m && exact_allowed(m, n), true});
      }
    }
    for (int n : n_sweep) {
      for (std::uint64_t r = 0; r < reps; ++r) tasks.push_back({"n", kind, n_sweep_m, n, r, false, false, true});
    }
    for (int n : n_sweep) {
      for (std::uint64_t r = 0; r < reps; ++r) {
        tasks.push_back({"contrib", kind, contrib_m, n, r, exact_allowed(contrib_m, n), exact_allowed(contrib_m, n), false});
      }
    }
  }
  std::vector<Out> out(tasks.size());
  for_cells(tasks.size(), options, [&](std::size_t i) {
    const auto& t = tasks[i];
    auto& o = out[i];
    o.front_seed = derive_stream(seed, {0x66726f6eu, static_cast<std::uint64_t>(t.n), t.rep});
    HvProblem problem{generate_front(t.kind, t.m, static_cast<std::size_t>(t.n), o.front_seed),
                      ObjectiveVector(std::vector<double>(static_cast<std::size_t>(t.m), 0.0))};
    if (t.exact) o.hv = hv_exact(problem, exact).value;
    if (t.contributions) {
      const auto c = hv_contributions(problem, exact);
      o.contribution = std::accumulate(c.begin(), c.end(), 0.0) / static_cast<double>(c.size());
    }
    if (t.monte_carlo) {
      MonteCarloOptions run = mc;
      run.target_width = target_scale / t.n;
      run.seed = derive_stream(seed, {0x6d63u, static_cast<std::uint64_t>(t.kind), static_cast<std::uint64_t>(t.m),
                                      static_cast<std::uint64_t>(t.n), t.rep});
      o.mc = hv_monte_carlo_serial(problem, run);
    }
  });

  ExperimentResult result{"hv-study", {}, {}};
  std::string body =
      "sweep,kind,m,N,rep,seed,hv_exact,mean_contribution,mc_value,mc_lo,mc_hi,mc_width,mc_samples\n";
  std::map<std::tuple<std::string, FrontKind, int, int>, std::array<Stats, 3>> agg;  // hv, contribution, samples
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& t = tasks[i];
    const auto& o = out[i];
    std::string lo = "NA", hi = "NA", width = "NA", value = "NA", samples = "NA";
    if (o.mc) {
      value = num(o.mc->value);
      samples = num(o.mc->samples);
      if (o.mc->interval) {
        lo = num(o.mc->interval->lo);
        hi = num(o.mc->interval->hi);
        width = num(o.mc->interval->width());
      }
    }
    body += row(t.sweep, std::string(to_string(t.kind)), num(t.m), num(t.n), num(t.rep), num(o.front_seed),
                opt_num(o.hv), opt_num(o.contribution), value, lo, hi, width, samples);
    auto& a = agg[{t.sweep, t.kind, t.m, t.n}];
    if (o.hv) a[0].add(*o.hv);
    if (o.contribution) a[1].add(*o.contribution);
    if (o.mc) a[2].add(static_cast<double>(o.mc->samples));
  }
  auto mean_of = [&](const std::string& sweep, FrontKind kind, int m, int n, int what) -> std::optional<double> {
    const auto it = agg.find({sweep, kind, m, n});
    if (it == agg.end() || it->second[what].n == 0) return std::nullopt;
    return it->second[what].mean();
  };
  const bool has_linear = std::find(kinds.begin(), kinds.end(), FrontKind::Linear) != kinds.end();
  const bool has_convex = std::find(kinds.begin(), kinds.end(), FrontKind::Convex) != kinds.end();
  if (has_linear && n_sweep.size() > 1) {
    const int lo_n = *std::min_element(n_sweep.begin(), n_sweep.end());
    const int hi_n = *std::max_element(n_sweep.begin(), n_sweep.end());
    const auto a = mean_of("contrib", FrontKind::Linear, contrib_m, lo_n, 1);
    const auto b = mean_of("contrib", FrontKind::Linear, contrib_m, hi_n, 1);
    if (a && b && *b > 0.0 && lo_n == 200 && hi_n == 1000) {
      const double r = *a / *b;
      add_check(result, "linear: mean contribution at N=200 over N=1000 in [3, 8]", r >= 3.0 && r <= 8.0,
                "m=" + num(contrib_m) + " ratio=" + num(r));
    }
  }
  if (has_convex && m_sweep.size() > 1) {
    bool ok = true;
    std::string detail;
    std::optional<double> prev;
    std::vector<int> ms = m_sweep;
    std::sort(ms.begin(), ms.end());
    for (int m : ms) {
      const auto v = mean_of("m", FrontKind::Convex, m, static_cast<int>(m_sweep_points), 0);
      if (!v) continue;
      if (prev) ok = ok && *v < *prev;
      prev = v;
      detail += "m=" + num(m) + ":" + num(*v) + " ";
    }
    add_check(result, "convex: exact hypervolume decreases with m", ok, detail);
  }
  if (has_linear) {
    bool any = false;
    bool ok = true;
    std::string detail;
    for (int n : n_sweep) {
      if (std::find(n_sweep.begin(), n_sweep.end(), 2 * n) == n_sweep.end()) continue;
      const auto a = mean_of("n", FrontKind::Linear, n_sweep_m, n, 2);
      const auto b = mean_of("n", FrontKind::Linear, n_sweep_m, 2 * n, 2);
      if (!a || !b || *a <= 0.0) continue;
      any = true;
      const double r = *b / *a;
      ok = ok && r >= 2.0 && r <= 8.0;
      detail += "N=" + num(n) + ":" + num(r) + " ";
    }
    if (any) add_check(result, "linear: mc_samples(2N)/mc_samples(N) in [2, 8]", ok, "m=" + num(n_sweep_m) + " " + detail);
  }
  result.csv = provenance(result.name, cfg, "fronts-reflected-max-frame,ref=0,width=scale/N") + body;
  return result;
}

// ---------------------------------------------------------------- weight-distances

ExperimentResult exp_weight_distances(const Config& cfg, const ExperimentOptions& options) {
  const auto ms = int_list(cfg, "m", "2..20", 2);
  const auto ts = cfg.get_double_list("t", "1.0,0.2,0.1");
  const auto pairs = positive(cfg, "pairs", 900);
  const auto min_count = positive(cfg, "min_count", 100);
  const auto seed = cfg.get_uint("seed", 1);
  cfg.require_all_used();
  for (double t : ts) neighborhood_size(1, t);

  struct Cell {
    DistanceSummary summary;
    std::size_t mu = 0;
    int h = 0;
  };
  const std::size_t cells = ms.size() * ts.size();
  std::vector<Cell> out(cells);
  for_cells(cells, options, [&](std::size_t c) {
    const int m = ms[c / ts.size()];
    const std::size_t ti = c % ts.size();
    const int h = smallest_h(m, min_count);
    const auto set = simplex_lattice(m, h);
    out[c].h = h;
    out[c].mu = set.size();
    out[c].summary = mean_neighbor_distance(set, ts[ti], pairs, derive_stream(seed, {0x77647374u, ti}));
  });

  ExperimentResult result{"weight-distances", {}, {}};
  std::string body = "m,t,mean,half_width,mu,h\n";
  std::map<double, std::map<int, double>> mean_by;
  for (std::size_t c = 0; c < cells; ++c) {
    const int m = ms[c / ts.size()];
    const double t = ts[c % ts.size()];
    const auto& o = out[c];
    body += row(num(m), num(t), num(o.summary.mean), num(o.summary.half_width),
                num(static_cast<std::uint64_t>(o.mu)), num(o.h));
    mean_by[t][m] = o.summary.mean;
  }
  if (mean_by.count(1.0)) {
    const auto& full = mean_by[1.0];
    if (full.count(2)) {
      add_check(result, "T=100%, m=2: mean distance within 0.5 +- 0.1", std::abs(full.at(2) - 0.5) <= 0.1,
                "mean=" + num(full.at(2)));
    }
    bool any = false;
    bool ok = true;
    double lowest = 2.0;
    for (const auto& [m, v] : full) {
      if (m < 14) continue;
      any = true;
      ok = ok && v > 0.85;
      lowest = std::min(lowest, v);
    }
    if (any) add_check(result, "T=100%, m>=14: mean distance > 0.85", ok, "lowest=" + num(lowest));
    int inversions = 0;
    double worst = 0.0;
    double prev = -1.0;
    for (const auto& [m, v] : full) {
      if (v < prev) {
        ++inversions;
        worst = std::max(worst, prev - v);
      }
      prev = v;
    }
    add_check(result, "T=100%: mean distance non-decreasing in m (inversions < 0.02)", worst < 0.02,
              "inversions=" + num(inversions) + " largest=" + num(worst));
  }
  if (mean_by.count(0.1)) {
    bool any = false;
    bool ok = true;
    double lowest = 2.0;
    for (const auto& [m, v] : mean_by[0.1]) {
      if (m <= 12) continue;
      any = true;
      ok = ok && v > 0.5;
      lowest = std::min(lowest, v);
    }
    if (any) add_check(result, "T=10%, m>12: mean distance > 0.5", ok, "lowest=" + num(lowest));
  }
  result.csv = provenance(result.name, cfg, "anchor-uniform,neighbor-uniform-excluding-self") + body;
  return result;
}

using Runner = ExperimentResult (*)(const Config&, const ExperimentOptions&);

struct Entry {
  const char* name;
  Runner run;
  const char* defaults;
};

const Entry kExperiments[] = {
    {"pareto-proportion", exp_pareto_proportion, "n = 10\nk = 0\nm = 2..20\ninstances = 30\nseed = 1\n"},
    {"nd-pairs", exp_nd_pairs, "n = 10\nk = 0\nm = 2..20\nmu = 1,10,100,1000\ninstances = 30\nsamples = 30\nseed = 1\n"},
    {"nd-population", exp_nd_population,
     "n = 10\nk = 0\nm = 2..20\nmu = 1,10,100,1000\ninstances = 30\nsamples = 30\nseed = 1\n"},
    {"heterogeneity", exp_heterogeneity, "models = beta(2,8);beta(8,2);beta(5,5);uniform(1,50)\nm = 2..25\nreps = 100\nseed = 1\n"},
    {"distances", exp_distances, "n = 10\nk = 0\nm = 2..20\ninstances = 30\npairs = 30\nseed = 1\n"},
    {"archive-bench", exp_archive_bench,
     "n = 16\nk = 0\nm = 3,20\ninstances = 30\nheavy_m = 10\nheavy_instances = 3\nbackends = list,ndtree,quadtree\nseed = 1\n"},
    {"hv-study", exp_hv_study,
     "kinds = linear,concave,convex\nm_sweep = 4,6,8,10\nm_sweep_points = 100\nn_sweep = 200,400,600,800,1000\n"
     "n_sweep_m = 8\ncontrib_m = 4\ncontrib_max_m = 6\nreps = 3\ntarget_scale = 5\nconfidence = 0.95\n"
     "mc_batch = 100\nmax_samples = 100000000\nexact_cap = 300\nseed = 1\n"},
    {"weight-distances", exp_weight_distances, "m = 2..20\nt = 1.0,0.2,0.1\npairs = 900\nmin_count = 100\nseed = 1\n"},
};

const Entry& find_experiment(std::string_view name) {
  for (const auto& e : kExperiments) {
    if (name == e.name) return e;
  }
  throw DomainError("unknown experiment '" + std::string(name) + "'");
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : kExperiments) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

std::string default_config(std::string_view name) { return find_experiment(name).defaults; }

ExperimentResult run_experiment(std::string_view name, const Config& config, const ExperimentOptions& options) {
  return find_experiment(name).run(config, options);
}

LatencyModel LatencyModel::parse(std::string_view spec) {
  const std::string s(spec);
  const auto open = s.find('(');
  const auto comma = s.find(',');
  const auto close = s.find(')');
  if (open == std::string::npos || comma == std::string::npos || close == std::string::npos || !(open < comma) ||
      !(comma < close) || close + 1 != s.size()) {
    throw FormatError("latency model must look like beta(a,b) or uniform(lo,hi), got '" + s + "'");
  }
  const std::string kind = s.substr(0, open);
  const auto args = parse_double_list(s.substr(open + 1, close - open - 1));
  if (args.size() != 2) throw FormatError("latency model takes two parameters: '" + s + "'");
  LatencyModel model;
  model.p_ = args[0];
  model.q_ = args[1];
  if (kind == "beta") {
    model.kind_ = Kind::Beta;
    if (!(model.p_ > 0.0 && model.q_ > 0.0)) throw DomainError("beta parameters must be positive");
  } else if (kind == "uniform") {
    model.kind_ = Kind::Uniform;
    if (!(model.p_ < model.q_)) throw DomainError("uniform needs lo < hi");
  } else {
    throw FormatError("unknown latency model '" + kind + "'");
  }
  return model;
}

std::string LatencyModel::name() const {
  auto g = [](double v) {
    std::ostringstream s;
    s << v;
    return s.str();
  };
  return std::string(kind_ == Kind::Beta ? "beta(" : "uniform(") + g(p_) + "," + g(q_) + ")";
}

double LatencyModel::sample(Rng& rng) const {
  if (kind_ == Kind::Uniform) return rng.uniform(p_, q_);
  std::gamma_distribution<double> x(p_, 1.0);
  std::gamma_distribution<double> y(q_, 1.0);
  const double a = x(rng);
  const double b = y(rng);
  return a / (a + b);
}

LatencySpread latency_spread(std::vector<double> durations) {
  if (durations.size() < 2) throw DomainError("need at least two durations");
  std::sort(durations.begin(), durations.end());
  double min_gap = durations[1] - durations[0];
  for (std::size_t i = 2; i < durations.size(); ++i) min_gap = std::min(min_gap, durations[i] - durations[i - 1]);
  return {min_gap, durations.back() - durations.front()};
}

}  // namespace paretolab
