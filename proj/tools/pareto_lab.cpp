#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <omp.h>

#include "paretolab/archive.hpp"
#include "paretolab/config.hpp"
#include "paretolab/error.hpp"
#include "paretolab/experiments.hpp"
#include "paretolab/hypervolume.hpp"
#include "paretolab/landscape.hpp"
#include "paretolab/rng.hpp"
#include "paretolab/scalarization.hpp"
#include "paretolab/weights.hpp"

using namespace paretolab;

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> parse_list(const std::string& text) {
  const auto v = parse_vector(text);
  return {v.begin(), v.end()};
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

// Statuses a subcommand handler can report back to main.
constexpr int kOk = 0;
constexpr int kCheckFailed = 1;

struct GenerateArgs {
  int n = 10;
  int k = 0;
  int m = 2;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  const auto inst = generate_instance(a.n, a.k, a.m, a.seed);
  std::cerr << "seed " << a.seed << "\n";
  write_text(a.out, serialize_instance(inst));
  return kOk;
}

struct EvaluateArgs {
  std::string instance;
  std::string bits;
  std::int64_t index = -1;
  bool all = false;
};

int run_evaluate(const EvaluateArgs& a) {
  const auto inst = load_instance(a.instance);
  if (a.all) {
    if (inst.n() > NkInstance::kMaxEnumerationBits) throw CapacityError("--all needs n <= 24");
    const auto f = evaluate_all(inst);
    const std::uint64_t count = std::uint64_t{1} << inst.n();
    for (std::uint64_t x = 0; x < count; ++x) {
      std::cout << Solution::from_index(x, inst.n()).to_string();
      for (int i = 0; i < inst.m(); ++i) std::cout << ',' << fmt(f[x * inst.m() + i]);
      std::cout << '\n';
    }
    return kOk;
  }
  if (a.bits.empty() == (a.index < 0)) throw DomainError("give exactly one of --bits, --index or --all");
  const Solution x = a.bits.empty() ? Solution::from_index(static_cast<std::uint64_t>(a.index), inst.n())
                                    : Solution::from_string(a.bits);
  if (x.size() != inst.n()) throw DimensionError("solution length differs from the instance's n");
  std::cout << inst.evaluate(x).to_string() << '\n';
  return kOk;
}

struct ParetoArgs {
  std::string instance;
  bool list = false;
};

int run_pareto(const ParetoArgs& a) {
  const auto inst = load_instance(a.instance);
  const auto set = enumerate_pareto_set(inst);
  std::cout << "count " << set.size() << "\n";
  std::cout << "proportion " << fmt(static_cast<double>(set.size()) / static_cast<double>(std::uint64_t{1} << inst.n()))
            << "\n";
  if (a.list) {
    for (const auto& member : set) std::cout << member.solution.to_string() << ',' << member.objectives.to_string() << '\n';
  }
  return kOk;
}

struct ArchiveArgs {
  std::string instance;
  std::vector<std::string> backends{"list", "ndtree", "quadtree"};
  std::string order = "random";
  std::uint64_t seed = kDefaultSeed;
};

int run_archive_bench(const ArchiveArgs& a) {
  const auto inst = load_instance(a.instance);
  if (inst.n() > NkInstance::kMaxEnumerationBits) throw CapacityError("archive-bench streams all 2^n solutions; n <= 24");
  const auto f = evaluate_all(inst);
  std::vector<std::uint64_t> order(std::size_t{1} << inst.n());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (a.order == "random") {
    Rng rng(derive_stream(a.seed, {0x6f726465u}));
    for (std::size_t j = order.size() - 1; j > 0; --j) std::swap(order[j], order[rng.below(j + 1)]);
  } else if (a.order != "sequential") {
    throw DomainError("--order must be random or sequential");
  }
  std::cerr << "seed " << a.seed << "\n";
  std::cout << "backend,size,comparisons\n";
  std::vector<std::vector<ObjectiveVector>> snapshots;
  const int m = inst.m();
  for (const auto& name : a.backends) {
    ParetoArchive archive(parse_backend(name), static_cast<std::size_t>(m));
    for (auto x : order) archive.update(ObjectiveVector(std::vector<double>(&f[x * m], &f[x * m] + m)), x);
    std::cout << to_string(archive.backend()) << ',' << archive.size() << ',' << archive.comparison_count() << '\n';
    snapshots.push_back(archive.snapshot());
  }
  for (std::size_t i = 1; i < snapshots.size(); ++i) {
    if (snapshots[i] != snapshots[0]) {
      std::cerr << "backends disagree on the final archive\n";
      return kCheckFailed;
    }
  }
  return kOk;
}

struct HvArgs {
  std::string points;
  std::string ref;
  bool contributions = false;
  std::size_t cap = 300;
};

HvProblem load_problem(const std::string& points, const std::string& ref) {
  HvProblem p{parse_points(read_file(points)), parse_vector(ref)};
  for (const auto& q : p.points) require_same_dimension(q.values(), p.reference.values());
  return p;
}

int run_hv(const HvArgs& a) {
  const auto problem = load_problem(a.points, a.ref);
  HvExactOptions opts;
  opts.cap = a.cap;
  std::cout << fmt(hv_exact(problem, opts).value) << '\n';
  if (a.contributions) {
    for (double c : hv_contributions(problem, opts)) std::cout << fmt(c) << '\n';
  }
  return kOk;
}

struct HvMcArgs {
  std::string points;
  std::string ref;
  MonteCarloOptions mc;
};

int run_hv_mc(const HvMcArgs& a) {
  const auto problem = load_problem(a.points, a.ref);
  std::cerr << "seed " << a.mc.seed << "\n";
  const auto est = hv_monte_carlo(problem, a.mc);
  std::cout << "value " << fmt(est.value) << '\n';
  if (est.interval) {
    std::cout << "lo " << fmt(est.interval->lo) << '\n';
    std::cout << "hi " << fmt(est.interval->hi) << '\n';
  }
  std::cout << "samples " << est.samples << '\n';
  std::cout << "exact " << (est.exact ? "true" : "false") << '\n';
  return kOk;
}

struct ScalarizeArgs {
  std::string instance;
  std::string functional;
  std::string weights;
  std::string ref;
  std::string eps;
  std::size_t j = 0;
  std::string k;
  std::string rows;
  std::string sense = "min";
};

std::vector<double> require(const std::string& text, const char* flag, std::size_t m) {
  if (text.empty()) throw DomainError(std::string("missing ") + flag);
  auto v = parse_list(text);
  if (v.size() != m) throw DimensionError(std::string(flag) + " needs " + std::to_string(m) + " values");
  return v;
}

PolyhedralSet load_rows(const std::string& path, std::size_t m) {
  std::vector<HalfSpace> rows;
  for (const auto& line : parse_points(read_file(path))) {
    if (line.size() != m + 1) throw FormatError("each row needs m coefficients followed by alpha");
    rows.push_back({std::vector<double>(line.begin(), line.end() - 1), line[m]});
  }
  return PolyhedralSet(std::move(rows));
}

int run_scalarize(const ScalarizeArgs& a) {
  const auto inst = load_instance(a.instance);
  const auto m = static_cast<std::size_t>(inst.m());
  Functional fn;
  if (a.functional == "chebyshev") {
    const auto lambda = require(a.weights, "--weights", m);
    const auto w = a.ref.empty() ? std::vector<double>(m, 0.0) : require(a.ref, "--ref", m);
    fn = [lambda, w](std::span<const double> y) { return chebyshev(y, lambda, w); };
    chebyshev(w, lambda, w);
  } else if (a.functional == "wsum") {
    const auto weights = require(a.weights, "--weights", m);
    fn = [weights](std::span<const double> y) { return weighted_sum(y, weights); };
    weighted_sum(weights, weights);
  } else if (a.functional == "eps") {
    if (a.j >= m) throw DomainError("--j out of range");
    const auto eps = require(a.eps, "--eps", m - 1);
    const std::size_t j = a.j;
    fn = [eps, j](std::span<const double> y) {
      const auto v = epsilon_constraint(y, j, eps);
      return v ? *v : std::numeric_limits<double>::infinity();
    };
  } else if (a.functional == "ps") {
    const auto ref = require(a.ref, "--ref", m);
    const auto k = require(a.k, "--k", m);
    pascoletti_serafini(ref, ref, k);
    fn = [ref, k](std::span<const double> y) { return pascoletti_serafini(y, ref, k); };
  } else if (a.functional == "general") {
    if (a.rows.empty()) throw DomainError("missing --rows");
    const auto w = a.ref.empty() ? std::vector<double>(m, 0.0) : require(a.ref, "--ref", m);
    const auto k = require(a.k, "--k", m);
    const GeneralScalarizer s(load_rows(a.rows, m), w, k);
    fn = [s](std::span<const double> y) { return phi_general(s, y); };
  } else {
    throw DomainError("unknown functional '" + a.functional + "'");
  }
  Sense sense;
  if (a.sense == "min") {
    sense = Sense::Minimize;
  } else if (a.sense == "max") {
    sense = Sense::Maximize;
  } else {
    throw DomainError("--sense must be min or max");
  }
  const auto best = scalarize_landscape(inst, fn, sense);
  std::cout << "solution " << best.solution.to_string() << '\n';
  std::cout << "objectives " << best.objectives.to_string() << '\n';
  std::cout << "value " << fmt(best.value) << '\n';
  return kOk;
}

struct WeightsArgs {
  int m = 2;
  int h = 0;
  std::uint64_t min_count = 0;
  std::string out;
  std::int64_t neighborhood = -1;
  double t = 0.1;
};

int run_weights(const WeightsArgs& a) {
  if ((a.h > 0) == (a.min_count > 0)) throw DomainError("give exactly one of --H or --min-count");
  const int h = a.h > 0 ? a.h : smallest_h(a.m, a.min_count);
  const auto set = simplex_lattice(a.m, h);
  std::cerr << "H " << h << " mu " << set.size() << "\n";
  std::string text;
  if (a.neighborhood >= 0) {
    for (auto i : neighborhood(set, static_cast<std::size_t>(a.neighborhood), a.t)) text += std::to_string(i) + "\n";
  } else {
    for (const auto& v : set.vectors) {
      for (std::size_t i = 0; i < v.size(); ++i) text += (i ? "," : "") + fmt(v[i]);
      text += "\n";
    }
  }
  write_text(a.out, text);
  return kOk;
}

struct ExperimentArgs {
  std::string name;
  std::string config;
  std::string out = ".";
  std::vector<std::string> overrides;
  bool check = false;
  bool timing = false;
  bool print_config = false;
};

int run_experiment_cmd(const ExperimentArgs& a, int jobs) {
  if (a.print_config) {
    std::cout << default_config(a.name);
    return kOk;
  }
  Config cfg = a.config.empty() ? Config{} : Config::load(a.config);
  for (const auto& kv : a.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw DomainError("--set expects key=value, got '" + kv + "'");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  ExperimentOptions opts;
  opts.jobs = jobs;
  opts.timing = a.timing;
  const auto result = run_experiment(a.name, cfg, opts);
  std::filesystem::create_directories(a.out);
  const auto path = std::filesystem::path(a.out) / (a.name + ".csv");
  write_text(path.string(), result.csv);
  std::cerr << "wrote " << path.string() << "\n";
  for (const auto& c : result.checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
    std::cout << '\n';
  }
  return a.check && !result.all_passed() ? kCheckFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pareto-lab: many-objective dominance, archives, hypervolume, scalarization and experiments"};
  app.set_version_flag("--version", "pareto-lab " PARETOLAB_VERSION);
  app.require_subcommand(1);
  int jobs = 0;
  app.add_option("--jobs", jobs, "Worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate an NK-landscape instance file");
  generate->add_option("--n", gen.n, "Number of variables")->required();
  generate->add_option("--k", gen.k, "Epistasis degree")->required();
  generate->add_option("--m", gen.m, "Number of objectives")->required();
  generate->add_option("--seed", gen.seed, "Instance seed")->capture_default_str();
  generate->add_option("--out", gen.out, "Output file (stdout if omitted)");

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate solutions of an instance");
  evaluate->add_option("--instance", ev.instance, "Instance file")->required();
  evaluate->add_option("--bits", ev.bits, "Solution as a bit string, x_1 first");
  evaluate->add_option("--index", ev.index, "Solution index (x_1 is the most significant bit)");
  evaluate->add_flag("--all", ev.all, "Evaluate all 2^n solutions");

  ParetoArgs pa;
  auto* pareto = app.add_subcommand("pareto", "Enumerate the Pareto set of an instance");
  pareto->add_option("--instance", pa.instance, "Instance file")->required();
  pareto->add_flag("--list", pa.list, "Print every Pareto optimal solution");

  ArchiveArgs ar;
  auto* archive = app.add_subcommand("archive-bench", "Stream all solutions of an instance through archive backends");
  archive->add_option("--instance", ar.instance, "Instance file")->required();
  archive->add_option("--backend", ar.backends, "list, ndtree, quadtree (repeatable)")->capture_default_str();
  archive->add_option("--order", ar.order, "random or sequential")->capture_default_str();
  archive->add_option("--seed", ar.seed, "Seed of the random order")->capture_default_str();

  HvArgs hv;
  auto* hvc = app.add_subcommand("hv", "Exact hypervolume of a point file");
  hvc->add_option("--points", hv.points, "One comma-separated vector per line")->required();
  hvc->add_option("--ref", hv.ref, "Reference point, e.g. 0,0")->required();
  hvc->add_flag("--contributions", hv.contributions, "Also print the contribution of every point");
  hvc->add_option("--cap", hv.cap, "Largest point count for m >= 7")->capture_default_str();

  HvMcArgs mc;
  auto* hvmc = app.add_subcommand("hv-mc", "Monte-Carlo hypervolume with a Wilson stopping rule");
  hvmc->add_option("--points", mc.points, "One comma-separated vector per line")->required();
  hvmc->add_option("--ref", mc.ref, "Reference point")->required();
  hvmc->add_option("--target-width", mc.mc.target_width, "Stop when the interval is this narrow")->capture_default_str();
  hvmc->add_option("--confidence", mc.mc.confidence, "0.90, 0.95 or 0.99")->capture_default_str();
  hvmc->add_option("--seed", mc.mc.seed, "Sampling seed")->capture_default_str();
  hvmc->add_option("--max-samples", mc.mc.max_samples, "Sample budget")->capture_default_str();
  hvmc->add_option("--batch", mc.mc.batch, "Samples between interval checks")->capture_default_str();

  ScalarizeArgs sc;
  auto* scal = app.add_subcommand("scalarize", "Optimize a scalarizing functional over all solutions");
  scal->add_option("--instance", sc.instance, "Instance file")->required();
  scal->add_option("--functional", sc.functional, "chebyshev, wsum, eps, ps or general")->required();
  scal->add_option("--weights", sc.weights, "Weights for chebyshev and wsum");
  scal->add_option("--ref", sc.ref, "Reference point (w for chebyshev/general, a for ps)");
  scal->add_option("--eps", sc.eps, "The m-1 bounds for eps");
  scal->add_option("--j", sc.j, "Objective kept by eps (0-based)");
  scal->add_option("--k", sc.k, "Direction for ps and general");
  scal->add_option("--rows", sc.rows, "File of rows a_1,...,a_m,alpha for general");
  scal->add_option("--sense", sc.sense, "min: minimize over -f(x); max: maximize over f(x)")->capture_default_str();

  WeightsArgs wa;
  auto* weights = app.add_subcommand("weights", "Simplex-lattice weight vectors");
  weights->add_option("--m", wa.m, "Number of objectives")->required();
  weights->add_option("--H", wa.h, "Lattice granularity");
  weights->add_option("--min-count", wa.min_count, "Use the smallest H giving at least this many vectors");
  weights->add_option("--out", wa.out, "Output file (stdout if omitted)");
  weights->add_option("--neighborhood", wa.neighborhood, "Print the T-neighborhood of this vector index instead");
  weights->add_option("--t", wa.t, "Neighborhood fraction in (0, 1]")->capture_default_str();

  ExperimentArgs ex;
  auto* experiment = app.add_subcommand("experiment", "Run one of the study harnesses and write <out>/<name>.csv");
  experiment->add_option("name", ex.name, "Experiment name")->required()->check(CLI::IsMember(experiment_names()));
  experiment->add_option("--config", ex.config, "key = value config file");
  experiment->add_option("--out", ex.out, "Output directory")->capture_default_str();
  experiment->add_option("--set", ex.overrides, "Override a config key: key=value (repeatable)");
  experiment->add_flag("--check", ex.check, "Exit 1 if any reference bound fails");
  experiment->add_flag("--timing", ex.timing, "Record wall time in elapsed_ns columns");
  experiment->add_flag("--print-config", ex.print_config, "Print the default config and exit");

  try {
    app.parse(argc, argv);
    if (jobs > 0) omp_set_num_threads(jobs);
    if (generate->parsed()) return run_generate(gen);
    else if (evaluate->parsed()) return run_evaluate(ev);
    else if (pareto->parsed()) return run_pareto(pa);
    else if (archive->parsed()) return run_archive_bench(ar);
    else if (hvc->parsed()) return run_hv(hv);
    else if (hvmc->parsed()) return run_hv_mc(mc);
    else if (scal->parsed()) return run_scalarize(sc);
    else if (weights->parsed()) return run_weights(wa);
    else if (experiment->parsed()) return run_experiment_cmd(ex, jobs);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
