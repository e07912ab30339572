#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "paretolab/hypervolume.hpp"
#include "paretolab/landscape.hpp"

namespace fs = std::filesystem;
using namespace paretolab;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(PARETO_LAB_EXE) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "paretolab_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("version and usage errors") {
  const auto v = run("--version");
  CHECK(v.status == 0);
  CHECK(v.out.rfind("pareto-lab ", 0) == 0);
  CHECK(run("--help").status == 0);
  CHECK(run("--no-such-flag").status == 2);
  CHECK(run("generate --n 10").status == 2);
  CHECK(run("experiment no-such-experiment").status == 2);
}

TEST_CASE("generate then pareto matches the library") {
  const auto file = scratch() / "inst.nk";
  const auto g = run("generate --n 10 --k 1 --m 3 --seed 5 --out " + file.string());
  REQUIRE(g.status == 0);
  const auto inst = load_instance(file);
  CHECK(inst == generate_instance(10, 1, 3, 5));

  const auto p = run("pareto --instance " + file.string());
  CHECK(p.status == 0);
  const auto count = enumerate_pareto_set(inst).size();
  CHECK(p.out.find("count " + std::to_string(count) + "\n") != std::string::npos);

  const auto e = run("evaluate --instance " + file.string() + " --bits 1010101010");
  CHECK(e.status == 0);
  CHECK(e.out == inst.evaluate(Solution::from_string("1010101010")).to_string() + "\n");

  const auto bench = run("archive-bench --instance " + file.string());
  CHECK(bench.status == 0);
  CHECK(bench.out.rfind("backend,size,comparisons\n", 0) == 0);

  const auto sc = run("scalarize --instance " + file.string() + " --functional wsum --weights 1,1,1");
  CHECK(sc.status == 0);
  CHECK(sc.out.rfind("solution ", 0) == 0);
  CHECK(run("scalarize --instance " + file.string() + " --functional chebyshev --weights 1,0,1 --ref 0,0,0").status == 2);

  CHECK(run("pareto --instance " + (scratch() / "missing.nk").string()).status == 2);
}

TEST_CASE("hypervolume commands") {
  const auto pts = scratch() / "two.txt";
  std::ofstream(pts) << "0.5,1\n1,0.5\n";
  const auto hv = run("hv --points " + pts.string() + " --ref 0,0");
  CHECK(hv.status == 0);
  CHECK(hv.out == "0.75\n");

  const auto c = run("hv --points " + pts.string() + " --ref 0,0 --contributions");
  CHECK(c.out == "0.75\n0.25\n0.25\n");

  const auto mc = run("hv-mc --points " + pts.string() + " --ref 0,0 --target-width 0.02 --seed 3");
  CHECK(mc.status == 0);
  CHECK(mc.out.rfind("value ", 0) == 0);
  CHECK(mc.out.find("exact false") != std::string::npos);
  CHECK(run("--jobs 1 hv-mc --points " + pts.string() + " --ref 0,0 --target-width 0.02 --seed 3").out == mc.out);

  CHECK(run("hv --points " + pts.string() + " --ref 0,0,0").status == 2);
}

TEST_CASE("weights command") {
  const auto w = run("weights --m 2 --H 2");
  CHECK(w.status == 0);
  CHECK(std::count(w.out.begin(), w.out.end(), '\n') == 3);
  CHECK(run("weights --m 3 --min-count 100").out.size() > 0);
}

TEST_CASE("experiment command") {
  const auto dir = scratch() / "exp";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto r = run("experiment pareto-proportion --check --out " + dir.string());
  CHECK(r.status == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
  const auto csv = slurp(dir / "pareto-proportion.csv");
  CHECK(csv.rfind("# pareto-lab ", 0) == 0);

  const auto again = run("--jobs 2 experiment pareto-proportion --out " + dir.string());
  CHECK(again.status == 0);
  CHECK(slurp(dir / "pareto-proportion.csv") == csv);

  const auto cfg = run("experiment hv-study --print-config");
  CHECK(cfg.status == 0);
  CHECK(cfg.out.find("mc_batch = 100") != std::string::npos);

  CHECK(run("experiment pareto-proportion --set bogus=1 --out " + dir.string()).status == 2);
  CHECK(run("experiment pareto-proportion --set m=2 --set instances=2 --out " + dir.string()).status == 0);
}
