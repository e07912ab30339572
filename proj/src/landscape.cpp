#include "paretolab/landscape.hpp"

#include <algorithm>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <cctype>

#include <omp.h>

#include "paretolab/error.hpp"
#include "paretolab/rng.hpp"

namespace paretolab {

namespace {

constexpr std::uint64_t kLinkStream = 1;
constexpr std::uint64_t kTableStream = 2;
constexpr const char* kMagic = "paretolab-nk";
constexpr int kFormatVersion = 1;

void validate_parameters(int n, int k, int m) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (k < 0 || k >= n) throw DomainError("k must satisfy 0 <= k < n");
  if (m < 1) throw DomainError("m must be >= 1");
  if (k + 1 >= 63) throw DomainError("k too large for contribution tables");
}

void require_enumerable(const NkInstance& inst) {
  if (inst.n() > NkInstance::kMaxEnumerationBits) {
    throw CapacityError("exhaustive enumeration limited to n <= " +
                        std::to_string(NkInstance::kMaxEnumerationBits));
  }
}

}  // namespace

Solution::Solution(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw DomainError("solution bits must be 0 or 1");
  }
}

Solution Solution::from_string(std::string_view bits) {
  std::vector<std::uint8_t> out;
  out.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw DomainError("bit string may only contain 0 and 1");
    out.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return Solution(std::move(out));
}

Solution Solution::from_index(std::uint64_t index, int n) {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out[j] = static_cast<std::uint8_t>((index >> (n - 1 - j)) & 1U);
  return Solution(std::move(out));
}

std::uint64_t Solution::index() const noexcept {
  std::uint64_t idx = 0;
  for (auto b : bits_) idx = (idx << 1) | b;
  return idx;
}

std::string Solution::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t j = 0; j < bits_.size(); ++j) s[j] = static_cast<char>('0' + bits_[j]);
  return s;
}

int hamming_distance(const Solution& a, const Solution& b) {
  if (a.size() != b.size()) throw DimensionError("solutions differ in length");
  int d = 0;
  for (int j = 0; j < a.size(); ++j) d += a[j] != b[j];
  return d;
}

NkInstance::NkInstance(int n, int k, int m, std::uint64_t seed, std::vector<std::vector<int>> links,
                       std::vector<double> tables)
    : n_(n), k_(k), m_(m), seed_(seed), links_(std::move(links)), tables_(std::move(tables)) {
  validate_parameters(n, k, m);
  if (links_.size() != static_cast<std::size_t>(n)) throw DomainError("need one link list per variable");
  for (int j = 0; j < n; ++j) {
    const auto& l = links_[j];
    if (l.size() != static_cast<std::size_t>(k)) throw DomainError("each variable needs exactly k links");
    for (std::size_t a = 0; a < l.size(); ++a) {
      if (l[a] < 0 || l[a] >= n || l[a] == j) throw DomainError("invalid epistatic link");
      for (std::size_t b = 0; b < a; ++b) {
        if (l[a] == l[b]) throw DomainError("duplicate epistatic link");
      }
    }
  }
  if (tables_.size() != static_cast<std::size_t>(m) * n * patterns()) {
    throw DomainError("contribution table has the wrong size");
  }
  for (double v : tables_) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("contribution values must lie in [0,1]");
  }
}

void NkInstance::evaluate_index(std::uint64_t index, double* out) const noexcept {
  const std::size_t p = patterns();
  for (int i = 0; i < m_; ++i) {
    const double* table = &tables_[static_cast<std::size_t>(i) * n_ * p];
    double sum = 0.0;
    for (int j = 0; j < n_; ++j) {
      std::size_t pattern = (index >> (n_ - 1 - j)) & 1U;
      for (int l = 0; l < k_; ++l) {
        pattern |= ((index >> (n_ - 1 - links_[j][l])) & 1U) << (l + 1);
      }
      sum += table[static_cast<std::size_t>(j) * p + pattern];
    }
    out[i] = sum / n_;
  }
}

ObjectiveVector NkInstance::evaluate(const Solution& x) const {
  if (x.size() != n_) {
    throw DimensionError("solution length " + std::to_string(x.size()) + " does not match n=" +
                         std::to_string(n_));
  }
  std::vector<double> f(static_cast<std::size_t>(m_));
  for (int i = 0; i < m_; ++i) {
    double sum = 0.0;
    for (int j = 0; j < n_; ++j) {
      std::size_t pattern = x[j];
      for (int l = 0; l < k_; ++l) pattern |= std::size_t{x[links_[j][l]]} << (l + 1);
      sum += contribution(i, j, pattern);
    }
    f[i] = sum / n_;
  }
  return ObjectiveVector(std::move(f));
}

NkInstance generate_instance(int n, int k, int m, std::uint64_t seed) {
  validate_parameters(n, k, m);
  std::vector<std::vector<int>> links(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    Rng rng(derive_stream(seed, {kLinkStream, static_cast<std::uint64_t>(j)}));
    std::vector<int> others;
    others.reserve(n - 1);
    for (int v = 0; v < n; ++v) {
      if (v != j) others.push_back(v);
    }
    for (int t = 0; t < k; ++t) {
      const auto r = t + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1 - t)));
      std::swap(others[t], others[r]);
    }
    links[j].assign(others.begin(), others.begin() + k);
  }

  const std::size_t p = std::size_t{1} << (k + 1);
  std::vector<double> tables(static_cast<std::size_t>(m) * n * p);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      Rng rng(derive_stream(seed, {kTableStream, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)}));
      double* row = &tables[(static_cast<std::size_t>(i) * n + j) * p];
      for (std::size_t q = 0; q < p; ++q) row[q] = rng.uniform();
    }
  }
  return NkInstance(n, k, m, seed, std::move(links), std::move(tables));
}

std::vector<double> evaluate_all_serial(const NkInstance& inst) {
  require_enumerable(inst);
  const std::uint64_t count = std::uint64_t{1} << inst.n();
  const auto m = static_cast<std::size_t>(inst.m());
  std::vector<double> rows(count * m);
  for (std::uint64_t s = 0; s < count; ++s) inst.evaluate_index(s, &rows[s * m]);
  return rows;
}

std::vector<double> evaluate_all(const NkInstance& inst) {
  require_enumerable(inst);
  const auto count = static_cast<std::int64_t>(std::int64_t{1} << inst.n());
  const auto m = static_cast<std::size_t>(inst.m());
  std::vector<double> rows(static_cast<std::size_t>(count) * m);
#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < count; ++s) {
    inst.evaluate_index(static_cast<std::uint64_t>(s), &rows[static_cast<std::size_t>(s) * m]);
  }
  return rows;
}

std::vector<ParetoMember> enumerate_pareto_set(const NkInstance& inst) {
  const auto rows = evaluate_all(inst);
  const auto m = static_cast<std::size_t>(inst.m());
  const auto mask = nondominated_mask(rows, m);
  std::vector<ParetoMember> out;
  for (std::size_t s = 0; s < mask.size(); ++s) {
    if (!mask[s]) continue;
    out.push_back({Solution::from_index(s, inst.n()),
                   ObjectiveVector(std::vector<double>(&rows[s * m], &rows[s * m] + m))});
  }
  return out;
}

double proportion_pareto_optimal(const NkInstance& inst) {
  const auto rows = evaluate_all(inst);
  const auto mask = nondominated_mask(rows, static_cast<std::size_t>(inst.m()));
  const auto kept = std::count(mask.begin(), mask.end(), std::uint8_t{1});
  return static_cast<double>(kept) / static_cast<double>(mask.size());
}

std::string serialize_instance(const NkInstance& inst) {
  std::string out;
  char buf[64];
  out += kMagic;
  out += ' ' + std::to_string(kFormatVersion) + '\n';
  out += "n " + std::to_string(inst.n()) + '\n';
  out += "k " + std::to_string(inst.k()) + '\n';
  out += "m " + std::to_string(inst.m()) + '\n';
  std::snprintf(buf, sizeof buf, "seed %" PRIu64 "\n", inst.seed());
  out += buf;
  out += "links\n";
  for (const auto& l : inst.links()) {
    for (std::size_t a = 0; a < l.size(); ++a) {
      if (a) out += ' ';
      out += std::to_string(l[a]);
    }
    out += '\n';
  }
  out += "tables\n";
  const std::size_t p = inst.patterns();
  const auto& t = inst.tables();
  for (std::size_t row = 0; row < t.size() / p; ++row) {
    for (std::size_t q = 0; q < p; ++q) {
      std::snprintf(buf, sizeof buf, "%.17g", t[row * p + q]);
      if (q) out += ' ';
      out += buf;
    }
    out += '\n';
  }
  out += "end\n";
  return out;
}

namespace {

class TokenReader {
 public:
  explicit TokenReader(std::string_view text) : text_(text) {}

  std::string_view next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ >= text_.size()) throw FormatError("instance file truncated");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  void expect(std::string_view word) {
    const auto tok = next();
    if (tok != word) throw FormatError("expected '" + std::string(word) + "', found '" + std::string(tok) + "'");
  }

  template <class T>
  T number() {
    const auto tok = next();
    T value{};
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw FormatError("malformed number '" + std::string(tok) + "'");
    }
    return value;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

NkInstance parse_instance(std::string_view text) {
  TokenReader in(text);
  in.expect(kMagic);
  if (in.number<int>() != kFormatVersion) throw FormatError("unsupported instance format version");
  in.expect("n");
  const int n = in.number<int>();
  in.expect("k");
  const int k = in.number<int>();
  in.expect("m");
  const int m = in.number<int>();
  in.expect("seed");
  const auto seed = in.number<std::uint64_t>();
  validate_parameters(n, k, m);

  in.expect("links");
  std::vector<std::vector<int>> links(static_cast<std::size_t>(n));
  for (auto& l : links) {
    l.resize(static_cast<std::size_t>(k));
    for (auto& v : l) v = in.number<int>();
  }
  in.expect("tables");
  std::vector<double> tables(static_cast<std::size_t>(m) * n * (std::size_t{1} << (k + 1)));
  for (auto& v : tables) v = in.number<double>();
  in.expect("end");
  return NkInstance(n, k, m, seed, std::move(links), std::move(tables));
}

void save_instance(const NkInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << serialize_instance(inst);
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

NkInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

}  // namespace paretolab
