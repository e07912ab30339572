#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "paretolab/dominance.hpp"

namespace paretolab {

/// Binary decision vector x_1..x_n. As an integer index, x_1 is the most
/// significant bit, so index order equals lexicographic order of the bit string.
class Solution {
 public:
  explicit Solution(std::vector<std::uint8_t> bits);
  static Solution from_string(std::string_view bits);
  static Solution from_index(std::uint64_t index, int n);

  int size() const noexcept { return static_cast<int>(bits_.size()); }
  std::uint8_t operator[](std::size_t j) const noexcept { return bits_[j]; }
  std::uint64_t index() const noexcept;
  std::string to_string() const;

  friend bool operator==(const Solution&, const Solution&) = default;
  friend bool operator<(const Solution& a, const Solution& b) noexcept { return a.bits_ < b.bits_; }

 private:
  std::vector<std::uint8_t> bits_;
};

int hamming_distance(const Solution& a, const Solution& b);

/// Multi-objective NK-landscape under the random neighborhood model.
///
/// Stream layout (the reproducibility contract): links of variable j come
/// from derive_stream(seed, {1, j}) by partial Fisher-Yates over the other
/// n-1 indices in ascending order; the 2^(k+1) contributions of objective i,
/// variable j come from derive_stream(seed, {2, i, j}). The contribution
/// pattern of variable j is x_j + 2*x_{links[j][0]} + 4*x_{links[j][1]} + ...
class NkInstance {
 public:
  static constexpr int kMaxEnumerationBits = 24;

  NkInstance(int n, int k, int m, std::uint64_t seed, std::vector<std::vector<int>> links,
             std::vector<double> tables);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  int m() const noexcept { return m_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<std::vector<int>>& links() const noexcept { return links_; }
  std::size_t patterns() const noexcept { return std::size_t{1} << (k_ + 1); }
  double contribution(int objective, int variable, std::size_t pattern) const noexcept {
    return tables_[(static_cast<std::size_t>(objective) * n_ + variable) * patterns() + pattern];
  }
  const std::vector<double>& tables() const noexcept { return tables_; }

  ObjectiveVector evaluate(const Solution& x) const;
  /// Evaluates solution `index` into out[0..m).
  void evaluate_index(std::uint64_t index, double* out) const noexcept;

  friend bool operator==(const NkInstance&, const NkInstance&) = default;

 private:
  int n_;
  int k_;
  int m_;
  std::uint64_t seed_;
  std::vector<std::vector<int>> links_;
  std::vector<double> tables_;
};

NkInstance generate_instance(int n, int k, int m, std::uint64_t seed);

/// Objective vectors of all 2^n solutions, row-major (index * m + i).
std::vector<double> evaluate_all(const NkInstance& inst);
std::vector<double> evaluate_all_serial(const NkInstance& inst);

struct ParetoMember {
  Solution solution;
  ObjectiveVector objectives;
};

std::vector<ParetoMember> enumerate_pareto_set(const NkInstance& inst);
double proportion_pareto_optimal(const NkInstance& inst);

void save_instance(const NkInstance& inst, const std::filesystem::path& path);
NkInstance load_instance(const std::filesystem::path& path);
std::string serialize_instance(const NkInstance& inst);
NkInstance parse_instance(std::string_view text);

}  // namespace paretolab
