#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace paretolab {

/// Flat `key = value` configuration. Lines starting with '#' are comments.
/// List values are comma separated; integer lists also accept ranges "2..20".
///
/// Every lookup records the value actually used (given or defaulted), so
/// resolved() describes the effective configuration of a run.
class Config {
 public:
  Config() = default;
  static Config parse(std::string_view text);
  static Config load(const std::filesystem::path& path);

  void set(const std::string& key, std::string value);
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<std::int64_t> get_int_list(const std::string& key, const std::string& fallback) const;
  std::vector<double> get_double_list(const std::string& key, const std::string& fallback) const;
  std::vector<std::string> get_string_list(const std::string& key, const std::string& fallback,
                                           char separator = ',') const;

  /// Throws DomainError naming any given key that was never looked up.
  void require_all_used() const;

  /// Sorted `key=value` lines of every looked-up key.
  std::string resolved() const;

 private:
  const std::string& lookup(const std::string& key, const std::string& fallback) const;

  std::map<std::string, std::string> values_;
  mutable std::map<std::string, std::string> used_;
};

std::vector<std::int64_t> parse_int_list(std::string_view text);
std::vector<double> parse_double_list(std::string_view text);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view text);

}  // namespace paretolab
