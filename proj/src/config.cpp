#include "paretolab/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "paretolab/error.hpp"

namespace paretolab {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_number(std::string_view text) {
  const std::string t = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw FormatError("malformed number '" + t + "'");
  }
  return value;
}

}  // namespace

Config Config::parse(std::string_view text) {
  Config cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw FormatError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) throw FormatError("config line " + std::to_string(lineno) + ": empty key");
    if (cfg.has(key)) throw FormatError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    cfg.values_[key] = trim(std::string_view(t).substr(eq + 1));
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void Config::set(const std::string& key, std::string value) { values_[key] = std::move(value); }

const std::string& Config::lookup(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  const std::string& v = it == values_.end() ? fallback : it->second;
  used_[key] = v;
  return used_[key];
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return lookup(key, fallback);
}

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback) const {
  try {
    return parse_number<std::int64_t>(lookup(key, std::to_string(fallback)));
  } catch (const FormatError& e) {
    throw FormatError("key '" + key + "': " + e.what());
  }
}

std::uint64_t Config::get_uint(const std::string& key, std::uint64_t fallback) const {
  try {
    return parse_number<std::uint64_t>(lookup(key, std::to_string(fallback)));
  } catch (const FormatError& e) {
    throw FormatError("key '" + key + "': " + e.what());
  }
}

double Config::get_double(const std::string& key, double fallback) const {
  std::ostringstream f;
  f.precision(17);
  f << fallback;
  try {
    return parse_number<double>(lookup(key, f.str()));
  } catch (const FormatError& e) {
    throw FormatError("key '" + key + "': " + e.what());
  }
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const std::string& v = lookup(key, fallback ? "true" : "false");
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw FormatError("key '" + key + "': expected true or false, got '" + v + "'");
}

std::vector<std::int64_t> Config::get_int_list(const std::string& key, const std::string& fallback) const {
  try {
    return parse_int_list(lookup(key, fallback));
  } catch (const FormatError& e) {
    throw FormatError("key '" + key + "': " + e.what());
  }
}

std::vector<double> Config::get_double_list(const std::string& key, const std::string& fallback) const {
  try {
    return parse_double_list(lookup(key, fallback));
  } catch (const FormatError& e) {
    throw FormatError("key '" + key + "': " + e.what());
  }
}

std::vector<std::string> Config::get_string_list(const std::string& key, const std::string& fallback,
                                                 char separator) const {
  auto items = split(lookup(key, fallback), separator);
  for (const auto& item : items) {
    if (item.empty()) throw FormatError("key '" + key + "': empty list item");
  }
  return items;
}

void Config::require_all_used() const {
  for (const auto& [key, value] : values_) {
    if (!used_.count(key)) throw DomainError("unknown config key '" + key + "'");
  }
}

std::string Config::resolved() const {
  std::string out;
  for (const auto& [key, value] : used_) out += key + "=" + value + "\n";
  return out;
}

std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  for (const auto& item : split(text, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_number<std::int64_t>(item));
      continue;
    }
    const auto lo = parse_number<std::int64_t>(std::string_view(item).substr(0, dots));
    const auto hi = parse_number<std::int64_t>(std::string_view(item).substr(dots + 2));
    if (hi < lo) throw FormatError("empty range '" + item + "'");
    for (auto v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_number<double>(item));
  return out;
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace paretolab
