#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace l2s {

/// Flat `key = value` configuration with dotted section prefixes:
///
///     # comment
///     benchmark.name = labs
///     benchmark.n    = 13
///     experiment.seeds = 0, 1, 2
///
/// Keys are case-sensitive; later assignments override earlier ones. Every key
/// read through a getter is marked as used so callers can reject typos.
class Config {
 public:
  static Config parse(std::istream& in, const std::string& source = "<config>");
  static Config parse_string(const std::string& text);
  static Config load(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::size_t get_size(const std::string& key, std::size_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<std::string> get_list(const std::string& key) const;
  /// Comma-separated integers; "a..b" expands to the inclusive range.
  std::vector<std::uint64_t> get_u64_list(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }
  /// Keys never read through a getter.
  std::vector<std::string> unused_keys() const;

  /// Sorted `key = value` lines; the hash input.
  std::string canonical() const;
  /// 64-bit FNV-1a of canonical().
  std::uint64_t hash() const;
  std::string hash_hex() const;

 private:
  const std::string* find(const std::string& key) const;

  std::map<std::string, std::string> entries_;
  mutable std::set<std::string> used_;
};

}  // namespace l2s
