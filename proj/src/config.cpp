#include "l2s/config.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "l2s/errors.hpp"
#include "l2s/text.hpp"

namespace l2s {
namespace {

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ConfigError("config key '" + key + "': cannot parse '" + text + "' as a number");
  return value;
}

}  // namespace

Config Config::parse(std::istream& in, const std::string& source) {
  Config config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    if (key.empty()) throw ConfigError(source + ":" + std::to_string(line_no) + ": empty key");
    config.entries_[key] = trim(std::string_view(body).substr(eq + 1));
  }
  return config;
}

Config Config::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse(in, path.string());
}

void Config::set(const std::string& key, const std::string& value) { entries_[key] = value; }

bool Config::has(const std::string& key) const { return entries_.contains(key); }

const std::string* Config::find(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return nullptr;
  used_.insert(key);
  return &it->second;
}

std::string Config::get_string(const std::string& key) const {
  if (const auto* v = find(key)) return *v;
  throw ConfigError("missing required config key '" + key + "'");
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  if (const auto* v = find(key)) return *v;
  return fallback;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto* v = find(key);
  if (!v) return fallback;
  // from_chars for double is available in libstdc++ 11.
  return parse_number<double>(key, *v);
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
  const auto* v = find(key);
  return v ? parse_number<std::uint64_t>(key, *v) : fallback;
}

std::size_t Config::get_size(const std::string& key, std::size_t fallback) const {
  const auto* v = find(key);
  return v ? parse_number<std::size_t>(key, *v) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto* v = find(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
  if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
  throw ConfigError("config key '" + key + "': expected a boolean, got '" + *v + "'");
}

std::vector<std::string> Config::get_list(const std::string& key) const {
  const auto* v = find(key);
  if (!v || v->empty()) return {};
  auto items = split(*v, ',');
  for (const auto& item : items)
    if (item.empty()) throw ConfigError("config key '" + key + "': empty list element");
  return items;
}

std::vector<std::uint64_t> Config::get_u64_list(const std::string& key) const {
  std::vector<std::uint64_t> out;
  for (const auto& item : get_list(key)) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_number<std::uint64_t>(key, item));
      continue;
    }
    const auto lo = parse_number<std::uint64_t>(key, trim(item.substr(0, dots)));
    const auto hi = parse_number<std::uint64_t>(key, trim(item.substr(dots + 2)));
    if (hi < lo) throw ConfigError("config key '" + key + "': empty range '" + item + "'");
    for (auto s = lo; s <= hi; ++s) out.push_back(s);
  }
  return out;
}

std::vector<std::string> Config::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [key, value] : entries_)
    if (!used_.contains(key)) out.push_back(key);
  return out;
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& [key, value] : entries_) out += key + " = " + value + "\n";
  return out;
}

std::uint64_t Config::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string Config::hash_hex() const {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << hash();
  return out.str();
}

}  // namespace l2s
