#include "uavrl/common/kv_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "uavrl/common/errors.hpp"

namespace uavrl {
namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    auto t = trim(item);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

}  // namespace

double parse_double_field(const std::string& field, const std::string& text) {
  std::string lower(trim(text));
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "inf" || lower == "infinity" || lower == "+inf") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  const char* first = lower.data();
  const char* last = lower.data() + lower.size();
  if (!lower.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) throw ConfigError(field, "expected a number, got '" + text + "'");
  return value;
}

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

KeyValueConfig KeyValueConfig::parse(std::string_view text, const std::string& source) {
  KeyValueConfig cfg;
  cfg.source_ = source;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    auto line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(source + ":" + std::to_string(line_no), "expected 'key = value'");
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(source + ":" + std::to_string(line_no), "empty key");
    if (cfg.values_.count(key)) throw ConfigError(key, "duplicate key in " + source);
    cfg.values_[key] = value;
    if (end == text.size()) break;
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), "cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

std::optional<std::string> KeyValueConfig::take(const std::string& key) {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  consumed_.insert(key);
  return it->second;
}

double KeyValueConfig::take_double(const std::string& key, double fallback) {
  auto v = take(key);
  return v ? parse_double_field(key, *v) : fallback;
}

std::int64_t KeyValueConfig::take_int(const std::string& key, std::int64_t fallback) {
  auto v = take(key);
  if (!v) return fallback;
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc{} || ptr != v->data() + v->size()) throw ConfigError(key, "expected an integer, got '" + *v + "'");
  return out;
}

std::uint64_t KeyValueConfig::take_uint(const std::string& key, std::uint64_t fallback) {
  auto v = take(key);
  if (!v) return fallback;
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc{} || ptr != v->data() + v->size()) {
    throw ConfigError(key, "expected a non-negative integer, got '" + *v + "'");
  }
  return out;
}

std::string KeyValueConfig::take_string(const std::string& key, const std::string& fallback) {
  auto v = take(key);
  return v ? *v : fallback;
}

std::vector<std::uint64_t> KeyValueConfig::take_uint_list(const std::string& key,
                                                          const std::vector<std::uint64_t>& fallback) {
  auto v = take(key);
  if (!v) return fallback;
  std::vector<std::uint64_t> out;
  for (const auto& item : split_list(*v)) {
    std::uint64_t x = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), x);
    if (ec != std::errc{} || ptr != item.data() + item.size()) throw ConfigError(key, "bad list entry '" + item + "'");
    out.push_back(x);
  }
  return out;
}

std::vector<double> KeyValueConfig::take_double_list(const std::string& key, const std::vector<double>& fallback) {
  auto v = take(key);
  if (!v) return fallback;
  std::vector<double> out;
  for (const auto& item : split_list(*v)) out.push_back(parse_double_field(key, item));
  return out;
}

std::vector<std::string> KeyValueConfig::unconsumed() const {
  std::vector<std::string> out;
  for (const auto& [key, value] : values_) {
    if (!consumed_.count(key)) out.push_back(key);
  }
  return out;
}

void KeyValueConfig::expect_all_consumed() const {
  const auto left = unconsumed();
  if (!left.empty()) throw ConfigError(left.front(), "unknown configuration key in " + source_);
}

}  // namespace uavrl
