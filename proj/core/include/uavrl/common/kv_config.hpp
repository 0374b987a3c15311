#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace uavrl {

/// Flat `key = value` configuration file. Lines starting with '#' are comments.
///
/// Consumers pull the keys they understand with the `take_*` accessors; any key
/// left over afterwards is reported by `expect_all_consumed()`, so typos in a
/// config file surface as errors rather than silently falling back to defaults.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::string_view text, const std::string& source = "<string>");
  static KeyValueConfig load(const std::filesystem::path& path);

  bool contains(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

  std::optional<std::string> take(const std::string& key);
  double take_double(const std::string& key, double fallback);
  std::int64_t take_int(const std::string& key, std::int64_t fallback);
  std::uint64_t take_uint(const std::string& key, std::uint64_t fallback);
  std::string take_string(const std::string& key, const std::string& fallback);
  std::vector<std::uint64_t> take_uint_list(const std::string& key,
                                            const std::vector<std::uint64_t>& fallback);
  std::vector<double> take_double_list(const std::string& key, const std::vector<double>& fallback);

  std::vector<std::string> unconsumed() const;
  void expect_all_consumed() const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  std::set<std::string> consumed_;
  std::string source_;
};

/// Parses a double, accepting "inf"/"infinity". Throws ConfigError tagged with `field`.
double parse_double_field(const std::string& field, const std::string& text);

/// Shortest round-trip text for a double ("inf" for infinity).
std::string format_double(double value);

}  // namespace uavrl
