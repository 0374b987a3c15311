#include "uavrl/reward/reward_spec.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "uavrl/reward/expression.hpp"
#include "uavrl/reward/factors.hpp"

using nlohmann::json;

namespace uavrl::reward {

std::string RewardSpec::to_json(int indent) const {
  json fs = json::array();
  for (const auto& f : factors) fs.push_back({{"name", f.name}, {"weight", f.weight}});
  const json j = {{"factors", std::move(fs)}, {"expression", expression}, {"rationale", rationale}};
  return j.dump(indent);
}

std::optional<std::string_view> extract_first_json_object(std::string_view text) {
  for (std::size_t start = text.find('{'); start != std::string_view::npos; start = text.find('{', start + 1)) {
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = start; i < text.size(); ++i) {
      const char c = text[i];
      if (in_string) {
        if (escaped) {
          escaped = false;
        } else if (c == '\\') {
          escaped = true;
        } else if (c == '"') {
          in_string = false;
        }
        continue;
      }
      if (c == '"') {
        in_string = true;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}' && --depth == 0) {
        const auto candidate = text.substr(start, i - start + 1);
        if (json::accept(candidate)) return candidate;
        break;
      }
    }
  }
  return std::nullopt;
}

namespace {

RewardSpec spec_from_json(const json& j) {
  auto schema = [](const std::string& msg) { return SpecError("schema_valid", msg); };
  if (!j.is_object()) throw schema("top-level JSON value must be an object");
  for (const char* key : {"factors", "expression", "rationale"}) {
    if (!j.contains(key)) throw schema(std::string("missing field '") + key + "'");
  }
  if (!j["factors"].is_array()) throw schema("'factors' must be an array");
  if (!j["expression"].is_string()) throw schema("'expression' must be a string");
  if (!j["rationale"].is_string()) throw schema("'rationale' must be a string");

  RewardSpec spec;
  for (const auto& f : j["factors"]) {
    if (!f.is_object() || !f.contains("name") || !f.contains("weight")) {
      throw schema("each factor must be an object with 'name' and 'weight'");
    }
    if (!f["name"].is_string()) throw schema("factor 'name' must be a string");
    if (!f["weight"].is_number()) throw schema("factor 'weight' must be a number");
    WeightedFactor wf{f["name"].get<std::string>(), f["weight"].get<double>()};
    if (!is_registered_factor(wf.name)) throw schema("factor '" + wf.name + "' is not in the registry");
    if (!std::isfinite(wf.weight)) throw schema("factor '" + wf.name + "' has a non-finite weight");
    spec.factors.push_back(std::move(wf));
  }
  spec.expression = j["expression"].get<std::string>();
  if (spec.expression.find_first_not_of(" \t\r\n") == std::string::npos) throw schema("'expression' is empty");
  spec.rationale = j["rationale"].get<std::string>();
  return spec;
}

}  // namespace

RewardSpec parse_reward_spec(std::string_view raw) {
  const auto object = extract_first_json_object(raw);
  if (!object) throw SpecError("json_valid", "response contains no JSON object");
  return spec_from_json(json::parse(*object));
}

RewardSpec load_reward_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read reward program " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const json j = json::parse(ss.str(), nullptr, false);
  if (j.is_discarded()) throw SpecError("json_valid", path.string() + " is not valid JSON");
  return spec_from_json(j);
}

void save_reward_spec(const RewardSpec& spec, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << spec.to_json() << '\n';
}

}  // namespace uavrl::reward
