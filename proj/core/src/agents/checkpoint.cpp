#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "uavrl/agents/agent.hpp"
#include "uavrl/common/errors.hpp"
#include "uavrl/common/kv_config.hpp"

namespace uavrl::agents {
namespace {

constexpr const char* kMagic = "uavrl-checkpoint";
constexpr int kVersion = 1;

}  // namespace

void save_checkpoint(const Agent& agent, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path.string());
  const std::string config = to_config_text(agent.config());
  out << kMagic << ' ' << kVersion << '\n'
      << "algorithm " << to_string(agent.algorithm()) << '\n'
      << "dimensions " << agent.observation_size() << ' ' << agent.action_size() << '\n'
      << "config " << std::count(config.begin(), config.end(), '\n') << '\n'
      << config;
  const auto nets = agent.networks();
  out << "networks " << nets.size() << '\n';
  for (const Mlp* net : nets) {
    out << "params " << net->parameter_count() << '\n';
    const auto& p = net->parameters();
    for (Eigen::Index i = 0; i < p.size(); ++i) out << format_double(p[i]) << '\n';
  }
  if (!out) throw std::runtime_error("failed while writing checkpoint " + path.string());
}

std::unique_ptr<Agent> load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint " + path.string());
  const auto fail = [&path](const std::string& what) {
    return std::runtime_error("malformed checkpoint " + path.string() + ": " + what);
  };
  std::string word;
  int version = 0;
  if (!(in >> word >> version) || word != kMagic) throw fail("bad header");
  if (version != kVersion) throw fail("unsupported version " + std::to_string(version));
  std::string algo;
  if (!(in >> word >> algo) || word != "algorithm") throw fail("missing algorithm");
  std::size_t obs = 0;
  std::size_t act = 0;
  if (!(in >> word >> obs >> act) || word != "dimensions") throw fail("missing dimensions");
  std::size_t config_lines = 0;
  if (!(in >> word >> config_lines) || word != "config") throw fail("missing config");
  std::string line;
  std::getline(in, line);
  std::string config_text;
  for (std::size_t i = 0; i < config_lines && std::getline(in, line); ++i) config_text += line + '\n';
  auto kv = KeyValueConfig::parse(config_text, path.string());
  const AgentConfig config = agent_config_from(kv);
  kv.expect_all_consumed();

  auto agent = make_agent(parse_algorithm(algo), config, obs, act);
  std::size_t count = 0;
  if (!(in >> word >> count) || word != "networks") throw fail("missing networks");
  auto nets = agent->networks();
  if (count != nets.size()) throw fail("network count does not match algorithm");
  for (Mlp* net : nets) {
    std::size_t n = 0;
    if (!(in >> word >> n) || word != "params" || n != net->parameter_count()) throw fail("parameter count mismatch");
    auto& p = net->parameters();
    for (std::size_t i = 0; i < n; ++i) {
      if (!(in >> word)) throw fail("truncated parameters");
      p[static_cast<Eigen::Index>(i)] = parse_double_field("params", word);
    }
  }
  return agent;
}

}  // namespace uavrl::agents
