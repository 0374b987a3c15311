#include "uavrl/agents/agent_config.hpp"

#include <sstream>

#include "uavrl/common/errors.hpp"

namespace uavrl::agents {

std::string_view to_string(Algorithm a) { return a == Algorithm::kDdpg ? "ddpg" : "td3"; }

Algorithm parse_algorithm(std::string_view name) {
  if (name == "ddpg") return Algorithm::kDdpg;
  if (name == "td3") return Algorithm::kTd3;
  throw ConfigError("algorithm", "unknown algorithm '" + std::string(name) + "' (expected ddpg or td3)");
}

void AgentConfig::validate() const {
  if (!(actor_lr > 0.0)) throw ConfigError("agent.actor_lr", "must be positive");
  if (!(critic_lr > 0.0)) throw ConfigError("agent.critic_lr", "must be positive");
  if (!(discount > 0.0 && discount < 1.0)) throw ConfigError("agent.discount", "must lie in (0, 1)");
  if (!(soft_update_tau > 0.0 && soft_update_tau <= 1.0)) throw ConfigError("agent.tau", "must lie in (0, 1]");
  if (batch_size < 1) throw ConfigError("agent.batch_size", "must be at least 1");
  if (buffer_capacity < batch_size) throw ConfigError("agent.buffer_capacity", "must be at least batch_size");
  if (exploration_noise_std < 0.0) throw ConfigError("agent.exploration_noise_std", "must be non-negative");
  if (td3_policy_delay < 1) throw ConfigError("agent.td3_policy_delay", "must be at least 1");
  if (td3_target_noise_std < 0.0) throw ConfigError("agent.td3_target_noise_std", "must be non-negative");
  if (td3_target_noise_clip < 0.0) throw ConfigError("agent.td3_target_noise_clip", "must be non-negative");
  if (hidden_sizes[0] < 1 || hidden_sizes[1] < 1) throw ConfigError("agent.hidden_sizes", "must be positive");
  if (warmup_steps < 0) throw ConfigError("agent.warmup_steps", "must be non-negative");
}

AgentConfig agent_config_from(KeyValueConfig& kv, const AgentConfig& d) {
  AgentConfig c = d;
  c.actor_lr = kv.take_double("agent.actor_lr", d.actor_lr);
  c.critic_lr = kv.take_double("agent.critic_lr", d.critic_lr);
  c.batch_size = static_cast<int>(kv.take_int("agent.batch_size", d.batch_size));
  c.discount = kv.take_double("agent.discount", d.discount);
  c.buffer_capacity = static_cast<int>(kv.take_int("agent.buffer_capacity", d.buffer_capacity));
  c.soft_update_tau = kv.take_double("agent.tau", d.soft_update_tau);
  c.exploration_noise_std = kv.take_double("agent.exploration_noise_std", d.exploration_noise_std);
  c.td3_policy_delay = static_cast<int>(kv.take_int("agent.td3_policy_delay", d.td3_policy_delay));
  c.td3_target_noise_std = kv.take_double("agent.td3_target_noise_std", d.td3_target_noise_std);
  c.td3_target_noise_clip = kv.take_double("agent.td3_target_noise_clip", d.td3_target_noise_clip);
  const auto hidden = kv.take_uint_list("agent.hidden_sizes", {static_cast<std::uint64_t>(d.hidden_sizes[0]),
                                                               static_cast<std::uint64_t>(d.hidden_sizes[1])});
  if (hidden.size() != 2) throw ConfigError("agent.hidden_sizes", "expected two comma-separated widths");
  c.hidden_sizes = {static_cast<int>(hidden[0]), static_cast<int>(hidden[1])};
  c.warmup_steps = static_cast<int>(kv.take_int("agent.warmup_steps", d.warmup_steps));
  c.seed = kv.take_uint("agent.seed", d.seed);
  return c;
}

std::string to_config_text(const AgentConfig& c) {
  std::ostringstream out;
  out << "agent.actor_lr = " << format_double(c.actor_lr) << '\n'
      << "agent.critic_lr = " << format_double(c.critic_lr) << '\n'
      << "agent.batch_size = " << c.batch_size << '\n'
      << "agent.discount = " << format_double(c.discount) << '\n'
      << "agent.buffer_capacity = " << c.buffer_capacity << '\n'
      << "agent.tau = " << format_double(c.soft_update_tau) << '\n'
      << "agent.exploration_noise_std = " << format_double(c.exploration_noise_std) << '\n'
      << "agent.td3_policy_delay = " << c.td3_policy_delay << '\n'
      << "agent.td3_target_noise_std = " << format_double(c.td3_target_noise_std) << '\n'
      << "agent.td3_target_noise_clip = " << format_double(c.td3_target_noise_clip) << '\n'
      << "agent.hidden_sizes = " << c.hidden_sizes[0] << ',' << c.hidden_sizes[1] << '\n'
      << "agent.warmup_steps = " << c.warmup_steps << '\n'
      << "agent.seed = " << c.seed << '\n';
  return out.str();
}

}  // namespace uavrl::agents
