#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "uavrl/common/kv_config.hpp"

namespace uavrl::agents {

enum class Algorithm { kDdpg, kTd3 };

std::string_view to_string(Algorithm a);
/// Parses "ddpg" / "td3"; throws ConfigError otherwise.
Algorithm parse_algorithm(std::string_view name);

struct AgentConfig {
  double actor_lr = 1e-4;
  double critic_lr = 3e-4;
  int batch_size = 64;
  double discount = 0.99;
  int buffer_capacity = 100000;
  double soft_update_tau = 0.005;
  double exploration_noise_std = 0.1;
  int td3_policy_delay = 2;
  double td3_target_noise_std = 0.2;
  double td3_target_noise_clip = 0.5;
  std::array<int, 2> hidden_sizes{256, 256};
  int warmup_steps = 1000;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Reads `agent.*` keys from `kv`.
AgentConfig agent_config_from(KeyValueConfig& kv, const AgentConfig& defaults = {});
std::string to_config_text(const AgentConfig& config);

}  // namespace uavrl::agents
