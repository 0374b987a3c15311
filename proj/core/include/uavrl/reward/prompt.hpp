#pragma once

#include <string>
#include <vector>

#include "uavrl/env/world_config.hpp"

namespace uavrl::reward {

struct FactorDescription {
  std::string name;
  std::string description;
};

struct WorldDescriptor {
  std::string system_model;
  std::vector<FactorDescription> factors;
  std::string observation_format;
};

/// Describes the simulated system and the full factor registry.
WorldDescriptor describe_world(const env::WorldConfig& config);

struct PromptBundle {
  std::string role_definition;   // system message
  std::string task_description;  // first user message
};

inline constexpr const char* kDefaultObjective = "minimize total energy";

/// Deterministic prompt assembly. Throws std::invalid_argument on an empty registry
/// or empty objective.
PromptBundle build_prompt(const WorldDescriptor& world, const std::string& objective = kDefaultObjective);

}  // namespace uavrl::reward
