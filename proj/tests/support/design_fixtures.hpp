#pragma once

#include <string>

#include "uavrl/reward/expression.hpp"
#include "uavrl/reward/reward_spec.hpp"

namespace uavrl::testing {

inline std::string spec_json(const std::string& expression) {
  reward::RewardSpec spec{{{"energy", 0.6}, {"position", 0.4}}, expression, "test candidate"};
  return spec.to_json(-1);
}

inline std::string fixture_response() { return spec_json(std::string(reward::kFixtureRewardExpression)); }

}  // namespace uavrl::testing
