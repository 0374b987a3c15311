#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "uavrl/common/random.hpp"
#include "uavrl/env/environment.hpp"

namespace uavrl::env {

/// Non-learning controller used for scripted rollouts.
class ScriptedPolicy {
 public:
  virtual ~ScriptedPolicy() = default;
  virtual Action act(const Environment& env) = 0;
};

class HoverPolicy final : public ScriptedPolicy {
 public:
  Action act(const Environment&) override { return {}; }
};

class RandomPolicy final : public ScriptedPolicy {
 public:
  explicit RandomPolicy(std::uint64_t seed) : rng_(seed) {}
  Action act(const Environment& env) override;

 private:
  Rng rng_;
};

/// Flies toward the nearest terminal that still has data and hovers once above it.
class GreedyNearestPolicy final : public ScriptedPolicy {
 public:
  Action act(const Environment& env) override;
};

/// Flies toward the centroid of terminals that still have data.
class CentroidPolicy final : public ScriptedPolicy {
 public:
  Action act(const Environment& env) override;
};

/// Builds a policy by name: hover, random, greedy-nearest, centroid.
/// Throws std::invalid_argument for unknown names.
std::unique_ptr<ScriptedPolicy> make_policy(std::string_view name, std::uint64_t seed);

}  // namespace uavrl::env
