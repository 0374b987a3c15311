#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uavrl/agents/agent_config.hpp"
#include "uavrl/agents/mlp.hpp"
#include "uavrl/agents/replay_buffer.hpp"
#include "uavrl/common/random.hpp"

namespace uavrl::agents {

struct UpdateResult {
  bool performed = false;  ///< false when the buffer holds fewer than batch_size transitions
  double critic_loss = 0.0;
  std::optional<double> actor_loss;  ///< set only on steps that updated the actor
};

/// Deterministic actor-critic learner over continuous actions in [-1, 1].
class Agent {
 public:
  Agent(const AgentConfig& config, std::size_t observation_size, std::size_t action_size);
  virtual ~Agent() = default;

  Agent(const Agent&) = delete;
  Agent& operator=(const Agent&) = delete;

  virtual Algorithm algorithm() const = 0;

  /// Actor output; with `explore`, adds N(0, exploration_noise_std) per component and clamps.
  std::vector<double> act(std::span<const double> observation, bool explore);

  /// One gradient step on a sampled minibatch.
  virtual UpdateResult update(const ReplayBuffer& buffer, std::int64_t step_index) = 0;

  const AgentConfig& config() const { return config_; }
  std::size_t observation_size() const { return obs_size_; }
  std::size_t action_size() const { return act_size_; }

  const Mlp& actor() const { return actor_; }
  Mlp& actor() { return actor_; }
  const Mlp& actor_target() const { return actor_target_; }

  /// Every network in a fixed order, for checkpoints: actor, actor target, then critics.
  virtual std::vector<Mlp*> networks() = 0;
  std::vector<const Mlp*> networks() const;

  Rng& rng() { return rng_; }

 protected:
  Matrix batch_actor(const Matrix& observation) const { return actor_.forward(observation); }

  AgentConfig config_;
  std::size_t obs_size_;
  std::size_t act_size_;
  Rng rng_;
  Mlp actor_;
  Mlp actor_target_;
  Adam actor_opt_;
};

class DdpgAgent final : public Agent {
 public:
  DdpgAgent(const AgentConfig& config, std::size_t observation_size, std::size_t action_size);

  Algorithm algorithm() const override { return Algorithm::kDdpg; }
  UpdateResult update(const ReplayBuffer& buffer, std::int64_t step_index) override;
  std::vector<Mlp*> networks() override { return {&actor_, &actor_target_, &critic_, &critic_target_}; }

  /// Bootstrapped critic targets for `batch` using the target networks.
  Vector compute_targets(const Batch& batch) const;
  /// Update on a caller-provided batch (used by the public update and by tests).
  UpdateResult update_on(const Batch& batch);

  const Mlp& critic() const { return critic_; }
  const Mlp& critic_target() const { return critic_target_; }

 private:
  Mlp critic_;
  Mlp critic_target_;
  Adam critic_opt_;
};

class Td3Agent final : public Agent {
 public:
  /// Intermediate values of one target computation.
  struct TargetTrace {
    Matrix next_action;   // smoothed target-policy action
    Matrix noise;         // clipped smoothing noise
    Vector q1_next;
    Vector q2_next;
  };

  Td3Agent(const AgentConfig& config, std::size_t observation_size, std::size_t action_size);

  Algorithm algorithm() const override { return Algorithm::kTd3; }
  UpdateResult update(const ReplayBuffer& buffer, std::int64_t step_index) override;
  std::vector<Mlp*> networks() override {
    return {&actor_, &actor_target_, &critic1_, &critic2_, &critic1_target_, &critic2_target_};
  }

  Vector compute_targets(const Batch& batch, TargetTrace* trace = nullptr);
  UpdateResult update_on(const Batch& batch, std::int64_t step_index);

  const Mlp& critic1() const { return critic1_; }
  const Mlp& critic2() const { return critic2_; }
  Mlp& critic1_target() { return critic1_target_; }
  Mlp& critic2_target() { return critic2_target_; }

 private:
  Mlp critic1_;
  Mlp critic2_;
  Mlp critic1_target_;
  Mlp critic2_target_;
  Adam critic1_opt_;
  Adam critic2_opt_;
};

std::unique_ptr<Agent> make_agent(Algorithm algorithm, const AgentConfig& config, std::size_t observation_size,
                                  std::size_t action_size);

/// Writes a versioned plain-text checkpoint: algorithm, AgentConfig, dimensions and
/// every network's parameters at full precision.
void save_checkpoint(const Agent& agent, const std::filesystem::path& path);

/// Rebuilds an agent from a checkpoint; act() of the result matches the saved agent exactly.
std::unique_ptr<Agent> load_checkpoint(const std::filesystem::path& path);

}  // namespace uavrl::agents
