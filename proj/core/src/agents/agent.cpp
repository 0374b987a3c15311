#include "uavrl/agents/agent.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "uavrl/agents/losses.hpp"

namespace uavrl::agents {
namespace {

constexpr double kActorFinalLayerBound = 3e-3;

std::vector<int> actor_sizes(const AgentConfig& c, std::size_t obs, std::size_t act) {
  return {static_cast<int>(obs), c.hidden_sizes[0], c.hidden_sizes[1], static_cast<int>(act)};
}

std::vector<int> critic_sizes(const AgentConfig& c, std::size_t obs, std::size_t act) {
  return {static_cast<int>(obs + act), c.hidden_sizes[0], c.hidden_sizes[1], 1};
}

}  // namespace

Agent::Agent(const AgentConfig& config, std::size_t observation_size, std::size_t action_size)
    : config_(config), obs_size_(observation_size), act_size_(action_size), rng_(derive_seed(config.seed, 100)) {
  config_.validate();
  if (observation_size == 0 || action_size == 0) throw std::invalid_argument("agent dimensions must be positive");
  actor_ = Mlp(actor_sizes(config_, obs_size_, act_size_), OutputActivation::kTanh, rng_, kActorFinalLayerBound);
  actor_target_ = actor_;
  actor_opt_ = Adam(actor_.parameter_count(), config_.actor_lr);
}

std::vector<double> Agent::act(std::span<const double> observation, bool explore) {
  if (observation.size() != obs_size_) {
    throw std::invalid_argument("observation has " + std::to_string(observation.size()) + " entries, expected " +
                                std::to_string(obs_size_));
  }
  const Matrix x = Eigen::Map<const Vector>(observation.data(), static_cast<Eigen::Index>(obs_size_));
  const Matrix y = actor_.forward(x);
  std::vector<double> action(y.data(), y.data() + y.size());
  if (explore && config_.exploration_noise_std > 0.0) {
    std::normal_distribution<double> noise(0.0, config_.exploration_noise_std);
    for (auto& a : action) a = std::clamp(a + noise(rng_), -1.0, 1.0);
  }
  return action;
}

std::vector<const Mlp*> Agent::networks() const {
  auto nets = const_cast<Agent*>(this)->networks();
  return {nets.begin(), nets.end()};
}

// --- DDPG -----------------------------------------------------------------

DdpgAgent::DdpgAgent(const AgentConfig& config, std::size_t observation_size, std::size_t action_size)
    : Agent(config, observation_size, action_size) {
  critic_ = Mlp(critic_sizes(config_, obs_size_, act_size_), OutputActivation::kIdentity, rng_);
  critic_target_ = critic_;
  critic_opt_ = Adam(critic_.parameter_count(), config_.critic_lr);
}

Vector DdpgAgent::compute_targets(const Batch& batch) const {
  const Matrix next_action = actor_target_.forward(batch.next_observation);
  const Matrix q_next = critic_target_.forward(critic_input(batch.next_observation, next_action));
  return ddpg_target(batch.reward, batch.done, q_next.row(0).transpose(), config_.discount);
}

UpdateResult DdpgAgent::update_on(const Batch& batch) {
  UpdateResult r;
  r.performed = true;
  const Vector targets = compute_targets(batch);
  const auto critic_step = critic_loss_gradient(critic_, batch.observation, batch.action, targets);
  critic_opt_.step(critic_.parameters(), critic_step.grad);
  r.critic_loss = critic_step.loss;

  const auto actor_step = actor_loss_gradient(actor_, critic_, batch.observation);
  actor_opt_.step(actor_.parameters(), actor_step.grad);
  r.actor_loss = actor_step.loss;

  soft_update(critic_target_, critic_, config_.soft_update_tau);
  soft_update(actor_target_, actor_, config_.soft_update_tau);
  return r;
}

UpdateResult DdpgAgent::update(const ReplayBuffer& buffer, std::int64_t) {
  if (buffer.size() < static_cast<std::size_t>(config_.batch_size)) return {};
  return update_on(buffer.sample(static_cast<std::size_t>(config_.batch_size), rng_));
}

// --- TD3 ------------------------------------------------------------------

Td3Agent::Td3Agent(const AgentConfig& config, std::size_t observation_size, std::size_t action_size)
    : Agent(config, observation_size, action_size) {
  const auto sizes = critic_sizes(config_, obs_size_, act_size_);
  critic1_ = Mlp(sizes, OutputActivation::kIdentity, rng_);
  critic2_ = Mlp(sizes, OutputActivation::kIdentity, rng_);
  critic1_target_ = critic1_;
  critic2_target_ = critic2_;
  critic1_opt_ = Adam(critic1_.parameter_count(), config_.critic_lr);
  critic2_opt_ = Adam(critic2_.parameter_count(), config_.critic_lr);
}

Vector Td3Agent::compute_targets(const Batch& batch, TargetTrace* trace) {
  Matrix next_action = actor_target_.forward(batch.next_observation);
  Matrix noise(next_action.rows(), next_action.cols());
  std::normal_distribution<double> normal(0.0, config_.td3_target_noise_std);
  const double clip = config_.td3_target_noise_clip;
  for (Eigen::Index j = 0; j < noise.cols(); ++j) {
    for (Eigen::Index i = 0; i < noise.rows(); ++i) {
      const double eps = config_.td3_target_noise_std > 0.0 ? normal(rng_) : 0.0;
      noise(i, j) = clip > 0.0 ? std::clamp(eps, -clip, clip) : 0.0;
    }
  }
  next_action = (next_action + noise).cwiseMax(-1.0).cwiseMin(1.0);
  const Matrix input = critic_input(batch.next_observation, next_action);
  const Vector q1 = critic1_target_.forward(input).row(0).transpose();
  const Vector q2 = critic2_target_.forward(input).row(0).transpose();
  if (trace) {
    trace->next_action = next_action;
    trace->noise = noise;
    trace->q1_next = q1;
    trace->q2_next = q2;
  }
  return td3_target(batch.reward, batch.done, q1, q2, config_.discount);
}

UpdateResult Td3Agent::update_on(const Batch& batch, std::int64_t step_index) {
  UpdateResult r;
  r.performed = true;
  const Vector targets = compute_targets(batch);
  const auto g1 = critic_loss_gradient(critic1_, batch.observation, batch.action, targets);
  const auto g2 = critic_loss_gradient(critic2_, batch.observation, batch.action, targets);
  critic1_opt_.step(critic1_.parameters(), g1.grad);
  critic2_opt_.step(critic2_.parameters(), g2.grad);
  r.critic_loss = 0.5 * (g1.loss + g2.loss);

  if (step_index % config_.td3_policy_delay == 0) {
    const auto actor_step = actor_loss_gradient(actor_, critic1_, batch.observation);
    actor_opt_.step(actor_.parameters(), actor_step.grad);
    r.actor_loss = actor_step.loss;
    soft_update(critic1_target_, critic1_, config_.soft_update_tau);
    soft_update(critic2_target_, critic2_, config_.soft_update_tau);
    soft_update(actor_target_, actor_, config_.soft_update_tau);
  }
  return r;
}

UpdateResult Td3Agent::update(const ReplayBuffer& buffer, std::int64_t step_index) {
  if (buffer.size() < static_cast<std::size_t>(config_.batch_size)) return {};
  return update_on(buffer.sample(static_cast<std::size_t>(config_.batch_size), rng_), step_index);
}

std::unique_ptr<Agent> make_agent(Algorithm algorithm, const AgentConfig& config, std::size_t observation_size,
                                  std::size_t action_size) {
  if (algorithm == Algorithm::kDdpg) return std::make_unique<DdpgAgent>(config, observation_size, action_size);
  return std::make_unique<Td3Agent>(config, observation_size, action_size);
}

}  // namespace uavrl::agents
