#pragma once

#include "uavrl/agents/mlp.hpp"

namespace uavrl::agents {

struct LossGradient {
  double loss = 0.0;
  Vector grad;  // same layout as the network's parameter vector
};

/// Stacks observations over actions, the critic's input layout.
Matrix critic_input(const Matrix& observation, const Matrix& action);

/// Mean squared error (1/N) sum (Q(s,a) - y)^2 and its gradient w.r.t. critic parameters.
LossGradient critic_loss_gradient(const Mlp& critic, const Matrix& observation, const Matrix& action,
                                  const Vector& targets);

/// Deterministic policy objective -(1/N) sum Q(s, mu(s)) and its gradient w.r.t. actor
/// parameters; the critic is held fixed.
LossGradient actor_loss_gradient(const Mlp& actor, const Mlp& critic, const Matrix& observation);

/// y = r + discount * (1 - done) * q_next
Vector ddpg_target(const Vector& reward, const Vector& done, const Vector& q_next, double discount);

/// y = r + discount * (1 - done) * min(q1_next, q2_next), elementwise.
Vector td3_target(const Vector& reward, const Vector& done, const Vector& q1_next, const Vector& q2_next,
                  double discount);

}  // namespace uavrl::agents
