#include "uavrl/agents/losses.hpp"

#include <stdexcept>

namespace uavrl::agents {

Matrix critic_input(const Matrix& observation, const Matrix& action) {
  if (observation.cols() != action.cols()) throw std::invalid_argument("observation/action batch sizes differ");
  Matrix x(observation.rows() + action.rows(), observation.cols());
  x.topRows(observation.rows()) = observation;
  x.bottomRows(action.rows()) = action;
  return x;
}

LossGradient critic_loss_gradient(const Mlp& critic, const Matrix& observation, const Matrix& action,
                                  const Vector& targets) {
  Mlp::Cache cache;
  const Matrix q = critic.forward(critic_input(observation, action), cache);
  const double n = static_cast<double>(q.cols());
  const Matrix err = q - targets.transpose();
  LossGradient out;
  out.loss = err.squaredNorm() / n;
  out.grad = Vector::Zero(static_cast<Eigen::Index>(critic.parameter_count()));
  critic.backward(cache, (2.0 / n) * err, &out.grad, nullptr);
  return out;
}

LossGradient actor_loss_gradient(const Mlp& actor, const Mlp& critic, const Matrix& observation) {
  Mlp::Cache actor_cache;
  const Matrix action = actor.forward(observation, actor_cache);
  Mlp::Cache critic_cache;
  const Matrix q = critic.forward(critic_input(observation, action), critic_cache);
  const double n = static_cast<double>(q.cols());
  LossGradient out;
  out.loss = -q.sum() / n;
  Matrix grad_input;
  critic.backward(critic_cache, Matrix::Constant(1, q.cols(), -1.0 / n), nullptr, &grad_input);
  out.grad = Vector::Zero(static_cast<Eigen::Index>(actor.parameter_count()));
  actor.backward(actor_cache, grad_input.bottomRows(action.rows()), &out.grad, nullptr);
  return out;
}

Vector ddpg_target(const Vector& reward, const Vector& done, const Vector& q_next, double discount) {
  return reward.array() + discount * (1.0 - done.array()) * q_next.array();
}

Vector td3_target(const Vector& reward, const Vector& done, const Vector& q1_next, const Vector& q2_next,
                  double discount) {
  return reward.array() + discount * (1.0 - done.array()) * q1_next.array().min(q2_next.array());
}

}  // namespace uavrl::agents
