#include "uavrl/agents/replay_buffer.hpp"

#include <cmath>
#include <stdexcept>

namespace uavrl::agents {

ReplayBuffer::ReplayBuffer(std::size_t capacity, std::size_t observation_size, std::size_t action_size)
    : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("replay buffer capacity must be positive");
  const auto cap = static_cast<Eigen::Index>(capacity);
  obs_.resize(static_cast<Eigen::Index>(observation_size), cap);
  next_obs_.resize(static_cast<Eigen::Index>(observation_size), cap);
  act_.resize(static_cast<Eigen::Index>(action_size), cap);
  reward_.resize(cap);
  done_.resize(cap);
}

void ReplayBuffer::add(const Transition& t) {
  if (t.observation.size() != observation_size() || t.next_observation.size() != observation_size()) {
    throw std::invalid_argument("transition observation has wrong dimension");
  }
  if (t.action.size() != action_size()) throw std::invalid_argument("transition action has wrong dimension");
  if (!std::isfinite(t.reward)) throw std::invalid_argument("transition reward must be finite");
  const auto col = static_cast<Eigen::Index>(head_);
  obs_.col(col) = Eigen::Map<const Vector>(t.observation.data(), obs_.rows());
  next_obs_.col(col) = Eigen::Map<const Vector>(t.next_observation.data(), next_obs_.rows());
  act_.col(col) = Eigen::Map<const Vector>(t.action.data(), act_.rows());
  reward_[col] = t.reward;
  done_[col] = t.done ? 1.0 : 0.0;
  head_ = (head_ + 1) % capacity_;
  if (size_ < capacity_) ++size_;
}

Transition ReplayBuffer::at(std::size_t i) const {
  if (i >= size_) throw std::out_of_range("replay buffer index out of range");
  const std::size_t oldest = size_ < capacity_ ? 0 : head_;
  const auto col = static_cast<Eigen::Index>((oldest + i) % capacity_);
  Transition t;
  t.observation.assign(obs_.col(col).data(), obs_.col(col).data() + obs_.rows());
  t.next_observation.assign(next_obs_.col(col).data(), next_obs_.col(col).data() + next_obs_.rows());
  t.action.assign(act_.col(col).data(), act_.col(col).data() + act_.rows());
  t.reward = reward_[col];
  t.done = done_[col] != 0.0;
  return t;
}

Batch ReplayBuffer::sample(std::size_t batch_size, Rng& rng) const {
  if (size_ == 0) throw std::logic_error("cannot sample from an empty replay buffer");
  std::uniform_int_distribution<std::size_t> pick(0, size_ - 1);
  const auto n = static_cast<Eigen::Index>(batch_size);
  Batch b{Matrix(obs_.rows(), n), Matrix(act_.rows(), n), Vector(n), Matrix(obs_.rows(), n), Vector(n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto col = static_cast<Eigen::Index>(pick(rng));
    b.observation.col(j) = obs_.col(col);
    b.action.col(j) = act_.col(col);
    b.reward[j] = reward_[col];
    b.next_observation.col(j) = next_obs_.col(col);
    b.done[j] = done_[col];
  }
  return b;
}

}  // namespace uavrl::agents
