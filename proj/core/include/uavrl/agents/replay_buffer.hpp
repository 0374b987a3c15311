#pragma once

#include <cstddef>
#include <vector>

#include "uavrl/agents/mlp.hpp"
#include "uavrl/common/random.hpp"

namespace uavrl::agents {

struct Transition {
  std::vector<double> observation;
  std::vector<double> action;
  double reward = 0.0;
  std::vector<double> next_observation;
  bool done = false;  ///< true only for terminal states (no bootstrapping)
};

/// Column-major minibatch: one transition per column.
struct Batch {
  Matrix observation;
  Matrix action;
  Vector reward;
  Matrix next_observation;
  Vector done;  // 1.0 for terminal transitions
};

/// Fixed-capacity FIFO ring of transitions.
class ReplayBuffer {
 public:
  ReplayBuffer(std::size_t capacity, std::size_t observation_size, std::size_t action_size);

  /// Appends, evicting the oldest transition once full. Rejects wrong dimensions and
  /// non-finite rewards.
  void add(const Transition& t);

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  std::size_t observation_size() const { return static_cast<std::size_t>(obs_.rows()); }
  std::size_t action_size() const { return static_cast<std::size_t>(act_.rows()); }

  /// The i-th stored transition in insertion order (0 = oldest still present).
  Transition at(std::size_t i) const;

  /// Uniform sampling with replacement.
  Batch sample(std::size_t batch_size, Rng& rng) const;

 private:
  std::size_t capacity_;
  std::size_t size_ = 0;
  std::size_t head_ = 0;  // next write slot
  Matrix obs_;
  Matrix act_;
  Vector reward_;
  Matrix next_obs_;
  Vector done_;
};

}  // namespace uavrl::agents
