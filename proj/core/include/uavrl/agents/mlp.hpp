#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "uavrl/common/random.hpp"

namespace uavrl::agents {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class OutputActivation { kIdentity, kTanh };

/// Fully connected network with ReLU hidden layers.
///
/// Inputs and outputs are column-major batches (features x batch). All weights and
/// biases live in one flat parameter vector; layer l stores W_l (out x in, column-major)
/// followed by b_l. Optimizers, Polyak averaging and checkpoints operate on that vector.
class Mlp {
 public:
  struct Cache {
    std::vector<Matrix> activations;  // [0] = input, [l] = output of layer l
  };

  Mlp() = default;

  /// `final_layer_bound` > 0 draws the last layer uniformly in +-bound instead of the
  /// fan-in default, keeping initial outputs near zero.
  Mlp(std::vector<int> layer_sizes, OutputActivation output, Rng& rng, double final_layer_bound = 0.0);

  int input_size() const { return sizes_.front(); }
  int output_size() const { return sizes_.back(); }
  const std::vector<int>& layer_sizes() const { return sizes_; }
  OutputActivation output_activation() const { return output_; }
  std::size_t layer_count() const { return sizes_.size() - 1; }

  Vector& parameters() { return params_; }
  const Vector& parameters() const { return params_; }
  std::size_t parameter_count() const { return static_cast<std::size_t>(params_.size()); }

  Matrix forward(const Matrix& input) const;
  Matrix forward(const Matrix& input, Cache& cache) const;

  /// Backpropagates dL/d(output). Adds parameter gradients into `grad` when non-null
  /// and writes dL/d(input) into `grad_input` when non-null.
  void backward(const Cache& cache, const Matrix& grad_output, Vector* grad, Matrix* grad_input) const;

  bool same_shape(const Mlp& other) const { return sizes_ == other.sizes_ && output_ == other.output_; }

 private:
  Eigen::Map<const Matrix> weight(std::size_t layer) const;
  Eigen::Map<const Vector> bias(std::size_t layer) const;

  std::vector<int> sizes_;
  OutputActivation output_ = OutputActivation::kIdentity;
  Vector params_;
  std::vector<Eigen::Index> offsets_;
};

/// Polyak averaging: target <- tau * online + (1 - tau) * target.
void soft_update(Vector& target, const Vector& online, double tau);
void soft_update(Mlp& target, const Mlp& online, double tau);

/// Adaptive moment estimation.
class Adam {
 public:
  Adam() = default;
  Adam(std::size_t size, double learning_rate, double beta1 = 0.9, double beta2 = 0.999, double epsilon = 1e-8);

  /// Descends along `grad`.
  void step(Vector& params, const Vector& grad);

  double learning_rate() const { return lr_; }
  long steps() const { return t_; }

 private:
  double lr_ = 1e-3;
  double beta1_ = 0.9;
  double beta2_ = 0.999;
  double eps_ = 1e-8;
  long t_ = 0;
  Vector m_;
  Vector v_;
};

}  // namespace uavrl::agents
