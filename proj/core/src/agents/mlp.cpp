#include "uavrl/agents/mlp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "uavrl/common/errors.hpp"

namespace uavrl::agents {
namespace {

void check_finite(const Matrix& m, std::size_t layer) {
  if (!m.allFinite()) {
    throw NumericalError("non-finite activation at layer " + std::to_string(layer) + " (max |a| = " +
                         std::to_string(m.cwiseAbs().maxCoeff()) + ")");
  }
}

}  // namespace

Mlp::Mlp(std::vector<int> layer_sizes, OutputActivation output, Rng& rng, double final_layer_bound)
    : sizes_(std::move(layer_sizes)), output_(output) {
  if (sizes_.size() < 2) throw std::invalid_argument("an MLP needs at least input and output sizes");
  for (int s : sizes_) {
    if (s < 1) throw std::invalid_argument("layer sizes must be positive");
  }
  Eigen::Index total = 0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    offsets_.push_back(total);
    total += static_cast<Eigen::Index>(sizes_[l + 1]) * (sizes_[l] + 1);
  }
  params_.resize(total);
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    const bool last = l + 2 == sizes_.size();
    const double bound = last && final_layer_bound > 0.0 ? final_layer_bound : 1.0 / std::sqrt(sizes_[l]);
    std::uniform_real_distribution<double> u(-bound, bound);
    const Eigen::Index n = static_cast<Eigen::Index>(sizes_[l + 1]) * (sizes_[l] + 1);
    for (Eigen::Index i = 0; i < n; ++i) params_[offsets_[l] + i] = u(rng);
  }
}

Eigen::Map<const Matrix> Mlp::weight(std::size_t l) const {
  return {params_.data() + offsets_[l], sizes_[l + 1], sizes_[l]};
}

Eigen::Map<const Vector> Mlp::bias(std::size_t l) const {
  return {params_.data() + offsets_[l] + static_cast<Eigen::Index>(sizes_[l + 1]) * sizes_[l], sizes_[l + 1]};
}

Matrix Mlp::forward(const Matrix& input) const {
  Cache cache;
  return forward(input, cache);
}

Matrix Mlp::forward(const Matrix& input, Cache& cache) const {
  if (input.rows() != sizes_.front()) {
    throw std::invalid_argument("MLP input has " + std::to_string(input.rows()) + " rows, expected " +
                                std::to_string(sizes_.front()));
  }
  cache.activations.resize(sizes_.size());
  cache.activations[0] = input;
  for (std::size_t l = 0; l < layer_count(); ++l) {
    Matrix z = weight(l) * cache.activations[l];
    z.colwise() += bias(l);
    if (l + 1 < layer_count()) {
      z = z.cwiseMax(0.0);
    } else if (output_ == OutputActivation::kTanh) {
      z = z.array().tanh().matrix();
    }
    check_finite(z, l);
    cache.activations[l + 1] = std::move(z);
  }
  return cache.activations.back();
}

void Mlp::backward(const Cache& cache, const Matrix& grad_output, Vector* grad, Matrix* grad_input) const {
  if (grad && grad->size() != params_.size()) throw std::invalid_argument("gradient buffer has wrong size");
  Matrix delta = grad_output;
  if (output_ == OutputActivation::kTanh) {
    delta.array() *= 1.0 - cache.activations.back().array().square();
  }
  for (std::size_t l = layer_count(); l-- > 0;) {
    const Matrix& in = cache.activations[l];
    if (grad) {
      const Eigen::Index wsize = static_cast<Eigen::Index>(sizes_[l + 1]) * sizes_[l];
      Eigen::Map<Matrix> gw(grad->data() + offsets_[l], sizes_[l + 1], sizes_[l]);
      gw.noalias() += delta * in.transpose();
      grad->segment(offsets_[l] + wsize, sizes_[l + 1]) += delta.rowwise().sum();
    }
    if (l == 0 && !grad_input) break;
    Matrix prev = weight(l).transpose() * delta;
    if (l == 0) {
      *grad_input = std::move(prev);
      break;
    }
    delta = prev.cwiseProduct((in.array() > 0.0).cast<double>().matrix());
  }
  if (grad && !grad->allFinite()) throw NumericalError("non-finite parameter gradient");
}

void soft_update(Vector& target, const Vector& online, double tau) {
  if (target.size() != online.size()) throw std::invalid_argument("soft_update: parameter size mismatch");
  if (tau == 1.0) {
    target = online;
  } else if (tau != 0.0) {
    target = tau * online + (1.0 - tau) * target;
  }
}

void soft_update(Mlp& target, const Mlp& online, double tau) {
  if (!target.same_shape(online)) throw std::invalid_argument("soft_update: network shapes differ");
  soft_update(target.parameters(), online.parameters(), tau);
}

Adam::Adam(std::size_t size, double learning_rate, double beta1, double beta2, double epsilon)
    : lr_(learning_rate), beta1_(beta1), beta2_(beta2), eps_(epsilon),
      m_(Vector::Zero(static_cast<Eigen::Index>(size))), v_(Vector::Zero(static_cast<Eigen::Index>(size))) {}

void Adam::step(Vector& params, const Vector& grad) {
  if (grad.size() != m_.size() || params.size() != m_.size()) throw std::invalid_argument("Adam: size mismatch");
  ++t_;
  m_ = beta1_ * m_ + (1.0 - beta1_) * grad;
  v_ = beta2_ * v_ + (1.0 - beta2_) * grad.cwiseProduct(grad);
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  params.array() -= lr_ * (m_.array() / c1) / ((v_.array() / c2).sqrt() + eps_);
}

}  // namespace uavrl::agents
