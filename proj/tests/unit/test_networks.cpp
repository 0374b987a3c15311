#include <gtest/gtest.h>

#include <cmath>

#include "gradient_check.hpp"
#include "uavrl/agents/losses.hpp"
#include "uavrl/agents/mlp.hpp"
#include "uavrl/common/errors.hpp"

using namespace uavrl;
using namespace uavrl::agents;
using uavrl::testing::random_matrix;

TEST(Mlp, ParameterLayout) {
  Rng rng(1);
  Mlp m({4, 8, 8, 1}, OutputActivation::kIdentity, rng);
  EXPECT_EQ(m.parameter_count(), static_cast<std::size_t>(4 * 8 + 8 + 8 * 8 + 8 + 8 * 1 + 1));
  EXPECT_EQ(m.input_size(), 4);
  EXPECT_EQ(m.output_size(), 1);
}

TEST(Mlp, ForwardMatchesHandComputation) {
  Rng rng(1);
  Mlp m({2, 2, 1}, OutputActivation::kIdentity, rng);
  // W1 = [[1, -1], [2, 0.5]] column-major, b1 = [0.5, -3], W2 = [2, -1], b2 = 0.25
  m.parameters() << 1.0, 2.0, -1.0, 0.5, 0.5, -3.0, 2.0, -1.0, 0.25;
  Matrix x(2, 1);
  x << 1.0, 2.0;
  // h = relu([1 - 2 + 0.5, 2 + 1 - 3]) = [0, 0]; y = 0.25
  EXPECT_DOUBLE_EQ(m.forward(x)(0, 0), 0.25);
  x << 3.0, 1.0;
  // h = relu([3 - 1 + 0.5, 6 + 0.5 - 3]) = [2.5, 3.5]; y = 5 - 3.5 + 0.25
  EXPECT_DOUBLE_EQ(m.forward(x)(0, 0), 1.75);
}

TEST(Mlp, TanhOutputBounded) {
  Rng rng(3);
  Mlp m({3, 16, 2}, OutputActivation::kTanh, rng);
  m.parameters() *= 50.0;
  const Matrix y = m.forward(random_matrix(3, 20, rng, -10.0, 10.0));
  EXPECT_LE(y.cwiseAbs().maxCoeff(), 1.0);
}

TEST(Mlp, RejectsWrongInputAndNonFinite) {
  Rng rng(3);
  Mlp m({3, 4, 1}, OutputActivation::kIdentity, rng);
  EXPECT_THROW(m.forward(Matrix::Zero(2, 1)), std::invalid_argument);
  Matrix bad = Matrix::Zero(3, 1);
  bad(0, 0) = std::nan("");
  EXPECT_THROW(m.forward(bad), NumericalError);
}

TEST(Gradients, MatchCentralDifferences) {
  const auto r = uavrl::testing::check_probe_gradients(25, 99);
  EXPECT_LT(r.actor, 1e-4);
  EXPECT_LT(r.critic1, 1e-4);
  EXPECT_LT(r.critic2, 1e-4);
}

TEST(Gradients, InputGradientMatchesDifferences) {
  Rng rng(5);
  Mlp m({3, 6, 2}, OutputActivation::kTanh, rng);
  Matrix x = random_matrix(3, 1, rng);
  Mlp::Cache cache;
  m.forward(x, cache);
  const Matrix upstream = Matrix::Ones(2, 1);
  Matrix grad_input;
  m.backward(cache, upstream, nullptr, &grad_input);
  const double h = 1e-6;
  for (int i = 0; i < 3; ++i) {
    Matrix up = x, down = x;
    up(i, 0) += h;
    down(i, 0) -= h;
    const double numeric = (m.forward(up).sum() - m.forward(down).sum()) / (2 * h);
    EXPECT_NEAR(grad_input(i, 0), numeric, 1e-7);
  }
}

TEST(SoftUpdate, PolyakAverage) {
  Vector target(3), online(3);
  target << 1.0, 2.0, 3.0;
  online << 3.0, 2.0, -1.0;
  soft_update(target, online, 0.25);
  EXPECT_DOUBLE_EQ(target[0], 1.5);
  EXPECT_DOUBLE_EQ(target[1], 2.0);
  EXPECT_DOUBLE_EQ(target[2], 2.0);
}

TEST(SoftUpdate, TauOneCopiesTauZeroKeeps) {
  Rng rng(1);
  Mlp a({2, 3, 1}, OutputActivation::kIdentity, rng), b({2, 3, 1}, OutputActivation::kIdentity, rng);
  Mlp keep = b;
  soft_update(b, a, 0.0);
  EXPECT_EQ(b.parameters(), keep.parameters());
  soft_update(b, a, 1.0);
  EXPECT_EQ(b.parameters(), a.parameters());
  Mlp other({3, 3, 1}, OutputActivation::kIdentity, rng);
  EXPECT_THROW(soft_update(b, other, 0.5), std::invalid_argument);
}

TEST(Adam, FirstStepMovesByLearningRate) {
  // With bias correction the first step is lr * sign(g) (up to epsilon).
  Adam opt(2, 0.01);
  Vector p = Vector::Zero(2), g(2);
  g << 4.0, -0.5;
  opt.step(p, g);
  EXPECT_NEAR(p[0], -0.01, 1e-9);
  EXPECT_NEAR(p[1], 0.01, 1e-9);
  EXPECT_EQ(opt.steps(), 1);
}

TEST(Adam, MinimizesQuadratic) {
  Adam opt(1, 0.1);
  Vector p(1);
  p << 5.0;
  for (int i = 0; i < 500; ++i) {
    Vector g(1);
    g << 2.0 * (p[0] - 1.5);
    opt.step(p, g);
  }
  EXPECT_NEAR(p[0], 1.5, 1e-2);
}

TEST(Targets, DdpgAndTd3) {
  Vector r(2), d(2), q1(2), q2(2);
  r << 1.0, -1.0;
  d << 0.0, 1.0;
  q1 << 10.0, 10.0;
  q2 << 4.0, 20.0;
  const Vector y = ddpg_target(r, d, q1, 0.9);
  EXPECT_DOUBLE_EQ(y[0], 10.0);
  EXPECT_DOUBLE_EQ(y[1], -1.0);
  const Vector z = td3_target(r, d, q1, q2, 0.9);
  EXPECT_DOUBLE_EQ(z[0], 1.0 + 0.9 * 4.0);
  EXPECT_DOUBLE_EQ(z[1], -1.0);
}
