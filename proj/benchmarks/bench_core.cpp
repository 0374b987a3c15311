#include <benchmark/benchmark.h>

#include <random>

#include "uavrl/agents/agent.hpp"
#include "uavrl/agents/mlp.hpp"
#include "uavrl/agents/replay_buffer.hpp"
#include "uavrl/env/environment.hpp"
#include "uavrl/reward/expression.hpp"

using namespace uavrl;

static void BM_EnvironmentStep(benchmark::State& state) {
  env::Environment environment{env::WorldConfig{}};
  environment.reset(1);
  Rng rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uint64_t episode = 0;
  for (auto _ : state) {
    if (environment.done()) environment.reset(1, ++episode);
    benchmark::DoNotOptimize(environment.step({u(rng), u(rng)}));
  }
}
BENCHMARK(BM_EnvironmentStep);

static void BM_MlpForwardBackward(benchmark::State& state) {
  const int hidden = static_cast<int>(state.range(0));
  Rng rng(3);
  agents::Mlp net({54, hidden, hidden, 1}, agents::OutputActivation::kIdentity, rng);
  agents::Matrix input = agents::Matrix::Random(54, 64);
  agents::Matrix grad_out = agents::Matrix::Ones(1, 64);
  agents::Vector grad(net.parameter_count());
  agents::Mlp::Cache cache;
  for (auto _ : state) {
    benchmark::DoNotOptimize(net.forward(input, cache));
    net.backward(cache, grad_out, &grad, nullptr);
    benchmark::DoNotOptimize(grad.data());
  }
}
BENCHMARK(BM_MlpForwardBackward)->Arg(64)->Arg(256);

static void BM_AgentUpdate(benchmark::State& state) {
  const auto algorithm = state.range(0) ? agents::Algorithm::kTd3 : agents::Algorithm::kDdpg;
  agents::AgentConfig config;
  const int width = static_cast<int>(state.range(1));
  config.hidden_sizes = {width, width};
  const std::size_t obs = 52, act = 2;
  auto agent = agents::make_agent(algorithm, config, obs, act);
  agents::ReplayBuffer buffer(4096, obs, act);
  Rng rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 4096; ++i) {
    agents::Transition t;
    for (std::size_t j = 0; j < obs; ++j) t.observation.push_back(u(rng)), t.next_observation.push_back(u(rng));
    t.action = {u(rng), u(rng)};
    t.reward = u(rng);
    buffer.add(t);
  }
  std::int64_t step = 0;
  for (auto _ : state) benchmark::DoNotOptimize(agent->update(buffer, step++));
}
BENCHMARK(BM_AgentUpdate)->ArgNames({"td3", "width"})->Args({0, 64})->Args({1, 64})->Args({1, 256});

static void BM_RewardEvaluate(benchmark::State& state) {
  const auto program = reward::RewardProgram::compile(std::string(reward::kFixtureRewardExpression));
  reward::FactorValues v{0.3, 0.5, 0.2, 0.1, 2.0};
  for (auto _ : state) {
    v.energy += 1e-9;
    benchmark::DoNotOptimize(program.reward(v));
  }
}
BENCHMARK(BM_RewardEvaluate);

static void BM_RewardCompile(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(reward::RewardProgram::compile("(0.6*energy + 0.4*position)*penalty - 0.1*throughput"));
}
BENCHMARK(BM_RewardCompile);

BENCHMARK_MAIN();
