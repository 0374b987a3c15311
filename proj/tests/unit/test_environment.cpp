#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "uavrl/common/errors.hpp"
#include "uavrl/common/kv_config.hpp"
#include "uavrl/env/environment.hpp"
#include "uavrl/env/physics.hpp"
#include "uavrl/env/policies.hpp"
#include "uavrl/env/trace.hpp"

using namespace uavrl;
using namespace uavrl::env;

namespace {

std::string rollout_trace(const std::string& policy, std::uint64_t seed) {
  Environment env(WorldConfig{});
  env.reset(seed);
  auto p = make_policy(policy, seed);
  std::ostringstream out;
  TraceWriter trace(out);
  while (!env.done()) {
    const auto o = env.step(p->act(env));
    trace.write(env.slot(), env.uav().position, o);
  }
  return out.str();
}

int delivered_with(const std::string& policy, std::uint64_t seed) {
  Environment env(WorldConfig{});
  env.reset(seed);
  auto p = make_policy(policy, seed);
  while (!env.done()) env.step(p->act(env));
  return env.delivered_count();
}

}  // namespace

TEST(WorldConfig, DefaultsValidate) { EXPECT_NO_THROW(WorldConfig{}.validate()); }

TEST(WorldConfig, InvalidFieldIsNamed) {
  WorldConfig c;
  c.harvest_efficiency = 1.5;
  try {
    c.validate();
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "harvest_efficiency");
  }
  c = WorldConfig{};
  c.area_side = -1.0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(WorldConfig, TextRoundTrip) {
  WorldConfig c;
  c.packet_size = 2.6e6;
  c.rician_k = std::numeric_limits<double>::infinity();
  c.seed = 99;
  auto kv = KeyValueConfig::parse(to_config_text(c));
  const auto back = world_config_from(kv);
  kv.expect_all_consumed();
  EXPECT_EQ(to_config_text(back), to_config_text(c));
}

TEST(Environment, StepBeforeResetThrows) {
  Environment env(WorldConfig{});
  EXPECT_THROW(env.step({}), StateError);
}

TEST(Environment, StepAfterDoneThrows) {
  WorldConfig c;
  c.horizon = 3;
  Environment env(c);
  env.reset(1);
  for (int i = 0; i < 3; ++i) env.step({});
  EXPECT_TRUE(env.done());
  EXPECT_THROW(env.step({}), StateError);
}

TEST(Environment, ResetIsDeterministicPerSeed) {
  Environment a(WorldConfig{}), b(WorldConfig{});
  EXPECT_EQ(a.reset(5), b.reset(5));
  for (std::size_t i = 0; i < a.terminals().size(); ++i) {
    EXPECT_EQ(a.terminals()[i].position, b.terminals()[i].position);
  }
  Environment c(WorldConfig{});
  c.reset(6);
  EXPECT_NE(a.terminals()[0].position, c.terminals()[0].position);
}

TEST(Environment, EpisodeIndexKeepsPlacement) {
  Environment env(WorldConfig{});
  env.reset(3, 0);
  const auto first = env.terminals();
  env.reset(3, 17);
  for (std::size_t i = 0; i < first.size(); ++i) EXPECT_EQ(env.terminals()[i].position, first[i].position);
}

TEST(Environment, InitialStateMatchesContract) {
  WorldConfig c;
  Environment env(c);
  const auto obs = env.reset(1);
  EXPECT_EQ(obs.size(), env.observation_size());
  EXPECT_EQ(env.uav().position, (Vec2{c.area_side / 2, c.area_side / 2}));
  for (const auto& t : env.terminals()) {
    EXPECT_EQ(t.residual_data, c.packet_size);
    EXPECT_EQ(t.aoi, 0);
    EXPECT_EQ(t.harvested_energy, 0.0);
    EXPECT_GE(t.position.x, 0.0);
    EXPECT_LE(t.position.x, c.area_side);
  }
  for (double v : obs.values) {
    EXPECT_GE(v, -1.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Environment, HoverTraceUsesHoverPower) {
  WorldConfig c;
  c.horizon = 40;
  Environment env(c);
  env.reset(2);
  const Vec2 start = env.uav().position;
  double propulsion = 0.0;
  while (!env.done()) propulsion += env.step({0.1, -0.1}).energy.propulsion;  // below the hover threshold
  EXPECT_EQ(env.uav().position, start);
  EXPECT_NEAR(propulsion, propulsion_power(c.rotor, 0.0) * c.slot_duration * env.slot(), 1e-9);
}

TEST(Environment, MovesOneStepAlongHeading) {
  WorldConfig c;
  Environment env(c);
  env.reset(1);
  const Vec2 start = env.uav().position;
  env.step({0.0, 1.0});
  EXPECT_NEAR(env.uav().position.x, start.x, 1e-12);
  EXPECT_NEAR(env.uav().position.y - start.y, c.uav_speed * c.slot_duration, 1e-12);
}

TEST(Environment, NanActionHovers) {
  Environment env(WorldConfig{});
  env.reset(1);
  const Vec2 start = env.uav().position;
  env.step({std::nan(""), std::nan("")});
  EXPECT_EQ(env.uav().position, start);
}

TEST(Environment, FuzzedEnergyAccounting) {
  WorldConfig c;
  Environment env(c);
  Rng rng(2024);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  int slots = 0;
  std::uint64_t episode = 0;
  double delivered_bits = 0.0;
  env.reset(11, episode);
  while (slots < 10000) {
    if (env.done()) {
      ++episode;
      env.reset(11 + episode, episode);
      delivered_bits = 0.0;
    }
    const double before = env.total_energy();
    std::vector<double> residual_before;
    for (const auto& t : env.terminals()) residual_before.push_back(t.residual_data);

    const auto out = env.step({u(rng), u(rng)});
    ++slots;
    const auto& e = out.energy;
    ASSERT_GE(e.terminal_tx, 0.0);
    ASSERT_GE(e.propulsion, 0.0);
    ASSERT_GE(e.wpt, 0.0);
    ASSERT_GE(e.relay, 0.0);
    const double delta = env.total_energy() - before;
    ASSERT_NEAR(delta, e.total(), 1e-9 * std::max(1.0, e.total()));

    delivered_bits += out.events.bits_delivered;
    ASSERT_LE(delivered_bits, c.n_terminals * c.packet_size * (1.0 + 1e-12));
    for (std::size_t i = 0; i < env.terminals().size(); ++i) {
      const auto& t = env.terminals()[i];
      ASSERT_LE(t.spent_energy, t.harvested_energy) << "terminal " << i << " slot " << env.slot();
      ASSERT_LE(t.residual_data, residual_before[i]);
      ASSERT_GE(t.residual_data, 0.0);
    }
    const auto& f = out.factors;
    for (double v : {f.energy, f.position, f.aoi, f.throughput}) {
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
    }
    ASSERT_TRUE(f.penalty == 1.0 || f.penalty == c.penalty_factor);
    ASSERT_EQ(f.penalty == c.penalty_factor, out.violations.any());
  }
}

TEST(Environment, PositionFactorShrinksTowardCentroid) {
  Environment env(WorldConfig{});
  env.reset(4);
  CentroidPolicy policy;
  double last = 2.0;
  // While nothing is delivered the centroid is fixed, so the factor must fall every slot
  // until the UAV is within one step of it.
  for (int i = 0; i < 15 && env.delivered_count() == 0; ++i) {
    const auto out = env.step(policy.act(env));
    if (env.delivered_count() != 0) break;
    EXPECT_LE(out.factors.position, last + 1e-12);
    last = out.factors.position;
  }
}

TEST(Environment, PositionFactorMinimalAtCentroid) {
  // A serpentine walk visits every point of a 2 m grid; with nothing ever delivered the
  // centroid is fixed, and the smallest factor must be read at the grid point nearest it.
  WorldConfig c;
  c.area_side = 40.0;
  c.n_terminals = 3;
  c.uav_speed = 4.0;  // 2 m per slot
  c.horizon = 1000;
  c.packet_size = 1e15;
  Environment env(c);
  env.reset(9);
  Vec2 centroid;
  for (const auto& t : env.terminals()) {
    centroid.x += t.position.x / 3;
    centroid.y += t.position.y / 3;
  }
  // Start from the (0, 0) corner.
  for (int i = 0; i < 20; ++i) env.step({-1.0, -1.0});
  ASSERT_EQ(env.uav().position, (Vec2{0.0, 0.0}));

  double best = 2.0;
  Vec2 best_at;
  auto visit = [&](Action a) {
    const auto out = env.step(a);
    if (out.factors.position < best) {
      best = out.factors.position;
      best_at = env.uav().position;
    }
  };
  for (int row = 0; row <= 20; ++row) {
    const double dir = (row % 2 == 0) ? 1.0 : -1.0;
    for (int col = 0; col < 20; ++col) visit({dir, 0.0});
    if (row < 20) visit({0.0, 1.0});
  }
  ASSERT_EQ(env.delivered_count(), 0);
  const Vec2 nearest{std::round(centroid.x / 2.0) * 2.0, std::round(centroid.y / 2.0) * 2.0};
  EXPECT_NEAR(best_at.x, nearest.x, 1e-9);
  EXPECT_NEAR(best_at.y, nearest.y, 1e-9);
  EXPECT_NEAR(best, distance(nearest, centroid) / (c.area_side * std::sqrt(2.0)), 1e-12);
}

TEST(Constraints, FlagsEachViolation) {
  WorldConfig c;
  SlotEvents e;
  e.scheduled_terminal = 0;
  e.snr = c.snr_threshold;
  e.rate = c.min_throughput;
  EXPECT_FALSE(constraint_check(c, e).any());
  e.snr = c.snr_threshold * 0.99;
  EXPECT_TRUE(constraint_check(c, e).decode);
  e.rate = c.min_throughput * 0.5;
  EXPECT_TRUE(constraint_check(c, e).throughput);
  SlotEvents idle;
  idle.max_pending_aoi = c.aoi_max + 1;
  const auto v = constraint_check(c, idle);
  EXPECT_TRUE(v.freshness);
  EXPECT_FALSE(v.decode);
  EXPECT_EQ(v.to_string(), "freshness");
}

TEST(Policies, UnknownNameRejected) { EXPECT_THROW(make_policy("teleport", 1), std::invalid_argument); }

TEST(Policies, SameSeedGivesIdenticalTrace) {
  EXPECT_EQ(rollout_trace("random", 5), rollout_trace("random", 5));
  EXPECT_EQ(rollout_trace("greedy-nearest", 5), rollout_trace("greedy-nearest", 5));
}

TEST(Policies, GreedyDeliversAtLeastAsMuchAsHover) {
  for (std::uint64_t seed : {1, 2, 3}) {
    EXPECT_GE(delivered_with("greedy-nearest", seed), delivered_with("hover", seed)) << "seed " << seed;
  }
}

TEST(Trace, HeaderAndRowCount) {
  const auto text = rollout_trace("hover", 1);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "slot,uav_x,uav_y,scheduled_terminal,snr,bits_delivered,e_tx,e_prop,e_wpt,e_relay,violations");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_GT(rows, 0);
}
