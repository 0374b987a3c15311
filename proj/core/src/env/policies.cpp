#include "uavrl/env/policies.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace uavrl::env {
namespace {

Action toward(Vec2 from, Vec2 to, double arrive_radius) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  const double d = std::hypot(dx, dy);
  if (d <= arrive_radius) return {};
  return {dx / d, dy / d};
}

}  // namespace

Action RandomPolicy::act(const Environment&) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double x = u(rng_);
  return {x, u(rng_)};
}

Action GreedyNearestPolicy::act(const Environment& env) {
  const auto& uav = env.uav().position;
  const TerminalState* best = nullptr;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& t : env.terminals()) {
    if (t.delivered) continue;
    const double d = distance(t.position, uav);
    if (d < best_d) {
      best_d = d;
      best = &t;
    }
  }
  if (!best) return {};
  return toward(uav, best->position, env.config().uav_speed * env.config().slot_duration);
}

Action CentroidPolicy::act(const Environment& env) {
  Vec2 c;
  int n = 0;
  for (const auto& t : env.terminals()) {
    if (t.delivered) continue;
    c.x += t.position.x;
    c.y += t.position.y;
    ++n;
  }
  if (n == 0) return {};
  c.x /= n;
  c.y /= n;
  return toward(env.uav().position, c, env.config().uav_speed * env.config().slot_duration);
}

std::unique_ptr<ScriptedPolicy> make_policy(std::string_view name, std::uint64_t seed) {
  if (name == "hover") return std::make_unique<HoverPolicy>();
  if (name == "random") return std::make_unique<RandomPolicy>(seed);
  if (name == "greedy-nearest") return std::make_unique<GreedyNearestPolicy>();
  if (name == "centroid") return std::make_unique<CentroidPolicy>();
  throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
}

}  // namespace uavrl::env
