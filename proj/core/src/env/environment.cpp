#include "uavrl/env/environment.hpp"

#include <algorithm>
#include <cmath>

#include "uavrl/common/errors.hpp"
#include "uavrl/env/physics.hpp"

namespace uavrl::env {

double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

Action Action::clamped() const {
  const auto clamp1 = [](double v) { return std::isnan(v) ? 0.0 : std::clamp(v, -1.0, 1.0); };
  return {clamp1(x), clamp1(y)};
}

std::string Violations::to_string() const {
  std::string out;
  const auto add = [&out](bool flag, const char* name) {
    if (!flag) return;
    if (!out.empty()) out += '|';
    out += name;
  };
  add(throughput, "throughput");
  add(decode, "decode");
  add(freshness, "freshness");
  return out;
}

Violations constraint_check(const WorldConfig& config, const SlotEvents& events) {
  Violations v;
  if (events.scheduled_terminal) {
    v.decode = events.snr < config.snr_threshold;
    v.throughput = events.rate < config.min_throughput;
  }
  v.freshness = events.max_pending_aoi > config.aoi_max;
  return v;
}

Environment::Environment(WorldConfig config) : config_(std::move(config)) {
  config_.validate();
  reference_energy_ = reference_slot_energy(config_);
  reference_capacity_ = reference_slot_capacity(config_);
  energy_budget_ = config_.p_tx_max * config_.slot_duration *
                   std::max(1.0, config_.packet_size / reference_capacity_);
}

Observation Environment::reset(std::uint64_t seed, std::uint64_t episode) {
  Rng placement(derive_seed(seed, 0));
  std::uniform_real_distribution<double> coord(0.0, config_.area_side);
  terminals_.assign(static_cast<std::size_t>(config_.n_terminals), TerminalState{});
  for (auto& t : terminals_) {
    t.position.x = coord(placement);
    t.position.y = coord(placement);
    t.residual_data = config_.packet_size;
  }
  uav_ = UavState{};
  uav_.position = {config_.area_side / 2.0, config_.area_side / 2.0};
  fading_rng_.seed(derive_seed(derive_seed(seed, 1), episode));
  slot_ = 0;
  done_ = false;
  started_ = true;
  return observe();
}

StepOutcome Environment::step(Action action) {
  if (!started_) throw StateError("step() called before reset()");
  if (done_) throw StateError("step() called on a finished episode");

  const auto& c = config_;
  const double tau = c.slot_duration;
  StepOutcome out;
  auto& energy = out.energy;
  auto& events = out.events;

  // Movement: constant speed along the commanded heading, or hover.
  const Action a = action.clamped();
  const Vec2 before = uav_.position;
  if (std::hypot(a.x, a.y) >= kHoverThreshold) {
    const double heading = std::atan2(a.y, a.x);
    const double step_len = c.uav_speed * tau;
    uav_.position.x = std::clamp(before.x + step_len * std::cos(heading), 0.0, c.area_side);
    uav_.position.y = std::clamp(before.y + step_len * std::sin(heading), 0.0, c.area_side);
  }
  const double flown_speed = distance(before, uav_.position) / tau;
  energy.propulsion = propulsion_power(c.rotor, flown_speed) * tau;

  // Wireless power transfer to every pending terminal; one fading draw per link per slot.
  std::vector<double> gains(terminals_.size(), 0.0);
  bool any_pending = false;
  for (std::size_t i = 0; i < terminals_.size(); ++i) {
    auto& t = terminals_[i];
    if (t.delivered) continue;
    any_pending = true;
    const double horizontal = distance(t.position, uav_.position);
    gains[i] = channel_gain(c, std::hypot(horizontal, c.uav_altitude), fading_rng_);
    t.harvested_energy += harvest(c, gains[i], tau);
  }
  energy.wpt = any_pending ? c.p_wpt * tau : 0.0;

  // Best-gain TDMA among terminals that can afford their next transmission at p_tx_max:
  // a full slot, or just the airtime that finishes the packet when that is shorter.
  std::optional<std::size_t> chosen;
  for (std::size_t i = 0; i < terminals_.size(); ++i) {
    const auto& t = terminals_[i];
    if (t.delivered) continue;
    const double rate = uplink_rate(c, gains[i], c.p_tx_max);
    const double airtime = rate > 0.0 ? std::min(tau, t.residual_data / rate) : tau;
    if (t.available_energy() < c.p_tx_max * airtime) continue;
    if (!chosen || gains[i] > gains[*chosen]) chosen = i;
  }
  if (chosen) {
    auto& t = terminals_[*chosen];
    events.scheduled_terminal = static_cast<int>(*chosen);
    events.snr = snr(c, gains[*chosen], c.p_tx_max);
    events.rate = uplink_rate(c, gains[*chosen], c.p_tx_max);
    double airtime = tau;
    if (events.snr >= c.snr_threshold) {
      const double bits = std::min(t.residual_data, events.rate * tau);
      airtime = std::min(tau, bits / events.rate);
      events.bits_delivered = bits;
      t.residual_data -= bits;
      if (t.residual_data <= 0.0) {
        t.residual_data = 0.0;
        t.delivered = true;
      }
    }
    energy.terminal_tx = c.p_tx_max * airtime;
    t.spent_energy += energy.terminal_tx;
    if (events.bits_delivered > 0.0) energy.relay = c.p_relay * tau;
  }

  for (auto& t : terminals_) {
    if (t.delivered) continue;
    ++t.aoi;
    events.max_pending_aoi = std::max(events.max_pending_aoi, static_cast<double>(t.aoi));
  }

  uav_.propulsion_energy += energy.propulsion;
  uav_.comm_energy += energy.wpt + energy.relay;
  ++slot_;
  done_ = delivered_count() == c.n_terminals || slot_ >= c.horizon;

  out.violations = constraint_check(c, events);
  out.factors = factors(energy, events, out.violations);
  out.done = done_;
  out.next_observation = observe();
  return out;
}

reward::FactorValues Environment::factors(const EnergyBreakdown& slot_energy, const SlotEvents& events,
                                          const Violations& violations) const {
  const auto& c = config_;
  reward::FactorValues f;
  f.energy = std::clamp(slot_energy.total() / reference_energy_, 0.0, 1.0);

  Vec2 centroid;
  int pending = 0;
  double max_aoi = 0.0;
  for (const auto& t : terminals_) {
    if (t.delivered) continue;
    centroid.x += t.position.x;
    centroid.y += t.position.y;
    max_aoi = std::max(max_aoi, static_cast<double>(t.aoi));
    ++pending;
  }
  if (pending > 0) {
    centroid.x /= pending;
    centroid.y /= pending;
    f.position = std::clamp(distance(centroid, uav_.position) / (c.area_side * std::sqrt(2.0)), 0.0, 1.0);
  }
  f.aoi = std::min(1.0, max_aoi / c.aoi_max);
  f.throughput = std::clamp(events.bits_delivered / reference_capacity_, 0.0, 1.0);
  f.penalty = violations.any() ? c.penalty_factor : 1.0;
  return f;
}

Observation Environment::observe() const {
  const auto& c = config_;
  Observation obs;
  obs.values.reserve(observation_size());
  obs.values.push_back(2.0 * uav_.position.x / c.area_side - 1.0);
  obs.values.push_back(2.0 * uav_.position.y / c.area_side - 1.0);
  for (const auto& t : terminals_) {
    obs.values.push_back((t.position.x - uav_.position.x) / c.area_side);
    obs.values.push_back((t.position.y - uav_.position.y) / c.area_side);
    obs.values.push_back(t.residual_data / c.packet_size);
    obs.values.push_back(std::min(1.0, static_cast<double>(t.aoi) / c.aoi_max));
    obs.values.push_back(std::min(1.0, t.available_energy() / energy_budget_));
  }
  return obs;
}

int Environment::delivered_count() const {
  return static_cast<int>(std::count_if(terminals_.begin(), terminals_.end(),
                                        [](const TerminalState& t) { return t.delivered; }));
}

double Environment::total_energy() const {
  double sum = uav_.propulsion_energy + uav_.comm_energy;
  for (const auto& t : terminals_) sum += t.spent_energy;
  return sum;
}

}  // namespace uavrl::env
