#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uavrl/common/random.hpp"
#include "uavrl/env/world_config.hpp"
#include "uavrl/reward/factors.hpp"

namespace uavrl::env {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Vec2&) const = default;
};

double distance(Vec2 a, Vec2 b);

struct TerminalState {
  Vec2 position;
  double residual_data = 0.0;     // bits
  double harvested_energy = 0.0;  // J
  double spent_energy = 0.0;      // J
  int aoi = 0;                    // slots
  bool delivered = false;

  double available_energy() const { return harvested_energy - spent_energy; }
};

struct UavState {
  Vec2 position;
  double propulsion_energy = 0.0;  // J, cumulative
  double comm_energy = 0.0;        // J, cumulative (WPT + relay)
};

/// Flat normalized observation vector; length 2 + 5 * n_terminals.
struct Observation {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  bool operator==(const Observation&) const = default;
};

/// Movement command; each component is clamped to [-1, 1].
struct Action {
  double x = 0.0;
  double y = 0.0;

  Action clamped() const;
};

/// Norm below which an action means "hover".
inline constexpr double kHoverThreshold = 0.3;

struct EnergyBreakdown {
  double terminal_tx = 0.0;
  double propulsion = 0.0;
  double wpt = 0.0;
  double relay = 0.0;

  double total() const { return terminal_tx + propulsion + wpt + relay; }
};

struct Violations {
  bool throughput = false;
  bool decode = false;
  bool freshness = false;

  bool any() const { return throughput || decode || freshness; }
  std::string to_string() const;  // e.g. "decode|freshness", empty when none
  bool operator==(const Violations&) const = default;
};

/// What happened on the uplink during one slot.
struct SlotEvents {
  std::optional<int> scheduled_terminal;
  double snr = 0.0;
  double rate = 0.0;       // bits/s
  double bits_delivered = 0.0;
  double max_pending_aoi = 0.0;  // slots, over terminals still pending after the slot
};

/// Flags constraint violations for one slot's events.
Violations constraint_check(const WorldConfig& config, const SlotEvents& events);

struct StepOutcome {
  Observation next_observation;
  reward::FactorValues factors;
  bool done = false;
  EnergyBreakdown energy;
  Violations violations;
  SlotEvents events;
};

/// Discrete-time UAV data-collection world with wireless power transfer.
///
/// One instance owns its random streams; instances share nothing.
class Environment {
 public:
  explicit Environment(WorldConfig config);

  /// Places terminals from `seed` and restarts the episode. The placement depends only on
  /// `seed`; `episode` selects an independent fading stream so repeated episodes over the
  /// same deployment see fresh channel realizations.
  Observation reset(std::uint64_t seed, std::uint64_t episode = 0);

  /// Advances one slot. Throws StateError when the episode is finished or not started.
  StepOutcome step(Action action);

  Observation observe() const;
  reward::FactorValues factors(const EnergyBreakdown& slot_energy, const SlotEvents& events,
                               const Violations& violations) const;

  const WorldConfig& config() const { return config_; }
  const std::vector<TerminalState>& terminals() const { return terminals_; }
  const UavState& uav() const { return uav_; }
  int slot() const { return slot_; }
  bool done() const { return done_; }
  bool started() const { return started_; }
  int delivered_count() const;

  /// Sum of all energy consumed since reset (terminals + UAV).
  double total_energy() const;

  std::size_t observation_size() const { return 2 + 5 * static_cast<std::size_t>(config_.n_terminals); }
  static constexpr std::size_t kActionSize = 2;

 private:
  WorldConfig config_;
  std::vector<TerminalState> terminals_;
  UavState uav_;
  Rng fading_rng_;
  int slot_ = 0;
  bool done_ = false;
  bool started_ = false;
  double reference_energy_ = 1.0;
  double reference_capacity_ = 1.0;
  double energy_budget_ = 1.0;
};

}  // namespace uavrl::env
