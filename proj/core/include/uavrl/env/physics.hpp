#pragma once

#include "uavrl/common/random.hpp"
#include "uavrl/env/world_config.hpp"

namespace uavrl::env {

/// Unit-mean-power Rician small-scale power |h|^2 with factor `k`.
/// Infinite `k` is the pure line-of-sight limit and returns exactly 1.
double rician_power(double k, Rng& rng);

/// Large-scale gain times Rician small-scale power for a link of length `distance_3d`.
double channel_gain(const WorldConfig& config, double distance_3d, Rng& rng);

/// Deterministic part of channel_gain (path loss only).
double mean_channel_gain(const WorldConfig& config, double distance_3d);

/// Shannon rate of the uplink. Rejects p_tx above the terminal power limit.
double uplink_rate(const WorldConfig& config, double gain, double p_tx);

double snr(const WorldConfig& config, double gain, double p_tx);

/// Rotary-wing propulsion power at horizontal speed `speed` (m/s).
double propulsion_power(const RotorParams& rotor, double speed);

/// Largest propulsion power on [0, max_speed], located by dense sampling.
double max_propulsion_power(const RotorParams& rotor, double max_speed);

/// Linear energy harvesting from the UAV's wireless power transfer.
double harvest(const WorldConfig& config, double gain, double duration);

/// Upper bound on the energy any single slot can consume.
double reference_slot_energy(const WorldConfig& config);

/// Bits a terminal directly below the UAV could send in one slot with unit fading.
double reference_slot_capacity(const WorldConfig& config);

}  // namespace uavrl::env
