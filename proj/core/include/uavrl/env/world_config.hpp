#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "uavrl/common/kv_config.hpp"

namespace uavrl::env {

/// Rotary-wing propulsion constants.
struct RotorParams {
  double blade_profile_power = 79.86;  ///< P0, W
  double induced_power = 88.63;        ///< Pi, W
  double tip_speed = 120.0;            ///< U_tip, m/s
  double mean_induced_velocity = 4.03; ///< v0, m/s
  double fuselage_drag_ratio = 0.6;    ///< d0
  double air_density = 1.225;          ///< rho, kg/m^3
  double rotor_solidity = 0.05;        ///< s
  double rotor_disc_area = 0.503;      ///< A, m^2
};

struct WorldConfig {
  double area_side = 300.0;           // m
  int n_terminals = 10;
  double uav_altitude = 100.0;        // m
  double uav_speed = 10.0;            // m/s
  double slot_duration = 0.5;         // s
  int horizon = 200;                  // slots
  double bandwidth = 1.0e6;           // Hz
  double noise_power = 1.0e-15;       // W
  double rician_k = 10.0;
  double pathloss_ref_gain = 1.0e-3;  // at 1 m
  double pathloss_exponent = 2.3;
  double p_wpt = 5.0;                 // W
  double p_relay = 0.5;               // W
  double p_tx_max = 1.0e-6;           // W
  double harvest_efficiency = 0.6;
  double packet_size = 2.0e6;         // bits
  double snr_threshold = 2.0;
  int aoi_max = 150;                  // slots
  double min_throughput = 1.0e5;      // bits/s
  double penalty_factor = 2.0;        // multiplier applied on violating slots
  std::uint64_t seed = 1;
  RotorParams rotor;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
};

/// Reads WorldConfig keys from `kv`, leaving unknown keys unconsumed.
WorldConfig world_config_from(KeyValueConfig& kv, const WorldConfig& defaults = {});

/// Loads and validates a world configuration file; unknown keys are an error.
WorldConfig load_world_config(const std::filesystem::path& path);

/// Serializes every field as `key = value` lines (round-trips through world_config_from).
std::string to_config_text(const WorldConfig& config);

}  // namespace uavrl::env
