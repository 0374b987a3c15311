#include "uavrl/env/world_config.hpp"

#include <cmath>
#include <sstream>

#include "uavrl/common/errors.hpp"

namespace uavrl::env {
namespace {

void require_positive(const char* field, double v) {
  if (!(v > 0.0) || std::isnan(v)) throw ConfigError(field, "must be strictly positive");
}

}  // namespace

void WorldConfig::validate() const {
  require_positive("area_side", area_side);
  if (n_terminals < 1) throw ConfigError("n_terminals", "must be at least 1");
  require_positive("uav_altitude", uav_altitude);
  require_positive("uav_speed", uav_speed);
  require_positive("slot_duration", slot_duration);
  if (horizon < 1) throw ConfigError("horizon", "must be at least 1");
  require_positive("bandwidth", bandwidth);
  require_positive("noise_power", noise_power);
  if (!(rician_k >= 0.0)) throw ConfigError("rician_k", "must be non-negative");
  require_positive("pathloss_ref_gain", pathloss_ref_gain);
  require_positive("pathloss_exponent", pathloss_exponent);
  require_positive("p_wpt", p_wpt);
  require_positive("p_relay", p_relay);
  require_positive("p_tx_max", p_tx_max);
  require_positive("harvest_efficiency", harvest_efficiency);
  if (harvest_efficiency > 1.0) throw ConfigError("harvest_efficiency", "must not exceed 1");
  require_positive("packet_size", packet_size);
  require_positive("snr_threshold", snr_threshold);
  if (aoi_max < 1) throw ConfigError("aoi_max", "must be at least 1");
  require_positive("min_throughput", min_throughput);
  if (!(penalty_factor >= 1.0)) throw ConfigError("penalty_factor", "must be at least 1");
  if (!(uav_speed * slot_duration < area_side)) {
    throw ConfigError("uav_speed", "one slot of flight must not cross the whole area");
  }
}

WorldConfig world_config_from(KeyValueConfig& kv, const WorldConfig& d) {
  WorldConfig c = d;
  c.area_side = kv.take_double("area_side", d.area_side);
  c.n_terminals = static_cast<int>(kv.take_int("n_terminals", d.n_terminals));
  c.uav_altitude = kv.take_double("uav_altitude", d.uav_altitude);
  c.uav_speed = kv.take_double("uav_speed", d.uav_speed);
  c.slot_duration = kv.take_double("slot_duration", d.slot_duration);
  c.horizon = static_cast<int>(kv.take_int("horizon", d.horizon));
  c.bandwidth = kv.take_double("bandwidth", d.bandwidth);
  c.noise_power = kv.take_double("noise_power", d.noise_power);
  c.rician_k = kv.take_double("rician_k", d.rician_k);
  c.pathloss_ref_gain = kv.take_double("pathloss_ref_gain", d.pathloss_ref_gain);
  c.pathloss_exponent = kv.take_double("pathloss_exponent", d.pathloss_exponent);
  c.p_wpt = kv.take_double("p_wpt", d.p_wpt);
  c.p_relay = kv.take_double("p_relay", d.p_relay);
  c.p_tx_max = kv.take_double("p_tx_max", d.p_tx_max);
  c.harvest_efficiency = kv.take_double("harvest_efficiency", d.harvest_efficiency);
  c.packet_size = kv.take_double("packet_size", d.packet_size);
  c.snr_threshold = kv.take_double("snr_threshold", d.snr_threshold);
  c.aoi_max = static_cast<int>(kv.take_int("aoi_max", d.aoi_max));
  c.min_throughput = kv.take_double("min_throughput", d.min_throughput);
  c.penalty_factor = kv.take_double("penalty_factor", d.penalty_factor);
  c.seed = kv.take_uint("seed", d.seed);
  return c;
}

WorldConfig load_world_config(const std::filesystem::path& path) {
  auto kv = KeyValueConfig::load(path);
  auto config = world_config_from(kv);
  kv.expect_all_consumed();
  config.validate();
  return config;
}

std::string to_config_text(const WorldConfig& c) {
  std::ostringstream out;
  out << "area_side = " << format_double(c.area_side) << '\n'
      << "n_terminals = " << c.n_terminals << '\n'
      << "uav_altitude = " << format_double(c.uav_altitude) << '\n'
      << "uav_speed = " << format_double(c.uav_speed) << '\n'
      << "slot_duration = " << format_double(c.slot_duration) << '\n'
      << "horizon = " << c.horizon << '\n'
      << "bandwidth = " << format_double(c.bandwidth) << '\n'
      << "noise_power = " << format_double(c.noise_power) << '\n'
      << "rician_k = " << format_double(c.rician_k) << '\n'
      << "pathloss_ref_gain = " << format_double(c.pathloss_ref_gain) << '\n'
      << "pathloss_exponent = " << format_double(c.pathloss_exponent) << '\n'
      << "p_wpt = " << format_double(c.p_wpt) << '\n'
      << "p_relay = " << format_double(c.p_relay) << '\n'
      << "p_tx_max = " << format_double(c.p_tx_max) << '\n'
      << "harvest_efficiency = " << format_double(c.harvest_efficiency) << '\n'
      << "packet_size = " << format_double(c.packet_size) << '\n'
      << "snr_threshold = " << format_double(c.snr_threshold) << '\n'
      << "aoi_max = " << c.aoi_max << '\n'
      << "min_throughput = " << format_double(c.min_throughput) << '\n'
      << "penalty_factor = " << format_double(c.penalty_factor) << '\n'
      << "seed = " << c.seed << '\n';
  return out.str();
}

}  // namespace uavrl::env
