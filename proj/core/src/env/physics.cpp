#include "uavrl/env/physics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uavrl::env {

double rician_power(double k, Rng& rng) {
  if (std::isinf(k)) return 1.0;
  const double los = std::sqrt(k / (k + 1.0));
  const double sigma = std::sqrt(1.0 / (2.0 * (k + 1.0)));  // per real dimension
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = los + sigma * normal(rng);
  const double im = sigma * normal(rng);
  return re * re + im * im;
}

double mean_channel_gain(const WorldConfig& config, double distance_3d) {
  if (!(distance_3d > 0.0)) throw std::invalid_argument("channel distance must be positive");
  return config.pathloss_ref_gain * std::pow(distance_3d, -config.pathloss_exponent);
}

double channel_gain(const WorldConfig& config, double distance_3d, Rng& rng) {
  return mean_channel_gain(config, distance_3d) * rician_power(config.rician_k, rng);
}

double snr(const WorldConfig& config, double gain, double p_tx) {
  return p_tx * gain / config.noise_power;
}

double uplink_rate(const WorldConfig& config, double gain, double p_tx) {
  if (gain < 0.0) throw std::invalid_argument("channel gain must be non-negative");
  if (!(p_tx > 0.0)) throw std::invalid_argument("transmit power must be positive");
  if (p_tx > config.p_tx_max) throw std::invalid_argument("transmit power exceeds terminal power limit");
  return config.bandwidth * std::log2(1.0 + snr(config, gain, p_tx));
}

double propulsion_power(const RotorParams& r, double speed) {
  if (speed < 0.0) throw std::invalid_argument("speed must be non-negative");
  const double v2 = speed * speed;
  const double v0_2 = r.mean_induced_velocity * r.mean_induced_velocity;
  const double blade = r.blade_profile_power * (1.0 + 3.0 * v2 / (r.tip_speed * r.tip_speed));
  const double induced =
      r.induced_power * std::sqrt(std::sqrt(1.0 + v2 * v2 / (4.0 * v0_2 * v0_2)) - v2 / (2.0 * v0_2));
  const double parasite =
      0.5 * r.fuselage_drag_ratio * r.air_density * r.rotor_solidity * r.rotor_disc_area * v2 * speed;
  return blade + induced + parasite;
}

double max_propulsion_power(const RotorParams& rotor, double max_speed) {
  constexpr int kSamples = 1000;
  double best = propulsion_power(rotor, 0.0);
  for (int i = 1; i <= kSamples; ++i) {
    best = std::max(best, propulsion_power(rotor, max_speed * i / kSamples));
  }
  return best;
}

double harvest(const WorldConfig& config, double gain, double duration) {
  if (gain < 0.0) throw std::invalid_argument("channel gain must be non-negative");
  if (!(duration > 0.0)) throw std::invalid_argument("harvest duration must be positive");
  return config.harvest_efficiency * config.p_wpt * gain * duration;
}

double reference_slot_energy(const WorldConfig& config) {
  return (max_propulsion_power(config.rotor, config.uav_speed) + config.p_wpt + config.p_relay +
          config.p_tx_max) *
         config.slot_duration;
}

double reference_slot_capacity(const WorldConfig& config) {
  const double gain = mean_channel_gain(config, config.uav_altitude);
  return config.bandwidth * std::log2(1.0 + snr(config, gain, config.p_tx_max)) * config.slot_duration;
}

}  // namespace uavrl::env
