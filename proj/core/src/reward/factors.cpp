#include "uavrl/reward/factors.hpp"

namespace uavrl::reward {

std::optional<double> factor_value(const FactorValues& v, std::string_view name) {
  if (name == "energy") return v.energy;
  if (name == "position") return v.position;
  if (name == "aoi") return v.aoi;
  if (name == "throughput") return v.throughput;
  if (name == "penalty") return v.penalty;
  return std::nullopt;
}

bool is_registered_factor(std::string_view name) {
  for (const auto& f : kFactorRegistry) {
    if (f.name == name) return true;
  }
  return false;
}

}  // namespace uavrl::reward
