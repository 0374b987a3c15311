#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace uavrl::reward {

/// Per-slot normalized quantities a reward expression may reference.
struct FactorValues {
  double energy = 0.0;      ///< slot energy / reference max-slot energy, in [0,1]
  double position = 0.0;    ///< UAV distance to centroid of pending terminals / area diagonal
  double aoi = 0.0;         ///< max pending age of information / aoi_max, clamped to [0,1]
  double throughput = 0.0;  ///< delivered bits / reference slot capacity, clamped to [0,1]
  double penalty = 1.0;     ///< 1, or the penalty multiplier when any constraint is violated

  bool operator==(const FactorValues&) const = default;
};

/// Default multiplier applied when a slot violates a constraint.
inline constexpr double kDefaultPenalty = 2.0;

struct FactorInfo {
  std::string_view name;
  std::string_view description;
};

/// The factor registry, in canonical order.
inline constexpr std::array<FactorInfo, 5> kFactorRegistry{{
    {"energy", "total system energy spent in the slot (terminal transmission + UAV propulsion + "
               "wireless power transfer + relay), normalized by the largest possible slot energy; range [0,1]"},
    {"position", "horizontal distance from the UAV to the centroid of terminals that still have data, "
                 "normalized by the area diagonal; 0 when no terminal is pending; range [0,1]"},
    {"aoi", "largest age of information among pending terminals as a fraction of the freshness deadline; "
            "range [0,1]"},
    {"throughput", "bits delivered in the slot as a fraction of the reference slot capacity; range [0,1]"},
    {"penalty", "constraint multiplier: 1 when the slot meets every constraint, a fixed value > 1 when "
                "throughput, decoding reliability, or data freshness is violated"},
}};

/// Looks up a registered factor by name.
std::optional<double> factor_value(const FactorValues& values, std::string_view name);

bool is_registered_factor(std::string_view name);

}  // namespace uavrl::reward
