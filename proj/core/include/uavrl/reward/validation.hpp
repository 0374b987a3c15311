#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavrl/reward/expression.hpp"
#include "uavrl/reward/factors.hpp"
#include "uavrl/reward/reward_spec.hpp"

namespace uavrl::reward {

enum class Gate {
  kResponseSuccess,
  kJsonValid,
  kSchemaValid,
  kParseValid,
  kReturnTypeNumericFinite,
  kBoundedness,
};

inline constexpr std::array<Gate, 6> kGateOrder{Gate::kResponseSuccess, Gate::kJsonValid, Gate::kSchemaValid,
                                                Gate::kParseValid, Gate::kReturnTypeNumericFinite,
                                                Gate::kBoundedness};

std::string_view to_string(Gate gate);

enum class GateStatus { kPass, kFail, kNotEvaluated };

std::string_view to_string(GateStatus status);

struct GateResult {
  Gate gate = Gate::kResponseSuccess;
  GateStatus status = GateStatus::kNotEvaluated;
  std::string message;
};

/// One result per gate, in kGateOrder. Evaluation stops at the first failure.
struct ValidationReport {
  std::array<GateResult, 6> gates = initial_gates();

  static std::array<GateResult, 6> initial_gates() {
    std::array<GateResult, 6> g;
    for (std::size_t i = 0; i < g.size(); ++i) g[i].gate = kGateOrder[i];
    return g;
  }

  bool accepted() const;
  const GateResult& result(Gate gate) const;
  /// First failing gate, if any.
  std::optional<GateResult> first_failure() const;
  std::string to_json() const;
};

inline constexpr double kBoundednessLimit = 1.0e3;
inline constexpr std::size_t kDefaultProbeCount = 64;

/// Deterministic probe inputs: all-zeros and all-ones corners and each unit factor,
/// every one at penalty 1 and at `penalty`, then seeded uniform interiors.
std::vector<FactorValues> make_probe_battery(double penalty = kDefaultPenalty, std::size_t count = kDefaultProbeCount,
                                             std::uint64_t seed = 0x5eed);

/// Outcome of running every gate over one raw provider response.
struct CandidateValidation {
  ValidationReport report;
  std::optional<RewardSpec> spec;
  std::optional<RewardProgram> program;
};

/// Runs the gates on raw text. `response_error` set means the provider failed.
CandidateValidation validate_response(std::optional<std::string_view> response_text, std::string_view response_error,
                                      const std::vector<FactorValues>& probes);

/// The two program gates alone (return_type_numeric_finite, boundedness).
/// Earlier gates are marked as passed.
ValidationReport validate_program(const RewardProgram& program, const std::vector<FactorValues>& probes);

}  // namespace uavrl::reward
