#include "uavrl/reward/validation.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "json.hpp"
#include "uavrl/common/random.hpp"

namespace uavrl::reward {

std::string_view to_string(Gate gate) {
  switch (gate) {
    case Gate::kResponseSuccess: return "response_success";
    case Gate::kJsonValid: return "json_valid";
    case Gate::kSchemaValid: return "schema_valid";
    case Gate::kParseValid: return "parse_valid";
    case Gate::kReturnTypeNumericFinite: return "return_type_numeric_finite";
    case Gate::kBoundedness: return "boundedness";
  }
  return "unknown";
}

std::string_view to_string(GateStatus status) {
  switch (status) {
    case GateStatus::kPass: return "pass";
    case GateStatus::kFail: return "fail";
    case GateStatus::kNotEvaluated: return "not_evaluated";
  }
  return "unknown";
}

bool ValidationReport::accepted() const {
  for (const auto& g : gates) {
    if (g.status != GateStatus::kPass) return false;
  }
  return true;
}

const GateResult& ValidationReport::result(Gate gate) const { return gates[static_cast<std::size_t>(gate)]; }

std::optional<GateResult> ValidationReport::first_failure() const {
  for (const auto& g : gates) {
    if (g.status == GateStatus::kFail) return g;
  }
  return std::nullopt;
}

std::string ValidationReport::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& g : gates) {
    j.push_back({{"gate", to_string(g.gate)}, {"status", to_string(g.status)}, {"message", g.message}});
  }
  return nlohmann::json{{"accepted", accepted()}, {"gates", j}}.dump();
}

std::vector<FactorValues> make_probe_battery(double penalty, std::size_t count, std::uint64_t seed) {
  std::vector<FactorValues> probes;
  for (double p : {1.0, penalty}) {
    probes.push_back({0.0, 0.0, 0.0, 0.0, p});
    probes.push_back({1.0, 1.0, 1.0, 1.0, p});
    probes.push_back({1.0, 0.0, 0.0, 0.0, p});
    probes.push_back({0.0, 1.0, 0.0, 0.0, p});
    probes.push_back({0.0, 0.0, 1.0, 0.0, p});
    probes.push_back({0.0, 0.0, 0.0, 1.0, p});
  }
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; probes.size() < count; ++i) {
    FactorValues v;
    v.energy = unit(rng);
    v.position = unit(rng);
    v.aoi = unit(rng);
    v.throughput = unit(rng);
    v.penalty = (i % 2 == 0) ? 1.0 : penalty;
    probes.push_back(v);
  }
  return probes;
}

namespace {

std::string describe(const FactorValues& v) {
  std::ostringstream s;
  s << "{energy=" << v.energy << ", position=" << v.position << ", aoi=" << v.aoi
    << ", throughput=" << v.throughput << ", penalty=" << v.penalty << "}";
  return s.str();
}

void set(ValidationReport& r, Gate g, GateStatus s, std::string msg = {}) {
  auto& slot = r.gates[static_cast<std::size_t>(g)];
  slot.status = s;
  slot.message = std::move(msg);
}

// Returns false after recording a failure.
bool run_program_gates(ValidationReport& report, const RewardProgram& program,
                       const std::vector<FactorValues>& probes) {
  std::vector<double> values;
  values.reserve(probes.size());
  for (const auto& p : probes) {
    const double v = program.cost(p);
    if (!std::isfinite(v)) {
      set(report, Gate::kReturnTypeNumericFinite, GateStatus::kFail,
          "expression evaluates to a non-finite value on probe " + describe(p));
      return false;
    }
    values.push_back(v);
  }
  set(report, Gate::kReturnTypeNumericFinite, GateStatus::kPass);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::abs(values[i]) > kBoundednessLimit) {
      std::ostringstream msg;
      msg << "expression magnitude " << values[i] << " exceeds " << kBoundednessLimit << " on probe "
          << describe(probes[i]);
      set(report, Gate::kBoundedness, GateStatus::kFail, msg.str());
      return false;
    }
  }
  set(report, Gate::kBoundedness, GateStatus::kPass);
  return true;
}

}  // namespace

CandidateValidation validate_response(std::optional<std::string_view> response_text, std::string_view response_error,
                                      const std::vector<FactorValues>& probes) {
  CandidateValidation out;
  auto& r = out.report;
  if (!response_text) {
    set(r, Gate::kResponseSuccess, GateStatus::kFail,
        response_error.empty() ? "provider returned no content" : std::string(response_error));
    return out;
  }
  set(r, Gate::kResponseSuccess, GateStatus::kPass);

  try {
    out.spec = parse_reward_spec(*response_text);
  } catch (const SpecError& e) {
    const bool json_stage = e.stage() == "json_valid";
    if (json_stage) {
      set(r, Gate::kJsonValid, GateStatus::kFail, e.what());
    } else {
      set(r, Gate::kJsonValid, GateStatus::kPass);
      set(r, Gate::kSchemaValid, GateStatus::kFail, e.what());
    }
    return out;
  }
  set(r, Gate::kJsonValid, GateStatus::kPass);
  set(r, Gate::kSchemaValid, GateStatus::kPass);

  try {
    out.program = RewardProgram::compile(out.spec->expression);
  } catch (const CompileError& e) {
    set(r, Gate::kParseValid, GateStatus::kFail, e.what());
    return out;
  }
  set(r, Gate::kParseValid, GateStatus::kPass);

  if (!run_program_gates(r, *out.program, probes)) out.program.reset();
  return out;
}

ValidationReport validate_program(const RewardProgram& program, const std::vector<FactorValues>& probes) {
  ValidationReport r;
  set(r, Gate::kResponseSuccess, GateStatus::kPass);
  set(r, Gate::kJsonValid, GateStatus::kPass);
  set(r, Gate::kSchemaValid, GateStatus::kPass);
  set(r, Gate::kParseValid, GateStatus::kPass);
  run_program_gates(r, program, probes);
  return r;
}

}  // namespace uavrl::reward
