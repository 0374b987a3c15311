#include "uavrl/reward/designer.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace uavrl::reward {

void DesignOptions::validate() const {
  if (candidates < 1) throw std::invalid_argument("candidates must be >= 1");
  if (max_reflections < 0) throw std::invalid_argument("max_reflections must be >= 0");
}

llm::ChatRequest make_design_request(const PromptBundle& prompt, const std::vector<std::string>& feedback,
                                     int candidate, const DesignOptions& options) {
  llm::ChatRequest req;
  req.model = options.model;
  req.temperature = options.temperature;
  req.max_tokens = options.max_tokens;
  req.messages.push_back({"system", prompt.role_definition});
  std::string task = prompt.task_description;
  if (!feedback.empty()) {
    task += "\n\nEarlier candidates were rejected for these reasons; fix them in your new design:\n";
    for (const auto& f : feedback) task += "- " + f + "\n";
  }
  if (options.candidates > 1) {
    task += "\n\nThis is candidate " + std::to_string(candidate + 1) + " of " + std::to_string(options.candidates) +
            ".";
  }
  req.messages.push_back({"user", std::move(task)});
  return req;
}

DesignOutcome design_reward(const PromptBundle& prompt, llm::Provider& provider, const DesignOptions& options) {
  options.validate();
  const auto probes = make_probe_battery(options.penalty);
  DesignOutcome outcome;
  std::vector<std::string> feedback;

  for (int round = 0; round <= options.max_reflections; ++round) {
    outcome.rounds = round + 1;
    std::vector<std::string> round_failures;
    for (int i = 0; i < options.candidates; ++i) {
      const auto request = make_design_request(prompt, feedback, i, options);
      const auto response = provider.complete(request);

      CandidateRecord rec;
      rec.round = round;
      rec.index = i;
      rec.request_digest = request.digest();
      rec.status = response.status;
      rec.response = response.content;

      std::optional<std::string_view> text;
      if (response.ok()) text = response.content;
      auto checked = validate_response(text, response.error, probes);
      rec.report = checked.report;
      outcome.trail.push_back(std::move(rec));

      if (checked.report.accepted()) {
        outcome.spec = std::move(checked.spec);
        outcome.program = std::move(checked.program);
        return outcome;
      }
      // Replaying an unrecorded request fails identically every time.
      if (response.status == llm::CompletionStatus::kMissingFixture) return outcome;
      const auto failure = checked.report.first_failure();
      round_failures.push_back(std::string(to_string(failure->gate)) + ": " + failure->message);
    }
    feedback.insert(feedback.end(), round_failures.begin(), round_failures.end());
  }
  return outcome;
}

std::string DesignOutcome::trail_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& r : trail) {
    entries.push_back({{"round", r.round},
                       {"candidate", r.index},
                       {"request_digest", r.request_digest},
                       {"status", llm::to_string(r.status)},
                       {"response", r.response},
                       {"report", nlohmann::json::parse(r.report.to_json())}});
  }
  nlohmann::json j = {{"accepted", accepted()}, {"rounds", rounds}, {"candidates", std::move(entries)}};
  if (program) j["expression"] = program->canonical();
  return j.dump(2);
}

void save_design_outcome(const DesignOutcome& outcome, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  if (outcome.spec) save_reward_spec(*outcome.spec, dir / "reward_program.json");
  std::ofstream out(dir / "design_trail.json");
  if (!out) throw std::runtime_error("cannot write " + (dir / "design_trail.json").string());
  out << outcome.trail_json() << '\n';
}

}  // namespace uavrl::reward
