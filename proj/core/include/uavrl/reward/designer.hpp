#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "uavrl/llm/provider.hpp"
#include "uavrl/reward/prompt.hpp"
#include "uavrl/reward/validation.hpp"

namespace uavrl::reward {

struct DesignOptions {
  int candidates = 3;       // k per round
  int max_reflections = 5;  // extra rounds after the first
  std::string model = "gpt-4o";
  double temperature = 0.7;
  int max_tokens = 1024;
  double penalty = kDefaultPenalty;  // probe battery penalty value

  void validate() const;
};

struct CandidateRecord {
  int round = 0;
  int index = 0;
  std::string request_digest;
  llm::CompletionStatus status = llm::CompletionStatus::kOk;
  std::string response;
  ValidationReport report;
};

struct DesignOutcome {
  std::optional<RewardSpec> spec;
  std::optional<RewardProgram> program;
  std::vector<CandidateRecord> trail;
  int rounds = 0;

  bool accepted() const { return program.has_value(); }
  std::string trail_json() const;
};

/// Builds the chat request for one candidate. `feedback` holds failure messages
/// from earlier rounds; empty on the first round.
llm::ChatRequest make_design_request(const PromptBundle& prompt, const std::vector<std::string>& feedback,
                                     int candidate, const DesignOptions& options);

/// Requests k candidates per round and returns the first one passing every gate.
/// When a round yields nothing, its failure messages are appended to the prompt
/// for the next round. Exhaustion returns an outcome with no program; so does a
/// missing fixture, immediately.
DesignOutcome design_reward(const PromptBundle& prompt, llm::Provider& provider, const DesignOptions& options = {});

/// Writes <dir>/reward_program.json (when accepted) and <dir>/design_trail.json.
void save_design_outcome(const DesignOutcome& outcome, const std::filesystem::path& dir);

}  // namespace uavrl::reward
