#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavrl/agents/agent_config.hpp"
#include "uavrl/env/world_config.hpp"
#include "uavrl/reward/expression.hpp"

namespace uavrl::bench {

enum class RewardKind { kManual, kLlmProgram, kPaperFixture };

struct RewardSource {
  RewardKind kind = RewardKind::kManual;
  std::filesystem::path program_path;  // kLlmProgram only

  /// "manual", "paper_fixture" or "llm_program".
  std::string label() const;
  bool is_manual() const { return kind == RewardKind::kManual; }
};

/// Parses "manual", "paper_fixture" or "llm_program"; throws ConfigError otherwise.
RewardSource parse_reward_source(const std::string& text, const std::filesystem::path& program_path = {});

struct Arm {
  agents::Algorithm algorithm = agents::Algorithm::kTd3;
  RewardSource reward;

  /// e.g. "td3-manual".
  std::string name() const;
};

/// Parses "td3:manual,ddpg:paper_fixture,..." into arms.
std::vector<Arm> parse_arms(const std::string& text, const std::filesystem::path& program_path = {});

/// Per-slot reward function used during training.
class RewardFunction {
 public:
  explicit RewardFunction(const RewardSource& source, double manual_weight = 1.0);
  double operator()(const reward::FactorValues& values) const;
  const std::string& description() const { return description_; }

 private:
  std::optional<reward::RewardProgram> program_;
  double manual_weight_;
  std::string description_;
};

struct ExperimentConfig {
  env::WorldConfig world;
  agents::AgentConfig agent;
  std::vector<Arm> arms;
  int episodes = 200;
  std::vector<std::uint64_t> seeds{1, 2, 3};
  std::filesystem::path output_dir = "out";
  int workers = 1;
  int final_window = 20;
  double manual_weight = 1.0;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
};

/// The acceptance-scale settings: calibrated world, 64x64 networks, tau 0.02,
/// all four algorithm x {manual, paper_fixture} arms.
ExperimentConfig default_experiment();

/// Reads world keys, `agent.*` keys and the experiment keys
/// (arms, episodes, seeds, output_dir, workers, final_window, manual_weight, reward_program)
/// over `defaults`. Unknown keys are an error.
ExperimentConfig load_experiment_config(const std::filesystem::path& path,
                                        const ExperimentConfig& defaults = default_experiment());
ExperimentConfig experiment_config_from(KeyValueConfig& kv, const ExperimentConfig& defaults = default_experiment());

std::string to_config_text(const ExperimentConfig& config);

struct EpisodeRow {
  int episode = 0;
  int slots = 0;
  double energy_total = 0.0;  // J
  double energy_tx = 0.0;
  double energy_propulsion = 0.0;
  double energy_wpt = 0.0;
  double energy_relay = 0.0;
  int violations_throughput = 0;
  int violations_decode = 0;
  int violations_freshness = 0;
  int packets_delivered = 0;
  double cumulative_reward = 0.0;

  bool operator==(const EpisodeRow&) const = default;
};

struct RunRecord {
  std::string arm;
  std::uint64_t seed = 0;
  std::string config_digest;
  std::vector<EpisodeRow> rows;

  bool operator==(const RunRecord&) const = default;

  /// Mean total energy over the first / last `window` episodes.
  double first_window_energy(int window = 20) const;
  double final_window_energy(int window = 20) const;
};

/// Raised when training produces a non-finite reward, loss or network output.
class TrainingAborted : public std::runtime_error {
 public:
  TrainingAborted(const std::string& message, std::string snapshot)
      : std::runtime_error(message), snapshot_(std::move(snapshot)) {}
  const std::string& snapshot() const { return snapshot_; }

 private:
  std::string snapshot_;
};

using ProgressFn = std::function<void(const std::string&)>;

/// Digest identifying (world, agent, arm, episodes); the seed is recorded separately.
std::string config_digest(const ExperimentConfig& config, const Arm& arm);

/// One training run. Deterministic in (config, arm, seed).
RunRecord train(const ExperimentConfig& config, const Arm& arm, std::uint64_t seed, const ProgressFn& progress = {});

struct ArmSummary {
  std::string arm;
  std::vector<std::uint64_t> seeds;
  std::vector<double> first_window;  // per seed
  std::vector<double> final_window;  // per seed
  double first_median = 0.0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;

  double iqr() const { return q3 - q1; }
  /// median final-window / median first-window energy.
  double convergence_ratio() const { return median / first_median; }
};

struct Improvement {
  std::string algorithm;
  std::string manual_arm;
  std::string llm_arm;
  double manual_median = 0.0;
  double llm_median = 0.0;
  double improvement = 0.0;  // (manual - llm) / manual
};

struct ComparisonReport {
  std::vector<RunRecord> runs;
  std::vector<ArmSummary> arms;
  std::vector<Improvement> improvements;

  const ArmSummary& arm(const std::string& name) const;
};

/// Median and quartiles with linear interpolation between order statistics.
double quantile(std::vector<double> values, double q);

/// Groups runs by arm (first-appearance order) and computes summaries. Every arm must
/// cover the same seed set; throws std::invalid_argument otherwise. An improvement is
/// reported for each non-manual arm whose algorithm also has a manual arm.
ComparisonReport aggregate(std::vector<RunRecord> runs, const std::vector<Arm>& arms, int final_window = 20);

/// Runs every arm on every seed (config.workers threads) and aggregates.
ComparisonReport compare(const ExperimentConfig& config, const ProgressFn& progress = {});

struct SweepCell {
  double packet_size = 0.0;
  ArmSummary summary;
};

struct SweepTable {
  std::vector<double> sizes;
  std::vector<SweepCell> cells;  // size-major, arms in config order
  std::vector<ComparisonReport> reports;

  const ArmSummary& at(double packet_size, const std::string& arm) const;
};

inline const std::vector<double> kDefaultPacketSizes{2.0e6, 2.2e6, 2.4e6, 2.6e6, 2.8e6};

/// Runs compare() once per packet size. Sizes must be strictly ascending.
SweepTable sweep_packet_size(const ExperimentConfig& base, const std::vector<double>& sizes = kDefaultPacketSizes,
                             const ProgressFn& progress = {});

}  // namespace uavrl::bench
