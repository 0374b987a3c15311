#include "uavrl/bench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "uavrl/agents/agent.hpp"
#include "uavrl/agents/replay_buffer.hpp"
#include "uavrl/common/digest.hpp"
#include "uavrl/common/errors.hpp"
#include "uavrl/common/random.hpp"
#include "uavrl/env/environment.hpp"
#include "uavrl/reward/reward_spec.hpp"

namespace uavrl::bench {

std::string RewardSource::label() const {
  switch (kind) {
    case RewardKind::kManual: return "manual";
    case RewardKind::kLlmProgram: return "llm_program";
    case RewardKind::kPaperFixture: return "paper_fixture";
  }
  return "unknown";
}

RewardSource parse_reward_source(const std::string& text, const std::filesystem::path& program_path) {
  if (text == "manual") return {RewardKind::kManual, {}};
  if (text == "paper_fixture") return {RewardKind::kPaperFixture, {}};
  if (text == "llm_program") {
    if (program_path.empty()) throw ConfigError("reward_program", "llm_program arms need a reward_program path");
    return {RewardKind::kLlmProgram, program_path};
  }
  throw ConfigError("arms", "unknown reward source '" + text + "' (expected manual, paper_fixture or llm_program)");
}

std::string Arm::name() const { return std::string(agents::to_string(algorithm)) + "-" + reward.label(); }

std::vector<Arm> parse_arms(const std::string& text, const std::filesystem::path& program_path) {
  std::vector<Arm> arms;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("arms", "expected algorithm:reward, got '" + item + "'");
    Arm arm;
    try {
      arm.algorithm = agents::parse_algorithm(item.substr(0, colon));
    } catch (const ConfigError& e) {
      throw ConfigError("arms", e.what());
    }
    arm.reward = parse_reward_source(item.substr(colon + 1), program_path);
    arms.push_back(arm);
  }
  if (arms.empty()) throw ConfigError("arms", "no arms given");
  return arms;
}

RewardFunction::RewardFunction(const RewardSource& source, double manual_weight) : manual_weight_(manual_weight) {
  switch (source.kind) {
    case RewardKind::kManual:
      description_ = "-(" + format_double(manual_weight) + " * energy * penalty)";
      return;
    case RewardKind::kPaperFixture:
      program_ = reward::RewardProgram::compile(reward::kFixtureRewardExpression);
      break;
    case RewardKind::kLlmProgram:
      program_ = reward::RewardProgram::compile(reward::load_reward_spec(source.program_path).expression);
      break;
  }
  description_ = "-" + program_->canonical();
}

double RewardFunction::operator()(const reward::FactorValues& values) const {
  if (program_) return program_->reward(values);
  return reward::manual_reward(values, manual_weight_);
}

void ExperimentConfig::validate() const {
  world.validate();
  agent.validate();
  if (arms.empty()) throw ConfigError("arms", "at least one arm is required");
  if (episodes < 1) throw ConfigError("episodes", "must be at least 1");
  if (seeds.empty()) throw ConfigError("seeds", "at least one seed is required");
  if (workers < 1) throw ConfigError("workers", "must be at least 1");
  if (final_window < 1 || final_window > episodes) throw ConfigError("final_window", "must lie in [1, episodes]");
  if (!(manual_weight > 0.0)) throw ConfigError("manual_weight", "must be positive");
  for (const auto& arm : arms) {
    if (arm.reward.kind == RewardKind::kLlmProgram && !std::filesystem::exists(arm.reward.program_path)) {
      throw ConfigError("reward_program", "file not found: " + arm.reward.program_path.string());
    }
  }
}

ExperimentConfig default_experiment() {
  ExperimentConfig c;
  c.agent.hidden_sizes = {64, 64};
  c.agent.soft_update_tau = 0.02;
  c.arms = parse_arms("td3:manual,td3:paper_fixture,ddpg:manual,ddpg:paper_fixture");
  return c;
}

ExperimentConfig experiment_config_from(KeyValueConfig& kv, const ExperimentConfig& d) {
  ExperimentConfig c = d;
  c.world = env::world_config_from(kv, d.world);
  c.agent = agents::agent_config_from(kv, d.agent);
  c.episodes = static_cast<int>(kv.take_int("episodes", d.episodes));
  c.seeds = kv.take_uint_list("seeds", d.seeds);
  c.output_dir = kv.take_string("output_dir", d.output_dir.string());
  c.workers = static_cast<int>(kv.take_int("workers", d.workers));
  c.final_window = static_cast<int>(kv.take_int("final_window", d.final_window));
  c.manual_weight = kv.take_double("manual_weight", d.manual_weight);
  const std::string program = kv.take_string("reward_program", "");
  if (auto arms = kv.take("arms")) c.arms = parse_arms(*arms, program);
  return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path, const ExperimentConfig& defaults) {
  auto kv = KeyValueConfig::load(path);
  auto c = experiment_config_from(kv, defaults);
  kv.expect_all_consumed();
  // Relative program paths resolve against the config file's directory.
  for (auto& arm : c.arms) {
    if (!arm.reward.program_path.empty() && arm.reward.program_path.is_relative()) {
      arm.reward.program_path = path.parent_path() / arm.reward.program_path;
    }
  }
  c.validate();
  return c;
}

std::string to_config_text(const ExperimentConfig& c) {
  std::ostringstream s;
  s << env::to_config_text(c.world) << agents::to_config_text(c.agent);
  s << "arms = ";
  std::string program;
  for (std::size_t i = 0; i < c.arms.size(); ++i) {
    s << (i ? "," : "") << agents::to_string(c.arms[i].algorithm) << ":" << c.arms[i].reward.label();
    if (!c.arms[i].reward.program_path.empty()) program = c.arms[i].reward.program_path.string();
  }
  s << "\n";
  if (!program.empty()) s << "reward_program = " << program << "\n";
  s << "episodes = " << c.episodes << "\nseeds = ";
  for (std::size_t i = 0; i < c.seeds.size(); ++i) s << (i ? "," : "") << c.seeds[i];
  s << "\nfinal_window = " << c.final_window << "\nmanual_weight = " << format_double(c.manual_weight) << "\n";
  return s.str();
}

// ---- training ----

double RunRecord::first_window_energy(int window) const {
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(window), rows.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += rows[i].energy_total;
  return n ? sum / static_cast<double>(n) : 0.0;
}

double RunRecord::final_window_energy(int window) const {
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(window), rows.size());
  double sum = 0.0;
  for (std::size_t i = rows.size() - n; i < rows.size(); ++i) sum += rows[i].energy_total;
  return n ? sum / static_cast<double>(n) : 0.0;
}

std::string config_digest(const ExperimentConfig& config, const Arm& arm) {
  auto world = config.world;
  world.seed = 0;
  auto agent = config.agent;
  agent.seed = 0;
  std::ostringstream s;
  s << env::to_config_text(world) << agents::to_config_text(agent) << "arm = " << arm.name() << "\n"
    << "episodes = " << config.episodes << "\nmanual_weight = " << format_double(config.manual_weight) << "\n";
  if (arm.reward.kind == RewardKind::kLlmProgram) {
    s << "program = " << RewardFunction(arm.reward).description() << "\n";
  }
  return sha256_hex(s.str());
}

namespace {

std::string snapshot(const Arm& arm, std::uint64_t seed, int episode, const env::Environment& e,
                     const std::vector<double>& action, const reward::FactorValues& f) {
  std::ostringstream s;
  s << "arm=" << arm.name() << " seed=" << seed << " episode=" << episode << " slot=" << e.slot()
    << " uav=(" << e.uav().position.x << "," << e.uav().position.y << ")";
  if (!action.empty()) s << " action=(" << action[0] << "," << action[1] << ")";
  s << " factors={energy=" << f.energy << ", position=" << f.position << ", aoi=" << f.aoi
    << ", throughput=" << f.throughput << ", penalty=" << f.penalty << "}";
  return s.str();
}

}  // namespace

RunRecord train(const ExperimentConfig& config, const Arm& arm, std::uint64_t seed, const ProgressFn& progress) {
  const RewardFunction reward_fn(arm.reward, config.manual_weight);
  agents::AgentConfig ac = config.agent;
  ac.seed = seed;
  env::Environment env(config.world);
  const auto obs_size = env.observation_size();
  auto agent = agents::make_agent(arm.algorithm, ac, obs_size, env::Environment::kActionSize);
  agents::ReplayBuffer buffer(static_cast<std::size_t>(ac.buffer_capacity), obs_size, env::Environment::kActionSize);
  Rng warmup_rng(derive_seed(seed, 7));
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);

  RunRecord record;
  record.arm = arm.name();
  record.seed = seed;
  record.config_digest = config_digest(config, arm);
  record.rows.reserve(static_cast<std::size_t>(config.episodes));

  std::int64_t steps = 0;
  for (int ep = 0; ep < config.episodes; ++ep) {
    auto obs = env.reset(seed, static_cast<std::uint64_t>(ep));
    EpisodeRow row;
    row.episode = ep;
    while (!env.done()) {
      std::vector<double> action;
      try {
        if (steps < ac.warmup_steps) {
          action = {uniform(warmup_rng), uniform(warmup_rng)};
        } else {
          action = agent->act(obs.values, true);
        }
      } catch (const NumericalError& e) {
        throw TrainingAborted(std::string("non-finite actor output: ") + e.what(),
                              snapshot(arm, seed, ep, env, {}, {}));
      }
      const auto out = env.step({action[0], action[1]});
      const double r = reward_fn(out.factors);
      if (!std::isfinite(r)) {
        throw TrainingAborted("non-finite reward", snapshot(arm, seed, ep, env, action, out.factors));
      }
      const bool terminal = env.delivered_count() == config.world.n_terminals;
      buffer.add({obs.values, action, r, out.next_observation.values, terminal});
      obs = out.next_observation;
      ++steps;

      row.energy_tx += out.energy.terminal_tx;
      row.energy_propulsion += out.energy.propulsion;
      row.energy_wpt += out.energy.wpt;
      row.energy_relay += out.energy.relay;
      row.violations_throughput += out.violations.throughput;
      row.violations_decode += out.violations.decode;
      row.violations_freshness += out.violations.freshness;
      row.cumulative_reward += r;

      if (steps > ac.warmup_steps) {
        try {
          const auto u = agent->update(buffer, steps);
          if (u.performed && (!std::isfinite(u.critic_loss) || (u.actor_loss && !std::isfinite(*u.actor_loss)))) {
            throw TrainingAborted("non-finite loss", snapshot(arm, seed, ep, env, action, out.factors));
          }
        } catch (const NumericalError& e) {
          throw TrainingAborted(std::string("numerical failure during update: ") + e.what(),
                                snapshot(arm, seed, ep, env, action, out.factors));
        }
      }
    }
    row.slots = env.slot();
    row.packets_delivered = env.delivered_count();
    row.energy_total = env.total_energy();
    record.rows.push_back(row);
    if (progress && (ep + 1) % 20 == 0) {
      std::ostringstream s;
      s << record.arm << " seed " << seed << " episode " << ep + 1 << "/" << config.episodes << " energy "
        << row.energy_total;
      progress(s.str());
    }
  }
  return record;
}

// ---- aggregation ----

double quantile(std::vector<double> v, double q) {
  if (v.empty()) throw std::invalid_argument("quantile of an empty sample");
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + (v[hi] - v[lo]) * frac;
}

const ArmSummary& ComparisonReport::arm(const std::string& name) const {
  for (const auto& a : arms) {
    if (a.arm == name) return a;
  }
  throw std::out_of_range("no arm named " + name);
}

ComparisonReport aggregate(std::vector<RunRecord> runs, const std::vector<Arm>& arms, int final_window) {
  ComparisonReport report;
  std::vector<std::uint64_t> reference_seeds;
  for (std::size_t a = 0; a < arms.size(); ++a) {
    const auto name = arms[a].name();
    if (std::any_of(report.arms.begin(), report.arms.end(), [&](const ArmSummary& s) { return s.arm == name; })) {
      continue;
    }
    ArmSummary s;
    s.arm = name;
    for (const auto& r : runs) {
      if (r.arm != name) continue;
      s.seeds.push_back(r.seed);
      s.first_window.push_back(r.first_window_energy(final_window));
      s.final_window.push_back(r.final_window_energy(final_window));
    }
    if (s.seeds.empty()) throw std::invalid_argument("arm " + name + " has no runs");
    auto sorted = s.seeds;
    std::sort(sorted.begin(), sorted.end());
    if (report.arms.empty()) {
      reference_seeds = sorted;
    } else if (sorted != reference_seeds) {
      throw std::invalid_argument("arm " + name + " was run on a different seed set than " + report.arms[0].arm);
    }
    s.first_median = quantile(s.first_window, 0.5);
    s.median = quantile(s.final_window, 0.5);
    s.q1 = quantile(s.final_window, 0.25);
    s.q3 = quantile(s.final_window, 0.75);
    report.arms.push_back(std::move(s));
  }

  for (const auto& llm : arms) {
    if (llm.reward.is_manual()) continue;
    for (const auto& manual : arms) {
      if (!manual.reward.is_manual() || manual.algorithm != llm.algorithm) continue;
      Improvement imp;
      imp.algorithm = agents::to_string(llm.algorithm);
      imp.manual_arm = manual.name();
      imp.llm_arm = llm.name();
      imp.manual_median = report.arm(imp.manual_arm).median;
      imp.llm_median = report.arm(imp.llm_arm).median;
      imp.improvement = (imp.manual_median - imp.llm_median) / imp.manual_median;
      report.improvements.push_back(imp);
      break;
    }
  }
  report.runs = std::move(runs);
  return report;
}

ComparisonReport compare(const ExperimentConfig& config, const ProgressFn& progress) {
  config.validate();
  struct Job {
    const Arm* arm;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& arm : config.arms) {
    for (auto seed : config.seeds) jobs.push_back({&arm, seed});
  }
  std::vector<std::optional<RunRecord>> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());

  auto run_job = [&](std::size_t i) {
    try {
      results[i] = train(config, *jobs[i].arm, jobs[i].seed, progress);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(config.workers), jobs.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_job(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) run_job(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<RunRecord> runs;
  runs.reserve(results.size());
  for (auto& r : results) runs.push_back(std::move(*r));
  return aggregate(std::move(runs), config.arms, config.final_window);
}

const ArmSummary& SweepTable::at(double packet_size, const std::string& arm) const {
  for (const auto& c : cells) {
    if (c.packet_size == packet_size && c.summary.arm == arm) return c.summary;
  }
  throw std::out_of_range("no sweep cell for " + arm);
}

SweepTable sweep_packet_size(const ExperimentConfig& base, const std::vector<double>& sizes,
                             const ProgressFn& progress) {
  if (sizes.empty()) throw ConfigError("sizes", "at least one packet size is required");
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (!(sizes[i] > sizes[i - 1])) throw ConfigError("sizes", "packet sizes must be strictly ascending");
  }
  SweepTable table;
  table.sizes = sizes;
  for (double size : sizes) {
    auto config = base;
    config.world.packet_size = size;
    if (progress) progress("packet size " + format_double(size));
    auto report = compare(config, progress);
    for (const auto& s : report.arms) table.cells.push_back({size, s});
    table.reports.push_back(std::move(report));
  }
  return table;
}

}  // namespace uavrl::bench
