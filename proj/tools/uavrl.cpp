// uavrl: simulate, train, design-reward, compare, sweep.
//
// Exit codes: 0 success, 2 configuration/usage error, 3 runtime abort,
// 4 reward design exhausted, 5 missing LLM fixture.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "uavrl/bench/emit.hpp"
#include "uavrl/bench/experiment.hpp"
#include "uavrl/common/errors.hpp"
#include "uavrl/common/kv_config.hpp"
#include "uavrl/env/environment.hpp"
#include "uavrl/env/policies.hpp"
#include "uavrl/env/trace.hpp"
#include "uavrl/llm/provider.hpp"
#include "uavrl/reward/designer.hpp"

namespace {

using namespace uavrl;

enum ExitCode { kSuccess = 0, kConfig = 2, kRuntime = 3, kExhausted = 4, kMissingFixture = 5 };

class MissingFixture : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  std::string arms;
  std::optional<int> episodes;
  std::optional<int> workers;
  bool verbose = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "key = value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", c.seed, "run a single seed");
  cmd->add_option("--out", c.out, "output directory")->capture_default_str();
  cmd->add_flag("-v,--verbose", c.verbose, "progress messages on stderr");
}

void add_experiment(CLI::App* cmd, Common& c) {
  cmd->add_option("--arms", c.arms, "comma-separated algorithm:reward list, e.g. td3:manual,td3:paper_fixture");
  cmd->add_option("--episodes", c.episodes, "training episodes per run");
  cmd->add_option("--workers", c.workers, "parallel training runs");
}

bench::ExperimentConfig load_config(const Common& c) {
  auto config = c.config.empty() ? bench::default_experiment() : bench::load_experiment_config(c.config);
  if (!c.arms.empty()) {
    std::filesystem::path program;
    for (const auto& arm : config.arms) {
      if (!arm.reward.program_path.empty()) program = arm.reward.program_path;
    }
    config.arms = bench::parse_arms(c.arms, program);
  }
  if (c.seed) {
    config.seeds = {*c.seed};
    config.world.seed = *c.seed;
  }
  if (c.episodes) config.episodes = *c.episodes;
  if (c.workers) config.workers = *c.workers;
  config.output_dir = c.out;
  if (config.final_window > config.episodes) config.final_window = config.episodes;
  config.validate();
  return config;
}

bench::ProgressFn progress_fn(const Common& c) {
  if (!c.verbose) return {};
  return [](const std::string& msg) { std::cerr << msg << "\n"; };
}

int run_simulate(const Common& c, const std::string& policy_name) {
  const auto config = load_config(c);
  const std::uint64_t seed = c.seed.value_or(config.world.seed);
  auto policy = env::make_policy(policy_name, derive_seed(seed, 11));
  env::Environment env(config.world);
  env.reset(seed, 0);

  std::ostringstream trace_text;
  env::TraceWriter trace(trace_text);
  env::EnergyBreakdown sum;
  int violations = 0;
  while (!env.done()) {
    const auto out = env.step(policy->act(env));
    trace.write(env.slot(), env.uav().position, out);
    sum.terminal_tx += out.energy.terminal_tx;
    sum.propulsion += out.energy.propulsion;
    sum.wpt += out.energy.wpt;
    sum.relay += out.energy.relay;
    violations += out.violations.any();
  }
  const auto path = std::filesystem::path(c.out) / "trace.csv";
  bench::write_text_file(path, trace_text.str());

  std::cout << "policy " << policy_name << " seed " << seed << ": " << env.slot() << " slots, "
            << env.delivered_count() << "/" << config.world.n_terminals << " packets delivered, "
            << violations << " violating slots\n"
            << "energy [J]: total " << format_double(sum.total()) << ", terminal tx "
            << format_double(sum.terminal_tx) << ", propulsion " << format_double(sum.propulsion) << ", wpt "
            << format_double(sum.wpt) << ", relay " << format_double(sum.relay) << "\n"
            << "trace: " << path.string() << "\n";
  return kSuccess;
}

int run_train(const Common& c) {
  auto config = load_config(c);
  const auto& arm = config.arms.front();
  const std::uint64_t seed = config.seeds.front();
  const auto record = bench::train(config, arm, seed, progress_fn(c));
  const auto dir = std::filesystem::path(c.out);
  const auto csv = dir / "runs" / (record.arm + "_seed" + std::to_string(seed) + ".csv");
  bench::write_text_file(csv, bench::run_csv(record));
  std::cout << record.arm << " seed " << seed << ": first-window energy "
            << format_double(record.first_window_energy(config.final_window)) << " J, final-window energy "
            << format_double(record.final_window_energy(config.final_window)) << " J\n"
            << "run: " << csv.string() << " (config digest " << record.config_digest << ")\n";
  return kSuccess;
}

void print_report(const bench::ComparisonReport& report) {
  for (const auto& a : report.arms) {
    std::cout << a.arm << ": median final-window energy " << format_double(a.median) << " J (IQR "
              << format_double(a.iqr()) << "), first-window " << format_double(a.first_median) << " J\n";
  }
  for (const auto& i : report.improvements) {
    std::cout << i.algorithm << ": " << i.llm_arm << " vs " << i.manual_arm << " improvement "
              << format_double(i.improvement * 100.0) << "%\n";
  }
}

int run_compare(const Common& c) {
  const auto config = load_config(c);
  const auto report = bench::compare(config, progress_fn(c));
  bench::emit_comparison(report, c.out);
  print_report(report);
  std::cout << "summary: " << (std::filesystem::path(c.out) / "summary.json").string() << "\n";
  return kSuccess;
}

int run_sweep(const Common& c, const std::vector<double>& sizes) {
  const auto config = load_config(c);
  const auto table = bench::sweep_packet_size(config, sizes, progress_fn(c));
  bench::emit_sweep(table, c.out);
  for (const auto& cell : table.cells) {
    std::cout << format_double(cell.packet_size) << " bits " << cell.summary.arm << ": median "
              << format_double(cell.summary.median) << " J\n";
  }
  std::cout << "table: " << (std::filesystem::path(c.out) / "sweep.csv").string() << "\n";
  return kSuccess;
}

struct DesignArgs {
  std::string provider = "fixture";
  std::string fixtures = "fixtures";
  bool capture = false;
  std::string script;
  std::string endpoint;
  std::string model = "gpt-4o";
  std::string objective = reward::kDefaultObjective;
  int candidates = 3;
  int max_reflections = 5;
  double temperature = 0.7;
};

std::vector<llm::ChatResponse> load_script(const std::string& path) {
  if (path.empty()) {
    reward::RewardSpec spec{{{"energy", 0.6}, {"position", 0.4}},
                            std::string(reward::kFixtureRewardExpression),
                            "Weighted energy plus distance to the pending-terminal centroid, scaled by the "
                            "constraint penalty."};
    return {llm::ChatResponse::success(spec.to_json())};
  }
  std::ifstream in(path);
  if (!in) throw ConfigError("--script", "cannot read " + path);
  const auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_array()) throw ConfigError("--script", "expected a JSON array of response strings");
  std::vector<llm::ChatResponse> script;
  for (const auto& item : j) {
    if (!item.is_string()) throw ConfigError("--script", "every entry must be a string");
    script.push_back(llm::ChatResponse::success(item.get<std::string>()));
  }
  return script;
}

std::shared_ptr<llm::Provider> make_live(const DesignArgs& a) {
  const char* key = std::getenv(llm::kApiKeyEnvVar);
  if (key == nullptr || *key == '\0') {
    throw ConfigError(llm::kApiKeyEnvVar, "live provider needs an API key in the environment");
  }
  llm::ProviderConfig pc;
  pc.api_key = key;
  if (!a.endpoint.empty()) pc.endpoint_url = a.endpoint;
  try {
    pc.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("--endpoint", e.what());
  }
  return std::make_shared<llm::HttpProvider>(pc);
}

int run_design(const Common& c, const DesignArgs& a) {
  const auto config = load_config(c);
  std::shared_ptr<llm::Provider> provider;
  if (a.provider == "live") {
    provider = make_live(a);
  } else if (a.provider == "fixture") {
    provider = std::make_shared<llm::FixtureProvider>(a.fixtures, a.capture ? make_live(a) : nullptr);
  } else {
    const bool repeat = true;  // an exhausted script keeps failing the same way
    provider = std::make_shared<llm::ScriptedProvider>(load_script(a.script), repeat);
  }

  reward::DesignOptions opts;
  opts.candidates = a.candidates;
  opts.max_reflections = a.max_reflections;
  opts.model = a.model;
  opts.temperature = a.temperature;
  opts.penalty = config.world.penalty_factor;
  try {
    opts.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("design", e.what());
  }

  const auto prompt = reward::build_prompt(reward::describe_world(config.world), a.objective);
  const auto outcome = reward::design_reward(prompt, *provider, opts);
  reward::save_design_outcome(outcome, c.out);

  if (outcome.accepted()) {
    std::cout << "accepted after " << outcome.trail.size() << " candidate(s) in " << outcome.rounds
              << " round(s): reward = -" << outcome.program->canonical() << "\n"
              << "program: " << (std::filesystem::path(c.out) / "reward_program.json").string() << "\n";
    return kSuccess;
  }
  const bool missing = !outcome.trail.empty() && outcome.trail.back().status == llm::CompletionStatus::kMissingFixture;
  std::cerr << "no candidate accepted after " << outcome.rounds << " round(s); trail: "
            << (std::filesystem::path(c.out) / "design_trail.json").string() << "\n";
  if (missing) {
    std::cerr << outcome.trail.back().report.result(reward::Gate::kResponseSuccess).message << "\n";
    return kMissingFixture;
  }
  return kExhausted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UAV data collection with DDPG/TD3 on manual and LLM-designed rewards"};
  app.require_subcommand(1);

  Common common;
  std::string policy = "greedy-nearest";
  auto* simulate = app.add_subcommand("simulate", "scripted rollout without learning; writes trace.csv");
  add_common(simulate, common);
  simulate->add_option("--policy", policy, "hover, random, greedy-nearest or centroid")->capture_default_str();

  auto* train = app.add_subcommand("train", "train the first arm on one seed");
  add_common(train, common);
  add_experiment(train, common);

  DesignArgs design;
  auto* design_cmd = app.add_subcommand("design-reward", "generate and validate a reward program");
  add_common(design_cmd, common);
  design_cmd->add_option("--provider", design.provider)
      ->check(CLI::IsMember({"live", "fixture", "scripted"}))
      ->capture_default_str();
  design_cmd->add_option("--fixtures", design.fixtures, "fixture directory")->capture_default_str();
  design_cmd->add_flag("--capture", design.capture, "fixture mode: forward misses to the live provider and record");
  design_cmd->add_option("--script", design.script, "scripted mode: JSON array of responses");
  design_cmd->add_option("--endpoint", design.endpoint, "chat-completion URL for live mode");
  design_cmd->add_option("--model", design.model)->capture_default_str();
  design_cmd->add_option("--objective", design.objective)->capture_default_str();
  design_cmd->add_option("--candidates", design.candidates, "candidates per round")->capture_default_str();
  design_cmd->add_option("--max-reflections", design.max_reflections)->capture_default_str();
  design_cmd->add_option("--temperature", design.temperature)->capture_default_str();

  auto* compare = app.add_subcommand("compare", "train every arm on every seed and compare final energy");
  add_common(compare, common);
  add_experiment(compare, common);

  std::vector<double> sizes = uavrl::bench::kDefaultPacketSizes;
  auto* sweep = app.add_subcommand("sweep", "compare across packet sizes");
  add_common(sweep, common);
  add_experiment(sweep, common);
  sweep->add_option("--sizes", sizes, "packet sizes in bits, ascending")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kConfig;
  }

  try {
    if (*simulate) return run_simulate(common, policy);
    if (*train) return run_train(common);
    if (*design_cmd) return run_design(common, design);
    if (*compare) return run_compare(common);
    if (*sweep) return run_sweep(common, sizes);
  } catch (const uavrl::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const uavrl::bench::TrainingAborted& e) {
    std::cerr << "training aborted: " << e.what() << "\n  " << e.snapshot() << "\n";
    return kRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kSuccess;
}
