#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "design_fixtures.hpp"
#include "json.hpp"
#include "uavrl/llm/provider.hpp"
#include "uavrl/reward/designer.hpp"
#include "uavrl/reward/prompt.hpp"
#include "uavrl/reward/validation.hpp"

using namespace uavrl;
using namespace uavrl::reward;
using uavrl::testing::fixture_response;
using uavrl::testing::spec_json;

namespace {

const std::vector<FactorValues>& probes() {
  static const auto p = make_probe_battery();
  return p;
}

ValidationReport gate(const std::string& raw) { return validate_response(raw, "", probes()).report; }

void expect_fails_at(const ValidationReport& r, Gate failing) {
  EXPECT_FALSE(r.accepted());
  bool before = true;
  for (const auto& g : r.gates) {
    if (g.gate == failing) {
      EXPECT_EQ(g.status, GateStatus::kFail) << to_string(g.gate);
      EXPECT_FALSE(g.message.empty());
      before = false;
    } else if (before) {
      EXPECT_EQ(g.status, GateStatus::kPass) << to_string(g.gate);
    } else {
      EXPECT_EQ(g.status, GateStatus::kNotEvaluated) << to_string(g.gate);
    }
  }
}

PromptBundle default_prompt() { return build_prompt(describe_world(env::WorldConfig{})); }

DesignOptions single(int reflections) {
  DesignOptions o;
  o.candidates = 1;
  o.max_reflections = reflections;
  return o;
}

}  // namespace

TEST(ProbeBattery, CoversCornersAndIsSeeded) {
  const auto p = make_probe_battery();
  ASSERT_GE(p.size(), 64u);
  auto has = [&](FactorValues v) { return std::find(p.begin(), p.end(), v) != p.end(); };
  EXPECT_TRUE(has({0, 0, 0, 0, 1}));
  EXPECT_TRUE(has({0, 0, 0, 0, kDefaultPenalty}));
  EXPECT_TRUE(has({1, 1, 1, 1, 1}));
  EXPECT_TRUE(has({1, 1, 1, 1, kDefaultPenalty}));
  EXPECT_EQ(p, make_probe_battery());
  for (const auto& v : p) {
    for (double x : {v.energy, v.position, v.aoi, v.throughput}) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0);
    }
  }
}

TEST(Gates, FixtureFormulaPassesAll) {
  const auto r = gate(fixture_response());
  EXPECT_TRUE(r.accepted());
  for (const auto& g : r.gates) EXPECT_EQ(g.status, GateStatus::kPass);
}

TEST(Gates, ProviderFailureStopsAtResponseSuccess) {
  const auto r = validate_response(std::nullopt, "timeout after 60 s", probes()).report;
  expect_fails_at(r, Gate::kResponseSuccess);
  EXPECT_EQ(r.result(Gate::kResponseSuccess).message, "timeout after 60 s");
}

TEST(Gates, RejectsNonJsonText) { expect_fails_at(gate("I think energy matters most."), Gate::kJsonValid); }

TEST(Gates, RejectsSchemaViolation) {
  expect_fails_at(gate(R"({"factors":[{"name":"energy","weight":"high"}],"expression":"energy","rationale":""})"),
                  Gate::kSchemaValid);
}

TEST(Gates, RejectsUnknownIdentifier) {
  const auto r = gate(spec_json("speed*energy"));
  expect_fails_at(r, Gate::kParseValid);
  EXPECT_NE(r.result(Gate::kParseValid).message.find("speed"), std::string::npos);
}

TEST(Gates, RejectsDivisionByZeroProbe) {
  expect_fails_at(gate(spec_json("energy/position")), Gate::kReturnTypeNumericFinite);
}

TEST(Gates, RejectsUnboundedExpression) {
  expect_fails_at(gate(spec_json("1e4*energy")), Gate::kBoundedness);
  EXPECT_TRUE(gate(spec_json("1e3*energy")).accepted());
}

TEST(Gates, ReportSerializes) {
  const auto j = nlohmann::json::parse(gate("nope").to_json());
  EXPECT_FALSE(j["accepted"].get<bool>());
  EXPECT_EQ(j["gates"].size(), 6u);
  EXPECT_EQ(j["gates"][1]["gate"], "json_valid");
  EXPECT_EQ(j["gates"][1]["status"], "fail");
}

TEST(Prompt, ContainsRegistryContractAndObjective) {
  const auto p = build_prompt(describe_world(env::WorldConfig{}), "minimize total energy");
  EXPECT_FALSE(p.role_definition.empty());
  EXPECT_FALSE(p.task_description.empty());
  for (const auto& f : kFactorRegistry) EXPECT_NE(p.task_description.find(f.name), std::string::npos) << f.name;
  EXPECT_NE(p.task_description.find("minimize total energy"), std::string::npos);
  EXPECT_NE(p.role_definition.find("Use only the information given in this prompt"), std::string::npos);
  EXPECT_NE(p.role_definition.find("\"expression\""), std::string::npos);
  EXPECT_NE(p.role_definition.find("JSON object"), std::string::npos);
}

TEST(Prompt, Deterministic) {
  const auto a = default_prompt(), b = default_prompt();
  EXPECT_EQ(a.role_definition, b.role_definition);
  EXPECT_EQ(a.task_description, b.task_description);
}

TEST(Prompt, EmptyRegistryRejected) {
  WorldDescriptor d = describe_world(env::WorldConfig{});
  d.factors.clear();
  EXPECT_THROW(build_prompt(d), std::invalid_argument);
}

TEST(DesignRequest, SystemMessageFirstAndFeedbackAppended) {
  const auto prompt = default_prompt();
  DesignOptions o;
  const auto plain = make_design_request(prompt, {}, 0, o);
  ASSERT_EQ(plain.messages.size(), 2u);
  EXPECT_EQ(plain.messages[0].role, "system");
  EXPECT_EQ(plain.messages[0].content, prompt.role_definition);
  const auto reflected = make_design_request(prompt, {"json_valid: no JSON object"}, 0, o);
  EXPECT_NE(reflected.messages[1].content.find("json_valid: no JSON object"), std::string::npos);
  EXPECT_NE(make_design_request(prompt, {}, 1, o).digest(), plain.digest());
}

TEST(Design, AcceptsFirstCandidate) {
  auto provider = llm::ScriptedProvider::from_texts({fixture_response()});
  const auto out = design_reward(default_prompt(), provider, single(5));
  ASSERT_TRUE(out.accepted());
  EXPECT_EQ(out.rounds, 1);
  EXPECT_EQ(out.trail.size(), 1u);
  EXPECT_EQ(out.program->canonical(), RewardProgram::compile(kFixtureRewardExpression).canonical());
}

TEST(Design, AcceptsOnSecondRoundAfterMalformedJson) {
  auto provider = llm::ScriptedProvider::from_texts({"{\"factors\": [", fixture_response()});
  const auto out = design_reward(default_prompt(), provider, single(5));
  ASSERT_TRUE(out.accepted());
  EXPECT_EQ(out.rounds, 2);
  ASSERT_EQ(out.trail.size(), 2u);
  EXPECT_FALSE(out.trail[0].report.accepted());
  EXPECT_EQ(out.trail[0].report.first_failure()->gate, Gate::kJsonValid);
  // The second request carries the first failure.
  const auto requests = provider.requests();
  ASSERT_EQ(requests.size(), 2u);
  EXPECT_NE(requests[1].messages.back().content.find("json_valid"), std::string::npos);
}

TEST(Design, ExhaustionRecordsEveryFailure) {
  auto provider = llm::ScriptedProvider::from_texts({spec_json("speed*energy")}, true);
  const auto out = design_reward(default_prompt(), provider, single(2));
  EXPECT_FALSE(out.accepted());
  EXPECT_EQ(out.rounds, 3);
  ASSERT_EQ(out.trail.size(), 3u);
  for (const auto& c : out.trail) EXPECT_EQ(c.report.first_failure()->gate, Gate::kParseValid);
}

TEST(Design, KCandidatesPerRound) {
  DesignOptions o;
  o.candidates = 3;
  o.max_reflections = 1;
  auto provider = llm::ScriptedProvider::from_texts({"x", "y", "z", "w", fixture_response()});
  const auto out = design_reward(default_prompt(), provider, o);
  ASSERT_TRUE(out.accepted());
  EXPECT_EQ(out.rounds, 2);
  EXPECT_EQ(out.trail.size(), 5u);
  EXPECT_EQ(out.trail[4].round, 1);
  EXPECT_EQ(out.trail[4].index, 1);
}

TEST(Design, ReplayIsDeterministicIncludingTrail) {
  const auto dir = std::filesystem::temp_directory_path() / "uavrl_design_replay";
  std::filesystem::remove_all(dir);
  const auto prompt = default_prompt();
  {
    auto upstream = std::make_shared<llm::ScriptedProvider>(
        std::vector<llm::ChatResponse>{llm::ChatResponse::success("bad"), llm::ChatResponse::success(fixture_response())});
    llm::FixtureProvider capture(dir, upstream);
    ASSERT_TRUE(design_reward(prompt, capture, single(3)).accepted());
  }
  llm::FixtureProvider replay_a(dir), replay_b(dir);
  const auto a = design_reward(prompt, replay_a, single(3));
  const auto b = design_reward(prompt, replay_b, single(3));
  ASSERT_TRUE(a.accepted());
  EXPECT_EQ(a.trail_json(), b.trail_json());
  EXPECT_EQ(a.trail.size(), 2u);
  std::filesystem::remove_all(dir);
}

TEST(Design, SavesProgramAndTrail) {
  const auto dir = std::filesystem::temp_directory_path() / "uavrl_design_save";
  std::filesystem::remove_all(dir);
  auto provider = llm::ScriptedProvider::from_texts({fixture_response()});
  save_design_outcome(design_reward(default_prompt(), provider, single(0)), dir);
  const auto spec = load_reward_spec(dir / "reward_program.json");
  EXPECT_EQ(spec.expression, kFixtureRewardExpression);
  EXPECT_TRUE(std::filesystem::exists(dir / "design_trail.json"));
  std::filesystem::remove_all(dir);
}
