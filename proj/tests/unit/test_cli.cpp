#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = "env -u UAVRL_LLM_API_KEY " + std::string(UAVRL_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fixture_reply() {
  return R"({"factors":[{"name":"energy","weight":0.6},{"name":"position","weight":0.4}],)"
         R"("expression":"(0.6*energy + 0.4*position)*penalty","rationale":"fixture"})";
}

}  // namespace

TEST(Cli, SimulateIsDeterministic) {
  const auto a = fresh_dir("uavrl_cli_sim_a");
  const auto b = fresh_dir("uavrl_cli_sim_b");
  ASSERT_EQ(run("simulate --policy greedy-nearest --seed 3 --out " + a.string()), 0);
  ASSERT_EQ(run("simulate --policy greedy-nearest --seed 3 --out " + b.string()), 0);
  ASSERT_TRUE(fs::exists(a / "trace.csv"));
  EXPECT_EQ(slurp(a / "trace.csv"), slurp(b / "trace.csv"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Cli, UnknownPolicyIsConfigError) { EXPECT_EQ(run("simulate --policy teleport"), 2); }

TEST(Cli, BadArmsWritesNothing) {
  const auto dir = fresh_dir("uavrl_cli_badarms");
  EXPECT_EQ(run("compare --arms sac:manual --episodes 1 --out " + dir.string()), 2);
  EXPECT_FALSE(fs::exists(dir));
}

TEST(Cli, UnknownFlagIsConfigError) { EXPECT_EQ(run("compare --frobnicate"), 2); }

TEST(Cli, ScriptedDesignAcceptsOnSecondRound) {
  const auto dir = fresh_dir("uavrl_cli_design");
  fs::create_directories(dir);
  std::string escaped;
  for (char c : fixture_reply()) {
    if (c == '"') escaped += '\\';
    escaped += c;
  }
  std::ofstream(dir / "script.json") << "[\"not json at all\", \"" << escaped << "\"]";
  ASSERT_EQ(run("design-reward --provider scripted --candidates 1 --script " + (dir / "script.json").string() +
                " --out " + (dir / "out").string()),
            0);
  EXPECT_TRUE(fs::exists(dir / "out" / "reward_program.json"));
  EXPECT_TRUE(fs::exists(dir / "out" / "design_trail.json"));
  fs::remove_all(dir);
}

TEST(Cli, ScriptedDesignExhaustion) {
  const auto dir = fresh_dir("uavrl_cli_exhaust");
  fs::create_directories(dir);
  std::ofstream(dir / "script.json") << R"(["nope", "still nope", "{}"])";
  EXPECT_EQ(run("design-reward --provider scripted --candidates 1 --max-reflections 3 --script " +
                (dir / "script.json").string() + " --out " + (dir / "out").string()),
            4);
  EXPECT_FALSE(fs::exists(dir / "out" / "reward_program.json"));
  fs::remove_all(dir);
}

TEST(Cli, MissingFixtureExitCode) {
  const auto dir = fresh_dir("uavrl_cli_fixture");
  EXPECT_EQ(run("design-reward --provider fixture --fixtures " + (dir / "fx").string() + " --out " +
                (dir / "out").string()),
            5);
  fs::remove_all(dir);
}

TEST(Cli, LiveWithoutKeyIsConfigError) {
  EXPECT_EQ(run("design-reward --provider live --endpoint http://127.0.0.1:9/v1/chat/completions"), 2);
}

TEST(Cli, CompareOfflineIsByteDeterministic) {
  const auto a = fresh_dir("uavrl_cli_cmp_a");
  const auto b = fresh_dir("uavrl_cli_cmp_b");
  const std::string args = "compare --arms td3:manual,td3:paper_fixture --episodes 2 --seed 4 --out ";
  ASSERT_EQ(run(args + a.string()), 0);
  ASSERT_EQ(run(args + b.string()), 0);
  int files = 0;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (!e.is_regular_file()) continue;
    ++files;
    EXPECT_EQ(slurp(e.path()), slurp(b / fs::relative(e.path(), a))) << e.path();
  }
  EXPECT_EQ(files, 3);
  fs::remove_all(a);
  fs::remove_all(b);
}
