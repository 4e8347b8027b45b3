#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "regenalloc/cli.hpp"

namespace {

namespace fs = std::filesystem;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "regenalloc");
  std::ostringstream out, err;
  int code = regenalloc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> ten_node(std::vector<std::string> tail = {}, const std::string& c1 = "1", const std::string& c2 = "1") {
  std::vector<std::string> a{"--n1", "8", "--n2", "2", "--k", "6", "--d", "8", "--file-size", "66", "--c1", c1, "--c2", c2};
  a.insert(a.end(), tail.begin(), tail.end());
  return a;
}

std::vector<std::string> cmd(const std::string& sub, std::vector<std::string> rest) {
  rest.insert(rest.begin(), sub);
  return rest;
}

std::vector<std::string> four_node_sim(std::vector<std::string> tail = {}, const std::string& alpha1 = "2") {
  std::vector<std::string> a{"simulate", "--n1", "2", "--n2", "2", "--k", "2", "--d", "3", "--file-size", "4",
                             "--beta", "1", "--alpha1", alpha1, "--alpha2", "2"};
  a.insert(a.end(), tail.begin(), tail.end());
  return a;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_file(const std::string& name, const std::string& content) {
  auto p = fs::temp_directory_path() / ("regenalloc_test_" + name);
  std::ofstream(p) << content;
  return p;
}

TEST(Optimize, TenNodeCost) {
  auto r = run(cmd("optimize", ten_node({"--beta", "3.3"})));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("cost*   = 112.2\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("case    = B"), std::string::npos);

  auto j = nlohmann::json::parse(run(cmd("optimize", ten_node({"--beta", "33/10", "--format", "json"}))).out);
  EXPECT_EQ(j["cost_exact"], "112.2");
  EXPECT_EQ(j["alpha1_exact"], "11.22");
  EXPECT_EQ(j["binding"].size(), 2u);
}

TEST(Optimize, InfeasibleBetaExitsTwo) {
  auto r = run(cmd("optimize", ten_node({"--beta", "1.9"})));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("beta_min=2"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Optimize, InvalidFlagsExitOne) {
  auto a = ten_node({"--beta", "3.3"});
  a[5] = "0";  // --k 0
  EXPECT_EQ(run(cmd("optimize", a)).code, 1);
  EXPECT_EQ(run(cmd("optimize", ten_node({"--beta", "abc"}))).code, 1);
  EXPECT_EQ(run(cmd("optimize", ten_node())).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
}

TEST(Tradeoff, TenNodeRows) {
  auto r = run(cmd("tradeoff", ten_node({"--repair-bw-lo", "16", "--repair-bw-hi", "32", "--steps", "17"})));
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  ASSERT_EQ(lines.size(), 18u);
  EXPECT_EQ(lines[0], "beta,d_beta,alpha1,alpha2,cost");
  EXPECT_EQ(lines[1], "2,16,16,16,160");
  EXPECT_EQ(lines[17], "4,32,11,11,110");

  auto same = run(cmd("tradeoff", ten_node({"--beta-lo", "2", "--beta-hi", "4"})));
  EXPECT_EQ(same.out, r.out);
}

TEST(Tradeoff, TwoStepsAndJson) {
  auto csv = run(cmd("tradeoff", ten_node({"--beta-lo", "2", "--beta-hi", "4", "--steps", "2"})));
  EXPECT_EQ(csv.out, "beta,d_beta,alpha1,alpha2,cost\n2,16,16,16,160\n4,32,11,11,110\n");
  auto js = run(cmd("tradeoff", ten_node({"--beta-lo", "2", "--beta-hi", "4", "--steps", "2", "--format", "json"})));
  auto j = nlohmann::json::parse(js.out);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["cost"].get<double>(), 160.0);
  EXPECT_EQ(j[1]["d_beta"].get<double>(), 32.0);
  EXPECT_EQ(j[1]["alpha2"].get<double>(), 11.0);
}

TEST(Tradeoff, RangeBelowThresholdExitsTwo) {
  auto r = run(cmd("tradeoff", ten_node({"--beta-lo", "1.9", "--beta-hi", "4"})));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("beta_min=2"), std::string::npos);
  EXPECT_EQ(run(cmd("tradeoff", ten_node({"--beta-lo", "2"}))).code, 1);
  EXPECT_EQ(run(cmd("tradeoff", ten_node({"--beta-lo", "2", "--beta-hi", "3", "--repair-bw-lo", "16"}))).code, 1);
}

TEST(Verify, AdversarialTightAtOptimum) {
  auto r = run(cmd("verify", ten_node({"--beta", "3.3", "--adversarial", "1,1,1,1,1,1"})));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("min_flow   = 66\n"), std::string::npos) << r.out;

  auto bad = run(cmd("verify", ten_node({"--beta", "3.3", "--adversarial", "1,1,1,1,1,1", "--scale", "0.99"})));
  EXPECT_EQ(bad.code, 3);
  EXPECT_NE(bad.err.find("{1,2,3,4,5,6}"), std::string::npos) << bad.err;
  EXPECT_NE(bad.err.find("65.439"), std::string::npos) << bad.err;
}

TEST(Verify, RandomHistoryAndExplicitAllocation) {
  auto r = run(cmd("verify", ten_node({"--beta", "3.3", "--random-history", "5", "--seed", "9", "--format", "json"})));
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  auto low = run(cmd("verify", ten_node({"--beta", "3.3", "--random-history", "2", "--alpha1", "11", "--alpha2", "11"})));
  EXPECT_EQ(low.code, 3);
}

TEST(Verify, ScenarioFiles) {
  auto good = temp_file("good.txt", "# one repair\nrepair 4 1 2 3\ndc 4 1\n");
  std::vector<std::string> base{"verify", "--n1", "2", "--n2", "2", "--k", "2", "--d", "3", "--file-size", "3",
                                "--beta", "1", "--alpha1", "1.5", "--alpha2", "1.5", "--scenario"};
  auto with = [&](const fs::path& p) {
    auto a = base;
    a.push_back(p.string());
    return a;
  };
  auto r = run(with(good));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("min_flow   = 3\n"), std::string::npos) << r.out;

  auto bad = temp_file("bad.txt", "repair 4 1 2 3\n\nrepair 1 2\n");
  auto e = run(with(bad));
  EXPECT_EQ(e.code, 1);
  EXPECT_NE(e.err.find("line 3"), std::string::npos) << e.err;

  auto empty = temp_file("empty.txt", "");
  auto z = run(with(empty));
  EXPECT_EQ(z.code, 0) << z.err;
  EXPECT_NE(z.out.find("repairs    = 0\n"), std::string::npos) << z.out;
  EXPECT_NE(z.out.find("collectors = 6\n"), std::string::npos) << z.out;

  EXPECT_EQ(run(with("/nonexistent/scenario.txt")).code, 1);
  base.pop_back();
  EXPECT_EQ(run(base).code, 1);  // no history source
}

TEST(Verify, EmittedScenarioReplays) {
  auto path = fs::temp_directory_path() / "regenalloc_test_emitted.txt";
  auto first = run(cmd("verify", ten_node({"--beta", "3.3", "--random-history", "4", "--seed", "2", "--emit-scenario", path.string()})));
  ASSERT_EQ(first.code, 0) << first.err;
  auto second = run(cmd("verify", ten_node({"--beta", "3.3", "--scenario", path.string()})));
  EXPECT_EQ(second.code, 0) << second.err;
  EXPECT_EQ(slurp(path).substr(0, 7), "repair ");
}

TEST(Simulate, Reproducible) {
  auto a = run(four_node_sim({"--trials", "1", "--seed", "5"}));
  auto b = run(four_node_sim({"--trials", "1", "--seed", "5"}));
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto gf2 = run(four_node_sim({"--trials", "200", "--field", "gf2", "--format", "json"}));
  auto gf256 = run(four_node_sim({"--trials", "200", "--format", "json"}));
  auto j2 = nlohmann::json::parse(gf2.out);
  auto j256 = nlohmann::json::parse(gf256.out);
  EXPECT_LT(j2["successes"].get<int>(), j256["successes"].get<int>());
  EXPECT_EQ(j256["packets"]["file"], 4);
}

TEST(Simulate, PacketCapExitsOne) {
  auto r = run(four_node_sim({"--packet-cap", "5"}, "1/3"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("cap"), std::string::npos);
}

TEST(Simulate, SeedFromEnvironment) {
  ::setenv("REGENALLOC_SEED", "5", 1);
  auto from_env = run(four_node_sim({"--trials", "3", "--field", "gf2"}));
  ::unsetenv("REGENALLOC_SEED");
  auto explicit_seed = run(four_node_sim({"--trials", "3", "--field", "gf2", "--seed", "5"}));
  EXPECT_EQ(from_env.out, explicit_seed.out);
}

TEST(Output, FileFlagWritesInsteadOfStdout) {
  auto path = fs::temp_directory_path() / "regenalloc_test_region.csv";
  auto r = run(cmd("region", ten_node({"--beta", "3.3", "--output", path.string()})));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(path), run(cmd("region", ten_node({"--beta", "3.3"}))).out);
}

struct Golden {
  const char* file;
  std::vector<std::string> args;
};

std::vector<Golden> golden_cases() {
  return {
      {"optimize_ten_node.txt", cmd("optimize", ten_node({"--beta", "3.3"}))},
      {"optimize_ten_node_cheap.json", cmd("optimize", ten_node({"--beta", "3.3", "--format", "json"}, "0.2", "1.8"))},
      {"constraints_four_node.csv", {"constraints", "--n1", "2", "--n2", "2", "--k", "2", "--d", "3", "--file-size", "4", "--beta", "1"}},
      {"region_ten_node.csv", cmd("region", ten_node({"--beta", "3.3"}))},
      {"tradeoff_ten_node_sweep.csv", cmd("tradeoff", ten_node({"--repair-bw-lo", "16", "--repair-bw-hi", "32"}, "1", "0.6"))},
      {"verify_adversarial.txt", cmd("verify", ten_node({"--beta", "3.3", "--adversarial", "1,1,1,1,1,2"}))},
      {"simulate_four_node.txt", four_node_sim({"--trials", "20", "--seed", "3"})},
  };
}

TEST(Golden, OutputsAreByteIdentical) {
  for (const auto& g : golden_cases()) {
    auto r = run(g.args);
    EXPECT_EQ(r.code, 0) << g.file << ": " << r.err;
    EXPECT_EQ(r.out, slurp(fs::path(GOLDEN_DIR) / g.file)) << g.file;
  }
}

// The installed binary behaves like the in-process entry point.
TEST(Golden, ToolMatchesLibrary) {
  auto path = fs::temp_directory_path() / "regenalloc_test_tool.txt";
  std::string command = std::string(REGENALLOC_TOOL) + " optimize";
  for (const auto& a : ten_node({"--beta", "3.3"})) command += " " + a;
  command += " > " + path.string();
  ASSERT_EQ(std::system(command.c_str()), 0);
  EXPECT_EQ(slurp(path), slurp(fs::path(GOLDEN_DIR) / "optimize_ten_node.txt"));

  std::string infeasible = std::string(REGENALLOC_TOOL) + " optimize";
  for (const auto& a : ten_node({"--beta", "1.9"})) infeasible += " " + a;
  infeasible += " 2> /dev/null";
  int status = std::system(infeasible.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 2);
}

}  // namespace
