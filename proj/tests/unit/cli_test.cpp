#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli.hpp"

namespace hetnet::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hetnet_cli_" + name);
}

TEST(Grid, InclusiveEndpoints) {
  EXPECT_EQ(parse_grid("0:0.16:0.02"),
            (std::vector<double>{0, 0.02, 0.04, 0.06, 0.08, 0.1, 0.12, 0.14, 0.16}));
  EXPECT_EQ(parse_grid("0.1:0.1:1"), (std::vector<double>{0.1}));
  EXPECT_EQ(parse_grid("0:0.03:0.005").size(), 7u);
  EXPECT_THROW(parse_grid("0:1"), std::invalid_argument);
  EXPECT_THROW(parse_grid("0:1:0"), std::invalid_argument);
  EXPECT_THROW(parse_grid("1:0:0.1"), std::invalid_argument);
  EXPECT_THROW(parse_grid("a:1:0.1"), std::invalid_argument);
}

TEST(Cli, SpectralRadius) {
  const auto r = call({"spectral-radius", "--builtin", "southern_women"});
  EXPECT_EQ(r.code, exit_ok) << r.err;
  EXPECT_EQ(r.out.rfind("lambda_max\t6.7419081249", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("max_alpha\t0.14832596"), std::string::npos);
}

TEST(Cli, CommunitiesWithTruth) {
  const auto r = call({"communities", "--builtin", "southern_women", "--alpha", "0.06", "--truth",
                       "southern_women_groups"});
  EXPECT_EQ(r.code, exit_ok) << r.err;
  EXPECT_NE(r.out.find("# nmi\t1\n"), std::string::npos);
  EXPECT_NE(r.out.find("# communities\t2\n"), std::string::npos);
  EXPECT_NE(r.out.find("label\tcommunity\n"), std::string::npos);
}

TEST(Cli, CommunitiesOutputIsAPartitionFile) {
  const auto path = temp_file("found.tsv");
  const auto r = call({"communities", "--builtin", "southern_women", "--alpha", "0.06", "--out-file",
                       path.string()});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto n = call({"nmi", path.string(), "southern_women_groups"});
  EXPECT_EQ(n.code, exit_ok) << n.err;
  EXPECT_EQ(n.out.rfind("nmi\t1\n", 0), 0u);
  std::filesystem::remove(path);
}

TEST(Cli, AlphaBeyondBoundIsNumericalError) {
  const auto r = call({"communities", "--builtin", "southern_women", "--alpha", "0.2"});
  EXPECT_EQ(r.code, exit_numerical);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("0.148"), std::string::npos);
  EXPECT_EQ(count_lines(r.err), 1u);
}

TEST(Cli, GridReportsEveryBadEndpoint) {
  const auto r = call({"sweep", "--builtin", "southern_women", "--grid", "0:0.2:0.02"});
  EXPECT_EQ(r.code, exit_numerical);
  EXPECT_NE(r.err.find("0.16, 0.18, 0.2"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({}).code, exit_usage);
  EXPECT_EQ(call({"communities"}).code, exit_usage);
  EXPECT_EQ(call({"communities", "--builtin", "southern_women", "--graph", "x"}).code, exit_usage);
  EXPECT_EQ(call({"communities", "--builtin", "southern_women", "--method", "magic"}).code, exit_usage);
  EXPECT_EQ(call({"communities", "--builtin", "southern_women", "--output", "xml"}).code, exit_usage);
  EXPECT_EQ(call({"sweep", "--builtin", "southern_women", "--grid", "0:0.1"}).code, exit_usage);
  EXPECT_EQ(call({"nmi", "southern_women_groups"}).code, exit_usage);
  EXPECT_EQ(call({"--help"}).code, exit_ok);
}

TEST(Cli, DataErrors) {
  EXPECT_EQ(call({"communities", "--builtin", "nope"}).code, exit_data);
  EXPECT_EQ(call({"communities", "--graph", "/nonexistent.graph"}).code, exit_data);
  EXPECT_EQ(call({"nmi", "southern_women_groups", "/nonexistent.tsv"}).code, exit_data);
}

TEST(Cli, NmiOfIdenticalFilesIsOne) {
  const auto r = call({"nmi", "southern_women_groups", "southern_women_groups"});
  EXPECT_EQ(r.code, exit_ok);
  EXPECT_EQ(r.out.rfind("nmi\t1\n", 0), 0u);
}

TEST(Cli, SweepShape) {
  const auto r = call({"sweep", "--builtin", "southern_women", "--grid", "0:0.14:0.02"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  EXPECT_EQ(count_lines(r.out), 33u);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "label,community,0,0.02,0.04,0.06,0.08,0.1,0.12,0.14");
}

TEST(Cli, RankWomenWithinTruth) {
  const auto r = call({"rank", "--builtin", "southern_women", "--grid", "0.02:0.14:0.02", "--partition",
                       "southern_women_groups", "--rank-layer", "women", "--output", "json"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["version"], json_schema_version);
  EXPECT_EQ(doc["nodes"].size(), 18u);
  EXPECT_EQ(doc["nodes"][0]["label"], "w3");
  EXPECT_EQ(doc["nodes"][0]["role"], "leader");
}

TEST(Cli, EveryCommandHonoursJson) {
  const std::vector<std::vector<std::string>> commands{
      {"communities", "--builtin", "southern_women", "--alpha", "0.1"},
      {"rank", "--builtin", "southern_women", "--grid", "0:0.1:0.05"},
      {"sweep", "--builtin", "southern_women", "--grid", "0:0.1:0.05"},
      {"nmi", "southern_women_groups", "southern_women_groups"},
      {"centrality", "--builtin", "southern_women", "--alpha", "0.1"},
      {"spectral-radius", "--builtin", "southern_women"},
      {"project", "--builtin", "southern_women", "--projection", "weighted"},
  };
  for (auto args : commands) {
    args.push_back("--output");
    args.push_back("json");
    const auto r = call(args);
    ASSERT_EQ(r.code, exit_ok) << args[0] << ": " << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["version"], json_schema_version) << args[0];
    EXPECT_EQ(doc["command"], args[0]);
  }
}

TEST(Cli, ProjectRoundTripsThroughGraphFormat) {
  const auto path = temp_file("proj.graph");
  ASSERT_EQ(call({"project", "--builtin", "southern_women", "--projection", "weighted", "--out-file",
                  path.string()})
                .code,
            exit_ok);
  const auto a = call({"spectral-radius", "--graph", path.string()});
  const auto b = call({"spectral-radius", "--builtin", "southern_women", "--projection", "weighted"});
  EXPECT_EQ(a.code, exit_ok) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::filesystem::remove(path);
}

TEST(Cli, SeriesMethodAndLayerWeights) {
  const auto exact = call({"centrality", "--builtin", "southern_women", "--alpha", "0.1"});
  const auto series = call({"centrality", "--builtin", "southern_women", "--alpha", "0.1", "--method",
                            "series", "--terms", "3"});
  EXPECT_EQ(series.code, exit_ok);
  EXPECT_NE(exact.out, series.out);
  const auto weighted = call({"spectral-radius", "--builtin", "southern_women", "--layer-weight",
                              "women:events=2", "--layer-weight", "events:women=2"});
  EXPECT_EQ(weighted.code, exit_ok) << weighted.err;
  EXPECT_EQ(weighted.out.rfind("lambda_max\t13.48", 0), 0u) << weighted.out;
  EXPECT_EQ(call({"spectral-radius", "--builtin", "southern_women", "--layer-weight", "men=2"}).code,
            exit_data);
}

TEST(Cli, RepeatedRunsAreIdentical) {
  const std::vector<std::string> args{"rank", "--builtin", "southern_women", "--grid", "0:0.14:0.02"};
  EXPECT_EQ(call(args).out, call(args).out);
}

}  // namespace
}  // namespace hetnet::cli
