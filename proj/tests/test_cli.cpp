#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

const std::string kSamples = PCM_SAMPLES_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "pcm");
  std::ostringstream out, err;
  const int code = pcm::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return kSamples + "/" + name; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(Cli, AnalyzeJson) {
  const auto r = run({"analyze", sample("no_triads7.txt"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["n"], 7);
  EXPECT_EQ(j["complete"], false);
  EXPECT_EQ(j["comparisons"], 11);
  EXPECT_EQ(j["indices"].size(), 14u);
  EXPECT_NEAR(j["indices"]["Ktilde"].get<double>(), 19.0 / 21.0, 1e-12);
  EXPECT_NEAR(j["indices"]["SH"].get<double>(), 0.5866166991168207, 1e-12);
  EXPECT_FALSE(j.contains("classical"));
}

TEST(Cli, AnalyzeCompleteShowsReductions) {
  const auto r = run({"analyze", sample("triad3.txt"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["exceeds_scale"].get<bool>());
  EXPECT_NEAR(j["classical"]["ISH"].get<double>(), 0.10213675213675213, 1e-12);
  for (auto& [key, value] : j["reductions"].items()) EXPECT_NEAR(value.get<double>(), 0.0, 1e-9) << key;
}

TEST(Cli, AnalyzeIndexSubsetAndText) {
  const auto r = run({"analyze", sample("incomplete4.txt"), "--indices", "CI,GW"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("CI"), std::string::npos);
  EXPECT_NE(r.out.find("GW"), std::string::npos);
  EXPECT_EQ(r.out.find("Ktilde"), std::string::npos);
  EXPECT_NE(r.out.find("(incomplete)"), std::string::npos);
}

TEST(Cli, AnalyzeBlendOptions) {
  const auto r = run({"analyze", sample("no_triads7.txt"), "--indices", "Ktilde,I1,Ialpha",
                      "--alpha", "1", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["indices"]["Ialpha"].get<double>(), j["indices"]["Ktilde"].get<double>());

  EXPECT_EQ(run({"analyze", sample("triad3.txt"), "--alpha", "2"}).code, 5);
  EXPECT_EQ(run({"analyze", sample("triad3.txt"), "--indices", "bogus"}).code, 5);
}

TEST(Cli, RankMethods) {
  for (std::string method : {"ills", "harker"}) {
    const auto r = run({"rank", sample("incomplete4.txt"), "--method", method, "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["ranking"].size(), 4u);
    EXPECT_EQ(j["ranking"][0]["alternative"], "a4");
    EXPECT_NEAR(j["ranking"][0]["weight"].get<double>(), 8.0 / 21, 1e-10);
    EXPECT_EQ(j["ranking"][3]["alternative"], "a3");
    EXPECT_EQ(j.contains("lambda_max"), method == "harker");
  }
  const auto r = run({"rank", sample("consistent3.txt"), "--method", "evm"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("a1"), std::string::npos);
  EXPECT_NE(r.out.find("0.5"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"rank", sample("triad3.txt")}).code, 1);
  EXPECT_EQ(run({"analyze", sample("missing-file.txt")}).code, 2);
  EXPECT_EQ(run({"analyze", sample("disconnected4.txt")}).code, 3);
  EXPECT_EQ(run({"rank", sample("disconnected4.txt"), "--method", "ills"}).code, 3);
  EXPECT_EQ(run({"rank", sample("incomplete4.txt"), "--method", "evm"}).code, 4);
  EXPECT_EQ(run({"rank", sample("incomplete4.txt"), "--method", "gmm"}).code, 4);
  EXPECT_EQ(run({"rank", sample("incomplete4.txt"), "--method", "magic"}).code, 5);
  EXPECT_EQ(run({"experiment", "--n", "5", "--removals", "7", "--out", "x"}).code, 5);
  EXPECT_EQ(run({"experiment", "--gamma-dist", "normal", "--out", "x"}).code, 5);
}

TEST(Cli, ParseErrorsReportLine) {
  const auto dir = std::filesystem::temp_directory_path() / "pcm_cli_parse";
  std::filesystem::create_directories(dir);
  const auto file = dir / "bad.txt";
  std::ofstream(file) << "3\n1 2 1\n1/3 1 1\n1 1 1\n";
  const auto r = run({"analyze", file.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST(Cli, ExperimentWritesCsvIndependentOfThreads) {
  const auto dir = std::filesystem::temp_directory_path() / "pcm_cli_experiment";
  std::filesystem::create_directories(dir);
  const std::string a = (dir / "a").string();
  const std::string b = (dir / "b").string();
  const std::vector<std::string> common{"experiment", "--n", "5", "--matrices", "4", "--dmax",
                                        "3", "--removals", "6", "--seed", "9"};
  auto with = [&](std::vector<std::string> extra) {
    auto v = common;
    v.insert(v.end(), extra.begin(), extra.end());
    return v;
  };
  const auto r1 = run(with({"--out", a}));
  ASSERT_EQ(r1.code, 0) << r1.err;
  const auto r2 = run(with({"--threads", "2", "--out", b}));
  ASSERT_EQ(r2.code, 0) << r2.err;
  EXPECT_EQ(slurp(a + "_distances.csv"), slurp(b + "_distances.csv"));
  EXPECT_EQ(slurp(a + "_summary.csv"), slurp(b + "_summary.csv"));
  EXPECT_EQ(slurp(a + "_summary.csv").substr(0, 12), "index,total\n");
  EXPECT_NE(r1.out.find("pos  index"), std::string::npos);
}
