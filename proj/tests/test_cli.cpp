#include "fprac_cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "fprac");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = fprac::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

using fprac::cli::parse_checkpoints;

TEST(Checkpoints, Grammar) {
  EXPECT_EQ(parse_checkpoints("1e1..1e5"), (std::vector<fprac::u64>{10, 100, 1000, 10000, 100000}));
  EXPECT_EQ(parse_checkpoints("1e6..3e6:1e6"), (std::vector<fprac::u64>{1000000, 2000000, 3000000}));
  EXPECT_EQ(parse_checkpoints("7,100,2e3"), (std::vector<fprac::u64>{7, 100, 2000}));
  EXPECT_THROW(parse_checkpoints("100,10"), std::invalid_argument);
  EXPECT_THROW(parse_checkpoints("abc"), std::invalid_argument);
  EXPECT_THROW(parse_checkpoints("1e3..1e2"), std::invalid_argument);
  EXPECT_THROW(parse_checkpoints("1..10:0"), std::invalid_argument);
}

TEST(Cli, TestSubcommandExitCodes) {
  const auto r75 = cli({"test", "75", "--f", "phi"});
  EXPECT_EQ(r75.code, 1);
  EXPECT_NE(r75.out.find("not f-practical"), std::string::npos);
  EXPECT_EQ(cli({"test", "1", "--f", "identity"}).code, 0);
  EXPECT_EQ(cli({"test", "156", "--f", "lambda-star"}).code, 1);
  EXPECT_EQ(cli({"test", "156", "--f", "lambda-def53"}).code, 0);
  EXPECT_EQ(cli({"test", "12", "--f", "vp", "--param", "2"}).code, 0);
}

TEST(Cli, TestJson) {
  const auto r = cli({"test", "45", "--f", "phi", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["practical"], false);
  EXPECT_EQ(j["witness"], 22);
  EXPECT_EQ(j["weights"].size(), 6u);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"test", "12"}).code, 2);
  EXPECT_EQ(cli({"test", "12", "--f", "nope"}).code, 2);
  EXPECT_EQ(cli({"test", "x", "--f", "phi"}).code, 2);
  EXPECT_EQ(cli({"test", "12", "--f", "vp"}).code, 2);
  EXPECT_EQ(cli({"census", "--f", "phi"}).code, 2);
  EXPECT_EQ(cli({"census", "--f", "phi", "--checkpoints", "1e4", "--sieve-limit", "1e3"}).code, 2);
  EXPECT_EQ(cli({"verify", "no-such-suite"}).code, 2);
  EXPECT_EQ(cli({"test", "12", "--f", "phi", "--format", "yaml"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, CensusGoldenTable1) {
  const auto r = cli({"census", "--f", "lambda-star", "--checkpoints", "1e1..1e5", "--format", "csv", "--golden", "table1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "X,count,ratio\n10,6,1.381551\n100,28,1.289448\n1000,164,1.132872\n10000,1015,0.934850\n"
            "100000,7128,0.820641\n");
}

TEST(Cli, CensusGoldenMismatchExitsNonzero) {
  EXPECT_EQ(cli({"census", "--f", "phi", "--checkpoints", "1e1..1e3", "--golden", "table1"}).code, 1);
}

TEST(Cli, CensusFnAndIdentity) {
  const auto fn = cli({"census", "--f", "fn", "--param", "2", "--checkpoints", "1e5", "--format", "json"});
  ASSERT_EQ(fn.code, 0) << fn.err;
  EXPECT_EQ(nlohmann::json::parse(fn.out)["checkpoints"][0]["count"], 50001);
  const auto id = cli({"census", "--f", "identity", "--checkpoints", "1e2", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(id.out)["checkpoints"][0]["count"], 30);
}

TEST(Cli, CensusOutputAndMembersFiles) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto table = (dir / "fprac_cli_table.csv").string();
  const auto members = (dir / "fprac_cli_members.txt").string();
  const auto r = cli({"census", "--f", "identity", "--checkpoints", "100", "--format", "csv", "--output", table,
                      "--members", members, "--threads", "2", "--chunk-size", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream t(table), m(members);
  std::string header, row;
  std::getline(t, header);
  std::getline(t, row);
  EXPECT_EQ(row, "100,30,1.381551");
  int lines = 0;
  for (std::string line; std::getline(m, line);) ++lines;
  EXPECT_EQ(lines, 30);
  std::filesystem::remove(table);
  std::filesystem::remove(members);
}

TEST(Cli, ConfigFunction) {
  const auto path = (std::filesystem::temp_directory_path() / "fprac_cli_cfg.json").string();
  {
    std::ofstream out(path);
    out << R"({"name": "tot", "kind": "multiplicative", "default": "totient"})";
  }
  EXPECT_EQ(cli({"test", "75", "--config", path}).code, 1);
  EXPECT_EQ(cli({"test", "12", "--config", path}).code, 0);
  std::filesystem::remove(path);
  EXPECT_EQ(cli({"test", "12", "--config", path}).code, 2);
}

TEST(Cli, VerifyAndList) {
  const auto list = cli({"verify", "--list"});
  EXPECT_EQ(list.code, 0);
  EXPECT_NE(list.out.find("fpractical-implies-weak"), std::string::npos);
  EXPECT_EQ(cli({"verify", "weak-phi-not-phi-has-75"}).code, 0);
  const auto json = cli({"verify", "a1-only-one", "--bound", "1e3", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(json.out)["suites"][0]["bound"], 1000);
  EXPECT_EQ(cli({"verify", "phi-nonconstructible-has-45"}).code, 1);
}

TEST(Cli, DensityAndScan) {
  const auto d = cli({"density", "--target", "0.1", "--eps", "0.01", "--format", "json"});
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(nlohmann::json::parse(d.out)["n"], 11);
  EXPECT_EQ(cli({"density", "--target", "0.9", "--eps", "0.01"}).code, 1);
  const auto e = cli({"density", "--f", "fn", "--param", "6", "--limit", "1e4", "--format", "json"});
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_NEAR(nlohmann::json::parse(e.out)["exact"].get<double>(), 2.0 / 3.0, 1e-12);
  EXPECT_EQ(cli({"scan", "every-integer", "--f", "tau"}).code, 0);
  EXPECT_EQ(cli({"scan", "every-integer", "--f", "phi", "--p-max", "10", "--k-max", "5"}).code, 1);
  EXPECT_EQ(cli({"scan", "convenience", "--f", "identity", "--p-max", "50", "--k-max", "5", "--m-max", "50"}).code, 0);
  EXPECT_EQ(cli({"scan", "sideways", "--f", "tau"}).code, 2);
}

TEST(Cli, Functions) {
  const auto r = cli({"functions"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("lambda-def53"), std::string::npos);
  EXPECT_NE(r.out.find("fn (needs --param)"), std::string::npos);
}
