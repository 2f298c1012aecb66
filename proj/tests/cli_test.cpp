#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "golden.hpp"
#include "ntruke/channel.hpp"
#include "ntruke/cli.hpp"
#include "ntruke/codec.hpp"
#include "ntruke/errors.hpp"

namespace ntruke {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "ntruke");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ntruke_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
};

TEST(ParseSeed, DecimalAndHex) {
  EXPECT_EQ(cli::parse_seed("42"), 42u);
  EXPECT_EQ(cli::parse_seed("0x2a"), 42u);
  EXPECT_EQ(cli::parse_seed("0X2A"), 42u);
  EXPECT_EQ(cli::parse_seed("18446744073709551615"), 18446744073709551615ull);
  for (const char* bad : {"", "abc", "12abc", "-1", "0x", "0xg1", "99999999999999999999"}) {
    EXPECT_THROW((void)cli::parse_seed(bad), ConfigError) << bad;
  }
}

TEST_F(CliTest, UnknownSubcommandIsUsageError) {
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"attack", "--bogus"}).code, cli::kExitUsage);
}

TEST_F(CliTest, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("attack"), std::string::npos);
}

TEST_F(CliTest, InvalidParamsAreConfigErrors) {
  EXPECT_EQ(run({"exchange", "--n", "168"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"exchange", "--preset", "fast"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"exchange", "--seed", "zz"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"experiment", "--trials", "0"}).code, cli::kExitUsage);
}

TEST_F(CliTest, KeygenPrintsPublicAndSecretHalves) {
  const auto r = run({"keygen", "--n", "7", "--q", "32", "--d", "2", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = codec::Json::parse(r.out);
  EXPECT_EQ(doc.at("public").at("h").size(), 7u);
  EXPECT_EQ(doc.at("secret").at("f").size(), 7u);
  EXPECT_EQ(doc.at("params").at("q"), 32);
}

TEST_F(CliTest, AttackRecoversBothKeys) {
  const auto r = run({"attack", "--n", "167", "--q", "128", "--p", "3", "--d", "7", "--seed", "42"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = codec::Json::parse(r.out);
  EXPECT_EQ(doc.at("f_A_match"), true);
  EXPECT_EQ(doc.at("f_B_match"), true);
  EXPECT_EQ(doc.at("transparent"), true);
  EXPECT_EQ(doc.at("recovered_f_A"), doc.at("true_f_A"));
}

TEST_F(CliTest, ExchangeIsDeterministic) {
  const auto a = run({"exchange", "--seed", "1"});
  const auto b = run({"exchange", "--seed", "1"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(codec::Json::parse(a.out).at("agree"), true);
  EXPECT_NE(a.out, run({"exchange", "--seed", "2"}).out);
}

TEST_F(CliTest, AttackSeed42MatchesGoldenFiles) {
  const auto a = (dir_ / "a").string();
  const auto b = (dir_ / "b").string();
  const auto first = run({"attack", "--seed", "42", "--preset", "guarantee", "--out", a});
  const auto second = run({"attack", "--seed", "42", "--preset", "guarantee", "--out", b});
  ASSERT_EQ(first.code, 0);
  EXPECT_EQ(first.out, second.out);
  for (const char* file : {"transcript.json", "report.json", "oracle.json"}) {
    EXPECT_EQ(slurp(dir_ / "a" / file), slurp(dir_ / "b" / file)) << file;
  }
  EXPECT_EQ(slurp(dir_ / "a" / "report.json"), first.out);
  golden::expect_matches("attack_seed42_transcript.json", slurp(dir_ / "a" / "transcript.json"));
  golden::expect_matches("attack_seed42_report.json", slurp(dir_ / "a" / "report.json"));
}

TEST_F(CliTest, HexSeedEqualsDecimalSeed) {
  EXPECT_EQ(run({"attack", "--seed", "0x2a"}).out, run({"attack", "--seed", "42"}).out);
}

TEST_F(CliTest, VerifyAcceptsGenuineAndRejectsTampered) {
  const auto out = (dir_ / "run").string();
  ASSERT_EQ(run({"attack", "--seed", "42", "--out", out}).code, 0);
  const auto transcript = (dir_ / "run" / "transcript.json").string();
  const auto oracle = (dir_ / "run" / "oracle.json").string();
  const auto report = (dir_ / "run" / "report.json").string();

  const auto ok = run({"verify", "--transcript", transcript, "--oracle", oracle, "--report", report});
  EXPECT_EQ(ok.code, cli::kExitOk) << ok.out;

  // Flip one coefficient of Alice's captured ephemeral.
  auto log = parse_transcript(slurp(transcript));
  Poly& e = *log[4].message.e;
  e[0] = -e[0] == e[0] ? 1 : -e[0];
  std::ofstream(transcript, std::ios::binary) << serialize_transcript(log) << '\n';
  const auto bad = run({"verify", "--transcript", transcript, "--oracle", oracle, "--report", report});
  EXPECT_EQ(bad.code, cli::kExitVerifyFailed) << bad.out;
}

TEST_F(CliTest, VerifyHonestTranscript) {
  const auto out = (dir_ / "honest").string();
  ASSERT_EQ(run({"exchange", "--seed", "5", "--out", out}).code, 0);
  EXPECT_FALSE(fs::exists(dir_ / "honest" / "report.json"));
  const auto r = run({"verify", "--transcript", (dir_ / "honest" / "transcript.json").string(),
                      "--oracle", (dir_ / "honest" / "oracle.json").string()});
  EXPECT_EQ(r.code, cli::kExitOk) << r.out;
}

TEST_F(CliTest, VerifyMissingFileIsUsageError) {
  EXPECT_EQ(run({"verify", "--transcript", "/nope.json", "--oracle", "/nope2.json"}).code,
            cli::kExitUsage);
  EXPECT_EQ(run({"verify", "--transcript", "/nope.json"}).code, cli::kExitUsage);
}

TEST_F(CliTest, ExperimentFromFlagsAndConfig) {
  const auto summary_path = (dir_ / "summary.json").string();
  const auto r = run({"experiment", "--mode", "mitm", "--trials", "20", "--seed", "3", "--out",
                      summary_path});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = codec::Json::parse(r.out);
  EXPECT_EQ(doc.at("f_A_recoveries"), 20);
  EXPECT_EQ(doc.at("f_B_recoveries"), 20);
  EXPECT_EQ(slurp(summary_path), r.out);

  const auto config = (dir_ / "cfg.json").string();
  std::ofstream(config) << R"({"mode":"mitm","trials":20,"seed":3})";
  const auto from_file = run({"experiment", "--config", config});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(from_file.out, r.out);

  // Flags override the file.
  const auto overridden = run({"experiment", "--config", config, "--trials", "5"});
  EXPECT_EQ(codec::Json::parse(overridden.out).at("trials"), 5);
}

TEST_F(CliTest, ExperimentBadConfigFile) {
  const auto config = (dir_ / "bad.json").string();
  std::ofstream(config) << "{not json";
  EXPECT_EQ(run({"experiment", "--config", config}).code, cli::kExitUsage);
}

}  // namespace
}  // namespace ntruke
