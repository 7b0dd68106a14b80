#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "expcx/cli.hpp"

using namespace expcx;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "expcx");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / ("expcx_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
    example_ = write("ex.txt", "p=5\n0 0 0 0 0 1\n");
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& body) {
    const auto path = dir_ / name;
    std::ofstream(path) << body;
    return path.string();
  }

  std::filesystem::path dir_;
  std::string example_;
};

}  // namespace

TEST_F(CliTest, GenInversiveGolden) {
  const auto r = run({"gen", "inversive", "--p", "5", "--len", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "p=5\n0 1 3 2 4\n");
}

TEST_F(CliTest, GenToFileMatchesLibrary) {
  const auto path = (dir_ / "r.txt").string();
  const auto r = run({"gen", "random", "--q", "7", "--len", "40", "--seed", "9", "--out", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(read_sequence_file(path), random_prefix(PrimeField(7), 40, 9));
}

TEST_F(CliTest, EnGolden) {
  const auto r = run({"en", "--input", example_, "--n", "6"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "E_6 = 2\nwitness: x*y\n");
}

TEST_F(CliTest, IStarGoldenAndJson) {
  const auto r = run({"istar", "--input", example_, "--n", "6"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "E*_6 = 5\nwitness: 4*y + x^5\n");
  const auto j = run({"--json", "istar", "--input", example_, "--n", "6"});
  const auto parsed = result_from_json(Json::parse(j.out));
  const auto direct = i_expansion_complexity(read_sequence_file(example_), 6);
  EXPECT_EQ(parsed.value, direct.value);
  EXPECT_EQ(parsed.witness, direct.witness);
  EXPECT_EQ(result_to_json(parsed), Json::parse(j.out));
}

TEST_F(CliTest, GlobalFlagAfterSubcommand) {
  const auto r = run({"en", "--input", example_, "--n", "6", "--json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["witness_text"], "x*y");
}

TEST_F(CliTest, ProfileJsonRoundTripsAndMatchesLibrary) {
  const auto path = write("inv.txt", format_sequence(inversive_prefix(PrimeField(11), 0, 10)));
  const auto r = run({"--json", "profile", "--input", path, "--nmax", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto prof = profile_from_json(Json::parse(r.out));
  const auto direct = expansion_profile(read_sequence_file(path), 10);
  ASSERT_EQ(prof.entries.size(), 10U);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(prof.entries[i].value, direct.entries[i].value);
    EXPECT_EQ(prof.entries[i].witness, direct.entries[i].witness);
  }
  EXPECT_EQ(profile_to_json(prof), Json::parse(r.out));
}

TEST_F(CliTest, ProfileText) {
  const auto r = run({"profile", "--input", example_, "--nmax", "6", "--istar"});
  EXPECT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string header, last, line;
  std::getline(lines, header);
  while (std::getline(lines, line)) last = line;
  EXPECT_EQ(header, "N E_N E*_N status witness");
  EXPECT_EQ(last, "6 2 5 Exact 4*y + x^5");
}

TEST_F(CliTest, FindPolyAndPredict) {
  const auto path = write("inv5.txt", format_sequence(inversive_prefix(PrimeField(5), 0, 25)));
  const auto found = run({"find-poly", "--input", path, "--dmax", "5"});
  ASSERT_EQ(found.code, 0);
  const std::string poly = found.out.substr(0, found.out.size() - 1);
  EXPECT_EQ(parse_poly(PrimeField(5), poly), *find_defining_poly(read_sequence_file(path), 5));
  const auto pred = run({"predict", "--poly", poly, "--input", path, "--extend", "5"});
  EXPECT_EQ(pred.code, 0);
  EXPECT_EQ(pred.out, format_sequence(inversive_prefix(PrimeField(5), 0, 30)));
  const auto none = run({"find-poly", "--input", path, "--dmax", "2"});
  EXPECT_EQ(none.out, "NotFound\n");
}

TEST_F(CliTest, PredictStopsAndPrerequisite) {
  const auto amb = run({"predict", "--poly", "y^2", "--input", write("z.txt", "p=5\n0 0 0\n"), "--extend", "2"});
  EXPECT_EQ(amb.code, 3);
  EXPECT_NE(amb.err.find("Ambiguous"), std::string::npos);
  const auto bad = run({"predict", "--poly", "y", "--input", example_, "--extend", "2"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("PrerequisiteViolated"), std::string::npos);
}

TEST_F(CliTest, ExperimentsExitCodes) {
  EXPECT_EQ(run({"verify", "theorem3", "--p", "13"}).code, 0);
  EXPECT_EQ(run({"verify", "gprime", "--p", "7", "--n", "21"}).code, 0);
  EXPECT_EQ(run({"verify", "star", "--p", "29"}).code, 0);
  EXPECT_EQ(run({"shifts", "--p", "11", "--d", "2"}).code, 0);
  EXPECT_EQ(run({"carlitz", "--q", "2", "--dmax", "3"}).code, 2);
  EXPECT_EQ(run({"carlitz", "--q", "2", "--dmax", "1"}).code, 0);
  const auto count = run({"count-irr", "--q", "3", "--d", "2"});
  EXPECT_EQ(count.out, "I_2(2) over F_3 = 273\n");
}

TEST_F(CliTest, ReportJsonMatchesLibrary) {
  const auto r = run({"--json", "shifts", "--p", "31", "--d", "3", "--threads", "2"});
  auto j = Json::parse(r.out);
  j.erase("elapsed_ms");
  EXPECT_EQ(j, to_json(count_exceptional_shifts(31, 3), false));
}

TEST_F(CliTest, CsvOutput) {
  const auto r = run({"--csv", "verify", "theorem3", "--p", "5"});
  EXPECT_EQ(r.out, "N,expected,E_N,ok\n2,1,1,true\n3,2,2,true\n4,2,2,true\n");
}

TEST_F(CliTest, Mc2RequiresSeedAndParsesEpsilonExactly) {
  const auto missing = run({"mc2", "--q", "2", "--n", "10", "--trials", "3", "--epsilon", "0.25"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("--seed"), std::string::npos);
  EXPECT_NE(missing.err.find("Usage"), std::string::npos);
  const auto r = run({"--json", "mc2", "--q", "2", "--n", "10", "--trials", "3", "--epsilon", "0.25", "--seed", "4"});
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["params"]["epsilon"], "1/4");
  EXPECT_EQ(j["seed"], 4);
  MonteCarloParams mc;
  mc.n = 10;
  mc.trials = 3;
  mc.seed = 4;
  j.erase("elapsed_ms");
  EXPECT_EQ(j, to_json(montecarlo_theorem2(mc), false));
}

TEST_F(CliTest, UsageAndInputErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"bogus"}).code, 1);
  EXPECT_EQ(run({"en", "--input", example_}).code, 1);
  EXPECT_EQ(run({"en", "--input", example_, "--n", "7"}).code, 1);
  const auto bad = run({"en", "--input", write("bad.txt", "p=5\n0 9\n"), "--n", "1"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("line 2, column 3"), std::string::npos) << bad.err;
  EXPECT_EQ(run({"gen", "inversive", "--p", "2", "--len", "3"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(ParseRational, Forms) {
  namespace mp = boost::multiprecision;
  EXPECT_EQ(cli::parse_rational("0.25"), mp::cpp_rational(1, 4));
  EXPECT_EQ(cli::parse_rational(".5"), mp::cpp_rational(1, 2));
  EXPECT_EQ(cli::parse_rational("3/12"), mp::cpp_rational(1, 4));
  EXPECT_EQ(cli::parse_rational("2"), mp::cpp_rational(2));
  EXPECT_THROW(cli::parse_rational("0.2.5"), Error);
  EXPECT_THROW(cli::parse_rational("1/0"), Error);
  EXPECT_THROW(cli::parse_rational(""), Error);
}
