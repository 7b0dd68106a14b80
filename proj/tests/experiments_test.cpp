#include <gtest/gtest.h>

#include "expcx/experiments.hpp"
#include "expcx/io_json.hpp"

using namespace expcx;
namespace mp = boost::multiprecision;

TEST(InversiveClosedForm, PassesForSmallPrimes) {
  for (std::uint64_t p : {3, 5, 7, 11, 13, 31}) {
    const auto rep = verify_theorem3(p);
    EXPECT_EQ(rep.verdict, Verdict::pass) << p;
    EXPECT_EQ(rep.cases.size(), p - 2);
  }
}

TEST(InversiveClosedForm, RejectsBadModulus) {
  EXPECT_THROW(verify_theorem3(2), Error);
  EXPECT_THROW(verify_theorem3(15), Error);
}

TEST(InversiveIStarWindow, WindowsAndVacuousCase) {
  const auto w = star_windows(31);
  ASSERT_EQ(w.size(), 6U);
  EXPECT_EQ(w.front(), (std::pair<unsigned, std::size_t>{6, 23}));
  EXPECT_EQ(w.back(), (std::pair<unsigned, std::size_t>{7, 30}));
  const auto rep = verify_theorem_star(13);
  EXPECT_EQ(rep.verdict, Verdict::pass);
  EXPECT_TRUE(rep.summary["vacuous"].get<bool>());
}

TEST(InversiveIStarWindow, P29) {
  const auto rep = verify_theorem_star(29);
  EXPECT_EQ(rep.verdict, Verdict::pass);
  for (const auto& c : rep.cases) EXPECT_EQ(c["E_star_N"].get<unsigned>(), 6U);
}

TEST(Shifts, MatchesDirectCount) {
  const auto rep = count_exceptional_shifts(11, 2);
  EXPECT_EQ(rep.summary["exceptional"].get<unsigned>(), 1U);
  EXPECT_EQ(rep.cases[8]["exceptional"].get<bool>(), true);  // m = 9
  EXPECT_EQ(rep.summary["proof_bound"].get<unsigned>(), 3U);
  EXPECT_EQ(rep.verdict, Verdict::pass);
  const auto big = count_exceptional_shifts(101, 3, 2);
  EXPECT_EQ(big.summary["exceptional"].get<unsigned>(), 2U);
  EXPECT_EQ(to_json(big, false), to_json(count_exceptional_shifts(101, 3, 1), false));
}

TEST(Threshold, ExactValues) {
  EXPECT_EQ(threshold_bn(40, mp::cpp_rational(1, 4)), 6U);  // 0.75 * sqrt(80) = 6.708
  EXPECT_EQ(threshold_bn(8, mp::cpp_rational(1, 2)), 2U);   // 0.5 * 4 = 2 exactly
  EXPECT_EQ(counting_bound(2, 40, 6), mp::cpp_rational(6 * (std::int64_t{1} << 27), std::int64_t{1} << 40));
}

TEST(MonteCarlo, SeededAndThreadIndependent) {
  MonteCarloParams mc;
  mc.q = 3;
  mc.n = 20;
  mc.trials = 12;
  mc.seed = 77;
  const auto a = montecarlo_theorem2(mc, {}, 1);
  const auto b = montecarlo_theorem2(mc, {}, 3);
  EXPECT_EQ(to_json(a, false), to_json(b, false));
  EXPECT_EQ(a.seed, std::optional<std::uint64_t>(77));
  mc.seed = 78;
  EXPECT_NE(to_json(montecarlo_theorem2(mc), false)["cases"], to_json(a, false)["cases"]);
  mc.epsilon = 1;
  EXPECT_THROW(montecarlo_theorem2(mc), Error);
}

TEST(Carlitz, SmallCasesAndReportShape) {
  const auto rep = compare_carlitz(2, 2);
  ASSERT_EQ(rep.cases.size(), 2U);
  EXPECT_EQ(rep.cases[0]["exact"].get<unsigned>(), 6U);
  EXPECT_EQ(rep.cases[1]["exact"].get<unsigned>(), 35U);
  EXPECT_EQ(rep.cases[1]["main_term"].get<std::string>(), "64");
}

TEST(GPrime, Passes) {
  const auto rep = verify_gprime(11, 33);
  EXPECT_EQ(rep.verdict, Verdict::pass);
  EXPECT_TRUE(rep.summary["first_mismatch"].is_null());
}

TEST(Report, JsonSchemaKeysAndCsv) {
  const auto rep = verify_theorem3(5);
  const auto j = to_json(rep);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"schema_version", "experiment", "params", "seed", "cases", "summary",
                                            "verdict", "elapsed_ms"}));
  EXPECT_EQ(to_csv(rep), "N,expected,E_N,ok\n2,1,1,true\n3,2,2,true\n4,2,2,true\n");
}
