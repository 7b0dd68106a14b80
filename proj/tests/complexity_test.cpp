#include <gtest/gtest.h>

#include "expcx/complexity.hpp"
#include "expcx/generators.hpp"
#include "expcx/irreducible.hpp"
#include "oracles.hpp"

using namespace expcx;

namespace {

SequencePrefix example_000001() { return {PrimeField(5), {0, 0, 0, 0, 0, 1}}; }

bool annihilates(const BivariatePoly& h, const SequencePrefix& s, std::size_t n) {
  return eval_poly_at_series(h, series_from_prefix(s.prefix(n))).is_zero();
}

}  // namespace

TEST(ExpansionComplexity, Example000001) {
  const auto r = expansion_complexity(example_000001(), 6);
  EXPECT_EQ(r.value, 2U);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(to_string(*r.witness), "x*y");
  EXPECT_EQ(r.status, ComplexityStatus::exact);
}

TEST(IExpansionComplexity, Example000001) {
  const auto r = i_expansion_complexity(example_000001(), 6);
  EXPECT_EQ(r.value, 5U);
  EXPECT_EQ(r.status, ComplexityStatus::exact);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(*r.witness, normalize(parse_poly(PrimeField(5), "y - x^5")));
}

TEST(ExpansionComplexity, AllLength6SequencesOverF3MatchEnumeration) {
  const PrimeField f(3);
  for (unsigned code = 0; code < 729; ++code) {
    std::vector<Residue> sym(6);
    unsigned c = code;
    for (auto& v : sym) {
      v = c % 3;
      c /= 3;
    }
    const SequencePrefix s(f, sym);
    const auto ref = oracle::expansion_by_enumeration(sym, 6, 3, 3);
    const auto prof = expansion_profile(s, 6);
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto single = expansion_complexity(s, n);
      ASSERT_EQ(single.value, ref[n]) << "code " << code << " N " << n;
      ASSERT_EQ(prof.entries[n - 1].value, ref[n]);
      ASSERT_EQ(prof.entries[n - 1].witness, single.witness);
    }
  }
}

TEST(ExpansionComplexity, ProfileInvariantsOnRandomSequences) {
  for (Residue q : {2U, 3U, 5U, 7U}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const SequencePrefix s = random_prefix(PrimeField(q), 45, seed);
      const auto prof = expansion_profile(s, 45);
      for (std::size_t n = 1; n <= 45; ++n) {
        const auto& e = prof.entries[n - 1];
        EXPECT_LE(e.value * (e.value + 1) / 2, n);
        if (n > 1) {
          EXPECT_LE(prof.entries[n - 2].value, e.value);
        }
        if (e.value > 0) {
          ASSERT_TRUE(e.witness.has_value());
          EXPECT_TRUE(is_normalized(*e.witness));
          EXPECT_EQ(e.witness->total_degree(), e.value);
          EXPECT_TRUE(annihilates(*e.witness, s, n));
        }
      }
    }
  }
}

TEST(ExpansionComplexity, SolutionSpaceDimensionAndMembers) {
  const SequencePrefix s = random_prefix(PrimeField(5), 12, 99);
  for (unsigned d = 1; d <= 4; ++d) {
    const auto space = solution_space(s, d, 12);
    EXPECT_GE(space.dimension() + 12, monomial_count(d));
    for (const auto& h : space.basis) EXPECT_TRUE(annihilates(h, s, 12));
  }
}

TEST(ExpansionComplexity, ZeroPrefixHasComplexityZero) {
  const SequencePrefix s(PrimeField(7), {0, 0, 0});
  const auto r = expansion_complexity(s, 3);
  EXPECT_EQ(r.value, 0U);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_EQ(i_expansion_complexity(s, 3).value, 0U);
}

TEST(ExpansionComplexity, PrefixTooShort) {
  const SequencePrefix s(PrimeField(7), {1, 2});
  for (std::size_t n : {0U, 3U}) {
    try {
      (void)expansion_complexity(s, n);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::prefix_too_short);
    }
  }
}

TEST(ExpansionComplexity, InversiveClosedFormSmallPrimes) {
  for (std::uint64_t p : {5, 7, 11, 13, 17, 19, 23}) {
    const auto prof = expansion_profile(inversive_prefix(PrimeField(p), 0, p - 1), p - 1, false);
    for (std::size_t n = 2; n <= p - 1; ++n) EXPECT_EQ(prof.entries[n - 1].value, expansion_bound(n)) << p << " " << n;
  }
}

TEST(IExpansionComplexity, BoundsAndWitness) {
  for (Residue q : {2U, 3U, 5U}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const SequencePrefix s = random_prefix(PrimeField(q), 16, seed + 100);
      for (std::size_t n : {4U, 9U, 16U}) {
        if (s.is_zero_through(n)) continue;
        const auto e = expansion_complexity(s, n);
        const auto r = i_expansion_complexity(s, n);
        EXPECT_LE(e.value, r.value);
        ASSERT_TRUE(r.witness.has_value());
        EXPECT_TRUE(is_irreducible(*r.witness));
        EXPECT_TRUE(annihilates(*r.witness, s, n));
        if (r.status == ComplexityStatus::exact) {
          EXPECT_EQ(r.witness->total_degree(), r.value);
        }
      }
    }
  }
}

// Over F_2 with short prefixes every normalized polynomial of low degree can
// be listed, so E*_N can be confirmed by brute force.
TEST(IExpansionComplexity, MatchesBruteForceOverF2) {
  const PrimeField f(2);
  std::vector<std::vector<BivariatePoly>> by_degree(5);
  for (unsigned d = 1; d <= 4; ++d)
    for (auto& h : list_normalized(f, d))
      if (is_irreducible(h)) by_degree[d].push_back(h);
  for (unsigned code = 1; code < 64; ++code) {
    std::vector<Residue> sym(6);
    for (unsigned i = 0; i < 6; ++i) sym[i] = (code >> i) & 1U;
    const SequencePrefix s(f, sym);
    for (std::size_t n = 1; n <= 6; ++n) {
      if (s.is_zero_through(n)) continue;
      unsigned expected = 0;
      for (unsigned d = 1; d <= 4 && expected == 0; ++d)
        for (const auto& h : by_degree[d])
          if (annihilates(h, s, n)) {
            expected = d;
            break;
          }
      const auto r = i_expansion_complexity(s, n);
      ASSERT_EQ(r.status, ComplexityStatus::exact);
      if (expected) {
        EXPECT_EQ(r.value, expected) << code << " " << n;
      } else {
        EXPECT_GT(r.value, 4U);
      }
    }
  }
}

TEST(IExpansionComplexity, LowerBoundWhenEnumerationCapped) {
  const SequencePrefix s = random_prefix(PrimeField(2), 40, 7);
  SearchConfig cfg;
  cfg.enum_cap = 1;
  cfg.sample_cap = 0;
  const auto r = i_expansion_complexity(s, 40, cfg);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(annihilates(*r.witness, s, 40));
  if (r.status == ComplexityStatus::lower_bound) {
    ASSERT_TRUE(r.upper_bound.has_value());
    EXPECT_LE(r.value, *r.upper_bound);
    EXPECT_EQ(r.witness->total_degree(), *r.upper_bound);
  }
  const auto exact = i_expansion_complexity(s, 40);
  EXPECT_LE(r.value, exact.value);
}

TEST(IExpansionComplexity, DeterministicForFixedSeed) {
  const SequencePrefix s = random_prefix(PrimeField(3), 30, 5);
  SearchConfig cfg;
  cfg.enum_cap = 10;
  const auto a = i_expansion_complexity(s, 30, cfg);
  const auto b = i_expansion_complexity(s, 30, cfg);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.witness, b.witness);
}

TEST(DefiningPoly, RoundTripInversiveP5) {
  const PrimeField f(5);
  const SequencePrefix s = inversive_prefix(f, 0, 25);
  const auto h = find_defining_poly(s, 5);
  ASSERT_TRUE(h.has_value());
  EXPECT_TRUE(is_irreducible(*h));
  const auto ext = extend_sequence(*h, s, 15);
  EXPECT_EQ(ext.status, ExtensionStatus::complete);
  EXPECT_EQ(ext.sequence, inversive_prefix(f, 0, 40));
}

TEST(DefiningPoly, NotFoundWhenDegreeTooSmall) {
  const SequencePrefix s = inversive_prefix(PrimeField(11), 0, 25);
  EXPECT_FALSE(find_defining_poly(s, 5).has_value());
}

TEST(DefiningPoly, ZeroPrefix) {
  const PrimeField f(3);
  EXPECT_EQ(find_defining_poly(SequencePrefix(f, {0, 0, 0, 0}), 2), BivariatePoly::y(f));
  EXPECT_EQ(find_defining_poly(SequencePrefix(f, {0}), 2), BivariatePoly::x(f));
}

TEST(Extension, StopsOnAmbiguityAndInconsistency) {
  const PrimeField f(5);
  const SequencePrefix s(f, {0, 0, 0, 0, 0, 1});
  const auto amb = extend_sequence(parse_poly(f, "y^2"), SequencePrefix(f, {0, 0, 0}), 3);
  EXPECT_EQ(amb.status, ExtensionStatus::ambiguous);
  EXPECT_EQ(amb.appended, 0U);
  EXPECT_EQ(amb.candidates.size(), 5U);
  const auto bad = extend_sequence(parse_poly(f, "x*y"), s, 3);
  EXPECT_EQ(bad.status, ExtensionStatus::inconsistent);
  EXPECT_TRUE(bad.candidates.empty());
  try {
    (void)extend_sequence(parse_poly(f, "y"), s, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::prerequisite_violated);
  }
  const auto ok = extend_sequence(parse_poly(f, "y - x^5"), s, 4);
  EXPECT_EQ(ok.status, ExtensionStatus::complete);
  EXPECT_EQ(ok.sequence.symbols().back(), 0U);
}
