#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "qbcs/cultures.hpp"
#include "test_support.hpp"

namespace qbcs {
namespace {

CultureSpec spec_of(CultureKind kind, std::uint64_t seed = 1) {
  CultureSpec s;
  s.kind = kind;
  s.seed = seed;
  return s;
}

TEST(Cultures, IdentityVotersAllAgree) {
  const Election e = generate(spec_of(CultureKind::ID), 3, 5, 1);
  ASSERT_EQ(e.num_voters(), 5u);
  for (const auto& v : e.voters()) EXPECT_EQ(v, e.voter(0));
}

TEST(Cultures, IdentityCommitteeIsTopPrefix) {
  const Election e = generate(spec_of(CultureKind::ID, 9), 10, 7, 4);
  const auto& shared = e.voter(0);
  EXPECT_EQ(borda_committee(e), Committee({shared[0], shared[1], shared[2], shared[3]}));
}

TEST(Cultures, AntagonismSplitsIntoOpposedHalves) {
  const Election e = generate(spec_of(CultureKind::AN), 3, 4, 1);
  EXPECT_EQ(e.voter(0), e.voter(1));
  EXPECT_EQ(e.voter(2), e.voter(3));
  EXPECT_EQ(e.voter(2), e.voter(0).reversed());
}

TEST(Cultures, AntagonismOddVoterJoinsFirstHalf) {
  const Election e = generate(spec_of(CultureKind::AN), 4, 5, 1);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(e.voter(i), e.voter(0));
  for (std::size_t i = 3; i < 5; ++i) EXPECT_EQ(e.voter(i), e.voter(0).reversed());
}

TEST(Cultures, AntagonismCancelsBordaScores) {
  const Election e = generate(spec_of(CultureKind::AN, 4), 6, 8, 2);
  for (double s : borda_scores(e)) EXPECT_EQ(s, 8.0 * 5.0 / 2.0);
}

TEST(Cultures, StratificationKeepsAgreedHalves) {
  const Election e = generate(spec_of(CultureKind::ST, 5), 8, 30, 4);
  std::set<CandidateId> top(e.voter(0).ranking().begin(), e.voter(0).ranking().begin() + 4);
  std::set<std::vector<CandidateId>> distinct;
  for (const auto& v : e.voters()) {
    EXPECT_EQ(std::set<CandidateId>(v.ranking().begin(), v.ranking().begin() + 4), top);
    distinct.emplace(v.ranking().begin(), v.ranking().end());
  }
  EXPECT_GT(distinct.size(), 1u);
}

TEST(Cultures, StratificationRejectsOddCandidateCount) {
  try {
    generate(spec_of(CultureKind::ST), 5, 3, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_parameter);
  }
}

TEST(Cultures, UniformityIsBalancedWhenFactorialDividesN) {
  const Election e = generate(spec_of(CultureKind::UN, 3), 3, 12, 1);
  std::map<std::vector<CandidateId>, int> counts;
  for (const auto& v : e.voters()) ++counts[std::vector<CandidateId>(v.ranking().begin(), v.ranking().end())];
  EXPECT_EQ(counts.size(), 6u);
  for (const auto& [r, c] : counts) EXPECT_EQ(c, 2);
}

TEST(Cultures, UniformityUsesDistinctOrdersWhenNIsSmall) {
  const Election e = generate(spec_of(CultureKind::UN, 3), 6, 40, 1);
  std::set<std::vector<CandidateId>> distinct;
  for (const auto& v : e.voters()) distinct.emplace(v.ranking().begin(), v.ranking().end());
  EXPECT_EQ(distinct.size(), 40u);
}

TEST(Cultures, RejectsBadParameters) {
  auto mallows = spec_of(CultureKind::Mallows);
  mallows.phi = 0.0;
  EXPECT_THROW(generate(mallows, 4, 4, 2), Error);
  mallows.phi = 1.5;
  EXPECT_THROW(generate(mallows, 4, 4, 2), Error);
  auto urn = spec_of(CultureKind::Urn);
  urn.alpha = -1.0;
  EXPECT_THROW(generate(urn, 4, 4, 2), Error);
  EXPECT_THROW(generate(spec_of(CultureKind::IC), 4, 4, 5), Error);
  EXPECT_THROW(generate(spec_of(CultureKind::IC), 4, 0, 1), Error);
}

TEST(Cultures, GenerationIsDeterministic) {
  for (CultureKind kind : kAllCultures) {
    const auto a = generate(spec_of(kind, 77), 6, 25, 3);
    const auto b = generate(spec_of(kind, 77), 6, 25, 3);
    EXPECT_EQ(a, b) << to_string(kind);
  }
  EXPECT_NE(generate(spec_of(CultureKind::IC, 1), 6, 25, 3), generate(spec_of(CultureKind::IC, 2), 6, 25, 3));
}

TEST(Cultures, EveryVoteIsAPermutation) {
  Rng rng(2024);
  for (int t = 0; t < 200; ++t) {
    const auto kind = kAllCultures[t % kAllCultures.size()];
    std::size_t m = 1 + rng.below(12);
    if (kind == CultureKind::ST && m % 2) ++m;
    const std::size_t n = 1 + rng.below(30);
    const auto e = generate(spec_of(kind, rng.next()), m, n, 1 + rng.below(m));
    ASSERT_EQ(e.num_voters(), n);
    for (const auto& v : e.voters()) {
      std::vector<CandidateId> sorted(v.ranking().begin(), v.ranking().end());
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < m; ++i) ASSERT_EQ(sorted[i], static_cast<CandidateId>(i));
    }
  }
}

TEST(EuclideanOracle, SortsByDistance) {
  const std::vector<Point2> two{{1, 0}, {2, 0}};
  EXPECT_EQ(euclidean_distance_oracle({0, 0}, two), testing::order({0, 1}));
  const std::vector<Point2> three{{0.1, 0}, {0.5, 0}, {0.9, 0}};
  EXPECT_EQ(euclidean_distance_oracle({0, 0}, three), testing::order({0, 1, 2}));
}

TEST(EuclideanOracle, EquidistantCandidatesFavourLowerId) {
  const std::vector<Point2> pts{{1, 0}, {-1, 0}};
  EXPECT_EQ(euclidean_distance_oracle({0, 0}, pts), testing::order({0, 1}));
  // Hand distances: sqrt(0.5), sqrt(0.5), 0.1.
  const std::vector<Point2> diag{{0, 0}, {1, 1}, {0.5, 0.6}};
  EXPECT_EQ(euclidean_distance_oracle({0.5, 0.5}, diag), testing::order({2, 0, 1}));
}

TEST(EuclideanOracle, ForcedPointsElection) {
  const std::vector<Point2> voters{{0, 0}, {1, 0}};
  const std::vector<Point2> candidates{{0.1, 0}, {0.5, 0}, {0.9, 0}};
  const Election e = euclidean_election(voters, candidates, 1);
  EXPECT_EQ(e.voter(0), testing::order({0, 1, 2}));
  EXPECT_EQ(e.voter(1), testing::order({2, 1, 0}));
}

// Frequency oracle: every one of the 3! orders should show up about 1/6 of
// the time, and the chi-square statistic (5 dof) should stay below the
// 0.1% critical value 20.515.
TEST(Cultures, ImpartialCultureIsUniform) {
  const std::size_t n = 60000;
  const Election e = generate(spec_of(CultureKind::IC, 123), 3, n, 1);
  std::map<std::vector<CandidateId>, double> counts;
  for (const auto& v : e.voters()) counts[std::vector<CandidateId>(v.ranking().begin(), v.ranking().end())] += 1;
  ASSERT_EQ(counts.size(), 6u);
  const double expected = static_cast<double>(n) / 6.0;
  double chi2 = 0.0;
  for (const auto& [r, c] : counts) {
    EXPECT_NEAR(c / static_cast<double>(n), 1.0 / 6.0, 0.01);
    chi2 += (c - expected) * (c - expected) / expected;
  }
  EXPECT_LT(chi2, 20.515);
}

// E[KT] under Mallows: m*phi/(1-phi) - sum_{j=1..m} j*phi^j/(1-phi^j).
double mallows_expected_kendall(std::size_t m, double phi) {
  if (phi == 1.0) return static_cast<double>(m * (m - 1)) / 4.0;
  double e = static_cast<double>(m) * phi / (1.0 - phi);
  for (std::size_t j = 1; j <= m; ++j) {
    const double pj = std::pow(phi, static_cast<double>(j));
    e -= static_cast<double>(j) * pj / (1.0 - pj);
  }
  return e;
}

TEST(Cultures, MallowsDispersionControlsDistanceToCenter) {
  const std::size_t m = 8, n = 4000;
  double previous = -1.0;
  for (double phi : {0.05, 0.2, 0.4, 0.6, 0.8, 1.0}) {
    auto spec = spec_of(CultureKind::Mallows, 31);
    spec.phi = phi;
    spec.center = PreferenceOrder::identity(m);
    const Election e = generate(spec, m, n, 1);
    double mean = 0.0;
    for (const auto& v : e.voters()) mean += static_cast<double>(kendall_tau(v, *spec.center));
    mean /= static_cast<double>(n);
    EXPECT_GT(mean, previous) << "phi=" << phi;
    EXPECT_NEAR(mean, mallows_expected_kendall(m, phi), 0.05 * mallows_expected_kendall(m, phi) + 0.02)
        << "phi=" << phi;
    previous = mean;
  }
}

TEST(Cultures, UrnWithoutContagionIsImpartial) {
  auto urn = spec_of(CultureKind::Urn, 8);
  urn.alpha = 0.0;
  const Election e = generate(urn, 3, 30000, 1);
  std::map<std::vector<CandidateId>, double> counts;
  for (const auto& v : e.voters()) counts[std::vector<CandidateId>(v.ranking().begin(), v.ranking().end())] += 1;
  for (const auto& [r, c] : counts) EXPECT_NEAR(c / 30000.0, 1.0 / 6.0, 0.015);
}

TEST(Cultures, UrnContagionRepeatsVotes) {
  auto urn = spec_of(CultureKind::Urn, 8);
  urn.alpha = 5.0;
  const Election e = generate(urn, 10, 200, 1);
  std::set<std::vector<CandidateId>> distinct;
  for (const auto& v : e.voters()) distinct.emplace(v.ranking().begin(), v.ranking().end());
  // Expected fresh draws: sum_j 1/(1+5j) ~ 2.1 for 200 voters.
  EXPECT_LT(distinct.size(), 10u);
}

}  // namespace
}  // namespace qbcs
