#include <gtest/gtest.h>

#include "qbcs/cultures.hpp"
#include "qbcs/scoring.hpp"
#include "test_support.hpp"

namespace qbcs {
namespace {

using testing::committee;
using testing::partition;

TEST(ScoringVector, BordaAndValidation) {
  const auto b = ScoringVector::borda(4);
  EXPECT_EQ(std::vector<double>(b.values().begin(), b.values().end()), (std::vector<double>{3, 2, 1, 0}));
  EXPECT_THROW(ScoringVector({1, 2}), Error);
  EXPECT_THROW(ScoringVector({}), Error);
  EXPECT_NO_THROW(ScoringVector({1, 1, 0}));
}

TEST(PartialScores, TwoPairs) {
  const std::vector<OrderedPartition> profile{partition({{0, 1}, {2, 3}})};
  EXPECT_EQ(partial_scores(profile, ScoringVector::borda(4)), (ScoreTable{2.5, 2.5, 0.5, 0.5}));
}

TEST(PartialScores, SingleClass) {
  const std::vector<OrderedPartition> profile{partition({{0, 1, 2, 3}})};
  EXPECT_EQ(partial_scores(profile, ScoringVector::borda(4)), (ScoreTable{1.5, 1.5, 1.5, 1.5}));
}

TEST(PartialScores, SingletonsGiveBorda) {
  const auto e = testing::worked_example();
  const std::vector<OrderedPartition> profile{partition({{0}, {1}, {2}, {3}}), partition({{1}, {0}, {2}, {3}})};
  EXPECT_EQ(partial_scores(profile, ScoringVector::borda(4)), borda_scores(e));
}

TEST(PartialScores, CustomVector) {
  // k-approval-like vector (1,1,0,0) over {2} > {0,3} > {1}.
  const std::vector<OrderedPartition> profile{partition({{2}, {0, 3}, {1}})};
  EXPECT_EQ(partial_scores(profile, ScoringVector({1, 1, 0, 0})), (ScoreTable{0.5, 0, 1, 0.5}));
}

TEST(PartialScores, RejectsIncompletePartition) {
  auto code = [](const OrderedPartition& p) {
    try {
      const std::vector<OrderedPartition> profile{p};
      partial_scores(profile, ScoringVector::borda(4));
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::io;
  };
  EXPECT_EQ(code(partition({{0, 1}, {2}})), Errc::invalid_profile);
  EXPECT_EQ(code(partition({{0, 1}, {1, 2, 3}})), Errc::invalid_profile);
  EXPECT_EQ(code(partition({{0, 1}, {}, {2, 3}})), Errc::invalid_profile);
}

TEST(QueryBasedCommittee, ZeroBudgetFallsBackToTieBreak) {
  auto spec = testing::culture(CultureKind::IC);
  spec.seed = 12;
  const auto e = generate(spec, 8, 9, 3);
  for (Strategy s : kAllStrategies)
    EXPECT_EQ(query_based_committee(e, s, CostFunction(), Budget(0)).committee, committee({0, 1, 2}));
}

TEST(QueryBasedCommittee, UnboundedBudgetMatchesBorda) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto spec = testing::culture(CultureKind::Urn);
    spec.seed = seed;
    const auto e = generate(spec, 10, 11, 4);
    for (Strategy s : kAllStrategies)
      EXPECT_EQ(hamming(query_based_committee(e, s, CostFunction(), Budget::unbounded()).committee, borda_committee(e)), 0u);
  }
}

TEST(QueryBasedCommittee, ScoringVectorLengthMustMatch) {
  const auto e = testing::worked_example();
  const auto order = identity_order(2);
  EXPECT_THROW(query_based_committee(e, {}, CostFunction(), Budget(1), order, ScoringVector::borda(5)), Error);
}

}  // namespace
}  // namespace qbcs
