#include <gtest/gtest.h>

#include <sstream>

#include "qbcs/cultures.hpp"
#include "qbcs/query_log.hpp"
#include "qbcs/scoring.hpp"
#include "qbcs/strategies.hpp"
#include "test_support.hpp"

namespace qbcs {
namespace {

using testing::order;
using testing::partition;
using testing::worked_example;

const Strategy kSplitEqual{QuestionType::Split, BudgetPolicy::Equal};

TEST(Strategy, NamesRoundTrip) {
  const std::vector<std::string> names{"N-EQ", "N-FCFS", "L-EQ", "L-FCFS", "NL-EQ", "NL-FCFS", "S-EQ", "S-FCFS"};
  for (std::size_t i = 0; i < names.size(); ++i) {
    EXPECT_EQ(to_string(kAllStrategies[i]), names[i]);
    EXPECT_EQ(parse_strategy(names[i]), kAllStrategies[i]);
  }
  EXPECT_THROW(parse_strategy("S-EQUAL"), Error);
}

TEST(Budget, Parsing) {
  EXPECT_TRUE(parse_budget("inf").is_unbounded());
  EXPECT_TRUE(parse_budget("unbounded").is_unbounded());
  EXPECT_EQ(parse_budget("24").amount(), 24.0);
  EXPECT_EQ(to_string(Budget::unbounded()), "inf");
  EXPECT_EQ(to_string(Budget(2.5)), "2.5");
  EXPECT_THROW(Budget(-1.0), Error);
  EXPECT_THROW(Budget(std::numeric_limits<double>::infinity()), Error);
}

TEST(VoterState, FreshVoterAsksAboutEveryone) {
  const auto q = next_query(init_voter(4), QuestionType::Split);
  ASSERT_TRUE(q);
  EXPECT_EQ(std::vector<CandidateId>(q->subset().begin(), q->subset().end()), (std::vector<CandidateId>{0, 1, 2, 3}));
  EXPECT_EQ(q->buckets(), (BucketVector{Ratio(1, 2), Ratio(1, 2)}));
}

TEST(VoterState, SplitQueuesBothHalvesBestFirst) {
  auto s = init_voter(4);
  const auto q = *next_query(s, QuestionType::Split);
  s = apply_answer(s, q, partition({{0, 1}, {2, 3}}));
  EXPECT_EQ(s.partition, partition({{0, 1}, {2, 3}}));
  EXPECT_EQ(s.pending, (std::deque<std::size_t>{0, 1}));
}

TEST(VoterState, NextLeavesResidualClass) {
  auto s = init_voter(4);
  const auto q = *next_query(s, QuestionType::Next);
  s = apply_answer(s, q, partition({{0}, {1, 2, 3}}));
  EXPECT_EQ(s.partition, partition({{0}, {1, 2, 3}}));
  EXPECT_EQ(s.pending, (std::deque<std::size_t>{1}));
  const auto next = next_query(s, QuestionType::Next);
  ASSERT_TRUE(next);
  EXPECT_EQ(std::vector<CandidateId>(next->subset().begin(), next->subset().end()), (std::vector<CandidateId>{1, 2, 3}));
  EXPECT_EQ(next->buckets(), (BucketVector{Ratio(1, 3), Ratio(2, 3)}));
}

TEST(VoterState, IndicesShiftWhenEarlierClassSplits) {
  auto s = init_voter(6);
  s = apply_answer(s, *next_query(s, QuestionType::Split), partition({{0, 1, 2}, {3, 4, 5}}));
  // Split {0,1,2} into {0,1} > {2}; the queued index of {3,4,5} moves from 1 to 2.
  s = apply_answer(s, *next_query(s, QuestionType::Split), partition({{0, 1}, {2}}));
  EXPECT_EQ(s.partition, partition({{0, 1}, {2}, {3, 4, 5}}));
  EXPECT_EQ(s.pending, (std::deque<std::size_t>{2, 0}));
}

TEST(VoterState, RejectsMalformedAnswers) {
  const auto s = init_voter(4);
  const auto q = *next_query(s, QuestionType::Split);
  auto code = [&](const OrderedPartition& answer) {
    try {
      apply_answer(s, q, answer);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::io;
  };
  EXPECT_EQ(code(partition({{0}, {1, 2, 3}})), Errc::protocol);     // wrong sizes
  EXPECT_EQ(code(partition({{0, 1}, {2, 2}})), Errc::protocol);     // not a partition
  EXPECT_EQ(code(partition({{0, 1, 2, 3}})), Errc::protocol);       // too few classes
  const RefinementQuery stray({0, 1}, {Ratio(1, 2), Ratio(1, 2)});  // not a current class
  EXPECT_THROW(apply_answer(s, stray, partition({{0}, {1}})), Error);
}

TEST(Elicitation, WorkedSplitEqualTrace) {
  const auto run = run_elicitation(worked_example(), kSplitEqual, CostFunction(CostKind::VarianceAware), Budget(24));
  EXPECT_EQ(run.spent, 24.0);
  ASSERT_EQ(run.log.size(), 4u);
  const std::vector<double> costs{8, 8, 4, 4};
  const std::vector<std::size_t> voters{0, 1, 0, 1};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(run.log[i].cost, costs[i]);
    EXPECT_EQ(run.log[i].voter, voters[i]);
  }
  EXPECT_EQ(run.profile[0], partition({{0}, {1}, {2, 3}}));
  EXPECT_EQ(run.profile[1], partition({{1}, {0}, {2, 3}}));
}

TEST(Elicitation, WorkedPipelineCommittee) {
  const auto out = query_based_committee(worked_example(), kSplitEqual, CostFunction(), Budget(24));
  EXPECT_EQ(out.committee, testing::committee({0, 1}));
  EXPECT_EQ(out.run.spent, 24.0);
}

TEST(Elicitation, EqualSkipsUnaffordableVoterAndContinues) {
  // Round one asks v0 (8) and skips v1 (8 > 4 left); round two asks v0's
  // {0,1} (4); round three asks nothing.
  const auto run = run_elicitation(worked_example(), kSplitEqual, CostFunction(), Budget(12));
  ASSERT_EQ(run.log.size(), 2u);
  EXPECT_EQ(run.log[0].voter, 0u);
  EXPECT_EQ(run.log[1].voter, 0u);
  EXPECT_EQ(run.spent, 12.0);
  EXPECT_EQ(run.profile[1], partition({{0, 1, 2, 3}}));
}

TEST(Elicitation, FcfsStopsAtFirstUnaffordableQuery) {
  // v0 costs 8 + 4 + 4 = 16 to resolve; the next query (v1's split, 8) does
  // not fit in 20, and FCFS does not look for cheaper work elsewhere.
  const Strategy fcfs{QuestionType::Split, BudgetPolicy::FCFS};
  const auto run = run_elicitation(worked_example(), fcfs, CostFunction(), Budget(20));
  EXPECT_EQ(run.spent, 16.0);
  EXPECT_EQ(run.log.size(), 3u);
  EXPECT_TRUE(run.profile[0].fully_resolved());
  EXPECT_EQ(run.profile[1], partition({{0, 1, 2, 3}}));
}

TEST(Elicitation, ZeroBudgetAsksNothing) {
  for (Strategy s : kAllStrategies) {
    const auto run = run_elicitation(worked_example(), s, CostFunction(), Budget(0));
    EXPECT_TRUE(run.log.empty());
    EXPECT_EQ(run.spent, 0.0);
  }
}

TEST(Elicitation, VoterOrderIsValidated) {
  const auto e = worked_example();
  const std::vector<std::size_t> dup{0, 0};
  const std::vector<std::size_t> short_order{1};
  EXPECT_THROW(run_elicitation(e, kSplitEqual, CostFunction(), Budget(1), dup), Error);
  EXPECT_THROW(run_elicitation(e, kSplitEqual, CostFunction(), Budget(1), short_order), Error);
}

TEST(Elicitation, VoterOrderDecidesWhoGoesFirst) {
  const std::vector<std::size_t> reversed{1, 0};
  const auto run = run_elicitation(worked_example(), {QuestionType::Split, BudgetPolicy::FCFS}, CostFunction(),
                                   Budget(16), reversed);
  EXPECT_TRUE(run.profile[1].fully_resolved());
  EXPECT_EQ(run.profile[0], partition({{0, 1, 2, 3}}));
}

TEST(Elicitation, UnboundedBudgetRecoversEveryOrder) {
  for (CultureKind kind : {CultureKind::IC, CultureKind::Mallows, CultureKind::Urn}) {
    auto spec = testing::culture(kind);
    spec.seed = 99;
    const auto e = generate(spec, 9, 7, 3);
    for (Strategy s : kAllStrategies) {
      for (CostKind c : kAllCosts) {
        const auto run = run_elicitation(e, s, CostFunction(c), Budget::unbounded());
        for (std::size_t v = 0; v < e.num_voters(); ++v)
          EXPECT_EQ(run.profile[v].flatten(), testing::ranking(e.voter(v))) << to_string(s) << " " << to_string(c);
      }
    }
  }
}

TEST(Elicitation, FullResolutionQueryCounts) {
  // Split on m=4 needs 3 queries per voter, Next needs m-1, NL needs 2.
  const auto e = worked_example();
  auto count = [&](QuestionType t) {
    return run_elicitation(e, {t, BudgetPolicy::Equal}, CostFunction(), Budget::unbounded()).log.size();
  };
  EXPECT_EQ(count(QuestionType::Split), 6u);
  EXPECT_EQ(count(QuestionType::Next), 6u);
  EXPECT_EQ(count(QuestionType::Last), 6u);
  EXPECT_EQ(count(QuestionType::NextAndLast), 4u);
}

TEST(QueryLog, RoundTripsAndReplays) {
  auto spec = testing::culture(CultureKind::IC);
  spec.seed = 4;
  const auto e = generate(spec, 7, 5, 3);
  const auto run = run_elicitation(e, {QuestionType::NextAndLast, BudgetPolicy::Equal},
                                   CostFunction(CostKind::Computational), Budget(60));
  std::stringstream text;
  write_log(text, run.log);
  const auto parsed = read_log(text);
  EXPECT_EQ(parsed, run.log);
  EXPECT_EQ(replay(7, 5, parsed), run.profile);

  std::stringstream again;
  write_log(again, parsed);
  EXPECT_EQ(again.str(), text.str());
}

TEST(QueryLog, LineFormat) {
  const LogEntry entry{1, RefinementQuery({0, 1, 2, 3}, {Ratio(1, 2), Ratio(1, 2)}), partition({{1, 0}, {2, 3}}), 8.0};
  EXPECT_EQ(format_query_line(entry), "Q voter=1 subset=0,1,2,3 B=1/2,1/2 cost=8");
  EXPECT_EQ(format_answer_line(entry.answer), "A classes=1,0|2,3");
}

TEST(QueryLog, RejectsTruncatedInput) {
  std::stringstream text("Q voter=0 subset=0,1 B=1/2,1/2 cost=4\n");
  EXPECT_THROW(read_log(text), Error);
  std::stringstream junk("A classes=0|1\n");
  EXPECT_THROW(read_log(junk), Error);
}

TEST(Replay, RejectsInconsistentLog) {
  const std::vector<LogEntry> log{
      {0, RefinementQuery({0, 1}, {Ratio(1, 2), Ratio(1, 2)}), partition({{0}, {1}}), 4.0}};
  EXPECT_THROW(replay(4, 1, log), Error);  // {0,1} is not a class of a fresh voter
}

}  // namespace
}  // namespace qbcs
