#pragma once

// Phase two: positional scoring over ordered partitions.

#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "qbcs/election.hpp"
#include "qbcs/strategies.hpp"

namespace qbcs {

/// s_1 >= s_2 >= ... >= s_m.
class ScoringVector {
 public:
  explicit ScoringVector(std::vector<double> scores) : scores_(std::move(scores)) {
    if (scores_.empty()) throw Error(Errc::invalid_argument, "scoring vector must not be empty");
    for (std::size_t i = 1; i < scores_.size(); ++i)
      if (scores_[i] > scores_[i - 1]) throw Error(Errc::invalid_argument, "scoring vector must be non-increasing");
  }

  /// s_i = m - i.
  static ScoringVector borda(std::size_t m) {
    std::vector<double> s(m);
    for (std::size_t i = 0; i < m; ++i) s[i] = static_cast<double>(m - 1 - i);
    return ScoringVector(std::move(s));
  }

  std::size_t size() const noexcept { return scores_.size(); }
  double operator[](std::size_t rank) const { return scores_[rank]; }
  std::span<const double> values() const noexcept { return scores_; }

 private:
  std::vector<double> scores_;
};

/// Each candidate of class C'_j gets the mean of s over the positions the
/// class spans; totals are summed over voters.
inline ScoreTable partial_scores(std::span<const OrderedPartition> profile, const ScoringVector& s) {
  const std::size_t m = s.size();
  std::vector<CandidateId> universe(m);
  std::iota(universe.begin(), universe.end(), CandidateId{0});

  ScoreTable totals(m, 0.0);
  for (const auto& partition : profile) {
    if (!partition.partitions(universe))
      throw Error(Errc::invalid_profile, "a voter's partition does not cover all " + std::to_string(m) + " candidates");
    std::size_t first = 0;
    for (const auto& cls : partition.classes) {
      double sum = 0.0;  // integer-valued for Borda, so exact
      for (std::size_t r = first; r < first + cls.size(); ++r) sum += s[r];
      const double each = sum / static_cast<double>(cls.size());
      for (CandidateId c : cls) totals[static_cast<std::size_t>(c)] += each;
      first += cls.size();
    }
  }
  return totals;
}

struct QueryBasedOutcome {
  Committee committee;
  ElicitationRun run;
};

/// Elicit within the budget, score the partial profile, take the top k.
inline QueryBasedOutcome query_based_committee(const Election& e, Strategy strategy, CostFunction cost, Budget budget,
                                               std::span<const std::size_t> voter_order, const ScoringVector& s) {
  if (s.size() != e.num_candidates()) throw Error(Errc::invalid_argument, "scoring vector length differs from m");
  auto run = run_elicitation(e, strategy, cost, budget, voter_order);
  auto committee = select_top_k(partial_scores(run.profile, s), e.committee_size());
  return {std::move(committee), std::move(run)};
}

inline QueryBasedOutcome query_based_committee(const Election& e, Strategy strategy, CostFunction cost, Budget budget) {
  const auto order = identity_order(e.num_voters());
  return query_based_committee(e, strategy, cost, budget, order, ScoringVector::borda(e.num_candidates()));
}

}  // namespace qbcs
