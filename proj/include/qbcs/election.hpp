#pragma once

// Elections, committees, k-Borda ground truth and the committee distance.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qbcs/error.hpp"

namespace qbcs {

using CandidateId = std::int32_t;

/// A voter's strict ranking, most-preferred first. Always a permutation of 0..m-1.
class PreferenceOrder {
 public:
  PreferenceOrder() = default;

  explicit PreferenceOrder(std::vector<CandidateId> ranking) : ranking_(std::move(ranking)) {
    if (ranking_.empty()) throw Error(Errc::invalid_argument, "preference order must rank at least one candidate");
    std::vector<bool> seen(ranking_.size(), false);
    for (CandidateId c : ranking_) {
      if (c < 0 || static_cast<std::size_t>(c) >= ranking_.size() || seen[static_cast<std::size_t>(c)])
        throw Error(Errc::invalid_argument, "preference order is not a permutation of 0..m-1");
      seen[static_cast<std::size_t>(c)] = true;
    }
  }

  static PreferenceOrder identity(std::size_t m) {
    std::vector<CandidateId> r(m);
    std::iota(r.begin(), r.end(), CandidateId{0});
    return PreferenceOrder(std::move(r));
  }

  std::size_t size() const noexcept { return ranking_.size(); }
  CandidateId operator[](std::size_t rank) const { return ranking_[rank]; }
  std::span<const CandidateId> ranking() const noexcept { return ranking_; }

  /// position()[c] is the 0-based rank of candidate c.
  std::vector<std::size_t> positions() const {
    std::vector<std::size_t> pos(ranking_.size());
    for (std::size_t r = 0; r < ranking_.size(); ++r) pos[static_cast<std::size_t>(ranking_[r])] = r;
    return pos;
  }

  PreferenceOrder reversed() const {
    return PreferenceOrder(std::vector<CandidateId>(ranking_.rbegin(), ranking_.rend()));
  }

  friend bool operator==(const PreferenceOrder&, const PreferenceOrder&) = default;

 private:
  std::vector<CandidateId> ranking_;
};

/// E = (C, V, k) with C = {0, ..., m-1}.
class Election {
 public:
  Election(std::size_t m, std::vector<PreferenceOrder> voters, std::size_t k)
      : m_(m), voters_(std::move(voters)), k_(k) {
    if (m_ < 1) throw Error(Errc::invalid_argument, "an election needs at least one candidate");
    if (k_ < 1 || k_ > m_) throw Error(Errc::invalid_k, "committee size k=" + std::to_string(k_) +
                                                           " outside [1, " + std::to_string(m_) + "]");
    for (const auto& v : voters_)
      if (v.size() != m_) throw Error(Errc::invalid_argument, "voter ranking length differs from m");
  }

  std::size_t num_candidates() const noexcept { return m_; }
  std::size_t num_voters() const noexcept { return voters_.size(); }
  std::size_t committee_size() const noexcept { return k_; }
  std::span<const PreferenceOrder> voters() const noexcept { return voters_; }
  const PreferenceOrder& voter(std::size_t i) const { return voters_.at(i); }

  friend bool operator==(const Election&, const Election&) = default;

 private:
  std::size_t m_;
  std::vector<PreferenceOrder> voters_;
  std::size_t k_;
};

/// A set of candidates, kept sorted by id.
class Committee {
 public:
  Committee() = default;

  explicit Committee(std::vector<CandidateId> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
      throw Error(Errc::invalid_argument, "committee lists a candidate twice");
    if (!members_.empty() && members_.front() < 0)
      throw Error(Errc::invalid_argument, "negative candidate id in committee");
  }

  std::size_t size() const noexcept { return members_.size(); }
  std::span<const CandidateId> members() const noexcept { return members_; }
  bool contains(CandidateId c) const { return std::binary_search(members_.begin(), members_.end(), c); }

  friend bool operator==(const Committee&, const Committee&) = default;

 private:
  std::vector<CandidateId> members_;
};

/// Total score per candidate, indexed by candidate id.
using ScoreTable = std::vector<double>;

inline ScoreTable borda_scores(const Election& e) {
  const std::size_t m = e.num_candidates();
  ScoreTable scores(m, 0.0);
  for (const auto& v : e.voters())
    for (std::size_t r = 0; r < m; ++r) scores[static_cast<std::size_t>(v[r])] += static_cast<double>(m - 1 - r);
  return scores;
}

/// The k best-scoring candidates; equal scores go to the smaller id.
inline Committee select_top_k(std::span<const double> scores, std::size_t k) {
  if (k > scores.size())
    throw Error(Errc::invalid_k, "cannot pick " + std::to_string(k) + " of " + std::to_string(scores.size()) +
                                     " candidates");
  std::vector<CandidateId> order(scores.size());
  std::iota(order.begin(), order.end(), CandidateId{0});
  std::stable_sort(order.begin(), order.end(), [&](CandidateId a, CandidateId b) {
    return scores[static_cast<std::size_t>(a)] > scores[static_cast<std::size_t>(b)];
  });
  order.resize(k);
  return Committee(std::move(order));
}

inline Committee borda_committee(const Election& e) { return select_top_k(borda_scores(e), e.committee_size()); }

/// Size of the symmetric difference, i.e. twice the number of swaps.
inline std::size_t hamming(const Committee& a, const Committee& b) {
  if (a.size() != b.size())
    throw Error(Errc::mismatched_committees, "committee sizes " + std::to_string(a.size()) + " and " +
                                                 std::to_string(b.size()) + " differ");
  std::vector<CandidateId> common;
  std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
                        std::back_inserter(common));
  return 2 * (a.size() - common.size());
}

}  // namespace qbcs
