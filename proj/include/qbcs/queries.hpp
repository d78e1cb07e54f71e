#pragma once

// Refinement queries (C', B), proportional bucket sizing and the simulated
// voter that answers them truthfully.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "qbcs/election.hpp"
#include "qbcs/error.hpp"

namespace qbcs {

/// Bucket ratios are exact rationals; every ratio the library produces has
/// denominator |C'| and the decimal ratios in hand-written queries are exact
/// as well.
using Ratio = boost::rational<std::int64_t>;

inline double to_double(const Ratio& r) { return boost::rational_cast<double>(r); }

inline std::string to_string(const Ratio& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Accepts "3", "3/4" and terminating decimals such as "0.35".
inline Ratio parse_ratio(std::string_view text) {
  auto fail = [&] { return Error(Errc::parse, "bad ratio '" + std::string(text) + "'"); };
  auto parse_int = [&](std::string_view s) {
    if (s.empty() || s.size() > 18) throw fail();
    std::int64_t v = 0;
    for (char ch : s) {
      if (ch < '0' || ch > '9') throw fail();
      v = v * 10 + (ch - '0');
    }
    return v;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::int64_t den = parse_int(text.substr(slash + 1));
    if (den == 0) throw fail();
    return Ratio(parse_int(text.substr(0, slash)), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 15) throw fail();
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    return Ratio(whole.empty() ? 0 : parse_int(whole)) + Ratio(parse_int(frac), scale);
  }
  return Ratio(parse_int(text));
}

/// B = (b_1, ..., b_l): positive ratios summing to exactly one.
class BucketVector {
 public:
  BucketVector() = default;

  BucketVector(std::initializer_list<Ratio> ratios) : BucketVector(std::vector<Ratio>(ratios)) {}

  explicit BucketVector(std::vector<Ratio> ratios) : ratios_(std::move(ratios)) {
    if (ratios_.empty()) throw Error(Errc::invalid_argument, "bucket vector needs at least one ratio");
    Ratio total = 0;
    for (const Ratio& b : ratios_) {
      if (b <= 0) throw Error(Errc::invalid_argument, "bucket ratios must be positive");
      total += b;
    }
    if (total != Ratio(1)) throw Error(Errc::invalid_argument, "bucket ratios sum to " + to_string(total) + ", not 1");
  }

  /// Ratios proportional to a vector of positive integer bucket sizes.
  static BucketVector from_sizes(std::span<const std::int64_t> sizes) {
    std::int64_t total = 0;
    for (std::int64_t s : sizes) total += s;
    std::vector<Ratio> ratios;
    ratios.reserve(sizes.size());
    for (std::int64_t s : sizes) ratios.emplace_back(s, total);
    return BucketVector(std::move(ratios));
  }

  std::size_t size() const noexcept { return ratios_.size(); }
  const Ratio& operator[](std::size_t j) const { return ratios_[j]; }
  const Ratio& back() const { return ratios_.back(); }
  std::span<const Ratio> ratios() const noexcept { return ratios_; }

  friend bool operator==(const BucketVector&, const BucketVector&) = default;

 private:
  std::vector<Ratio> ratios_;
};

/// Q = (C', B). The subset keeps its given order; answers do not depend on it.
class RefinementQuery {
 public:
  RefinementQuery(std::vector<CandidateId> subset, BucketVector buckets)
      : subset_(std::move(subset)), buckets_(std::move(buckets)) {
    if (subset_.empty()) throw Error(Errc::invalid_argument, "query subset must not be empty");
    auto sorted = subset_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(Errc::invalid_argument, "query subset lists a candidate twice");
    if (buckets_.size() > subset_.size())
      throw Error(Errc::infeasible_query, std::to_string(buckets_.size()) + " buckets for " +
                                              std::to_string(subset_.size()) + " candidates");
  }

  /// A query over candidates 0..size-1; costs only depend on |C'| and B.
  static RefinementQuery over_first(std::size_t size, BucketVector buckets) {
    std::vector<CandidateId> subset(size);
    std::iota(subset.begin(), subset.end(), CandidateId{0});
    return RefinementQuery(std::move(subset), std::move(buckets));
  }

  std::span<const CandidateId> subset() const noexcept { return subset_; }
  std::size_t subset_size() const noexcept { return subset_.size(); }
  const BucketVector& buckets() const noexcept { return buckets_; }

  friend bool operator==(const RefinementQuery&, const RefinementQuery&) = default;

 private:
  std::vector<CandidateId> subset_;
  BucketVector buckets_;
};

/// C'_1 > C'_2 > ... > C'_l. Each class is stored sorted by candidate id.
struct OrderedPartition {
  std::vector<std::vector<CandidateId>> classes;

  std::size_t num_classes() const noexcept { return classes.size(); }

  std::size_t num_candidates() const noexcept {
    std::size_t total = 0;
    for (const auto& c : classes) total += c.size();
    return total;
  }

  std::vector<CandidateId> flatten() const {
    std::vector<CandidateId> out;
    for (const auto& c : classes) out.insert(out.end(), c.begin(), c.end());
    return out;
  }

  bool fully_resolved() const {
    return std::all_of(classes.begin(), classes.end(), [](const auto& c) { return c.size() == 1; });
  }

  /// Non-empty, pairwise disjoint classes whose union is exactly `universe`.
  bool partitions(std::span<const CandidateId> universe) const {
    auto flat = flatten();
    if (flat.size() != universe.size()) return false;
    if (std::any_of(classes.begin(), classes.end(), [](const auto& c) { return c.empty(); })) return false;
    std::vector<CandidateId> u(universe.begin(), universe.end());
    std::sort(flat.begin(), flat.end());
    std::sort(u.begin(), u.end());
    return flat == u;
  }

  friend bool operator==(const OrderedPartition&, const OrderedPartition&) = default;
};

/// Integer class sizes for a query over `subset_size` candidates.
///
/// Largest remainder: floor every b_j * size, then hand the leftover units to
/// the largest fractional parts (earlier index on ties). A bucket that ends
/// up empty borrows one unit from the largest bucket that was rounded up and
/// can spare it; when no such donor exists the empty bucket is dropped, so
/// the result may be shorter than B for adversarial vectors.
inline std::vector<std::int64_t> bucket_sizes(const BucketVector& buckets, std::size_t subset_size) {
  const std::size_t l = buckets.size();
  if (l > subset_size)
    throw Error(Errc::infeasible_query,
                std::to_string(l) + " buckets cannot partition " + std::to_string(subset_size) + " candidates");
  const auto n = static_cast<std::int64_t>(subset_size);

  std::vector<Ratio> ideal(l);
  std::vector<std::int64_t> sizes(l);
  std::vector<Ratio> frac(l);
  std::int64_t assigned = 0;
  for (std::size_t j = 0; j < l; ++j) {
    ideal[j] = buckets[j] * n;
    sizes[j] = boost::rational_cast<std::int64_t>(ideal[j]);  // truncation == floor for b_j > 0
    frac[j] = ideal[j] - sizes[j];
    assigned += sizes[j];
  }
  std::vector<std::size_t> by_fraction(l);
  std::iota(by_fraction.begin(), by_fraction.end(), std::size_t{0});
  std::stable_sort(by_fraction.begin(), by_fraction.end(),
                   [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
  for (std::int64_t left = n - assigned, i = 0; left > 0; --left, ++i) ++sizes[by_fraction[static_cast<std::size_t>(i)]];

  std::vector<std::int64_t> out;
  out.reserve(l);
  for (std::size_t j = 0; j < l; ++j) {
    if (sizes[j] > 0) continue;
    std::optional<std::size_t> donor;
    for (std::size_t d = 0; d < l; ++d) {
      if (sizes[d] < 2 || Ratio(sizes[d]) <= ideal[d]) continue;
      if (!donor || sizes[d] > sizes[*donor]) donor = d;
    }
    if (donor) {
      --sizes[*donor];
      sizes[j] = 1;
    }
  }
  for (std::int64_t s : sizes)
    if (s > 0) out.push_back(s);
  return out;
}

/// The truthful answer: sort C' by the secret order and cut it into
/// consecutive blocks of bucket_sizes.
inline OrderedPartition answer_query(const PreferenceOrder& secret, const RefinementQuery& q) {
  const auto pos = secret.positions();
  std::vector<CandidateId> sorted(q.subset().begin(), q.subset().end());
  for (CandidateId c : sorted)
    if (c < 0 || static_cast<std::size_t>(c) >= pos.size())
      throw Error(Errc::unknown_candidate, "candidate " + std::to_string(c) + " is not ranked by this voter");
  std::sort(sorted.begin(), sorted.end(), [&](CandidateId a, CandidateId b) {
    return pos[static_cast<std::size_t>(a)] < pos[static_cast<std::size_t>(b)];
  });

  OrderedPartition answer;
  auto it = sorted.begin();
  for (std::int64_t size : bucket_sizes(q.buckets(), sorted.size())) {
    std::vector<CandidateId> cls(it, it + size);
    std::sort(cls.begin(), cls.end());
    answer.classes.push_back(std::move(cls));
    it += size;
  }
  return answer;
}

enum class QuestionType { Next, Last, NextAndLast, Split };

inline std::string_view abbreviation(QuestionType kind) {
  switch (kind) {
    case QuestionType::Next: return "N";
    case QuestionType::Last: return "L";
    case QuestionType::NextAndLast: return "NL";
    case QuestionType::Split: return "S";
  }
  return "?";
}

/// Bucket vector of a question type over a class of `s` candidates, or
/// nothing when s <= 1.
inline std::optional<BucketVector> question_buckets(QuestionType kind, std::size_t s) {
  if (s <= 1) return std::nullopt;
  const auto n = static_cast<std::int64_t>(s);
  switch (kind) {
    case QuestionType::Next: return BucketVector{Ratio(1, n), Ratio(n - 1, n)};
    case QuestionType::Last: return BucketVector{Ratio(n - 1, n), Ratio(1, n)};
    case QuestionType::NextAndLast:
      if (n == 2) return BucketVector{Ratio(1, 2), Ratio(1, 2)};
      return BucketVector{Ratio(1, n), Ratio(n - 2, n), Ratio(1, n)};
    case QuestionType::Split: return BucketVector{Ratio((n + 1) / 2, n), Ratio(n / 2, n)};
  }
  return std::nullopt;
}

inline std::optional<RefinementQuery> make_question(QuestionType kind, std::span<const CandidateId> subset) {
  auto buckets = question_buckets(kind, subset.size());
  if (!buckets) return std::nullopt;
  return RefinementQuery(std::vector<CandidateId>(subset.begin(), subset.end()), std::move(*buckets));
}

}  // namespace qbcs
