#pragma once

// Query cost functions. All five share the empty-question rule: a query with
// at most one bucket or at most one candidate costs nothing.

#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "qbcs/error.hpp"
#include "qbcs/queries.hpp"

namespace qbcs {

/// Var(B) = (1/l) * sum_j (b_j - 1/l)^2, and 0 for l <= 1. Exact.
inline Ratio variance_exact(const BucketVector& buckets) {
  const auto l = static_cast<std::int64_t>(buckets.size());
  if (l <= 1) return Ratio(0);
  const Ratio mean(1, l);
  Ratio sum = 0;
  for (const Ratio& b : buckets.ratios()) sum += (b - mean) * (b - mean);
  return sum / l;
}

inline double variance(const BucketVector& buckets) { return to_double(variance_exact(buckets)); }

/// Lower bound on 1 - Var(B) from the Bhatia-Davis inequality: (l^2 - l + 1) / l^2.
inline Ratio bhatia_davis_floor(std::size_t bucket_count) {
  if (bucket_count < 1) throw Error(Errc::invalid_argument, "bucket count must be positive");
  const auto l = static_cast<std::int64_t>(bucket_count);
  return Ratio(l * l - l + 1, l * l);
}

enum class CostKind { Candidates, LastBucket, BucketCount, VarianceAware, Computational };

inline constexpr std::array<CostKind, 5> kAllCosts = {CostKind::Candidates, CostKind::LastBucket,
                                                      CostKind::BucketCount, CostKind::VarianceAware,
                                                      CostKind::Computational};

inline std::string_view to_string(CostKind kind) {
  switch (kind) {
    case CostKind::Candidates: return "Candidates";
    case CostKind::LastBucket: return "LastBucket";
    case CostKind::BucketCount: return "BucketCount";
    case CostKind::VarianceAware: return "VarianceAware";
    case CostKind::Computational: return "Computational";
  }
  return "?";
}

inline std::string_view formula(CostKind kind) {
  switch (kind) {
    case CostKind::Candidates: return "|C'|";
    case CostKind::LastBucket: return "|C'|*(1-b_|B|)";
    case CostKind::BucketCount: return "(1-b_|B|)*|C'|*(|B|-1)";
    case CostKind::VarianceAware: return "|C'|*|B|*(1-Var(B))";
    case CostKind::Computational: return "|C'|*log2|B|";
  }
  return "?";
}

inline CostKind parse_cost_kind(std::string_view name) {
  for (CostKind k : kAllCosts)
    if (to_string(k) == name) return k;
  throw Error(Errc::invalid_parameter, "unknown cost function '" + std::string(name) + "'");
}

inline bool is_empty_question(const RefinementQuery& q) { return q.buckets().size() <= 1 || q.subset_size() <= 1; }

/// The rational-valued costs, before the empty-question rule.
inline Ratio raw_cost_exact(CostKind kind, const RefinementQuery& q) {
  const auto size = static_cast<std::int64_t>(q.subset_size());
  const auto l = static_cast<std::int64_t>(q.buckets().size());
  const Ratio last = q.buckets().back();
  switch (kind) {
    case CostKind::Candidates: return Ratio(size);
    case CostKind::LastBucket: return size * (1 - last);
    case CostKind::BucketCount: return (1 - last) * size * (l - 1);
    case CostKind::VarianceAware: return size * l * (1 - variance_exact(q.buckets()));
    case CostKind::Computational: break;
  }
  throw Error(Errc::invalid_argument, "cost is not rational-valued");
}

inline double cost_candidates(const RefinementQuery& q) {
  return is_empty_question(q) ? 0.0 : to_double(raw_cost_exact(CostKind::Candidates, q));
}

inline double cost_last_bucket(const RefinementQuery& q) {
  return is_empty_question(q) ? 0.0 : to_double(raw_cost_exact(CostKind::LastBucket, q));
}

inline double cost_bucket_count(const RefinementQuery& q) {
  return is_empty_question(q) ? 0.0 : to_double(raw_cost_exact(CostKind::BucketCount, q));
}

inline double cost_variance_aware(const RefinementQuery& q) {
  return is_empty_question(q) ? 0.0 : to_double(raw_cost_exact(CostKind::VarianceAware, q));
}

inline double cost_computational(const RefinementQuery& q) {
  if (is_empty_question(q)) return 0.0;
  return static_cast<double>(q.subset_size()) * std::log2(static_cast<double>(q.buckets().size()));
}

/// A named cost function; cheap to copy.
class CostFunction {
 public:
  constexpr CostFunction() = default;
  constexpr explicit CostFunction(CostKind kind) : kind_(kind) {}

  static CostFunction named(std::string_view name) { return CostFunction(parse_cost_kind(name)); }

  constexpr CostKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return to_string(kind_); }

  double operator()(const RefinementQuery& q) const {
    switch (kind_) {
      case CostKind::Candidates: return cost_candidates(q);
      case CostKind::LastBucket: return cost_last_bucket(q);
      case CostKind::BucketCount: return cost_bucket_count(q);
      case CostKind::VarianceAware: return cost_variance_aware(q);
      case CostKind::Computational: return cost_computational(q);
    }
    return 0.0;
  }

  friend constexpr bool operator==(CostFunction, CostFunction) = default;

 private:
  CostKind kind_ = CostKind::VarianceAware;
};

}  // namespace qbcs
