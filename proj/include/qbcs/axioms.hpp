#pragma once

// Executable audits of the cost-function axioms.
//
// Each audit first replays a fixed list of known counterexample pairs, then
// samples query pairs satisfying the axiom's hypothesis and checks its
// conclusion. Sampled bucket vectors are integer size vectors scaled by
// 1/|C'|, which keeps the prefix relation and variance ordering exact.

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbcs/costs.hpp"
#include "qbcs/rng.hpp"

namespace qbcs {

enum class Axiom { PrefixMonotonicity, MultipleMonotonicity, VarianceMonotonicity };

inline constexpr std::array<Axiom, 3> kAuditedAxioms = {Axiom::PrefixMonotonicity, Axiom::MultipleMonotonicity,
                                                        Axiom::VarianceMonotonicity};

inline std::string_view to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::PrefixMonotonicity: return "PrefixMonotonicity";
    case Axiom::MultipleMonotonicity: return "MultipleMonotonicity";
    case Axiom::VarianceMonotonicity: return "VarianceMonotonicity";
  }
  return "?";
}

/// A pair of queries satisfying an axiom's hypothesis. For multiple
/// monotonicity `multiple` is the scalar l with |C''| = l * |C'|.
struct QueryPair {
  RefinementQuery first;
  RefinementQuery second;
  std::int64_t multiple = 1;
};

struct Counterexample {
  QueryPair pair;
  double first_cost = 0.0;
  double second_cost = 0.0;
};

struct AxiomVerdict {
  CostKind cost = CostKind::VarianceAware;
  Axiom axiom = Axiom::PrefixMonotonicity;
  bool holds = true;
  std::size_t trials = 0;
  std::optional<Counterexample> counterexample;
};

namespace detail {

// Relative slack for comparing costs computed along different float paths.
inline constexpr double kCostTolerance = 1e-9;

inline double slack(double a, double b) { return kCostTolerance * std::max({1.0, std::fabs(a), std::fabs(b)}); }

inline std::vector<std::int64_t> random_composition(Rng& rng, std::int64_t total, std::int64_t parts) {
  // Choose parts-1 distinct cut points in 1..total-1.
  std::vector<std::int64_t> points(static_cast<std::size_t>(total - 1));
  std::iota(points.begin(), points.end(), std::int64_t{1});
  for (std::int64_t i = 0; i < parts - 1; ++i) {
    auto j = i + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(total - 1 - i)));
    std::swap(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
  }
  std::vector<std::int64_t> cuts(points.begin(), points.begin() + (parts - 1));
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::int64_t> sizes;
  std::int64_t prev = 0;
  for (std::int64_t c : cuts) {
    sizes.push_back(c - prev);
    prev = c;
  }
  sizes.push_back(total - prev);
  return sizes;
}

inline RefinementQuery query_from_sizes(std::span<const std::int64_t> sizes) {
  std::int64_t total = 0;
  for (auto s : sizes) total += s;
  return RefinementQuery::over_first(static_cast<std::size_t>(total), BucketVector::from_sizes(sizes));
}

inline std::int64_t sum_of_squares(std::span<const std::int64_t> sizes) {
  std::int64_t s = 0;
  for (auto x : sizes) s += x * x;
  return s;
}

inline QueryPair sample_prefix_pair(Rng& rng) {
  const auto base = rng.between(1, 30);
  auto head = random_composition(rng, base, rng.between(1, base));
  const auto extra = rng.between(1, 30);
  auto tail = random_composition(rng, extra, rng.between(1, extra));
  auto full = head;
  full.insert(full.end(), tail.begin(), tail.end());
  return {query_from_sizes(head), query_from_sizes(full), 1};
}

inline QueryPair sample_multiple_pair(Rng& rng) {
  const auto base = rng.between(1, 30);
  auto sizes = random_composition(rng, base, rng.between(1, base));
  const auto l = rng.between(2, 8);
  auto q = query_from_sizes(sizes);
  auto scaled = RefinementQuery::over_first(static_cast<std::size_t>(base * l), q.buckets());
  return {std::move(q), std::move(scaled), l};
}

/// Same |C'| and |B|, Var(first) > Var(second).
inline QueryPair sample_variance_pair(Rng& rng) {
  for (;;) {
    const auto size = rng.between(4, 40);
    const auto parts = rng.between(2, size - 1);
    auto a = random_composition(rng, size, parts);
    auto b = random_composition(rng, size, parts);
    const auto sa = sum_of_squares(a);
    const auto sb = sum_of_squares(b);
    if (sa == sb) continue;
    if (sa < sb) std::swap(a, b);
    return {query_from_sizes(a), query_from_sizes(b), 1};
  }
}

inline std::vector<QueryPair> known_variance_counterexamples() {
  auto q = [](std::size_t size, std::initializer_list<Ratio> b) { return RefinementQuery::over_first(size, BucketVector(b)); };
  return {
      // Same size, different spread: costs depending only on |C'| and |B| tie.
      {q(4, {Ratio(1, 4), Ratio(3, 4)}), q(4, {Ratio(1, 2), Ratio(1, 2)}), 1},
      // Var = 7/450 against 7/1800.
      {q(10, {Ratio(1, 2), Ratio(3, 10), Ratio(1, 5)}), q(10, {Ratio(2, 5), Ratio(7, 20), Ratio(1, 4)}), 1},
  };
}

}  // namespace detail

/// Whether `pair` (assumed to satisfy the axiom's hypothesis) violates the conclusion.
inline bool violates(CostFunction cost, Axiom axiom, const QueryPair& pair, double* first_cost = nullptr,
                     double* second_cost = nullptr) {
  const double a = cost(pair.first);
  const double b = cost(pair.second);
  if (first_cost) *first_cost = a;
  if (second_cost) *second_cost = b;
  switch (axiom) {
    case Axiom::PrefixMonotonicity:
    case Axiom::VarianceMonotonicity:
      return !(a < b);  // strict; exact ties are violations
    case Axiom::MultipleMonotonicity:
      return b < static_cast<double>(pair.multiple) * a - detail::slack(b, a * static_cast<double>(pair.multiple));
  }
  return false;
}

/// Checks that a pair satisfies the axiom's hypothesis.
inline bool satisfies_hypothesis(Axiom axiom, const QueryPair& pair) {
  const auto& p = pair.first;
  const auto& q = pair.second;
  switch (axiom) {
    case Axiom::PrefixMonotonicity: {
      if (p.buckets().size() >= q.buckets().size() || q.buckets().size() == 1) return false;
      const auto ps = static_cast<std::int64_t>(p.subset_size());
      const auto qs = static_cast<std::int64_t>(q.subset_size());
      for (std::size_t j = 0; j < p.buckets().size(); ++j)
        if (p.buckets()[j] * ps != q.buckets()[j] * qs) return false;
      return true;
    }
    case Axiom::MultipleMonotonicity:
      return pair.multiple >= 1 && p.buckets() == q.buckets() &&
             q.subset_size() == static_cast<std::size_t>(pair.multiple) * p.subset_size();
    case Axiom::VarianceMonotonicity:
      return p.subset_size() == q.subset_size() && p.buckets().size() == q.buckets().size() &&
             variance_exact(p.buckets()) > variance_exact(q.buckets());
  }
  return false;
}

inline AxiomVerdict audit_axiom(CostFunction cost, Axiom axiom, std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw Error(Errc::invalid_argument, "an audit needs at least one trial");
  AxiomVerdict verdict;
  verdict.cost = cost.kind();
  verdict.axiom = axiom;

  auto check = [&](const QueryPair& pair) {
    Counterexample c{pair, 0.0, 0.0};
    if (violates(cost, axiom, pair, &c.first_cost, &c.second_cost)) {
      verdict.holds = false;
      verdict.counterexample = std::move(c);
      return true;
    }
    return false;
  };

  if (axiom == Axiom::VarianceMonotonicity)
    for (const auto& pair : detail::known_variance_counterexamples())
      if (check(pair)) return verdict;

  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(axiom), t}));
    QueryPair pair = axiom == Axiom::PrefixMonotonicity     ? detail::sample_prefix_pair(rng)
                     : axiom == Axiom::MultipleMonotonicity ? detail::sample_multiple_pair(rng)
                                                            : detail::sample_variance_pair(rng);
    ++verdict.trials;
    if (check(pair)) return verdict;
  }
  return verdict;
}

/// Re-evaluates a stored counterexample: true iff it is a genuine violation.
inline bool reverify(const AxiomVerdict& verdict) {
  if (!verdict.counterexample) return false;
  const auto& pair = verdict.counterexample->pair;
  return satisfies_hypothesis(verdict.axiom, pair) && violates(CostFunction(verdict.cost), verdict.axiom, pair);
}

struct AxiomGrid {
  std::vector<AxiomVerdict> verdicts;  // cost-major, axiom-minor

  const AxiomVerdict& at(CostKind cost, Axiom axiom) const {
    for (const auto& v : verdicts)
      if (v.cost == cost && v.axiom == axiom) return v;
    throw Error(Errc::missing_data, "no verdict for that cell");
  }
};

inline AxiomGrid audit_all(std::size_t trials, std::uint64_t seed) {
  AxiomGrid grid;
  for (CostKind cost : kAllCosts)
    for (Axiom axiom : kAuditedAxioms) grid.verdicts.push_back(audit_axiom(CostFunction(cost), axiom, trials, seed));
  return grid;
}

}  // namespace qbcs
