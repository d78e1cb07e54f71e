#pragma once

// Phase one: budgeted elicitation by recursive refinement.
//
// Each voter starts with one class holding every candidate. A strategy picks
// a question type (which bucket vector to ask about a class) and a budget
// policy (how the shared budget is spread across voters). Queries always
// target a single unresolved class, so no query mixes candidates whose
// relative order is already known.

#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbcs/costs.hpp"
#include "qbcs/election.hpp"
#include "qbcs/format.hpp"
#include "qbcs/queries.hpp"

namespace qbcs {

enum class BudgetPolicy { Equal, FCFS };

inline std::string_view abbreviation(BudgetPolicy policy) { return policy == BudgetPolicy::Equal ? "EQ" : "FCFS"; }

struct Strategy {
  QuestionType question = QuestionType::Split;
  BudgetPolicy policy = BudgetPolicy::Equal;

  friend constexpr bool operator==(Strategy, Strategy) = default;
};

inline constexpr std::array<Strategy, 8> kAllStrategies = {{
    {QuestionType::Next, BudgetPolicy::Equal},
    {QuestionType::Next, BudgetPolicy::FCFS},
    {QuestionType::Last, BudgetPolicy::Equal},
    {QuestionType::Last, BudgetPolicy::FCFS},
    {QuestionType::NextAndLast, BudgetPolicy::Equal},
    {QuestionType::NextAndLast, BudgetPolicy::FCFS},
    {QuestionType::Split, BudgetPolicy::Equal},
    {QuestionType::Split, BudgetPolicy::FCFS},
}};

/// "S-EQ", "NL-FCFS", ...
inline std::string to_string(Strategy s) {
  return std::string(abbreviation(s.question)) + "-" + std::string(abbreviation(s.policy));
}

inline Strategy parse_strategy(std::string_view name) {
  for (Strategy s : kAllStrategies)
    if (to_string(s) == name) return s;
  throw Error(Errc::invalid_parameter, "unknown strategy '" + std::string(name) + "'");
}

/// A non-negative budget, or the unbounded sentinel.
class Budget {
 public:
  constexpr Budget() = default;

  explicit Budget(double amount) : amount_(amount) {
    if (!(amount >= 0.0) || !std::isfinite(amount))
      throw Error(Errc::invalid_argument, "budget must be a finite non-negative number");
  }

  static constexpr Budget unbounded() {
    Budget b;
    b.unbounded_ = true;
    return b;
  }

  constexpr bool is_unbounded() const noexcept { return unbounded_; }
  constexpr double amount() const noexcept { return unbounded_ ? std::numeric_limits<double>::infinity() : amount_; }

  /// True if total spending of `spent_after` stays within the budget.
  constexpr bool allows(double spent_after) const noexcept { return unbounded_ || spent_after <= amount_; }

  friend constexpr bool operator==(Budget, Budget) = default;

 private:
  double amount_ = 0.0;
  bool unbounded_ = false;
};

inline std::string to_string(Budget b) { return b.is_unbounded() ? "inf" : format_double(b.amount()); }

inline Budget parse_budget(std::string_view text) {
  return text == "inf" || text == "unbounded" ? Budget::unbounded() : Budget(parse_double(text));
}

/// What we know about one voter: an ordered partition of all candidates and
/// the FIFO of classes that still hold two or more candidates, as indices
/// into `partition.classes`.
struct VoterState {
  OrderedPartition partition;
  std::deque<std::size_t> pending;

  friend bool operator==(const VoterState&, const VoterState&) = default;
};

inline VoterState init_voter(std::size_t m) {
  VoterState state;
  std::vector<CandidateId> all(m);
  std::iota(all.begin(), all.end(), CandidateId{0});
  state.partition.classes.push_back(std::move(all));
  if (m >= 2) state.pending.push_back(0);
  return state;
}

inline std::vector<VoterState> init_state(const Election& e) {
  return std::vector<VoterState>(e.num_voters(), init_voter(e.num_candidates()));
}

inline std::optional<RefinementQuery> next_query(const VoterState& state, QuestionType kind) {
  if (state.pending.empty()) return std::nullopt;
  return make_question(kind, state.partition.classes[state.pending.front()]);
}

/// Replaces the queried class by the answer's classes, in place. New classes
/// with two or more candidates join the back of the queue, best first.
inline VoterState apply_answer(VoterState state, const RefinementQuery& query, const OrderedPartition& answer) {
  std::vector<CandidateId> subset(query.subset().begin(), query.subset().end());
  std::sort(subset.begin(), subset.end());
  auto& classes = state.partition.classes;
  auto found = std::find(classes.begin(), classes.end(), subset);
  if (found == classes.end()) throw Error(Errc::protocol, "query subset is not a current class of this voter");
  if (!answer.partitions(subset)) throw Error(Errc::protocol, "answer is not an ordered partition of the query subset");
  const auto sizes = bucket_sizes(query.buckets(), subset.size());
  if (sizes.size() != answer.num_classes()) throw Error(Errc::protocol, "answer has the wrong number of classes");
  for (std::size_t j = 0; j < sizes.size(); ++j)
    if (static_cast<std::int64_t>(answer.classes[j].size()) != sizes[j])
      throw Error(Errc::protocol, "answer class sizes do not follow the bucket ratios");

  const auto at = static_cast<std::size_t>(found - classes.begin());
  const std::size_t grow = answer.num_classes() - 1;

  std::deque<std::size_t> pending;
  for (std::size_t idx : state.pending) {
    if (idx == at) continue;
    pending.push_back(idx > at ? idx + grow : idx);
  }
  std::vector<std::vector<CandidateId>> replacement;
  for (const auto& cls : answer.classes) {
    auto sorted = cls;
    std::sort(sorted.begin(), sorted.end());
    replacement.push_back(std::move(sorted));
  }
  classes.erase(classes.begin() + static_cast<std::ptrdiff_t>(at));
  classes.insert(classes.begin() + static_cast<std::ptrdiff_t>(at), replacement.begin(), replacement.end());
  for (std::size_t j = 0; j < replacement.size(); ++j)
    if (replacement[j].size() >= 2) pending.push_back(at + j);
  state.pending = std::move(pending);
  return state;
}

struct LogEntry {
  std::size_t voter = 0;
  RefinementQuery query;
  OrderedPartition answer;
  double cost = 0.0;

  friend bool operator==(const LogEntry&, const LogEntry&) = default;
};

struct ElicitationRun {
  Strategy strategy;
  CostKind cost = CostKind::VarianceAware;
  Budget budget;
  double spent = 0.0;
  std::vector<OrderedPartition> profile;
  std::vector<LogEntry> log;
};

inline std::vector<std::size_t> identity_order(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return order;
}

/// Runs phase one against the election's secret orders.
///
/// Equal: round-robin over `voter_order`, one query per voter per round; a
/// voter whose next query does not fit the remaining budget is skipped, and
/// the run ends after a round in which nothing was asked.
/// FCFS: resolve voter_order[0] completely, then the next voter, stopping at
/// the first query that does not fit.
inline ElicitationRun run_elicitation(const Election& e, Strategy strategy, CostFunction cost, Budget budget,
                                      std::span<const std::size_t> voter_order) {
  const std::size_t n = e.num_voters();
  {
    std::vector<bool> seen(n, false);
    if (voter_order.size() != n) throw Error(Errc::invalid_argument, "voter order must list every voter once");
    for (std::size_t v : voter_order) {
      if (v >= n || seen[v]) throw Error(Errc::invalid_argument, "voter order must list every voter once");
      seen[v] = true;
    }
  }

  ElicitationRun run;
  run.strategy = strategy;
  run.cost = cost.kind();
  run.budget = budget;
  auto states = init_state(e);

  // Asks voter v its next query if affordable; false when nothing was asked.
  auto try_ask = [&](std::size_t v) {
    auto q = next_query(states[v], strategy.question);
    if (!q) return false;
    const double c = cost(*q);
    if (!budget.allows(run.spent + c)) return false;
    auto answer = answer_query(e.voter(v), *q);
    states[v] = apply_answer(std::move(states[v]), *q, answer);
    run.spent += c;
    run.log.push_back(LogEntry{v, std::move(*q), std::move(answer), c});
    return true;
  };

  if (strategy.policy == BudgetPolicy::Equal) {
    for (bool asked = true; asked;) {
      asked = false;
      for (std::size_t v : voter_order) asked = try_ask(v) || asked;
    }
  } else {
    bool stopped = false;
    for (std::size_t v : voter_order) {
      while (!stopped && !states[v].pending.empty()) stopped = !try_ask(v);
      if (stopped) break;
    }
  }

  run.profile.reserve(n);
  for (auto& s : states) run.profile.push_back(std::move(s.partition));
  return run;
}

inline ElicitationRun run_elicitation(const Election& e, Strategy strategy, CostFunction cost, Budget budget) {
  const auto order = identity_order(e.num_voters());
  return run_elicitation(e, strategy, cost, budget, order);
}

/// Replays a log from the zero-information state; returns the per-voter partitions.
inline std::vector<OrderedPartition> replay(std::size_t m, std::size_t n, std::span<const LogEntry> log) {
  std::vector<VoterState> states(n, init_voter(m));
  for (const auto& entry : log) {
    if (entry.voter >= n) throw Error(Errc::protocol, "log names an unknown voter");
    states[entry.voter] = apply_answer(std::move(states[entry.voter]), entry.query, entry.answer);
  }
  std::vector<OrderedPartition> profile;
  for (auto& s : states) profile.push_back(std::move(s.partition));
  return profile;
}

}  // namespace qbcs
