#pragma once

// Monte-Carlo experiments: budget sweeps against the k-Borda committee, the
// random baseline, per-election difficulty scores and the result CSV.
//
// Work is split into cells, one per (culture, election). Every random choice
// inside a cell is drawn from substreams keyed by the cell's indices, and
// cell outputs are concatenated in index order, so results do not depend on
// the number of worker threads.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "qbcs/cultures.hpp"
#include "qbcs/format.hpp"
#include "qbcs/scoring.hpp"

namespace qbcs {

inline constexpr std::string_view kRandomBaseline = "RANDOM";

/// Geometric budget grid relative to the cost of eliciting every voter fully.
struct AutoBudgetGrid {
  std::size_t points = 12;
  double low = 0.01;
  double high = 1.2;
};

struct ExperimentConfig {
  std::vector<CultureSpec> cultures{CultureSpec{}};
  std::size_t m = 20;
  std::size_t n = 20;
  std::size_t k = 10;
  std::size_t elections_per_culture = 200;
  std::vector<Strategy> strategies{kAllStrategies.begin(), kAllStrategies.end()};
  CostKind cost = CostKind::VarianceAware;
  /// Explicit grid; when empty the grid comes from `auto_grid` plus {0, unbounded}.
  std::vector<Budget> budget_grid;
  AutoBudgetGrid auto_grid;
  std::size_t voter_order_repeats = 5;
  bool random_baseline = true;
  std::uint64_t master_seed = 0;
};

struct ResultRow {
  std::string culture;
  std::size_t election = 0;
  std::string strategy;
  Budget budget;
  std::size_t repeat = 0;
  std::size_t distance = 0;
  double spent = 0.0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

/// Total cost of resolving every voter completely. Question sizes never
/// depend on the answers, so any election with the same m and n will do.
inline double full_resolution_cost(QuestionType question, CostFunction cost, std::size_t m, std::size_t n) {
  const Election e(m, std::vector<PreferenceOrder>(n, PreferenceOrder::identity(m)), 1);
  return run_elicitation(e, Strategy{question, BudgetPolicy::Equal}, cost, Budget::unbounded()).spent;
}

inline void validate(const ExperimentConfig& c) {
  auto bad = [](const std::string& what) { return Error(Errc::invalid_config, what); };
  if (c.cultures.empty()) throw bad("at least one culture is required");
  if (c.strategies.empty()) throw bad("at least one strategy is required");
  if (c.elections_per_culture < 1) throw bad("elections_per_culture must be >= 1");
  if (c.voter_order_repeats < 1) throw bad("voter_order_repeats must be >= 1");
  if (c.m < 1 || c.n < 1 || c.k < 1 || c.k > c.m) throw bad("need m >= 1, n >= 1 and 1 <= k <= m");
  for (std::size_t i = 1; i < c.budget_grid.size(); ++i)
    if (!(c.budget_grid[i - 1].amount() < c.budget_grid[i].amount())) throw bad("budget grid must be strictly ascending");
  if (c.budget_grid.empty()) {
    const auto& g = c.auto_grid;
    if (g.points < 1 || !(g.low > 0.0) || !(g.high >= g.low)) throw bad("auto grid needs points >= 1 and 0 < low <= high");
  }
  for (const auto& spec : c.cultures) {
    try {
      qbcs::validate(spec, c.m, c.n, c.k);
    } catch (const Error& e) {
      throw bad(std::string("culture ") + label(spec) + ": " + e.what());
    }
    if (label(spec).find(',') != std::string::npos) throw bad("culture labels must not contain commas");
  }
}

/// The sweep's budget grid: the explicit one, or 0, `points` geometric
/// steps from low to high times the largest full-resolution cost among the
/// configured strategies, and unbounded.
inline std::vector<Budget> resolve_budget_grid(const ExperimentConfig& c) {
  if (!c.budget_grid.empty()) return c.budget_grid;
  double reference = 0.0;
  for (Strategy s : c.strategies)
    reference = std::max(reference, full_resolution_cost(s.question, CostFunction(c.cost), c.m, c.n));
  std::vector<Budget> grid{Budget(0.0)};
  const auto& g = c.auto_grid;
  for (std::size_t i = 0; i < g.points; ++i) {
    const double t = g.points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(g.points - 1);
    const double amount = reference * g.low * std::pow(g.high / g.low, t);
    if (amount > grid.back().amount()) grid.emplace_back(amount);
  }
  grid.push_back(Budget::unbounded());
  return grid;
}

/// Uniform random k-subset of the candidates.
inline Committee random_baseline(const Election& e, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CandidateId> all(e.num_candidates());
  std::iota(all.begin(), all.end(), CandidateId{0});
  const std::size_t k = e.committee_size();
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(all.size() - i));
    std::swap(all[i], all[j]);
  }
  all.resize(k);
  return Committee(std::move(all));
}

namespace detail {

inline constexpr std::uint64_t kElectionStream = 0x454c;  // "EL"
inline constexpr std::uint64_t kOrderStream = 0x4f52;     // "OR"
inline constexpr std::uint64_t kRandomStream = 0x524e;    // "RN"

inline std::vector<std::size_t> seeded_voter_order(std::size_t n, std::uint64_t seed) {
  auto order = identity_order(n);
  Rng rng(seed);
  rng.shuffle(std::span(order));
  return order;
}

inline std::vector<ResultRow> run_cell(const ExperimentConfig& c, const std::vector<Budget>& grid, std::size_t culture,
                                       std::size_t election) {
  CultureSpec spec = c.cultures[culture];
  spec.seed = derive_seed(c.master_seed, {kElectionStream, culture, c.cultures[culture].seed, election});
  const Election e = generate(spec, c.m, c.n, c.k);
  const Committee target = borda_committee(e);
  const ScoringVector borda = ScoringVector::borda(c.m);
  const std::string name = label(c.cultures[culture]);

  std::vector<std::vector<std::size_t>> orders;
  for (std::size_t r = 0; r < c.voter_order_repeats; ++r)
    orders.push_back(seeded_voter_order(c.n, derive_seed(c.master_seed, {kOrderStream, culture, election, r})));

  std::vector<ResultRow> rows;
  for (Strategy s : c.strategies)
    for (const Budget& b : grid)
      for (std::size_t r = 0; r < c.voter_order_repeats; ++r) {
        auto outcome = query_based_committee(e, s, CostFunction(c.cost), b, orders[r], borda);
        rows.push_back({name, election, to_string(s), b, r, hamming(outcome.committee, target), outcome.run.spent});
      }
  if (c.random_baseline)
    for (const Budget& b : grid)
      for (std::size_t r = 0; r < c.voter_order_repeats; ++r) {
        const auto pick = random_baseline(e, derive_seed(c.master_seed, {kRandomStream, culture, election, r}));
        rows.push_back({name, election, std::string(kRandomBaseline), b, r, hamming(pick, target), 0.0});
      }
  return rows;
}

}  // namespace detail

/// Rows ordered by culture, election, strategy, budget, repeat.
inline std::vector<ResultRow> run_budget_sweep(const ExperimentConfig& c, std::size_t jobs = 1) {
  validate(c);
  const auto grid = resolve_budget_grid(c);
  const std::size_t cells = c.cultures.size() * c.elections_per_culture;
  std::vector<std::vector<ResultRow>> out(cells);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < cells; i = next++) {
      try {
        out[i] = detail::run_cell(c, grid, i / c.elections_per_culture, i % c.elections_per_culture);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, cells);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ResultRow> rows;
  for (auto& cell : out) rows.insert(rows.end(), std::make_move_iterator(cell.begin()), std::make_move_iterator(cell.end()));
  return rows;
}

/// Sum over budgets of the mean distance over repeats, divided by `normalizer`.
/// All rows must belong to one (culture, election, strategy).
inline double difficulty_score(std::span<const ResultRow> rows, double normalizer) {
  if (rows.empty()) throw Error(Errc::missing_data, "no rows for this election");
  std::map<double, std::pair<double, std::size_t>> by_budget;
  for (const auto& r : rows) {
    if (r.culture != rows[0].culture || r.election != rows[0].election || r.strategy != rows[0].strategy)
      throw Error(Errc::invalid_argument, "difficulty rows mix elections or strategies");
    auto& [sum, count] = by_budget[r.budget.amount()];
    sum += static_cast<double>(r.distance);
    ++count;
  }
  const std::size_t repeats = by_budget.begin()->second.second;
  double total = 0.0;
  for (const auto& [budget, acc] : by_budget) {
    if (acc.second != repeats) throw Error(Errc::missing_data, "budgets have unequal numbers of repeats");
    total += acc.first / static_cast<double>(acc.second);
  }
  if (total == 0.0) return 0.0;
  if (!(normalizer > 0.0)) throw Error(Errc::invalid_argument, "normalizer must be positive");
  return total / normalizer;
}

enum class Normalization { PerStrategyMax, FixedConstant };

struct DifficultyRow {
  std::string culture;
  std::size_t election = 0;
  std::string strategy;
  double score = 0.0;
};

/// Difficulty of every (culture, election, strategy) in `rows`. The default
/// normalizer is the largest unnormalized sum seen for that strategy; the
/// fixed mode divides by 2k * |grid| for every strategy.
inline std::vector<DifficultyRow> difficulty_scores(std::span<const ResultRow> rows, std::size_t k,
                                                    Normalization mode = Normalization::PerStrategyMax) {
  using Key = std::tuple<std::string, std::size_t, std::string>;
  std::map<Key, std::vector<ResultRow>> groups;
  std::vector<Key> order;
  for (const auto& r : rows) {
    Key key{r.culture, r.election, r.strategy};
    auto [it, fresh] = groups.try_emplace(key);
    if (fresh) order.push_back(key);
    it->second.push_back(r);
  }
  std::map<std::string, double> max_sum;
  std::map<Key, double> sums;
  std::map<std::string, std::size_t> grid_size;
  for (const auto& key : order) {
    const auto& g = groups[key];
    const double s = difficulty_score(g, 1.0);
    sums[key] = s;
    auto& mx = max_sum[std::get<2>(key)];
    mx = std::max(mx, s);
    std::vector<double> budgets;
    for (const auto& r : g) budgets.push_back(r.budget.amount());
    std::sort(budgets.begin(), budgets.end());
    grid_size[std::get<2>(key)] = static_cast<std::size_t>(std::unique(budgets.begin(), budgets.end()) - budgets.begin());
  }
  std::vector<DifficultyRow> out;
  for (const auto& key : order) {
    const auto& strategy = std::get<2>(key);
    const double norm = mode == Normalization::PerStrategyMax
                            ? max_sum[strategy]
                            : 2.0 * static_cast<double>(k) * static_cast<double>(grid_size[strategy]);
    const double s = sums[key];
    out.push_back({std::get<0>(key), std::get<1>(key), strategy, s == 0.0 ? 0.0 : s / norm});
  }
  return out;
}

struct SummaryRow {
  std::string culture;
  std::string strategy;
  Budget budget;
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t elections = 0;
};

/// Mean distance per (culture, strategy, budget): repeats are averaged within
/// each election first, and the standard error is taken across elections.
inline std::vector<SummaryRow> summarize(std::span<const ResultRow> rows) {
  using Cell = std::tuple<std::string, std::string, double>;
  std::map<Cell, std::map<std::size_t, std::pair<double, std::size_t>>> acc;
  std::vector<Cell> order;
  std::map<Cell, Budget> budgets;
  for (const auto& r : rows) {
    Cell cell{r.culture, r.strategy, r.budget.amount()};
    if (!acc.count(cell)) {
      order.push_back(cell);
      budgets[cell] = r.budget;
    }
    auto& [sum, count] = acc[cell][r.election];
    sum += static_cast<double>(r.distance);
    ++count;
  }
  std::vector<SummaryRow> out;
  for (const auto& cell : order) {
    std::vector<double> means;
    for (const auto& [election, a] : acc[cell]) means.push_back(a.first / static_cast<double>(a.second));
    const double n = static_cast<double>(means.size());
    double mean = 0.0;
    for (double x : means) mean += x;
    mean /= n;
    double var = 0.0;
    for (double x : means) var += (x - mean) * (x - mean);
    const double se = means.size() > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
    out.push_back({std::get<0>(cell), std::get<1>(cell), budgets[cell], mean, se, means.size()});
  }
  return out;
}

inline constexpr std::string_view kCsvHeader = "culture,election,strategy,budget,repeat,distance,spent";

inline void write_csv(std::ostream& out, std::span<const ResultRow> rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows)
    out << r.culture << ',' << r.election << ',' << r.strategy << ',' << to_string(r.budget) << ',' << r.repeat << ','
        << r.distance << ',' << format_double(r.spent) << '\n';
}

inline std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw Error(Errc::parse, "missing or unexpected CSV header");
  std::vector<ResultRow> rows;
  auto to_size = [](std::string_view s) {
    std::size_t v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || end != s.data() + s.size())
      throw Error(Errc::parse, "bad integer '" + std::string(s) + "'");
    return v;
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (std::size_t at; (at = rest.find(',')) != std::string_view::npos; rest.remove_prefix(at + 1))
      f.push_back(rest.substr(0, at));
    f.push_back(rest);
    if (f.size() != 7) throw Error(Errc::parse, "expected 7 CSV fields: " + line);
    rows.push_back({std::string(f[0]), to_size(f[1]), std::string(f[2]), parse_budget(f[3]), to_size(f[4]),
                    to_size(f[5]), parse_double(f[6])});
  }
  return rows;
}

/// Writes `rows` to `path`; I/O failures name the path.
inline void emit_csv(std::span<const ResultRow> rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot open '" + path + "' for writing");
  write_csv(out, rows);
  out.flush();
  if (!out) throw Error(Errc::io, "failed writing '" + path + "'");
}

inline std::vector<ResultRow> load_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open '" + path + "'");
  return read_csv(in);
}

}  // namespace qbcs
