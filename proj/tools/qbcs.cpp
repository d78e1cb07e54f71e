// qbcs command-line front end: generate, run, audit-costs, sweep.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbcs/config.hpp"
#include "qbcs/qbcs.hpp"

namespace {

using namespace qbcs;

struct GenerateArgs {
  std::string culture = "IC";
  std::size_t m = 20, n = 20, k = 10;
  double alpha = 0.5, phi = 0.8;
  std::uint64_t seed = 0;
  std::string format = "native";
  std::string out;
};

struct RunArgs {
  std::string config;
  std::string out;
  std::size_t jobs = 1;
  std::optional<std::uint64_t> seed;
  std::string difficulty;
  bool summary = false;
};

struct AuditArgs {
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  std::string csv;
};

struct SweepArgs {
  std::string election;
  std::size_t k = 0;
  std::string culture = "IC";
  std::size_t m = 20, n = 20;
  std::size_t committee = 10;
  double alpha = 0.5, phi = 0.8;
  std::uint64_t seed = 0;
  std::string cost = "VarianceAware";
  std::vector<std::string> budgets;
  std::size_t points = 8;
  std::string log_strategy;
  std::string log_path;
};

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw Error(Errc::io, "cannot open '" + path + "' for writing");
  return file;
}

CultureSpec culture_spec(const std::string& name, double alpha, double phi, std::uint64_t seed) {
  CultureSpec spec;
  spec.kind = parse_culture_kind(name);
  spec.alpha = alpha;
  spec.phi = phi;
  spec.seed = seed;
  return spec;
}

int cmd_generate(const GenerateArgs& a) {
  const auto e = generate(culture_spec(a.culture, a.alpha, a.phi, a.seed), a.m, a.n, a.k);
  std::ofstream file;
  auto& out = open_out(a.out, file);
  if (a.format == "preflib")
    write_preflib(out, e);
  else
    write_native(out, e);
  return 0;
}

std::string fixed(double x, int digits = 3) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << x;
  return s.str();
}

int cmd_run(const RunArgs& a) {
  auto config = load_config(a.config);
  if (a.seed) config.master_seed = *a.seed;
  const auto rows = run_budget_sweep(config, a.jobs);
  if (a.out.empty() || a.out == "-")
    write_csv(std::cout, rows);
  else
    emit_csv(rows, a.out);

  if (!a.difficulty.empty()) {
    std::ofstream file;
    auto& out = open_out(a.difficulty, file);
    out << "culture,election,strategy,difficulty\n";
    for (const auto& d : difficulty_scores(rows, config.k))
      out << d.culture << ',' << d.election << ',' << d.strategy << ',' << format_double(d.score) << '\n';
  }
  if (a.summary) {
    std::cerr << std::left << std::setw(20) << "culture" << std::setw(9) << "strategy" << std::right << std::setw(12)
              << "budget" << std::setw(9) << "mean" << std::setw(8) << "se" << '\n';
    for (const auto& s : summarize(rows))
      std::cerr << std::left << std::setw(20) << s.culture << std::setw(9) << s.strategy << std::right << std::setw(12)
                << (s.budget.is_unbounded() ? std::string("inf") : fixed(s.budget.amount(), 1)) << std::setw(9)
                << fixed(s.mean) << std::setw(8) << fixed(s.standard_error) << '\n';
  }
  return 0;
}

std::string describe(const RefinementQuery& q) {
  std::string b;
  for (std::size_t j = 0; j < q.buckets().size(); ++j) b += (j ? "," : "") + to_string(q.buckets()[j]);
  return "|C'|=" + std::to_string(q.subset_size()) + " B=(" + b + ")";
}

int cmd_audit(const AuditArgs& a) {
  const auto grid = audit_all(a.trials, a.seed);
  std::cout << std::left << std::setw(16) << "cost";
  for (Axiom ax : kAuditedAxioms) std::cout << std::setw(22) << to_string(ax);
  std::cout << '\n';
  for (CostKind c : kAllCosts) {
    std::cout << std::setw(16) << to_string(c);
    for (Axiom ax : kAuditedAxioms) std::cout << std::setw(22) << (grid.at(c, ax).holds ? "YES" : "NO");
    std::cout << '\n';
  }
  std::cout << "\ncounterexamples:\n";
  for (const auto& v : grid.verdicts) {
    if (!v.counterexample) continue;
    const auto& ce = *v.counterexample;
    std::cout << "  " << to_string(v.cost) << " / " << to_string(v.axiom) << ": " << describe(ce.pair.first)
              << " costs " << format_double(ce.first_cost) << ", " << describe(ce.pair.second) << " costs "
              << format_double(ce.second_cost) << (reverify(v) ? " (re-verified)" : " (NOT re-verified)") << '\n';
  }
  if (!a.csv.empty()) {
    std::ofstream file;
    auto& out = open_out(a.csv, file);
    out << "cost,axiom,holds,trials\n";
    for (const auto& v : grid.verdicts)
      out << to_string(v.cost) << ',' << to_string(v.axiom) << ',' << (v.holds ? "YES" : "NO") << ',' << v.trials
          << '\n';
  }
  return 0;
}

int cmd_sweep(const SweepArgs& a) {
  const Election e = a.election.empty()
                         ? generate(culture_spec(a.culture, a.alpha, a.phi, a.seed), a.m, a.n, a.committee)
                         : load_election(a.election, a.k);
  const CostFunction cost = CostFunction::named(a.cost);
  const Committee target = borda_committee(e);

  std::vector<Budget> budgets;
  if (!a.budgets.empty()) {
    for (const auto& b : a.budgets) budgets.push_back(parse_budget(b));
  } else {
    ExperimentConfig c;
    c.m = e.num_candidates();
    c.n = e.num_voters();
    c.cost = cost.kind();
    c.auto_grid.points = a.points;
    budgets = resolve_budget_grid(c);
  }

  std::cout << "m=" << e.num_candidates() << " n=" << e.num_voters() << " k=" << e.committee_size()
            << " cost=" << cost.name() << "\n\n"
            << std::left << std::setw(9) << "strategy" << std::right;
  for (const auto& b : budgets) std::cout << std::setw(10) << (b.is_unbounded() ? std::string("inf") : fixed(b.amount(), 1));
  std::cout << '\n';
  for (Strategy s : kAllStrategies) {
    std::cout << std::left << std::setw(9) << to_string(s) << std::right;
    for (const auto& b : budgets) std::cout << std::setw(10) << hamming(query_based_committee(e, s, cost, b).committee, target);
    std::cout << '\n';
  }

  if (!a.log_strategy.empty()) {
    if (budgets.empty()) throw Error(Errc::invalid_argument, "no budget to log");
    const auto run = run_elicitation(e, parse_strategy(a.log_strategy), cost, budgets.back());
    std::ofstream file;
    write_log(open_out(a.log_path, file), run.log);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Query-based committee selection under an elicitation budget"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Sample an election from a culture");
  g->add_option("--culture", gen.culture, "IC, Euclidean2D, Urn, Mallows, ID, UN, ST or AN")->capture_default_str();
  g->add_option("-m,--candidates", gen.m)->capture_default_str();
  g->add_option("-n,--voters", gen.n)->capture_default_str();
  g->add_option("-k,--committee", gen.k)->capture_default_str();
  g->add_option("--alpha", gen.alpha, "Urn contagion")->capture_default_str();
  g->add_option("--phi", gen.phi, "Mallows dispersion")->capture_default_str();
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_option("--format", gen.format)->check(CLI::IsMember({"native", "preflib"}))->capture_default_str();
  g->add_option("-o,--out", gen.out, "Output file (default stdout)");

  RunArgs run;
  auto* r = app.add_subcommand("run", "Run a budget sweep from a JSON config and write the results CSV");
  r->add_option("-c,--config", run.config)->required()->check(CLI::ExistingFile);
  r->add_option("-o,--out", run.out, "Results CSV (default stdout)");
  r->add_option("-j,--jobs", run.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  r->add_option("--seed", run.seed, "Override the config's master seed");
  r->add_option("--difficulty", run.difficulty, "Also write per-election difficulty scores here");
  r->add_flag("--summary", run.summary, "Print mean distance per cell to stderr");

  AuditArgs audit;
  auto* au = app.add_subcommand("audit-costs", "Check every cost function against the monotonicity axioms");
  au->add_option("--trials", audit.trials)->check(CLI::PositiveNumber)->capture_default_str();
  au->add_option("--seed", audit.seed)->capture_default_str();
  au->add_option("--csv", audit.csv, "Also write the grid as CSV");

  SweepArgs sweep;
  auto* sw = app.add_subcommand("sweep", "All strategies on one election across a budget grid");
  sw->add_option("-e,--election", sweep.election, "Election file (.soc is PrefLib); otherwise one is generated");
  sw->add_option("-k", sweep.k, "Committee size override for the election file");
  sw->add_option("--culture", sweep.culture)->capture_default_str();
  sw->add_option("-m,--candidates", sweep.m)->capture_default_str();
  sw->add_option("-n,--voters", sweep.n)->capture_default_str();
  sw->add_option("--committee", sweep.committee)->capture_default_str();
  sw->add_option("--alpha", sweep.alpha)->capture_default_str();
  sw->add_option("--phi", sweep.phi)->capture_default_str();
  sw->add_option("--seed", sweep.seed)->capture_default_str();
  sw->add_option("--cost", sweep.cost)->capture_default_str();
  sw->add_option("--budget", sweep.budgets, "Budget grid points; 'inf' allowed");
  sw->add_option("--points", sweep.points, "Automatic grid size")->capture_default_str();
  sw->add_option("--log-strategy", sweep.log_strategy, "Write the query log of this strategy at the last budget");
  sw->add_option("--log", sweep.log_path, "Query log destination (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*g) return cmd_generate(gen);
    if (*r) return cmd_run(run);
    if (*au) return cmd_audit(audit);
    if (*sw) return cmd_sweep(sweep);
  } catch (const std::exception& e) {
    std::cerr << "qbcs: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
