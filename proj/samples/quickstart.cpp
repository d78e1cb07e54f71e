// Elicit a Mallows election under a few budgets and compare the resulting
// committee with the full-information k-Borda committee.

#include <iostream>

#include "qbcs/qbcs.hpp"

int main() {
  using namespace qbcs;

  CultureSpec spec;
  spec.kind = CultureKind::Mallows;
  spec.phi = 0.5;
  spec.seed = 42;
  const Election e = generate(spec, 10, 15, 4);
  const Committee target = borda_committee(e);

  const Strategy split{QuestionType::Split, BudgetPolicy::Equal};
  for (double amount : {0.0, 100.0, 400.0, 1000.0}) {
    const auto out = query_based_committee(e, split, CostFunction(CostKind::VarianceAware), Budget(amount));
    std::cout << "budget " << amount << ": spent " << out.run.spent << " on " << out.run.log.size()
              << " queries, distance " << hamming(out.committee, target) << '\n';
  }
  const auto full = query_based_committee(e, split, CostFunction(), Budget::unbounded());
  std::cout << "unbounded: spent " << full.run.spent << ", distance " << hamming(full.committee, target) << '\n';
}
