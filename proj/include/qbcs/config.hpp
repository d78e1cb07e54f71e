#pragma once

// JSON run configuration. Every key is optional:
//
//   {
//     "m": 20, "n": 20, "k": 10,
//     "elections_per_culture": 200,
//     "cultures": [ {"kind": "IC"}, {"kind": "Mallows", "phi": 0.2, "seed": 7},
//                   {"kind": "Urn", "alpha": 0.5} ],
//     "strategies": ["S-EQ", "N-EQ"],            // default: all eight
//     "cost": "VarianceAware",
//     "budget_grid": [0, 100, 250.5, "inf"],     // or {"points": 10, "low": 0.01, "high": 1.2}
//     "voter_order_repeats": 5,
//     "random_baseline": true,
//     "seed": 42
//   }

#include <fstream>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "qbcs/experiments.hpp"

namespace qbcs {

inline ExperimentConfig parse_config(const nlohmann::json& j) {
  auto bad = [](const std::string& what) { return Error(Errc::invalid_config, what); };
  if (!j.is_object()) throw bad("configuration must be a JSON object");
  static const std::set<std::string> known = {"m",        "n",          "k",           "elections_per_culture",
                                              "cultures", "strategies", "cost",        "budget_grid",
                                              "voter_order_repeats",    "random_baseline", "seed"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw bad("unknown key '" + key + "'");

  ExperimentConfig c;
  try {
    auto count = [&](const char* key, std::size_t& field) {
      if (!j.contains(key)) return;
      const auto v = j.at(key).get<long long>();
      if (v < 0) throw bad(std::string(key) + " must be non-negative");
      field = static_cast<std::size_t>(v);
    };
    count("m", c.m);
    count("n", c.n);
    count("k", c.k);
    count("elections_per_culture", c.elections_per_culture);
    count("voter_order_repeats", c.voter_order_repeats);
    if (j.contains("seed")) c.master_seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("random_baseline")) c.random_baseline = j.at("random_baseline").get<bool>();
    if (j.contains("cost")) c.cost = parse_cost_kind(j.at("cost").get<std::string>());

    if (j.contains("cultures")) {
      c.cultures.clear();
      for (const auto& cj : j.at("cultures")) {
        CultureSpec spec;
        spec.kind = parse_culture_kind(cj.at("kind").get<std::string>());
        if (cj.contains("alpha")) spec.alpha = cj.at("alpha").get<double>();
        if (cj.contains("phi")) spec.phi = cj.at("phi").get<double>();
        if (cj.contains("seed")) spec.seed = cj.at("seed").get<std::uint64_t>();
        if (cj.contains("center")) spec.center = PreferenceOrder(cj.at("center").get<std::vector<CandidateId>>());
        c.cultures.push_back(std::move(spec));
      }
    }
    if (j.contains("strategies")) {
      c.strategies.clear();
      for (const auto& s : j.at("strategies")) c.strategies.push_back(parse_strategy(s.get<std::string>()));
    }
    if (j.contains("budget_grid")) {
      const auto& g = j.at("budget_grid");
      if (g.is_array()) {
        for (const auto& b : g)
          c.budget_grid.push_back(b.is_string() ? parse_budget(b.get<std::string>()) : Budget(b.get<double>()));
        if (c.budget_grid.empty()) throw bad("budget_grid must not be empty");
      } else {
        if (g.contains("points")) c.auto_grid.points = g.at("points").get<std::size_t>();
        if (g.contains("low")) c.auto_grid.low = g.at("low").get<double>();
        if (g.contains("high")) c.auto_grid.high = g.at("high").get<double>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw bad(e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::invalid_config) throw;
    throw bad(e.what());
  }
  validate(c);
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_config, path + ": " + e.what());
  }
  return parse_config(j);
}

}  // namespace qbcs
