#pragma once

// Seeded generators for statistical election cultures and the four compass
// elections (identity, uniformity, stratification, antagonism).
//
// Randomness that every voter shares (candidate positions, the consensus
// order, the stratification split) comes from substream {kShared}; voter i
// draws only from substream {kVoter, i}. Urn is the one sequential culture:
// a voter may copy an earlier voter, but its own draws still come from its
// own substream.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qbcs/election.hpp"
#include "qbcs/error.hpp"
#include "qbcs/rng.hpp"

namespace qbcs {

enum class CultureKind { IC, Euclidean2D, Urn, Mallows, ID, UN, ST, AN };

inline constexpr std::array<CultureKind, 8> kAllCultures = {
    CultureKind::IC, CultureKind::Euclidean2D, CultureKind::Urn, CultureKind::Mallows,
    CultureKind::ID, CultureKind::UN,          CultureKind::ST,  CultureKind::AN};

inline std::string_view to_string(CultureKind kind) {
  switch (kind) {
    case CultureKind::IC: return "IC";
    case CultureKind::Euclidean2D: return "Euclidean2D";
    case CultureKind::Urn: return "Urn";
    case CultureKind::Mallows: return "Mallows";
    case CultureKind::ID: return "ID";
    case CultureKind::UN: return "UN";
    case CultureKind::ST: return "ST";
    case CultureKind::AN: return "AN";
  }
  return "?";
}

inline CultureKind parse_culture_kind(std::string_view name) {
  for (CultureKind k : kAllCultures)
    if (to_string(k) == name) return k;
  if (name == "Euclidean" || name == "2D") return CultureKind::Euclidean2D;
  throw Error(Errc::invalid_parameter, "unknown culture '" + std::string(name) + "'");
}

struct CultureSpec {
  CultureKind kind = CultureKind::IC;
  /// Urn contagion: each drawn vote returns alpha * m! extra copies to the urn.
  double alpha = 0.5;
  /// Mallows dispersion in (0, 1]; 1 is impartial culture.
  double phi = 0.8;
  /// Consensus order for Mallows / ID / AN. Seeded random when absent.
  std::optional<PreferenceOrder> center;
  std::uint64_t seed = 0;
};

/// Short label used in result files, e.g. "Mallows(phi=0.2)".
inline std::string label(const CultureSpec& spec) {
  auto fmt = [](double x) {
    std::string s = std::to_string(x);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  };
  switch (spec.kind) {
    case CultureKind::Urn: return "Urn(alpha=" + fmt(spec.alpha) + ")";
    case CultureKind::Mallows: return "Mallows(phi=" + fmt(spec.phi) + ")";
    default: return std::string(to_string(spec.kind));
  }
}

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Candidates by increasing distance from the voter; exact ties go to the lower id.
inline PreferenceOrder euclidean_distance_oracle(Point2 voter, std::span<const Point2> candidates) {
  std::vector<double> d2(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const double dx = candidates[c].x - voter.x;
    const double dy = candidates[c].y - voter.y;
    d2[c] = dx * dx + dy * dy;
  }
  std::vector<CandidateId> order(candidates.size());
  std::iota(order.begin(), order.end(), CandidateId{0});
  std::stable_sort(order.begin(), order.end(), [&](CandidateId a, CandidateId b) {
    return d2[static_cast<std::size_t>(a)] < d2[static_cast<std::size_t>(b)];
  });
  return PreferenceOrder(std::move(order));
}

inline Election euclidean_election(std::span<const Point2> voters, std::span<const Point2> candidates, std::size_t k) {
  std::vector<PreferenceOrder> votes;
  votes.reserve(voters.size());
  for (const Point2& v : voters) votes.push_back(euclidean_distance_oracle(v, candidates));
  return Election(candidates.size(), std::move(votes), k);
}

namespace detail {

inline constexpr std::uint64_t kShared = 0x5348;  // "SH"
inline constexpr std::uint64_t kVoter = 0x564f;   // "VO"

inline Rng shared_rng(const CultureSpec& spec) { return Rng(derive_seed(spec.seed, {kShared})); }
inline Rng voter_rng(const CultureSpec& spec, std::size_t i) { return Rng(derive_seed(spec.seed, {kVoter, i})); }

inline std::vector<CandidateId> random_permutation(Rng& rng, std::size_t m) {
  std::vector<CandidateId> r(m);
  std::iota(r.begin(), r.end(), CandidateId{0});
  rng.shuffle(std::span(r));
  return r;
}

inline PreferenceOrder consensus(const CultureSpec& spec, std::size_t m) {
  if (spec.center) return *spec.center;
  Rng rng = shared_rng(spec);
  return PreferenceOrder(random_permutation(rng, m));
}

/// Repeated insertion: the i-th item of the center lands at 0-based slot j
/// of the partial ranking with weight phi^(i - j).
inline PreferenceOrder mallows_vote(Rng& rng, const PreferenceOrder& center, double phi) {
  const std::size_t m = center.size();
  std::vector<CandidateId> ranking;
  ranking.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    double total = 0.0;
    double w = 1.0;
    for (std::size_t d = 0; d <= i; ++d, w *= phi) total += w;
    double u = rng.unit() * total;
    std::size_t displacement = 0;  // distance from the bottom slot
    w = 1.0;
    while (displacement < i && u >= w) {
      u -= w;
      w *= phi;
      ++displacement;
    }
    ranking.insert(ranking.begin() + static_cast<std::ptrdiff_t>(i - displacement), center[i]);
  }
  return PreferenceOrder(std::move(ranking));
}

inline std::vector<PreferenceOrder> uniformity_votes(const CultureSpec& spec, std::size_t m, std::size_t n) {
  Rng rng = shared_rng(spec);
  std::vector<std::vector<CandidateId>> distinct;
  std::uint64_t factorial = 1;
  bool small = true;
  for (std::size_t i = 2; i <= m; ++i) {
    factorial *= i;
    if (factorial > n) {
      small = false;
      break;
    }
  }
  if (small) {
    // m! <= n: every permutation, in a seeded order, cycled.
    std::vector<CandidateId> p(m);
    std::iota(p.begin(), p.end(), CandidateId{0});
    do distinct.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    rng.shuffle(std::span(distinct));
  } else {
    std::set<std::vector<CandidateId>> seen;
    while (distinct.size() < n) {
      auto p = random_permutation(rng, m);
      if (seen.insert(p).second) distinct.push_back(std::move(p));
    }
  }
  std::vector<PreferenceOrder> votes;
  votes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) votes.emplace_back(distinct[i % distinct.size()]);
  return votes;
}

}  // namespace detail

inline void validate(const CultureSpec& spec, std::size_t m, std::size_t n, std::size_t k) {
  if (m < 1 || n < 1) throw Error(Errc::invalid_parameter, "cultures need m >= 1 and n >= 1");
  if (k < 1 || k > m) throw Error(Errc::invalid_parameter, "committee size k outside [1, m]");
  if (spec.kind == CultureKind::Urn && !(spec.alpha >= 0.0 && std::isfinite(spec.alpha)))
    throw Error(Errc::invalid_parameter, "urn contagion alpha must be a finite value >= 0");
  if (spec.kind == CultureKind::Mallows && !(spec.phi > 0.0 && spec.phi <= 1.0))
    throw Error(Errc::invalid_parameter, "Mallows dispersion phi must lie in (0, 1]");
  if (spec.kind == CultureKind::ST && m % 2 != 0)
    throw Error(Errc::invalid_parameter, "stratification needs an even number of candidates");
  if (spec.center && spec.center->size() != m)
    throw Error(Errc::invalid_parameter, "center order length differs from m");
}

/// Deterministic in (spec, m, n, k).
inline Election generate(const CultureSpec& spec, std::size_t m, std::size_t n, std::size_t k) {
  validate(spec, m, n, k);
  std::vector<PreferenceOrder> votes;
  votes.reserve(n);

  switch (spec.kind) {
    case CultureKind::IC:
      for (std::size_t i = 0; i < n; ++i) {
        Rng rng = detail::voter_rng(spec, i);
        votes.emplace_back(detail::random_permutation(rng, m));
      }
      break;

    case CultureKind::Euclidean2D: {
      Rng shared = detail::shared_rng(spec);
      std::vector<Point2> candidates(m);
      for (auto& p : candidates) {
        p.x = shared.unit();
        p.y = shared.unit();
      }
      for (std::size_t i = 0; i < n; ++i) {
        Rng rng = detail::voter_rng(spec, i);
        Point2 v;
        v.x = rng.unit();
        v.y = rng.unit();
        votes.push_back(euclidean_distance_oracle(v, candidates));
      }
      break;
    }

    case CultureKind::Urn:
      for (std::size_t i = 0; i < n; ++i) {
        Rng rng = detail::voter_rng(spec, i);
        const double urn = 1.0 + static_cast<double>(i) * spec.alpha;
        if (i == 0 || rng.unit() * urn < 1.0)
          votes.emplace_back(detail::random_permutation(rng, m));
        else
          votes.push_back(votes[static_cast<std::size_t>(rng.below(i))]);
      }
      break;

    case CultureKind::Mallows: {
      const PreferenceOrder center = detail::consensus(spec, m);
      for (std::size_t i = 0; i < n; ++i) {
        Rng rng = detail::voter_rng(spec, i);
        votes.push_back(detail::mallows_vote(rng, center, spec.phi));
      }
      break;
    }

    case CultureKind::ID: {
      const PreferenceOrder shared = detail::consensus(spec, m);
      votes.assign(n, shared);
      break;
    }

    case CultureKind::UN:
      votes = detail::uniformity_votes(spec, m, n);
      break;

    case CultureKind::ST: {
      Rng shared = detail::shared_rng(spec);
      const auto split = detail::random_permutation(shared, m);
      const std::size_t half = m / 2;
      for (std::size_t i = 0; i < n; ++i) {
        Rng rng = detail::voter_rng(spec, i);
        auto r = split;
        rng.shuffle(std::span(r).first(half));
        rng.shuffle(std::span(r).subspan(half));
        votes.emplace_back(std::move(r));
      }
      break;
    }

    case CultureKind::AN: {
      const PreferenceOrder forward = detail::consensus(spec, m);
      const PreferenceOrder backward = forward.reversed();
      const std::size_t first_half = (n + 1) / 2;
      for (std::size_t i = 0; i < n; ++i) votes.push_back(i < first_half ? forward : backward);
      break;
    }
  }
  return Election(m, std::move(votes), k);
}

/// Number of discordant candidate pairs between two rankings.
inline std::size_t kendall_tau(const PreferenceOrder& a, const PreferenceOrder& b) {
  const auto pos = b.positions();
  std::size_t discordant = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (pos[static_cast<std::size_t>(a[i])] > pos[static_cast<std::size_t>(a[j])]) ++discordant;
  return discordant;
}

}  // namespace qbcs
