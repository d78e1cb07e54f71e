#pragma once

// Election file interchange.
//
// Native format: a header line "m n k", then n lines, each a space-separated
// permutation of 0..m-1.
//
// PrefLib strict-order-complete (.soc): candidate ids are 1-based.
//   m
//   1,<name>            (m lines)
//   <voters>,<sum of counts>,<unique orders>
//   <count>,<c>,<c>,...  (one line per unique order)
// The newer "# KEY: value" header variant is accepted on input as well.
// PrefLib files carry no committee size, so k is supplied by the caller.

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qbcs/election.hpp"
#include "qbcs/error.hpp"

namespace qbcs {

struct ElectionFile {
  Election election;
  std::vector<std::string> names;  // presentation only
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline long long to_int(std::string_view s, std::string_view what) {
  const auto t = trim(s);
  long long v = 0;
  auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size())
    throw Error(Errc::parse, "expected an integer for " + std::string(what) + ", got '" + std::string(s) + "'");
  return v;
}

inline std::vector<std::string> split_commas(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto at = line.find(',', start);
    out.push_back(trim(line.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start)));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

inline PreferenceOrder preflib_ranking(const std::vector<std::string>& fields, std::size_t first, std::size_t m) {
  std::vector<CandidateId> r;
  for (std::size_t i = first; i < fields.size(); ++i) {
    if (fields[i].find_first_of("{}") != std::string::npos)
      throw Error(Errc::parse, "ties are not allowed in a strict-order-complete file");
    const auto id = to_int(fields[i], "candidate");
    if (id < 1 || static_cast<std::size_t>(id) > m)
      throw Error(Errc::parse, "candidate " + std::to_string(id) + " outside 1.." + std::to_string(m));
    r.push_back(static_cast<CandidateId>(id - 1));
  }
  if (r.size() != m) throw Error(Errc::parse, "a ranking does not list all " + std::to_string(m) + " candidates");
  return PreferenceOrder(std::move(r));
}

inline std::vector<std::string> default_names(std::size_t m) {
  std::vector<std::string> names;
  for (std::size_t c = 0; c < m; ++c) names.push_back("c" + std::to_string(c + 1));
  return names;
}

}  // namespace detail

inline Election read_native(std::istream& in) {
  long long m = 0, n = 0, k = 0;
  if (!(in >> m >> n >> k) || m < 1 || n < 0 || k < 1)
    throw Error(Errc::parse, "native election header must be 'm n k'");
  std::vector<PreferenceOrder> voters;
  for (long long i = 0; i < n; ++i) {
    std::vector<CandidateId> r(static_cast<std::size_t>(m));
    for (auto& c : r)
      if (!(in >> c)) throw Error(Errc::parse, "truncated ranking for voter " + std::to_string(i));
    voters.emplace_back(std::move(r));
  }
  return Election(static_cast<std::size_t>(m), std::move(voters), static_cast<std::size_t>(k));
}

inline void write_native(std::ostream& out, const Election& e) {
  out << e.num_candidates() << ' ' << e.num_voters() << ' ' << e.committee_size() << '\n';
  for (const auto& v : e.voters()) {
    for (std::size_t r = 0; r < v.size(); ++r) out << (r ? " " : "") << v[r];
    out << '\n';
  }
}

inline ElectionFile read_preflib(std::istream& in, std::size_t k) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    auto t = detail::trim(line);
    if (!t.empty()) lines.push_back(std::move(t));
  }
  if (lines.empty()) throw Error(Errc::parse, "empty PrefLib file");

  std::size_t m = 0;
  std::map<std::size_t, std::string> named;
  std::size_t at = 0;
  if (lines[0][0] == '#') {
    for (; at < lines.size() && lines[at][0] == '#'; ++at) {
      const auto& l = lines[at];
      const auto colon = l.find(':');
      if (colon == std::string::npos) continue;
      const auto key = detail::trim(std::string_view(l).substr(1, colon - 1));
      const auto value = detail::trim(std::string_view(l).substr(colon + 1));
      if (key == "NUMBER ALTERNATIVES") m = static_cast<std::size_t>(detail::to_int(value, "alternatives"));
      if (key.rfind("ALTERNATIVE NAME ", 0) == 0)
        named[static_cast<std::size_t>(detail::to_int(key.substr(17), "alternative"))] = value;
    }
  } else {
    m = static_cast<std::size_t>(detail::to_int(lines[0], "candidate count"));
    at = 1;
    for (std::size_t c = 0; c < m; ++c, ++at) {
      if (at >= lines.size()) throw Error(Errc::parse, "truncated candidate list");
      const auto comma = lines[at].find(',');
      if (comma == std::string::npos) throw Error(Errc::parse, "candidate line must be 'id,name'");
      named[static_cast<std::size_t>(detail::to_int(std::string_view(lines[at]).substr(0, comma), "candidate id"))] =
          detail::trim(std::string_view(lines[at]).substr(comma + 1));
    }
    if (at >= lines.size()) throw Error(Errc::parse, "missing voter count line");
    ++at;  // "<voters>,<sum>,<unique>"
  }
  if (m < 1) throw Error(Errc::parse, "PrefLib file declares no candidates");

  std::vector<PreferenceOrder> voters;
  for (; at < lines.size(); ++at) {
    std::string line = lines[at];
    std::size_t first = 1;
    std::vector<std::string> fields;
    if (auto colon = line.find(':'); colon != std::string::npos) {
      fields = detail::split_commas(std::string_view(line).substr(colon + 1));
      fields.insert(fields.begin(), line.substr(0, colon));
    } else {
      fields = detail::split_commas(line);
    }
    const auto count = detail::to_int(fields[0], "vote count");
    if (count < 0) throw Error(Errc::parse, "negative vote count");
    const auto ranking = detail::preflib_ranking(fields, first, m);
    for (long long i = 0; i < count; ++i) voters.push_back(ranking);
  }

  auto names = detail::default_names(m);
  for (const auto& [id, name] : named)
    if (id >= 1 && id <= m) names[id - 1] = name;
  return {Election(m, std::move(voters), k), std::move(names)};
}

inline void write_preflib(std::ostream& out, const Election& e, const std::vector<std::string>& names = {}) {
  const auto m = e.num_candidates();
  const auto labels = names.size() == m ? names : detail::default_names(m);
  std::vector<std::pair<PreferenceOrder, std::size_t>> unique;
  for (const auto& v : e.voters()) {
    auto it = std::find_if(unique.begin(), unique.end(), [&](const auto& u) { return u.first == v; });
    if (it == unique.end())
      unique.emplace_back(v, 1);
    else
      ++it->second;
  }
  out << m << '\n';
  for (std::size_t c = 0; c < m; ++c) out << c + 1 << ',' << labels[c] << '\n';
  out << e.num_voters() << ',' << e.num_voters() << ',' << unique.size() << '\n';
  for (const auto& [order, count] : unique) {
    out << count;
    for (std::size_t r = 0; r < m; ++r) out << ',' << order[r] + 1;
    out << '\n';
  }
}

/// Dispatches on extension: ".soc" is PrefLib, anything else native.
/// `k_override` replaces the native header's k and supplies PrefLib's.
inline Election load_election(const std::string& path, std::size_t k_override = 0) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open '" + path + "'");
  const bool soc = path.size() >= 4 && path.substr(path.size() - 4) == ".soc";
  if (soc) {
    if (k_override == 0) throw Error(Errc::invalid_argument, "PrefLib files need an explicit committee size");
    return read_preflib(in, k_override).election;
  }
  auto e = read_native(in);
  if (k_override == 0) return e;
  return Election(e.num_candidates(), std::vector<PreferenceOrder>(e.voters().begin(), e.voters().end()), k_override);
}

}  // namespace qbcs
