#pragma once

// Line-based query log, two lines per asked query:
//
//   Q voter=<i> subset=<id,id,...> B=<ratio,ratio,...> cost=<x>
//   A classes=<id,id|id|...>
//
// Ratios are written as exact fractions and costs as shortest round-trip
// decimals, so a parsed log replays to the identical profile.

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qbcs/format.hpp"
#include "qbcs/strategies.hpp"

namespace qbcs {

namespace detail {

template <typename T, typename F>
std::string join(const std::vector<T>& items, char sep, F&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += fmt(items[i]);
  }
  return out;
}

inline std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    auto at = text.find(sep, start);
    parts.push_back(text.substr(start, at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return parts;
}

inline std::vector<CandidateId> parse_ids(std::string_view text) {
  std::vector<CandidateId> ids;
  for (auto part : split(text, ',')) {
    CandidateId id = 0;
    auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), id);
    if (ec != std::errc() || end != part.data() + part.size())
      throw Error(Errc::parse, "bad candidate id '" + std::string(part) + "'");
    ids.push_back(id);
  }
  return ids;
}

/// Value of `key=` in a space-separated record.
inline std::string_view field(std::string_view line, std::string_view key) {
  for (auto token : split(line, ' '))
    if (token.size() > key.size() && token.substr(0, key.size()) == key && token[key.size()] == '=')
      return token.substr(key.size() + 1);
  throw Error(Errc::parse, "log line lacks '" + std::string(key) + "': " + std::string(line));
}

}  // namespace detail

inline std::string format_query_line(const LogEntry& e) {
  std::vector<CandidateId> subset(e.query.subset().begin(), e.query.subset().end());
  std::vector<Ratio> ratios(e.query.buckets().ratios().begin(), e.query.buckets().ratios().end());
  return "Q voter=" + std::to_string(e.voter) +
         " subset=" + detail::join(subset, ',', [](CandidateId c) { return std::to_string(c); }) +
         " B=" + detail::join(ratios, ',', [](const Ratio& r) { return to_string(r); }) +
         " cost=" + format_double(e.cost);
}

inline std::string format_answer_line(const OrderedPartition& answer) {
  return "A classes=" + detail::join(answer.classes, '|', [](const std::vector<CandidateId>& cls) {
           return detail::join(cls, ',', [](CandidateId c) { return std::to_string(c); });
         });
}

inline void write_log(std::ostream& out, std::span<const LogEntry> log) {
  for (const auto& e : log) out << format_query_line(e) << '\n' << format_answer_line(e.answer) << '\n';
}

inline std::vector<LogEntry> read_log(std::istream& in) {
  std::vector<LogEntry> log;
  std::string qline;
  std::string aline;
  while (std::getline(in, qline)) {
    if (qline.empty()) continue;
    if (qline.rfind("Q ", 0) != 0) throw Error(Errc::parse, "expected a Q line: " + qline);
    if (!std::getline(in, aline) || aline.rfind("A ", 0) != 0)
      throw Error(Errc::parse, "Q line without a following A line: " + qline);

    std::vector<Ratio> ratios;
    for (auto r : detail::split(detail::field(qline, "B"), ',')) ratios.push_back(parse_ratio(r));
    const auto voter_text = detail::field(qline, "voter");
    std::size_t voter = 0;
    auto [end, ec] = std::from_chars(voter_text.data(), voter_text.data() + voter_text.size(), voter);
    if (ec != std::errc() || end != voter_text.data() + voter_text.size())
      throw Error(Errc::parse, "bad voter index in: " + qline);

    OrderedPartition answer;
    for (auto cls : detail::split(detail::field(aline, "classes"), '|')) answer.classes.push_back(detail::parse_ids(cls));

    log.push_back(LogEntry{voter,
                           RefinementQuery(detail::parse_ids(detail::field(qline, "subset")), BucketVector(std::move(ratios))),
                           std::move(answer), parse_double(detail::field(qline, "cost"))});
  }
  return log;
}

}  // namespace qbcs
