#pragma once

#include <stdexcept>
#include <string>

namespace qbcs {

enum class Errc {
  invalid_argument,
  invalid_k,
  mismatched_committees,
  invalid_parameter,
  infeasible_query,
  unknown_candidate,
  protocol,
  invalid_profile,
  missing_data,
  invalid_config,
  parse,
  io,
};

inline const char* to_string(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::invalid_k: return "invalid-k";
    case Errc::mismatched_committees: return "mismatched-committees";
    case Errc::invalid_parameter: return "parameter";
    case Errc::infeasible_query: return "infeasible-query";
    case Errc::unknown_candidate: return "unknown-candidate";
    case Errc::protocol: return "protocol";
    case Errc::invalid_profile: return "invalid-profile";
    case Errc::missing_data: return "missing-data";
    case Errc::invalid_config: return "invalid-config";
    case Errc::parse: return "parse";
    case Errc::io: return "io";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI) can react without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + " error: " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qbcs
