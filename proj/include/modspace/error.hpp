// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <stdexcept>
#include <string>

namespace modspace {

enum class ErrorKind {
  contract,      // caller broke a precondition (side mismatch, grid mismatch)
  parameter,     // out-of-range scalar parameter
  config,        // invalid configuration file / field
  resolution,    // grid too coarse for the requested construction
  hypothesis,    // theorem hypotheses not met
  data,          // non-finite or otherwise unusable samples
  conditioning,  // eigenvalue floor hit
  numerical,     // iteration failed to converge, degenerate quantity
  truncation,    // field not band-limit safe for the window family
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::contract: return "contract violation";
    case ErrorKind::parameter: return "parameter error";
    case ErrorKind::config: return "config error";
    case ErrorKind::resolution: return "resolution error";
    case ErrorKind::hypothesis: return "hypothesis violation";
    case ErrorKind::data: return "data error";
    case ErrorKind::conditioning: return "conditioning error";
    case ErrorKind::numerical: return "numerical error";
    case ErrorKind::truncation: return "truncation error";
    case ErrorKind::io: return "io error";
  }
  return "error";
}

// CLI exit code contract: 2 config, 3 hypothesis, 4 numerical.
inline int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::hypothesis: return 3;
    case ErrorKind::data:
    case ErrorKind::conditioning:
    case ErrorKind::numerical:
    case ErrorKind::truncation: return 4;
    default: return 2;
  }
}

}  // namespace modspace
