#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mcs {

// Coarse classification of failure modes so callers (and the CLI) can map
// errors to behavior without string matching.
enum class ErrorCode {
  InvalidArgument,  // bad resolutions, radii, intervals, tolerances, ...
  GeometryMismatch, // fields/operators built on different domains
  OutOfDomain,      // evaluation point outside the closed domain
  NotApplicable,    // operation undefined for this problem type
  NoSolution,       // no solution exists in the requested class
  Incompatible,     // boundary data fails a necessary solvability condition
  ConfigError,      // malformed configuration or expression
  Diverged,         // iteration diverged
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

} // namespace mcs
