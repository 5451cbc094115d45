#pragma once

#include <stdexcept>
#include <string>

namespace cayley {

// Raised when a request is well-formed but outside the implemented range
// (e.g. a K-class for a group family we have no representative for).
// Callers that map errors to process exit codes treat this as "unsupported"
// rather than "invalid input".
struct unsupported_error : std::runtime_error {
  explicit unsupported_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cayley
