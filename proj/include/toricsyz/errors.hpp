#pragma once

#include <stdexcept>

namespace toricsyz {

/// Malformed or unsupported input (bad JSON, degenerate vertex sets, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A request outside the computed window or outside a configured hard limit.
class WindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent routes disagreed. Always an implementation bug.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace toricsyz
