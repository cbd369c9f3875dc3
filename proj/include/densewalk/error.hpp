#pragma once

#include <stdexcept>

namespace densewalk {

// Malformed or inconsistent input (files, parameters, graph preconditions).
// The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A broken internal invariant; indicates a bug, not bad input.
// The CLI maps this to exit code 3.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace densewalk
