#pragma once

#include <stdexcept>
#include <string>

namespace cabred {

// Enumeration, chain-length or symbolic budget exceeded.
struct cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input violates a documented precondition.
struct invalid_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Internal consistency assertion failed; any occurrence is a bug.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw invalid_input(what);
}

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw internal_error(what);
}

}  // namespace cabred
