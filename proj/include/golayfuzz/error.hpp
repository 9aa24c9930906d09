#pragma once

#include <stdexcept>
#include <string>

namespace golayfuzz {

// Rejected input: malformed config, bad data file, out-of-range argument.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mutation of a dictionary after freeze().
class FrozenError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace golayfuzz
