#pragma once

#include <stdexcept>
#include <string>

namespace l2s {

/// A caller violated an operation's precondition (invalid structure, dimension mismatch, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rejection sampling could not find a valid structure within its attempt budget.
class SpaceTooConstrained : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A brute-force routine was asked to walk a space beyond its size guard.
class SpaceTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed or incomplete experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace l2s
