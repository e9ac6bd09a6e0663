#pragma once

#include <stdexcept>
#include <string>

namespace holo {

// Bad input: out-of-range angles, malformed configs, dimension mismatches.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Input is well-formed but the requested quantity does not exist (e.g. r = |a/b| at b = 0).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// A numerical invariant was violated after computation (unitarity, probability range).
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace holo
