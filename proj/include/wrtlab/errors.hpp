#pragma once

#include <stdexcept>
#include <string>

namespace wrtlab {

// Bad argument values (negative gamma, a_1 <= -1, all-zero pattern, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Arguments are valid but the requested quantity is undefined for them.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wrtlab
