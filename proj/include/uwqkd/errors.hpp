#pragma once

#include <stdexcept>
#include <string>

namespace uwqkd {

// Argument outside the mathematical domain of an operation (angle, probability, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A Kraus set that is not trace preserving, or a map output that is not a valid state.
class ChannelValidityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Zero coincidence probability: QBER is 0/0.
class UndefinedOperatingPoint : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientStatistics : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace uwqkd
