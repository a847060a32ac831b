#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tempcore {

/// Malformed edge-list input. Carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class EmptyInputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (epoch out of range, bad window config).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Protocol contract violated by the driver, e.g. a message from a non-neighbor.
class ProtocolError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

class NonConvergenceError : public std::runtime_error {
public:
  NonConvergenceError(int epoch, std::size_t cap)
      : std::runtime_error("epoch " + std::to_string(epoch) + " did not converge within " +
                           std::to_string(cap) + " iterations"),
        epoch_(epoch) {}

  int epoch() const noexcept { return epoch_; }

private:
  int epoch_;
};

/// Mismatched inputs handed to a metric (maps over different node universes).
class HarnessError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace tempcore
