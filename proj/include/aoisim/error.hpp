#pragma once

#include <stdexcept>
#include <string>

namespace aoisim {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rates outside their legal domain.
class InvalidParams : public Error {
 public:
  using Error::Error;
};

// FIFO closed forms requested with lambda >= mu.
class Unstable : public Error {
 public:
  using Error::Error;
};

// lambda == mu where a closed form divides by (mu - lambda).
class DegenerateParams : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Queue operation called in a state that violates its contract.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Malformed SimConfig or config file. `field` names the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

}  // namespace aoisim
