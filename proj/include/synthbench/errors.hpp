#pragma once

#include <stdexcept>
#include <string>

namespace synthbench {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Raised by dataset/record parsers on malformed input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line = -1)
      : Error(line >= 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Metric-level failures (length mismatch, degenerate variance, unknown scheme).
class MetricError : public Error {
 public:
  using Error::Error;
};

class DegenerateVarianceError : public MetricError {
 public:
  using MetricError::MetricError;
};

}  // namespace synthbench
