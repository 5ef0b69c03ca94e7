#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eclipse {

/// A caller broke a documented precondition (dimension mismatch, bad ratio box, ...).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Input data is unusable: malformed files, negative coordinates, bad index files.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DomainError : public DataError {
 public:
  using DataError::DataError;
};

/// Two points whose dual hyperplanes never intersect (equal in every coordinate but the last).
class DegeneratePair : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The number of skyline points exceeds what the dual index is allowed to materialise.
class IndexTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eclipse
