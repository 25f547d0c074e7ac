#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flatdeg {

// Input text could not be parsed; offset is the byte position of the problem.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

// A scan or enumeration would exceed its configured budget.
class BudgetError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A bundled data resource (corpus file, known-values table) is missing or bad.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace flatdeg
