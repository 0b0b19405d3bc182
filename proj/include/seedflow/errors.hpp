#pragma once

#include <stdexcept>
#include <string>

namespace seedflow {

/// Malformed input file. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg, long line = -1)
      : std::runtime_error(line >= 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}

  long line() const { return line_; }

 private:
  long line_;
};

/// Problem instance that cannot be solved as specified (e.g. a seed spec
/// whose overlap score is nonpositive from the start).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace seedflow
