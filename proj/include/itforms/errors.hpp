#pragma once

#include <stdexcept>
#include <string>

namespace itforms {

// Exit-code contract: 1 = user error, 2 = resource limit, 3 = broken internal
// invariant. Exceptions below map onto those codes at the CLI boundary.

struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct ChartMismatchError : UsageError {
  explicit ChartMismatchError(const std::string& what) : UsageError(what) {}
};

struct DegreeError : UsageError {
  explicit DegreeError(const std::string& what) : UsageError(what) {}
};

struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

struct ParseError : UsageError {
  int line;
  int column;
  ParseError(int line_, int col_, const std::string& what)
      : UsageError("parse error at " + std::to_string(line_) + ":" +
                   std::to_string(col_) + ": " + what),
        line(line_),
        column(col_) {}
};

}  // namespace itforms
