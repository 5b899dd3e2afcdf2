#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polyopt/deformation.hpp"
#include "polyopt/errors.hpp"
#include "polyopt/slp.hpp"

namespace polyopt {

/// Syntax error at a 1-based line and column.
class ParseError : public InvalidInput {
 public:
  ParseError(int line, int column, const std::string& msg)
      : InvalidInput(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_, column_;
};

enum class ConstraintKind { kEq, kGe };

struct SourceConstraint {
  ConstraintKind kind = ConstraintKind::kEq;
  SparsePoly poly;
  int line = 0;  // ignored by ==
  friend bool operator==(const SourceConstraint& a, const SourceConstraint& b) {
    return a.kind == b.kind && a.poly == b.poly;
  }
};

struct ProblemSource {
  std::vector<std::string> vars;
  SparsePoly objective;
  /// In file order; equalities are moved first when building the Problem.
  std::vector<SourceConstraint> constraints;
  std::optional<int> degree;
  friend bool operator==(const ProblemSource&, const ProblemSource&) = default;
};

/// Line-oriented format:
///   vars: x1 x2            (names separated by blanks or commas)
///   minimize: <expr>
///   eq: <expr>             (expr = 0), any number
///   ge: <expr>             (expr >= 0), any number
///   degree: <even int>     (optional)
/// `#` starts a comment. Expressions use + - * / ^ and parentheses over
/// integer or decimal literals; division only by nonzero constants.
ProblemSource parse_source(std::string_view text);

/// Equalities first, in source order, then inequalities.
Problem to_problem(const ProblemSource& src);

Problem parse_problem(std::string_view text);

std::string pretty_print(const ProblemSource& src);

}  // namespace polyopt
