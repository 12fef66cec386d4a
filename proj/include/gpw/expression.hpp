#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "gpw/taylor2d.hpp"

namespace gpw {

/// A closed-form coefficient expression in x and y.
///
/// Grammar (whitespace is ignored):
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := ('-' | '+') unary | power
///     power   := primary ('^' integer)?
///     primary := number | 'x' | 'y' | 'pi'
///              | ('sin' | 'cos' | 'exp') '(' expr ')'
///              | '(' expr ')'
///
/// Division is only allowed by a constant subexpression. Expressions are
/// immutable and cheap to copy (shared tree).
class Expression {
 public:
  struct Node;

  /// Throws std::invalid_argument with the offending position on error.
  static Expression parse(std::string_view text);
  static Expression constant(double value);

  /// Truncated Taylor expansion about `center`.
  TaylorSeries2 taylor(Point2 center, int order) const;
  double evaluate(Point2 p) const;
  bool is_constant() const;

  const std::string& source() const noexcept { return source_; }

 private:
  explicit Expression(std::shared_ptr<const Node> root, std::string source)
      : root_(std::move(root)), source_(std::move(source)) {}

  std::shared_ptr<const Node> root_;
  std::string source_;
};

}  // namespace gpw
