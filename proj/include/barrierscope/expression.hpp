#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace barrierscope {

namespace detail {
struct Node;
class TokenCursor;
}  // namespace detail

/// Immutable arithmetic expression in the single variable x.
///
/// Supports + - * / ^, unary minus, parentheses, decimal literals and the
/// functions sin, cos, exp, sqrt, abs. Copies share the underlying tree.
class Expression {
 public:
  /// Parses a complete expression; throws ParseError (line 1) on bad input.
  static Expression parse(std::string_view text);
  static Expression constant(double value);
  static Expression variable();

  double operator()(double x) const;

  /// Value of a bare literal such as `5` or `-2.5`; empty for anything else.
  std::optional<double> literal_value() const;

  /// Canonical text form. Literals are printed with round-trip precision, so
  /// parse(render()) evaluates identically.
  std::string render() const;

  /// Returns this expression with every occurrence of x replaced.
  Expression substitute(const Expression& replacement) const;

  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);

 private:
  friend Expression parse_expression(detail::TokenCursor& cursor);
  explicit Expression(std::shared_ptr<const detail::Node> root) : root_(std::move(root)) {}

  std::shared_ptr<const detail::Node> root_;
};

/// Parses one expression from the cursor, leaving trailing tokens in place.
Expression parse_expression(detail::TokenCursor& cursor);

}  // namespace barrierscope
