#pragma once

#include <initializer_list>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "curvhom/jet.hpp"

namespace curvhom {

/// Immutable scalar expression in the coordinates (t, x, y).
///
/// Nodes are shared; copying an Expr is cheap and never deep-copies the tree.
class Expr {
 public:
  enum class Kind {
    number,
    variable,
    neg,
    exp,
    log,
    sin,
    cos,
    sqrt,
    abs,
    add,
    sub,
    mul,
    div,
    pow,
  };

  static Expr number(double value);
  static Expr variable(Coord c);
  static Expr unary(Kind kind, Expr operand);
  static Expr binary(Kind kind, Expr lhs, Expr rhs);

  Kind kind() const noexcept;
  /// Literal value; only meaningful for Kind::number.
  double number_value() const noexcept;
  /// Coordinate; only meaningful for Kind::variable.
  Coord coordinate() const noexcept;
  /// Operand i (0 or 1) of a unary or binary node.
  const Expr& operand(int i) const;
  int arity() const noexcept;

  bool depends_on(Coord c) const;

  friend bool operator==(const Expr& a, const Expr& b);

  friend Expr operator+(Expr a, Expr b) { return binary(Kind::add, std::move(a), std::move(b)); }
  friend Expr operator-(Expr a, Expr b) { return binary(Kind::sub, std::move(a), std::move(b)); }
  friend Expr operator*(Expr a, Expr b) { return binary(Kind::mul, std::move(a), std::move(b)); }
  friend Expr operator/(Expr a, Expr b) { return binary(Kind::div, std::move(a), std::move(b)); }
  friend Expr operator-(Expr a) { return unary(Kind::neg, std::move(a)); }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr exp(Expr e);
Expr pow(Expr base, Expr exponent);

/// Coordinate name ("t", "x" or "y").
std::string_view coordinate_name(Coord c);

/// Parses `text`. Identifiers must be one of `variables` (a subset of t, x, y)
/// or one of the functions exp, log, sin, cos, sqrt, abs.
///
/// Precedence, tightest first: ^ (right associative), unary minus, * /, + -.
/// Throws ParseError on malformed input.
Expr parse(std::string_view text,
           const std::vector<std::string>& variables = {"t", "x", "y"});

/// Text that parses back to a structurally identical tree.
std::string to_string(const Expr& e);

/// All partial derivatives of `e` at `p` up to total order `order`.
/// Throws DomainError naming the offending subexpression.
Jet eval_jet(const Expr& e, const Point& p, int order);

double eval(const Expr& e, const Point& p);

}  // namespace curvhom
