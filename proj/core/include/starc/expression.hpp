#pragma once

// Arithmetic expression language for scalar fields over a chart.
//
// Grammar (exact):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := unary ('^' factor)?
//   unary  := '-' unary | atom
//   atom   := number | ident | ident '(' expr ')' | '(' expr ')'
// Numbers: decimal with optional exponent. Whitespace-insensitive.
// Identifiers resolve to chart coordinates, "pi", or a unary call from
// {sin,cos,tan,exp,log,sqrt,sinh,cosh,tanh}.

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "starc/errors.hpp"

namespace starc {

using Point = std::array<double, 4>;

enum class ExprKind { Constant, Coordinate, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class Func { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh, Tanh };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  ExprKind kind;
  double value = 0.0;   // Constant
  int coord = -1;       // Coordinate (0..3)
  Func func{};          // Call
  ExprPtr lhs, rhs;     // children (unary ops use lhs only)
};

class ExprAst {
 public:
  ExprAst() = default;
  ExprAst(ExprPtr root, std::array<std::string, 4> coord_names)
      : root_(std::move(root)), coord_names_(std::move(coord_names)) {}

  double eval(const Point& p) const;
  // Symbolic d/dx_coord; used by convergence and derivative oracles.
  ExprAst derivative(int coord) const;
  // Fully parenthesized form, re-parseable against the same coordinates.
  std::string pretty_print() const;

  const ExprPtr& root() const { return root_; }
  const std::array<std::string, 4>& coord_names() const { return coord_names_; }

 private:
  ExprPtr root_;
  std::array<std::string, 4> coord_names_{{"t", "x", "y", "z"}};
};

// Parses text against the grammar above, resolving identifiers through
// coord_names. Throws SyntaxError (with byte offset), UnknownIdentifier,
// ArityError.
ExprAst parse_expression(const std::string& text,
                         const std::array<std::string, 4>& coord_names);

}  // namespace starc
