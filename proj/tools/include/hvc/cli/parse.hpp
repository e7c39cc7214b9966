#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hvc/variational.hpp"

namespace hvc::cli {

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct Literal {
  Rational value;
};
struct Atom {
  std::string name;  // "u3_12" (canonical) or "t1", "t2"
  JetCoord coord;    // meaningful for jet atoms
  bool parameter = false;
};
struct Binary {
  char op;  // + - * /
  ExprPtr lhs, rhs;
};
struct Power {
  ExprPtr base;
  long exponent;
};
struct Negate {
  ExprPtr operand;
};

struct ExprNode {
  std::variant<Literal, Atom, Binary, Power, Negate> node;
  std::size_t position = 0;
};

//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | base ('^' ['-'|'+'] int)?
//   base   := rational | atom | '(' expr ')'
//   atom   := 'u' int ('_' ('1'|'2')+)?
// With allow_parameters the atoms t1, t2 are accepted alongside jet
// coordinates.
ExprPtr parse_expression(std::string_view text, bool allow_parameters = false);

Scalar to_scalar(const ExprPtr& e);
ParamPolynomial to_param_polynomial(const ExprPtr& e);

Scalar parse_scalar(std::string_view text);
// "det:a,b", "paper-s4" or an expression of jet order <= 2.
Lagrangian parse_lagrangian(std::string_view text);
// Semicolon separated polynomials in t1, t2, one per field.
std::vector<ParamPolynomial> parse_map(std::string_view text);
std::pair<Rational, Rational> parse_point(std::string_view text);

}  // namespace hvc::cli
