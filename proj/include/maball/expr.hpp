#pragma once

#include <array>
#include <memory>
#include <string>

namespace maball::expr {

// Arithmetic expressions over x1..x3:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' integer)?
//   base   := number | 'x1'|'x2'|'x3'
//           | ('sin'|'cos'|'exp') '(' expr ')' | '(' expr ')'
struct Node;
using NodePtr = std::shared_ptr<const Node>;

enum class Op { Num, Var, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp };

struct Node {
  Op op;
  double number = 0.0;  // Num
  int var = 0;          // Var: 0-based axis
  int exponent = 0;     // Pow
  NodePtr lhs, rhs;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error(what), line(line), column(column) {}
  int line;
  int column;
};

// Throws ParseError with a line/column diagnostic on bad input.
NodePtr parse(const std::string& text, int line = 1);

double eval(const NodePtr& e, const std::array<double, 3>& x);

// Highest axis referenced (1-based), 0 for constant expressions.
int max_variable(const NodePtr& e);

// Pretty-print; re-parsing the output yields a structurally equal tree.
std::string print(const NodePtr& e);

bool structurally_equal(const NodePtr& a, const NodePtr& b);

}  // namespace maball::expr
