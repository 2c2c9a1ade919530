#include "maball/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string_view>

namespace maball::expr {

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;
  int line;

  explicit Parser(const std::string& text, int line) : s(text), line(line) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line, static_cast<int>(pos) + 1);
  }

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  NodePtr make(Op op, NodePtr l = nullptr, NodePtr r = nullptr) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  NodePtr parse_expr() {
    NodePtr e = parse_term();
    while (true) {
      if (eat('+'))
        e = make(Op::Add, e, parse_term());
      else if (eat('-'))
        e = make(Op::Sub, e, parse_term());
      else
        return e;
    }
  }

  NodePtr parse_term() {
    NodePtr e = parse_factor();
    while (true) {
      if (eat('*'))
        e = make(Op::Mul, e, parse_factor());
      else if (eat('/'))
        e = make(Op::Div, e, parse_factor());
      else
        return e;
    }
  }

  NodePtr parse_factor() {
    NodePtr b = parse_base();
    if (!eat('^')) return b;
    skip_ws();
    const size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected integer exponent after '^'");
    auto n = std::make_shared<Node>();
    n->op = Op::Pow;
    n->lhs = std::move(b);
    n->exponent = std::atoi(s.substr(start, pos - start).c_str());
    return n;
  }

  NodePtr parse_base() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of expression");
    const char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
    if (eat('(')) {
      NodePtr e = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr parse_number() {
    const char* begin = s.c_str() + pos;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos += end - begin;
    auto n = std::make_shared<Node>();
    n->op = Op::Num;
    n->number = v;
    return n;
  }

  NodePtr parse_ident() {
    const size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos]))))
      ++pos;
    const std::string id = s.substr(start, pos - start);
    if (id == "x1" || id == "x2" || id == "x3") {
      auto n = std::make_shared<Node>();
      n->op = Op::Var;
      n->var = id[1] - '1';
      return n;
    }
    Op op;
    if (id == "sin")
      op = Op::Sin;
    else if (id == "cos")
      op = Op::Cos;
    else if (id == "exp")
      op = Op::Exp;
    else {
      pos = start;
      fail("unknown identifier '" + id + "'");
    }
    if (!eat('(')) fail("expected '(' after function name");
    NodePtr arg = parse_expr();
    if (!eat(')')) fail("expected ')'");
    return make(op, arg);
  }
};

int precedence(Op op) {
  switch (op) {
    case Op::Add:
    case Op::Sub:
      return 1;
    case Op::Mul:
    case Op::Div:
      return 2;
    case Op::Pow:
      return 3;
    default:
      return 4;
  }
}

void print_node(const NodePtr& e, std::ostringstream& out, int parent_prec,
                bool right_side) {
  const int prec = precedence(e->op);
  const bool need_paren =
      prec < parent_prec || (prec == parent_prec && right_side && prec <= 2);
  if (need_paren) out << '(';
  switch (e->op) {
    case Op::Num: {
      char buf[32];
      const auto res = std::to_chars(buf, buf + sizeof buf, e->number);
      out << std::string_view(buf, res.ptr - buf);
      break;
    }
    case Op::Var:
      out << 'x' << (e->var + 1);
      break;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      const char sym = e->op == Op::Add   ? '+'
                       : e->op == Op::Sub ? '-'
                       : e->op == Op::Mul ? '*'
                                          : '/';
      print_node(e->lhs, out, prec, false);
      out << sym;
      print_node(e->rhs, out, prec, true);
      break;
    }
    case Op::Pow:
      print_node(e->lhs, out, prec + 1, false);
      out << '^' << e->exponent;
      break;
    case Op::Sin:
    case Op::Cos:
    case Op::Exp:
      out << (e->op == Op::Sin ? "sin" : e->op == Op::Cos ? "cos" : "exp") << '(';
      print_node(e->lhs, out, 0, false);
      out << ')';
      break;
  }
  if (need_paren) out << ')';
}

}  // namespace

NodePtr parse(const std::string& text, int line) {
  Parser p(text, line);
  NodePtr e = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input after expression");
  return e;
}

double eval(const NodePtr& e, const std::array<double, 3>& x) {
  switch (e->op) {
    case Op::Num:
      return e->number;
    case Op::Var:
      return x[e->var];
    case Op::Add:
      return eval(e->lhs, x) + eval(e->rhs, x);
    case Op::Sub:
      return eval(e->lhs, x) - eval(e->rhs, x);
    case Op::Mul:
      return eval(e->lhs, x) * eval(e->rhs, x);
    case Op::Div:
      return eval(e->lhs, x) / eval(e->rhs, x);
    case Op::Pow:
      return std::pow(eval(e->lhs, x), e->exponent);
    case Op::Sin:
      return std::sin(eval(e->lhs, x));
    case Op::Cos:
      return std::cos(eval(e->lhs, x));
    case Op::Exp:
      return std::exp(eval(e->lhs, x));
  }
  return 0.0;
}

int max_variable(const NodePtr& e) {
  if (!e) return 0;
  int m = e->op == Op::Var ? e->var + 1 : 0;
  if (e->lhs) m = std::max(m, max_variable(e->lhs));
  if (e->rhs) m = std::max(m, max_variable(e->rhs));
  return m;
}

std::string print(const NodePtr& e) {
  std::ostringstream out;
  print_node(e, out, 0, false);
  return out.str();
}

bool structurally_equal(const NodePtr& a, const NodePtr& b) {
  if (!a || !b) return a == b;
  if (a->op != b->op) return false;
  switch (a->op) {
    case Op::Num:
      return a->number == b->number;
    case Op::Var:
      return a->var == b->var;
    case Op::Pow:
      return a->exponent == b->exponent && structurally_equal(a->lhs, b->lhs);
    default:
      return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
  }
}

}  // namespace maball::expr
