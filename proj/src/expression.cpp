#include "gpw/expression.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>

namespace gpw {

struct Expression::Node {
  enum class Op { number, x, y, add, sub, mul, div, neg, pow, sin, cos, exp };
  Op op = Op::number;
  double value = 0.0;
  int exponent = 0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_node(Node::Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

NodePtr make_number(double v) {
  auto n = std::make_shared<Node>();
  n->op = Node::Op::number;
  n->value = v;
  return n;
}

bool node_is_constant(const Node& n) {
  switch (n.op) {
    case Node::Op::number:
      return true;
    case Node::Op::x:
    case Node::Op::y:
      return false;
    default:
      return (!n.lhs || node_is_constant(*n.lhs)) && (!n.rhs || node_is_constant(*n.rhs));
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("expression: " + msg + " at position " + std::to_string(pos_) +
                                " in \"" + std::string(text_) + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make_node(Node::Op::add, lhs, term());
      else if (accept('-'))
        lhs = make_node(Node::Op::sub, lhs, term());
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_node(Node::Op::mul, lhs, unary());
      } else if (accept('/')) {
        NodePtr rhs = unary();
        if (!node_is_constant(*rhs)) fail("division by a non-constant expression");
        lhs = make_node(Node::Op::div, lhs, rhs);
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make_node(Node::Op::neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      auto n = std::make_shared<Node>();
      n->op = Node::Op::pow;
      n->lhs = base;
      n->exponent = std::stoi(std::string(text_.substr(start, pos_ - start)));
      return n;
    }
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (accept('(')) {
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word == "x") return make_node(Node::Op::x);
      if (word == "y") return make_node(Node::Op::y);
      if (word == "pi") return make_number(std::numbers::pi);
      Node::Op fn;
      if (word == "sin")
        fn = Node::Op::sin;
      else if (word == "cos")
        fn = Node::Op::cos;
      else if (word == "exp")
        fn = Node::Op::exp;
      else {
        pos_ = start;
        fail("unknown identifier '" + std::string(word) + "'");
      }
      expect('(');
      NodePtr arg = expr();
      expect(')');
      return make_node(fn, arg);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    const std::string rest(text_.substr(pos_));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(rest, &used);
    } catch (const std::exception&) {
      fail("malformed number");
    }
    pos_ += used;
    return make_number(v);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

TaylorSeries2 to_series(const Node& n, Point2 c, int order) {
  switch (n.op) {
    case Node::Op::number:
      return TaylorSeries2::constant(c, order, n.value);
    case Node::Op::x:
      return TaylorSeries2::coordinate_x(c, order);
    case Node::Op::y:
      return TaylorSeries2::coordinate_y(c, order);
    case Node::Op::add:
      return to_series(*n.lhs, c, order) + to_series(*n.rhs, c, order);
    case Node::Op::sub:
      return to_series(*n.lhs, c, order) - to_series(*n.rhs, c, order);
    case Node::Op::mul:
      return multiply(to_series(*n.lhs, c, order), to_series(*n.rhs, c, order), order);
    case Node::Op::div: {
      const Complex d = to_series(*n.rhs, c, 0)[{0, 0}];
      if (d == Complex{}) throw std::domain_error("expression: division by zero");
      return to_series(*n.lhs, c, order) * (1.0 / d);
    }
    case Node::Op::neg:
      return -to_series(*n.lhs, c, order);
    case Node::Op::pow:
      return pow_series(to_series(*n.lhs, c, order), n.exponent, order);
    case Node::Op::sin:
      return sin_series(to_series(*n.lhs, c, order), order);
    case Node::Op::cos:
      return cos_series(to_series(*n.lhs, c, order), order);
    case Node::Op::exp: {
      TaylorSeries2 arg = to_series(*n.lhs, c, order);
      const Complex a0 = arg[{0, 0}];
      arg[{0, 0}] = 0.0;
      return exp_series(arg, order) * std::exp(a0);
    }
  }
  throw std::logic_error("expression: corrupt node");
}

double to_value(const Node& n, Point2 p) {
  switch (n.op) {
    case Node::Op::number:
      return n.value;
    case Node::Op::x:
      return p.x;
    case Node::Op::y:
      return p.y;
    case Node::Op::add:
      return to_value(*n.lhs, p) + to_value(*n.rhs, p);
    case Node::Op::sub:
      return to_value(*n.lhs, p) - to_value(*n.rhs, p);
    case Node::Op::mul:
      return to_value(*n.lhs, p) * to_value(*n.rhs, p);
    case Node::Op::div:
      return to_value(*n.lhs, p) / to_value(*n.rhs, p);
    case Node::Op::neg:
      return -to_value(*n.lhs, p);
    case Node::Op::pow:
      return std::pow(to_value(*n.lhs, p), n.exponent);
    case Node::Op::sin:
      return std::sin(to_value(*n.lhs, p));
    case Node::Op::cos:
      return std::cos(to_value(*n.lhs, p));
    case Node::Op::exp:
      return std::exp(to_value(*n.lhs, p));
  }
  throw std::logic_error("expression: corrupt node");
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  return Expression(Parser(text).parse(), std::string(text));
}

Expression Expression::constant(double value) {
  return Expression(make_number(value), std::to_string(value));
}

TaylorSeries2 Expression::taylor(Point2 center, int order) const {
  return to_series(*root_, center, order);
}

double Expression::evaluate(Point2 p) const { return to_value(*root_, p); }

bool Expression::is_constant() const { return node_is_constant(*root_); }

}  // namespace gpw
