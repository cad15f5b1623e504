#include "mwcalc/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <vector>

namespace mwcalc {
namespace {

struct Node {
  enum class Kind { constant, variable, unary, binary, call };
  Kind kind;
  double value = 0.0;       // constant
  int coord = 0;            // variable: flat coordinate
  char op = 0;              // unary/binary operator
  std::string fname;        // call
  std::unique_ptr<Node> a, b;

  double eval(const Point& x) const {
    switch (kind) {
      case Kind::constant: return value;
      case Kind::variable: return x.flat(coord);
      case Kind::unary: return -a->eval(x);
      case Kind::binary: {
        const double u = a->eval(x), v = b->eval(x);
        switch (op) {
          case '+': return u + v;
          case '-': return u - v;
          case '*': return u * v;
          case '/': return u / v;
          case '^': return std::pow(u, v);
        }
        return 0.0;
      }
      case Kind::call: {
        const double u = a->eval(x);
        if (fname == "sin") return std::sin(u);
        if (fname == "cos") return std::cos(u);
        if (fname == "exp") return std::exp(u);
        if (fname == "sqrt") return std::sqrt(u);
        return std::abs(u);  // abs
      }
    }
    return 0.0;
  }
};

using NodePtr = std::unique_ptr<Node>;

class Parser {
public:
  Parser(IndexShape shape, const std::string& text) : shape_(shape), s_(text) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

private:
  IndexShape shape_;
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) {
    throw ConfigError("expression: " + why + " at offset " + std::to_string(pos_));
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
    return false;
  }

  NodePtr expr() {  // + -
    NodePtr lhs = term();
    for (;;) {
      if (eat('+')) lhs = binary('+', std::move(lhs), term());
      else if (eat('-')) lhs = binary('-', std::move(lhs), term());
      else return lhs;
    }
  }
  NodePtr term() {  // * /
    NodePtr lhs = power();
    for (;;) {
      if (eat('*')) lhs = binary('*', std::move(lhs), power());
      else if (eat('/')) lhs = binary('/', std::move(lhs), power());
      else return lhs;
    }
  }
  NodePtr power() {  // ^, right associative
    NodePtr base = unary();
    if (eat('^')) return binary('^', std::move(base), power());
    return base;
  }
  NodePtr unary() {
    if (eat('-')) {
      auto n = std::make_unique<Node>();
      n->kind = Node::Kind::unary;
      n->op = '-';
      n->a = unary();
      return n;
    }
    return atom();
  }
  NodePtr atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return ident();
    fail("unexpected character");
  }
  NodePtr number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("bad number");
    pos_ += static_cast<std::size_t>(end - begin);
    auto n = std::make_unique<Node>();
    n->kind = Node::Kind::constant;
    n->value = v;
    return n;
  }
  NodePtr ident() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name = s_.substr(start, pos_ - start);
    if (name == "pi") {
      auto n = std::make_unique<Node>();
      n->kind = Node::Kind::constant;
      n->value = 3.14159265358979323846;
      return n;
    }
    if (name == "sin" || name == "cos" || name == "exp" || name == "sqrt" || name == "abs") {
      if (!eat('(')) fail("expected '(' after function name");
      auto n = std::make_unique<Node>();
      n->kind = Node::Kind::call;
      n->fname = name;
      n->a = expr();
      if (!eat(')')) fail("expected ')'");
      return n;
    }
    if (name.size() >= 2 && name[0] == 'x') {
      // x<group> or x<group>_<coord>, 1-based.
      const std::size_t us = name.find('_');
      int g = 0, k = 1;
      try {
        if (us == std::string::npos) {
          g = std::stoi(name.substr(1));
        } else {
          g = std::stoi(name.substr(1, us - 1));
          k = std::stoi(name.substr(us + 1));
        }
      } catch (const std::exception&) {
        fail("bad variable '" + name + "'");
      }
      if (g < 1 || g > shape_.groups || k < 1 || k > shape_.dims) {
        fail("variable '" + name + "' out of range for the configured shape");
      }
      auto n = std::make_unique<Node>();
      n->kind = Node::Kind::variable;
      n->coord = (g - 1) * shape_.dims + (k - 1);
      return n;
    }
    fail("unknown identifier '" + name + "'");
  }
  NodePtr binary(char op, NodePtr a, NodePtr b) {
    auto n = std::make_unique<Node>();
    n->kind = Node::Kind::binary;
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }
};

}  // namespace

ScalarField parse_expression_field(IndexShape shape, const std::string& text) {
  require_valid(shape);
  Parser parser(shape, text);
  std::shared_ptr<Node> root{parser.parse().release()};
  ScalarField f;
  f.shape = shape;
  f.eval = [root](const Point& x) { return root->eval(x); };
  f.smoothness = ScalarField::Smoothness::black_box;
  return f;
}

}  // namespace mwcalc
