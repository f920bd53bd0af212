#include "lieflow/fieldexpr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

namespace lieflow {

struct Expr::Node {
  enum class Kind { constant, variable, parameter, unary, binary };
  enum class Var { t, x1, x2, x3 };
  enum class Fn { negate, sin, cos, exp, log, sqrt, abs };
  enum class Op { add, sub, mul, div, pow };

  Kind kind = Kind::constant;
  std::size_t pos = 0;
  double value = 0.0;       // constant
  Var var = Var::t;         // variable
  std::string param;        // parameter
  Fn fn = Fn::negate;       // unary
  Op op = Op::add;          // binary
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

constexpr std::array<std::pair<std::string_view, Node::Fn>, 6> kFunctions{{
    {"sin", Node::Fn::sin},
    {"cos", Node::Fn::cos},
    {"exp", Node::Fn::exp},
    {"log", Node::Fn::log},
    {"sqrt", Node::Fn::sqrt},
    {"abs", Node::Fn::abs},
}};

const char* fn_name(Node::Fn f) {
  switch (f) {
    case Node::Fn::negate: return "-";
    case Node::Fn::sin: return "sin";
    case Node::Fn::cos: return "cos";
    case Node::Fn::exp: return "exp";
    case Node::Fn::log: return "log";
    case Node::Fn::sqrt: return "sqrt";
    case Node::Fn::abs: return "abs";
  }
  return "?";
}

char op_char(Node::Op o) {
  switch (o) {
    case Node::Op::add: return '+';
    case Node::Op::sub: return '-';
    case Node::Op::mul: return '*';
    case Node::Op::div: return '/';
    case Node::Op::pow: return '^';
  }
  return '?';
}

struct Token {
  enum class Kind { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };
  Kind kind = Kind::end;
  std::size_t pos = 0;
  double value = 0.0;
  std::string_view text{};
};

Token make_token(Token::Kind kind, std::size_t pos) {
  Token t;
  t.kind = kind;
  t.pos = pos;
  return t;
}

// Thrown internally by the parser; converted to a ParseError at the boundary.
struct ParseFail {
  ParseError error;
};

[[noreturn]] void fail(std::size_t pos, std::string message, std::string expected) {
  throw ParseFail{ParseError{pos, std::move(message), std::move(expected)}};
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ >= src_.size()) return make_token(Token::Kind::end, src_.size());
    const std::size_t start = pos_;
    const char c = src_[pos_];
    switch (c) {
      case '+': ++pos_; return make_token(Token::Kind::plus, start);
      case '-': ++pos_; return make_token(Token::Kind::minus, start);
      case '*': ++pos_; return make_token(Token::Kind::star, start);
      case '/': ++pos_; return make_token(Token::Kind::slash, start);
      case '^': ++pos_; return make_token(Token::Kind::caret, start);
      case '(': ++pos_; return make_token(Token::Kind::lparen, start);
      case ')': ++pos_; return make_token(Token::Kind::rparen, start);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      return lex_number(start);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      Token t = make_token(Token::Kind::ident, start);
      t.text = src_.substr(start, pos_ - start);
      return t;
    }
    fail(start, std::string("unexpected character '") + c + "'",
         "digit, identifier, operator, or parenthesis");
  }

 private:
  Token lex_number(std::size_t start) {
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // 'e' belongs to a following identifier, not this literal
      }
    }
    const std::string_view text = src_.substr(start, pos_ - start);
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(value))
      fail(start, "malformed numeric literal '" + std::string(text) + "'", "numeric literal");
    Token t = make_token(Token::Kind::number, start);
    t.value = value;
    t.text = text;
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::string_view src, std::span<const std::string> params)
      : lexer_(src), params_(params) {
    advance();
  }

  NodePtr run() {
    NodePtr e = expression();
    if (cur_.kind != Token::Kind::end)
      fail(cur_.pos, "trailing input after expression", "end of input");
    return e;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  bool at(Token::Kind k) const { return cur_.kind == k; }

  NodePtr expression() {
    NodePtr lhs = term();
    while (at(Token::Kind::plus) || at(Token::Kind::minus)) {
      const auto op = at(Token::Kind::plus) ? Node::Op::add : Node::Op::sub;
      const std::size_t pos = cur_.pos;
      advance();
      lhs = binary(op, pos, lhs, term());
    }
    return lhs;
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (at(Token::Kind::star) || at(Token::Kind::slash)) {
      const auto op = at(Token::Kind::star) ? Node::Op::mul : Node::Op::div;
      const std::size_t pos = cur_.pos;
      advance();
      lhs = binary(op, pos, lhs, unary());
    }
    return lhs;
  }

  NodePtr unary() {
    if (at(Token::Kind::minus)) {
      const std::size_t pos = cur_.pos;
      advance();
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::unary;
      n->fn = Node::Fn::negate;
      n->pos = pos;
      n->lhs = unary();
      return n;
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (at(Token::Kind::caret)) {
      const std::size_t pos = cur_.pos;
      advance();
      return binary(Node::Op::pow, pos, base, unary());  // right-associative
    }
    return base;
  }

  NodePtr primary() {
    switch (cur_.kind) {
      case Token::Kind::number: {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::constant;
        n->value = cur_.value;
        n->pos = cur_.pos;
        advance();
        return n;
      }
      case Token::Kind::lparen: {
        advance();
        NodePtr inner = expression();
        if (!at(Token::Kind::rparen))
          fail(cur_.pos, "unbalanced parenthesis", "')'");
        advance();
        return inner;
      }
      case Token::Kind::ident:
        return identifier();
      case Token::Kind::end:
        fail(cur_.pos, "unexpected end of input",
             "number, variable, parameter, function, '-' or '('");
      default:
        fail(cur_.pos, "unexpected token",
             "number, variable, parameter, function, '-' or '('");
    }
  }

  NodePtr identifier() {
    const Token tok = cur_;
    advance();
    for (const auto& [name, fn] : kFunctions) {
      if (tok.text == name) {
        if (!at(Token::Kind::lparen))
          fail(cur_.pos, "expected '(' after function '" + std::string(name) + "'", "'('");
        advance();
        NodePtr arg = expression();
        if (!at(Token::Kind::rparen))
          fail(cur_.pos, "unbalanced parenthesis in function argument", "')'");
        advance();
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::unary;
        n->fn = fn;
        n->pos = tok.pos;
        n->lhs = arg;
        return n;
      }
    }
    auto n = std::make_shared<Node>();
    n->pos = tok.pos;
    if (tok.text == "t") {
      n->kind = Node::Kind::variable;
      n->var = Node::Var::t;
      return n;
    }
    if (tok.text == "x1" || tok.text == "x2" || tok.text == "x3") {
      n->kind = Node::Kind::variable;
      n->var = tok.text == "x1" ? Node::Var::x1 : (tok.text == "x2" ? Node::Var::x2 : Node::Var::x3);
      return n;
    }
    if (std::find(params_.begin(), params_.end(), tok.text) != params_.end()) {
      n->kind = Node::Kind::parameter;
      n->param = std::string(tok.text);
      return n;
    }
    fail(tok.pos, "unknown identifier '" + std::string(tok.text) + "'",
         "t, x1, x2, x3, a function name, or a declared parameter");
  }

  static NodePtr binary(Node::Op op, std::size_t pos, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::binary;
    n->op = op;
    n->pos = pos;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
  }

  Lexer lexer_;
  std::span<const std::string> params_;
  Token cur_{};
};

double eval_node(const Node& n, double t, const Vec3& x,
                 const std::map<std::string, double>& params) {
  switch (n.kind) {
    case Node::Kind::constant:
      return n.value;
    case Node::Kind::variable:
      switch (n.var) {
        case Node::Var::t: return t;
        case Node::Var::x1: return x.x;
        case Node::Var::x2: return x.y;
        case Node::Var::x3: return x.z;
      }
      return 0.0;
    case Node::Kind::parameter: {
      const auto it = params.find(n.param);
      if (it == params.end())
        throw ExprError("unbound parameter '" + n.param + "'", n.pos);
      return it->second;
    }
    case Node::Kind::unary: {
      const double a = eval_node(*n.lhs, t, x, params);
      double r = 0.0;
      switch (n.fn) {
        case Node::Fn::negate: r = -a; break;
        case Node::Fn::sin: r = std::sin(a); break;
        case Node::Fn::cos: r = std::cos(a); break;
        case Node::Fn::exp: r = std::exp(a); break;
        case Node::Fn::log:
          if (a <= 0.0) throw ExprError("log of non-positive value", n.pos);
          r = std::log(a);
          break;
        case Node::Fn::sqrt:
          if (a < 0.0) throw ExprError("square root of negative value", n.pos);
          r = std::sqrt(a);
          break;
        case Node::Fn::abs: r = std::fabs(a); break;
      }
      if (!std::isfinite(r))
        throw ExprError(std::string("non-finite result in '") + fn_name(n.fn) + "'", n.pos);
      return r;
    }
    case Node::Kind::binary: {
      const double a = eval_node(*n.lhs, t, x, params);
      const double b = eval_node(*n.rhs, t, x, params);
      double r = 0.0;
      switch (n.op) {
        case Node::Op::add: r = a + b; break;
        case Node::Op::sub: r = a - b; break;
        case Node::Op::mul: r = a * b; break;
        case Node::Op::div: r = a / b; break;
        case Node::Op::pow: r = std::pow(a, b); break;
      }
      if (!std::isfinite(r))
        throw ExprError(std::string("non-finite result in '") + op_char(n.op) + "'", n.pos);
      return r;
    }
  }
  return 0.0;
}

// Printing precedence levels; a child is parenthesised when its level is
// below the level its grammar slot requires.
int node_prec(const Node& n) {
  switch (n.kind) {
    case Node::Kind::binary:
      switch (n.op) {
        case Node::Op::add:
        case Node::Op::sub: return 1;
        case Node::Op::mul:
        case Node::Op::div: return 2;
        case Node::Op::pow: return 4;
      }
      return 1;
    case Node::Kind::unary:
      return n.fn == Node::Fn::negate ? 3 : 5;
    default:
      return 5;
  }
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void print_node(const Node& n, int required, std::string& out) {
  const int prec = node_prec(n);
  const bool parens = prec < required;
  if (parens) out += '(';
  switch (n.kind) {
    case Node::Kind::constant:
      out += format_double(n.value);
      break;
    case Node::Kind::variable:
      switch (n.var) {
        case Node::Var::t: out += 't'; break;
        case Node::Var::x1: out += "x1"; break;
        case Node::Var::x2: out += "x2"; break;
        case Node::Var::x3: out += "x3"; break;
      }
      break;
    case Node::Kind::parameter:
      out += n.param;
      break;
    case Node::Kind::unary:
      if (n.fn == Node::Fn::negate) {
        out += '-';
        print_node(*n.lhs, 3, out);
      } else {
        out += fn_name(n.fn);
        out += '(';
        print_node(*n.lhs, 0, out);
        out += ')';
      }
      break;
    case Node::Kind::binary: {
      // Left-associative operators reuse their own level on the left and
      // require one higher on the right; '^' takes a primary on the left
      // and a unary on the right.
      int left_req = prec, right_req = prec + 1;
      if (n.op == Node::Op::pow) {
        left_req = 5;
        right_req = 3;
      }
      print_node(*n.lhs, left_req, out);
      out += op_char(n.op);
      print_node(*n.rhs, right_req, out);
      break;
    }
  }
  if (parens) out += ')';
}

bool nodes_equal(const Node* a, const Node* b) {
  if (a == nullptr || b == nullptr) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Node::Kind::constant:
      return a->value == b->value;
    case Node::Kind::variable:
      return a->var == b->var;
    case Node::Kind::parameter:
      return a->param == b->param;
    case Node::Kind::unary:
      return a->fn == b->fn && nodes_equal(a->lhs.get(), b->lhs.get());
    case Node::Kind::binary:
      return a->op == b->op && nodes_equal(a->lhs.get(), b->lhs.get()) &&
             nodes_equal(a->rhs.get(), b->rhs.get());
  }
  return false;
}

}  // namespace

double Expr::evaluate(double t, const Vec3& x,
                      const std::map<std::string, double>& params) const {
  if (!root_) throw ExprError("empty expression", 0);
  return eval_node(*root_, t, x, params);
}

std::string Expr::to_string() const {
  if (!root_) return {};
  std::string out;
  print_node(*root_, 0, out);
  return out;
}

bool Expr::same_structure(const Expr& other) const {
  return nodes_equal(root_.get(), other.root_.get());
}

ParseResult parse(std::string_view src, std::span<const std::string> param_names) {
  try {
    if (src.empty())
      return ParseError{0, "empty expression", "number, variable, parameter, function, '-' or '('"};
    Parser p(src, param_names);
    return Expr(p.run());
  } catch (const ParseFail& f) {
    return f.error;
  }
}

Expr parse_or_throw(std::string_view src, std::span<const std::string> param_names) {
  ParseResult r = parse(src, param_names);
  if (!parse_ok(r))
    throw std::invalid_argument("expression '" + std::string(src) + "' failed to parse at offset " +
                                std::to_string(parse_error(r).position) + ": " +
                                parse_error(r).message);
  return parsed(r);
}

}  // namespace lieflow
