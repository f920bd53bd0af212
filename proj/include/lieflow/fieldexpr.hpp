#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "lieflow/linalg.hpp"

namespace lieflow {

/// Positioned syntax error.  `position` is the 0-based character offset into
/// the source; `expected` names the token class the parser was looking for.
struct ParseError {
  std::size_t position = 0;
  std::string message;
  std::string expected;
};

/// Evaluation failure (unbound parameter, domain violation, non-finite
/// intermediate).  Carries the offset of the offending node.
class ExprError : public std::runtime_error {
 public:
  ExprError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Immutable expression tree over the variables t, x1, x2, x3, named
/// parameters, numeric literals, + - * / ^ (right-associative ^, with
/// precedence ^ > unary minus > * / > + -) and the functions
/// sin cos exp log sqrt abs.
class Expr {
 public:
  Expr() = default;

  bool valid() const { return root_ != nullptr; }

  /// Evaluates at (t, x) with the given parameter bindings.  Throws
  /// ExprError on unbound parameters and on any node whose result is not a
  /// finite IEEE double (log of non-positive, negative square root, 0 raised
  /// to a negative power, division by zero, overflow).
  double evaluate(double t, const Vec3& x,
                  const std::map<std::string, double>& params = {}) const;

  /// Renders the tree with minimal parentheses; parsing the result yields a
  /// structurally identical tree.
  std::string to_string() const;

  bool same_structure(const Expr& other) const;

  struct Node;  // opaque outside the implementation

  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  const Node* root() const { return root_.get(); }

 private:
  std::shared_ptr<const Node> root_;
};

using ParseResult = std::variant<Expr, ParseError>;

/// Parses `src`.  Identifiers other than the coordinate variables and
/// function names must appear in `param_names`, otherwise the result is a
/// ParseError ("unknown identifier") at the identifier's offset.  Never
/// throws on malformed input; every failure is a positioned ParseError.
ParseResult parse(std::string_view src,
                  std::span<const std::string> param_names = {});

inline bool parse_ok(const ParseResult& r) { return std::holds_alternative<Expr>(r); }
inline const Expr& parsed(const ParseResult& r) { return std::get<Expr>(r); }
inline const ParseError& parse_error(const ParseResult& r) { return std::get<ParseError>(r); }

/// Convenience for trusted sources (tests, built-in suites): parses and
/// throws std::invalid_argument if the source does not parse.
Expr parse_or_throw(std::string_view src,
                    std::span<const std::string> param_names = {});

}  // namespace lieflow
