#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mcs/errors.hpp"

namespace mcs::expr {

using Bindings = std::map<std::string, double, std::less<>>;

// Immutable arithmetic expression over the variables x, y, r, theta.
//
// Grammar (whitespace-insensitive):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?          (right-associative)
//   atom   := number | name | name '(' expr ')' | '(' expr ')'
//
// Names are the variables, the constants pi and e (folded to literals at
// parse time), and the functions sin cos tan asin acos atan sinh cosh exp
// log sqrt abs. Unary minus binds more loosely than '^', so -x^2 == -(x^2).
class Expr {
public:
  Expr() = default;

  bool valid() const { return root_ != nullptr; }

  // Evaluates with the given variable bindings; referencing a variable that
  // is not bound raises InvalidArgument. Out-of-domain math (log of a
  // negative number, ...) follows IEEE semantics and yields NaN/Inf.
  double eval(const Bindings& vars) const;

  // Canonical text form; parsing it back yields an equivalent expression.
  std::string str() const;

  // Distinct variables referenced, sorted.
  std::vector<std::string> variables() const;

  struct Node; // exposed for the implementation; not part of the API

private:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;

  friend Expr parse(std::string_view src);
};

// Parses `src`; syntax problems raise ConfigError with the byte offset and
// what was expected.
Expr parse(std::string_view src);

} // namespace mcs::expr
