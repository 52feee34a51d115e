#include "mcs/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <utility>

namespace mcs::expr {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kE = 2.718281828459045235360287471352662498;

struct FnInfo {
  const char* name;
  double (*fn)(double);
};

constexpr std::array<FnInfo, 12> kFunctions{{
    {"sin", std::sin},
    {"cos", std::cos},
    {"tan", std::tan},
    {"asin", std::asin},
    {"acos", std::acos},
    {"atan", std::atan},
    {"sinh", std::sinh},
    {"cosh", std::cosh},
    {"exp", std::exp},
    {"log", std::log},
    {"sqrt", std::sqrt},
    {"abs", std::fabs},
}};

const FnInfo* find_function(std::string_view name) {
  for (const auto& f : kFunctions)
    if (name == f.name) return &f;
  return nullptr;
}

bool is_variable(std::string_view name) {
  return name == "x" || name == "y" || name == "r" || name == "theta";
}

} // namespace

struct Expr::Node {
  enum class Tag { Number, Variable, Unary, Binary, Call };
  using Ref = std::shared_ptr<const Node>;

  Tag tag;
  double number = 0.0;
  std::string name;          // Variable
  char op = 0;               // Binary: + - * / ^
  const FnInfo* fn = nullptr; // Call
  Ref a, b;

  static Ref make_number(double v) {
    auto n = std::make_shared<Node>();
    n->tag = Tag::Number;
    n->number = v;
    return n;
  }
  static Ref make_variable(std::string name) {
    auto n = std::make_shared<Node>();
    n->tag = Tag::Variable;
    n->name = std::move(name);
    return n;
  }
  static Ref make_unary(Ref a) {
    auto n = std::make_shared<Node>();
    n->tag = Tag::Unary;
    n->a = std::move(a);
    return n;
  }
  static Ref make_binary(char op, Ref a, Ref b) {
    auto n = std::make_shared<Node>();
    n->tag = Tag::Binary;
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }
  static Ref make_call(const FnInfo* fn, Ref a) {
    auto n = std::make_shared<Node>();
    n->tag = Tag::Call;
    n->fn = fn;
    n->a = std::move(a);
    return n;
  }
};

namespace {

using Node = Expr::Node;
// (accessed via friendship through the parser below)

class Parser {
public:
  explicit Parser(std::string_view src) : src_(src) {}

  std::shared_ptr<const Node> run() {
    auto e = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) error(pos_, "expected end of input");
    return e;
  }

private:
  std::string_view src_;
  size_t pos_ = 0;

  [[noreturn]] void error(size_t at, const std::string& what) {
    fail(ErrorCode::ConfigError, "expression syntax error at offset " +
                                     std::to_string(at) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  std::shared_ptr<const Node> parse_expr() {
    auto lhs = parse_term();
    while (true) {
      if (eat('+')) lhs = Node::make_binary('+', lhs, parse_term());
      else if (eat('-')) lhs = Node::make_binary('-', lhs, parse_term());
      else return lhs;
    }
  }

  std::shared_ptr<const Node> parse_term() {
    auto lhs = parse_factor();
    while (true) {
      if (eat('*')) lhs = Node::make_binary('*', lhs, parse_factor());
      else if (eat('/')) lhs = Node::make_binary('/', lhs, parse_factor());
      else return lhs;
    }
  }

  std::shared_ptr<const Node> parse_factor() {
    if (eat('-')) return Node::make_unary(parse_factor());
    return parse_power();
  }

  std::shared_ptr<const Node> parse_power() {
    auto base = parse_atom();
    if (eat('^')) return Node::make_binary('^', base, parse_factor());
    return base;
  }

  std::shared_ptr<const Node> parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) error(pos_, "expected a value");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = parse_expr();
      if (!eat(')')) error(pos_, "expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return parse_name();
    error(pos_, std::string("unexpected character '") + c + "'");
  }

  std::shared_ptr<const Node> parse_number() {
    const size_t start = pos_;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(src_.data() + pos_,
                                     src_.data() + src_.size(), value);
    if (ec != std::errc()) error(start, "malformed number");
    pos_ = static_cast<size_t>(ptr - src_.data());
    return Node::make_number(value);
  }

  std::shared_ptr<const Node> parse_name() {
    const size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '_'))
      ++pos_;
    const std::string name(src_.substr(start, pos_ - start));
    if (name == "pi") return Node::make_number(kPi);
    if (name == "e") return Node::make_number(kE);
    if (const FnInfo* fn = find_function(name)) {
      if (!eat('(')) error(pos_, "expected '(' after function '" + name + "'");
      auto arg = parse_expr();
      if (!eat(')')) error(pos_, "expected ')'");
      return Node::make_call(fn, arg);
    }
    if (is_variable(name)) {
      if (peek() == '(')
        error(pos_, "'" + name + "' is a variable, not a function");
      return Node::make_variable(name);
    }
    error(start, "unknown identifier '" + name + "'");
  }
};

double eval_node(const Node& n, const Bindings& vars) {
  switch (n.tag) {
  case Node::Tag::Number: return n.number;
  case Node::Tag::Variable: {
    auto it = vars.find(n.name);
    if (it == vars.end())
      fail(ErrorCode::InvalidArgument,
           "expression references unbound variable '" + n.name + "'");
    return it->second;
  }
  case Node::Tag::Unary: return -eval_node(*n.a, vars);
  case Node::Tag::Call: return n.fn->fn(eval_node(*n.a, vars));
  case Node::Tag::Binary: {
    const double a = eval_node(*n.a, vars);
    const double b = eval_node(*n.b, vars);
    switch (n.op) {
    case '+': return a + b;
    case '-': return a - b;
    case '*': return a * b;
    case '/': return a / b;
    case '^': return std::pow(a, b);
    }
    break;
  }
  }
  fail(ErrorCode::InvalidArgument, "corrupt expression node");
}

int precedence(char op) {
  switch (op) {
  case '+':
  case '-': return 1;
  case '*':
  case '/': return 2;
  case '^': return 4;
  }
  return 0;
}

constexpr int kUnaryPrec = 3;

std::string format_number(double v) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

int node_precedence(const Node& n) {
  switch (n.tag) {
  case Node::Tag::Binary: return precedence(n.op);
  case Node::Tag::Unary: return kUnaryPrec;
  default: return 100;
  }
}

void print_node(const Node& n, std::string& out) {
  auto child = [&out](const Node& c, bool need_parens) {
    if (need_parens) out += '(';
    print_node(c, out);
    if (need_parens) out += ')';
  };
  switch (n.tag) {
  case Node::Tag::Number:
    if (n.number < 0 || std::signbit(n.number)) {
      out += '(';
      out += format_number(n.number);
      out += ')';
    } else {
      out += format_number(n.number);
    }
    return;
  case Node::Tag::Variable: out += n.name; return;
  case Node::Tag::Unary:
    out += '-';
    child(*n.a, node_precedence(*n.a) < kUnaryPrec);
    return;
  case Node::Tag::Call:
    out += n.fn->name;
    out += '(';
    print_node(*n.a, out);
    out += ')';
    return;
  case Node::Tag::Binary: {
    const int p = precedence(n.op);
    // Left child: parens when strictly looser, or for the right-associative
    // '^' whose left operand must always be atomic-or-parenthesized.
    const bool lp = n.op == '^' ? node_precedence(*n.a) <= p
                                : node_precedence(*n.a) < p;
    // Right child: '+'/'*' tolerate equal precedence; '-','/' do not.
    bool rp;
    if (n.op == '^') rp = node_precedence(*n.b) < kUnaryPrec;
    else if (n.op == '+' || n.op == '*') rp = node_precedence(*n.b) < p;
    else rp = node_precedence(*n.b) <= p;
    child(*n.a, lp);
    out += n.op;
    child(*n.b, rp);
    return;
  }
  }
}

void collect_variables(const Node& n, std::set<std::string>& out) {
  switch (n.tag) {
  case Node::Tag::Variable: out.insert(n.name); return;
  case Node::Tag::Unary:
  case Node::Tag::Call: collect_variables(*n.a, out); return;
  case Node::Tag::Binary:
    collect_variables(*n.a, out);
    collect_variables(*n.b, out);
    return;
  default: return;
  }
}

} // namespace

double Expr::eval(const Bindings& vars) const {
  if (!root_) fail(ErrorCode::InvalidArgument, "evaluating empty expression");
  return eval_node(*root_, vars);
}

std::string Expr::str() const {
  if (!root_) return "";
  std::string out;
  print_node(*root_, out);
  return out;
}

std::vector<std::string> Expr::variables() const {
  std::set<std::string> vars;
  if (root_) collect_variables(*root_, vars);
  return {vars.begin(), vars.end()};
}

Expr parse(std::string_view src) {
  Parser p(src);
  return Expr(p.run());
}

} // namespace mcs::expr
