#include "gfrac/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace gfrac::expr {

struct Expr::Node {
  NodeKind kind;
  double value = 0.0;  // Constant value or Pow exponent
  Function fn = Function::Exp;
  std::vector<Expr> children;
};

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

constexpr std::pair<std::string_view, Function> kFunctions[] = {
    {"exp", Function::Exp}, {"log", Function::Log},   {"sin", Function::Sin},
    {"cos", Function::Cos}, {"sqrt", Function::Sqrt},
};

}  // namespace

std::string_view function_name(Function f) noexcept {
  for (const auto& [name, fn] : kFunctions) {
    if (fn == f) return name;
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Expr

Expr Expr::constant(double value) {
  return Expr(std::make_shared<const Node>(Node{NodeKind::Constant, value, {}, {}}));
}
Expr Expr::variable() { return Expr(std::make_shared<const Node>(Node{NodeKind::Variable, 0.0, {}, {}})); }
Expr Expr::add(Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(Node{NodeKind::Add, 0.0, {}, {std::move(lhs), std::move(rhs)}}));
}
Expr Expr::sub(Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(Node{NodeKind::Sub, 0.0, {}, {std::move(lhs), std::move(rhs)}}));
}
Expr Expr::mul(Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(Node{NodeKind::Mul, 0.0, {}, {std::move(lhs), std::move(rhs)}}));
}
Expr Expr::div(Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(Node{NodeKind::Div, 0.0, {}, {std::move(lhs), std::move(rhs)}}));
}
Expr Expr::pow(Expr base, double exponent) {
  return Expr(std::make_shared<const Node>(Node{NodeKind::Pow, exponent, {}, {std::move(base)}}));
}
Expr Expr::call(Function fn, Expr arg) {
  return Expr(std::make_shared<const Node>(Node{NodeKind::Call, 0.0, fn, {std::move(arg)}}));
}

NodeKind Expr::kind() const noexcept { return node_->kind; }
double Expr::value() const noexcept { return node_->value; }
double Expr::exponent() const noexcept { return node_->value; }
Function Expr::function() const noexcept { return node_->fn; }

const Expr& Expr::lhs() const {
  if (node_->children.empty()) throw std::logic_error("expression node has no operand");
  return node_->children[0];
}
const Expr& Expr::rhs() const {
  if (node_->children.size() < 2) throw std::logic_error("expression node has no right operand");
  return node_->children[1];
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case NodeKind::Constant:
      return a.value() == b.value();
    case NodeKind::Variable:
      return true;
    case NodeKind::Pow:
      return a.exponent() == b.exponent() && a.lhs() == b.lhs();
    case NodeKind::Call:
      return a.function() == b.function() && a.lhs() == b.lhs();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

// ---------------------------------------------------------------------------
// Errors

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected, std::string found)
    : DomainError("syntax error at offset " + std::to_string(offset) + ": expected " +
                  join(expected) + ", found " + found),
      offset_(offset),
      expected_(std::move(expected)) {}

UnknownFunctionError::UnknownFunctionError(std::string name, std::size_t offset)
    : DomainError("unknown function '" + name + "' at offset " + std::to_string(offset) +
                  " (supported: exp, log, sin, cos, sqrt)"),
      name_(std::move(name)),
      offset_(offset) {}

EvalDomainError::EvalDomainError(std::string subexpression, double x)
    : DomainError("evaluation leaves the real domain in " + subexpression + " at x = " +
                  format_number(x)),
      subexpression_(std::move(subexpression)) {}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr parse_all() {
    skip_ws();
    if (pos_ == src_.size()) fail({"expression"});
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) fail({"'+'", "'-'", "'*'", "'/'", "end of input"});
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string found = pos_ < src_.size() ? "'" + std::string(1, src_[pos_]) + "'" : "end of input";
    throw SyntaxError(pos_, std::move(expected), std::move(found));
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        lhs = Expr::add(lhs, parse_term());
      } else if (peek('-')) {
        ++pos_;
        lhs = Expr::sub(lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        lhs = Expr::mul(lhs, parse_factor());
      } else if (peek('/')) {
        ++pos_;
        lhs = Expr::div(lhs, parse_factor());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_factor() {
    if (peek('-')) {
      ++pos_;
      Expr inner = parse_factor();
      // Negated literals fold into a single constant.
      if (inner.kind() == NodeKind::Constant) return Expr::constant(-inner.value());
      return Expr::mul(Expr::constant(-1.0), inner);
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (peek('^')) {
      ++pos_;
      bool negative = false;
      if (peek('-')) {
        ++pos_;
        negative = true;
      }
      skip_ws();
      double p = 0.0;
      if (!try_number(p)) fail({"number"});
      return Expr::pow(base, negative ? -p : p);
    }
    return base;
  }

  bool try_number(double& out) {
    const std::size_t start = pos_;
    std::size_t i = pos_;
    auto digit = [&](std::size_t k) {
      return k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]));
    };
    bool mantissa = false;
    while (digit(i)) {
      ++i;
      mantissa = true;
    }
    if (i < src_.size() && src_[i] == '.') {
      std::size_t j = i + 1;
      bool frac = false;
      while (digit(j)) {
        ++j;
        frac = true;
      }
      if (mantissa || frac) {
        i = j;
        mantissa = true;
      }
    }
    if (!mantissa) return false;
    // Exponent part only when digits follow, so "2*e" keeps e as a constant.
    if (i < src_.size() && (src_[i] == 'e' || src_[i] == 'E')) {
      std::size_t j = i + 1;
      if (j < src_.size() && (src_[j] == '+' || src_[j] == '-')) ++j;
      if (digit(j)) {
        while (digit(j)) ++j;
        i = j;
      }
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + i, v);
    if (ec != std::errc() || ptr != src_.data() + i || !std::isfinite(v)) {
      pos_ = start;
      fail({"finite number"});
    }
    pos_ = i;
    out = v;
    return true;
  }

  Expr parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail({"number", "'x'", "'pi'", "'e'", "function call", "'('"});
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      if (!peek(')')) fail({"')'", "operator"});
      ++pos_;
      return inner;
    }
    double v = 0.0;
    if (try_number(v)) return Expr::constant(v);
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      std::size_t i = pos_;
      while (i < src_.size() && std::isalnum(static_cast<unsigned char>(src_[i]))) ++i;
      const std::string_view ident = src_.substr(start, i - start);
      pos_ = i;
      if (ident == "x") return Expr::variable();
      if (ident == "pi") return Expr::constant(std::numbers::pi);
      if (ident == "e") return Expr::constant(std::numbers::e);
      for (const auto& [name, fn] : kFunctions) {
        if (ident == name) {
          if (!peek('(')) fail({"'('"});
          ++pos_;
          Expr arg = parse_expr();
          if (!peek(')')) fail({"')'", "operator"});
          ++pos_;
          return Expr::call(fn, arg);
        }
      }
      if (peek('(')) throw UnknownFunctionError(std::string(ident), start);
      pos_ = start;
      fail({"number", "'x'", "'pi'", "'e'", "function call", "'('"});
    }
    fail({"number", "'x'", "'pi'", "'e'", "function call", "'('"});
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view src) { return Parser(src).parse_all(); }

// ---------------------------------------------------------------------------
// Printer

std::string to_string(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::Constant: {
      const double v = e.value();
      return std::signbit(v) ? "(" + format_number(v) + ")" : format_number(v);
    }
    case NodeKind::Variable:
      return "x";
    case NodeKind::Add:
      return "(" + to_string(e.lhs()) + " + " + to_string(e.rhs()) + ")";
    case NodeKind::Sub:
      return "(" + to_string(e.lhs()) + " - " + to_string(e.rhs()) + ")";
    case NodeKind::Mul:
      return "(" + to_string(e.lhs()) + " * " + to_string(e.rhs()) + ")";
    case NodeKind::Div:
      return "(" + to_string(e.lhs()) + " / " + to_string(e.rhs()) + ")";
    case NodeKind::Pow: {
      std::string base = to_string(e.lhs());
      if (e.lhs().kind() == NodeKind::Pow) base = "(" + base + ")";
      return base + "^" + format_number(e.exponent());
    }
    case NodeKind::Call:
      return std::string(function_name(e.function())) + "(" + to_string(e.lhs()) + ")";
  }
  return {};
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double eval_node(const Expr& e, double x) {
  double r = 0.0;
  switch (e.kind()) {
    case NodeKind::Constant:
      return e.value();
    case NodeKind::Variable:
      r = x;
      break;
    case NodeKind::Add:
      r = eval_node(e.lhs(), x) + eval_node(e.rhs(), x);
      break;
    case NodeKind::Sub:
      r = eval_node(e.lhs(), x) - eval_node(e.rhs(), x);
      break;
    case NodeKind::Mul:
      r = eval_node(e.lhs(), x) * eval_node(e.rhs(), x);
      break;
    case NodeKind::Div:
      r = eval_node(e.lhs(), x) / eval_node(e.rhs(), x);
      break;
    case NodeKind::Pow:
      r = std::pow(eval_node(e.lhs(), x), e.exponent());
      break;
    case NodeKind::Call: {
      const double a = eval_node(e.lhs(), x);
      switch (e.function()) {
        case Function::Exp:
          r = std::exp(a);
          break;
        case Function::Log:
          if (!(a > 0.0)) throw EvalDomainError(to_string(e), x);
          r = std::log(a);
          break;
        case Function::Sin:
          r = std::sin(a);
          break;
        case Function::Cos:
          r = std::cos(a);
          break;
        case Function::Sqrt:
          if (a < 0.0) throw EvalDomainError(to_string(e), x);
          r = std::sqrt(a);
          break;
      }
      break;
    }
  }
  if (!std::isfinite(r)) throw EvalDomainError(to_string(e), x);
  return r;
}

}  // namespace

double eval(const Expr& e, double x) { return eval_node(e, x); }

// ---------------------------------------------------------------------------
// Differentiation

namespace {

bool is_const(const Expr& e, double v) {
  return e.kind() == NodeKind::Constant && e.value() == v;
}
bool is_const(const Expr& e) { return e.kind() == NodeKind::Constant; }

// Builders that fold the trivial identities the product and chain rules
// generate; without them the tree grows geometrically with k.
Expr add(const Expr& a, const Expr& b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  if (is_const(a) && is_const(b)) return Expr::constant(a.value() + b.value());
  return Expr::add(a, b);
}
Expr mul(const Expr& a, const Expr& b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return Expr::constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (is_const(a) && is_const(b)) return Expr::constant(a.value() * b.value());
  return Expr::mul(a, b);
}
Expr sub(const Expr& a, const Expr& b) {
  if (is_const(b, 0.0)) return a;
  if (is_const(a) && is_const(b)) return Expr::constant(a.value() - b.value());
  if (is_const(a, 0.0)) return mul(Expr::constant(-1.0), b);
  return Expr::sub(a, b);
}
Expr div(const Expr& a, const Expr& b) {
  if (is_const(a, 0.0)) return Expr::constant(0.0);
  if (is_const(b, 1.0)) return a;
  return Expr::div(a, b);
}
Expr pow(const Expr& base, double p) {
  if (p == 0.0) return Expr::constant(1.0);
  if (p == 1.0) return base;
  return Expr::pow(base, p);
}

Expr derive(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::Constant:
      return Expr::constant(0.0);
    case NodeKind::Variable:
      return Expr::constant(1.0);
    case NodeKind::Add:
      return add(derive(e.lhs()), derive(e.rhs()));
    case NodeKind::Sub:
      return sub(derive(e.lhs()), derive(e.rhs()));
    case NodeKind::Mul:
      return add(mul(derive(e.lhs()), e.rhs()), mul(e.lhs(), derive(e.rhs())));
    case NodeKind::Div:
      return sub(div(derive(e.lhs()), e.rhs()), div(mul(e.lhs(), derive(e.rhs())), pow(e.rhs(), 2.0)));
    case NodeKind::Pow: {
      const double p = e.exponent();
      return mul(mul(Expr::constant(p), pow(e.lhs(), p - 1.0)), derive(e.lhs()));
    }
    case NodeKind::Call: {
      const Expr& a = e.lhs();
      const Expr da = derive(a);
      switch (e.function()) {
        case Function::Exp:
          return mul(e, da);
        case Function::Log:
          return div(da, a);
        case Function::Sin:
          return mul(Expr::call(Function::Cos, a), da);
        case Function::Cos:
          return mul(mul(Expr::constant(-1.0), Expr::call(Function::Sin, a)), da);
        case Function::Sqrt:
          return div(da, mul(Expr::constant(2.0), e));
      }
    }
  }
  return Expr::constant(0.0);
}

}  // namespace

Expr differentiate(const Expr& e, unsigned k) {
  Expr out = e;
  for (unsigned i = 0; i < k; ++i) out = derive(out);
  return out;
}

// ---------------------------------------------------------------------------
// FunctionSpec

FunctionSpec::FunctionSpec(Source src, double lo, double hi) : source_(std::move(src)), lo_(lo), hi_(hi) {
  if (!(lo < hi)) throw DomainError("function domain requires domain_lo < domain_hi");
}

FunctionSpec::FunctionSpec(Expr e, double lo, double hi) : FunctionSpec(Source(std::move(e)), lo, hi) {}

FunctionSpec FunctionSpec::parsed(std::string_view src, double lo, double hi) {
  return FunctionSpec(Source(parse(src)), lo, hi);
}
FunctionSpec FunctionSpec::power(double nu, double lo, double hi) {
  return FunctionSpec(Source(Power{nu}), lo, hi);
}
FunctionSpec FunctionSpec::constant(double c, double lo, double hi) {
  return FunctionSpec(Source(Constant{c}), lo, hi);
}

double FunctionSpec::operator()(double x) const {
  if (const auto* p = std::get_if<Power>(&source_)) return std::pow(x, p->nu);
  if (const auto* c = std::get_if<Constant>(&source_)) return c->c;
  return eval(std::get<Expr>(source_), x);
}

Expr FunctionSpec::as_expr() const {
  if (const auto* p = std::get_if<Power>(&source_)) return Expr::pow(Expr::variable(), p->nu);
  if (const auto* c = std::get_if<Constant>(&source_)) return Expr::constant(c->c);
  return std::get<Expr>(source_);
}

FunctionSpec FunctionSpec::derivative(unsigned k) const {
  if (k == 0) return *this;
  return FunctionSpec(Source(differentiate(as_expr(), k)), lo_, hi_);
}

}  // namespace gfrac::expr
