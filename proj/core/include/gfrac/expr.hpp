#pragma once

// A small expression language for real test functions f(x).
//
//   expr   := term (("+"|"-") term)* ;
//   term   := factor (("*"|"/") factor)* ;
//   factor := "-" factor | power ;
//   power  := atom ("^" ["-"] number)? ;
//   atom   := number | "x" | "pi" | "e" | ident "(" expr ")" | "(" expr ")" ;
//   ident  := "exp" | "log" | "sin" | "cos" | "sqrt" ;
//
// Exponents are real literals, so the language is closed under symbolic
// differentiation without a general power rule.

#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gfrac/errors.hpp"

namespace gfrac::expr {

enum class NodeKind { Constant, Variable, Add, Sub, Mul, Div, Pow, Call };
enum class Function { Exp, Log, Sin, Cos, Sqrt };

std::string_view function_name(Function f) noexcept;

/// Immutable expression tree with value semantics; copies share nodes.
class Expr {
 public:
  static Expr constant(double value);
  static Expr variable();
  static Expr add(Expr lhs, Expr rhs);
  static Expr sub(Expr lhs, Expr rhs);
  static Expr mul(Expr lhs, Expr rhs);
  static Expr div(Expr lhs, Expr rhs);
  static Expr pow(Expr base, double exponent);
  static Expr call(Function fn, Expr arg);

  NodeKind kind() const noexcept;
  /// Constant value; only meaningful for NodeKind::Constant.
  double value() const noexcept;
  /// Literal exponent; only meaningful for NodeKind::Pow.
  double exponent() const noexcept;
  /// Only meaningful for NodeKind::Call.
  Function function() const noexcept;
  /// Left operand, Pow base or Call argument.
  const Expr& lhs() const;
  /// Right operand of a binary node.
  const Expr& rhs() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class SyntaxError : public DomainError {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected, std::string found);
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnknownFunctionError : public DomainError {
 public:
  UnknownFunctionError(std::string name, std::size_t offset);
  const std::string& name() const noexcept { return name_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string name_;
  std::size_t offset_;
};

/// Evaluation left the real domain (log of a nonpositive value, division by
/// zero, overflow...). Carries the offending sub-expression in canonical form.
class EvalDomainError : public DomainError {
 public:
  EvalDomainError(std::string subexpression, double x);
  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string subexpression_;
};

Expr parse(std::string_view src);

/// Canonical form: every binary node parenthesized, negative constants
/// parenthesized, 17 significant digits. parse(to_string(e)) == e.
std::string to_string(const Expr& e);

double eval(const Expr& e, double x);

/// k-th symbolic derivative with respect to x; k == 0 returns e unchanged.
Expr differentiate(const Expr& e, unsigned k = 1);

/// A real function on [domain_lo, domain_hi]: a parsed expression or one of
/// the builtins x^nu and c.
class FunctionSpec {
 public:
  struct Power {
    double nu;
  };
  struct Constant {
    double c;
  };
  using Source = std::variant<Expr, Power, Constant>;

  static constexpr double kInf = std::numeric_limits<double>::infinity();

  FunctionSpec(Expr e, double lo = -kInf, double hi = kInf);
  static FunctionSpec parsed(std::string_view src, double lo = -kInf, double hi = kInf);
  static FunctionSpec power(double nu, double lo = 0.0, double hi = kInf);
  static FunctionSpec constant(double c, double lo = -kInf, double hi = kInf);

  double operator()(double x) const;

  const Source& source() const noexcept { return source_; }
  double domain_lo() const noexcept { return lo_; }
  double domain_hi() const noexcept { return hi_; }

  /// Expression equivalent of the source (builtins expand to x^nu and c).
  Expr as_expr() const;
  /// k-th derivative over the same domain.
  FunctionSpec derivative(unsigned k) const;

 private:
  FunctionSpec(Source src, double lo, double hi);
  Source source_;
  double lo_;
  double hi_;
};

}  // namespace gfrac::expr
