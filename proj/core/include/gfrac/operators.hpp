#pragma once

// Fractional integral and derivative operators on a finite interval [a, b].
//
// The generalized family
//
//   (I^alpha_{a+} f)(x) = rho^{1-alpha}/Gamma(alpha)
//                         * int_a^x tau^{rho-1} f(tau) (x^rho - tau^rho)^{alpha-1} dtau
//   (D^alpha_{a+} f)(x) = (x^{1-rho} d/dx)^n (I^{n-alpha}_{a+} f)(x),  n = ceil(alpha)
//
// and the right-sided mirrors, together with the classical special cases
// (Riemann-Liouville at rho = 1, Hadamard as rho -> 0+, Erdelyi-Kober,
// Caputo-type) as independent code paths.
//
// Every integral is reduced to int_0^1 (1-u)^{mu-1} h(u) du by a change of
// variables that puts the kernel singularity at u = 1; every derivative is a
// finite difference in the variable y for which the outer operator becomes
// d/dy (y = x^rho/rho for the generalized family, y = log x for Hadamard).

#include "gfrac/expr.hpp"
#include "gfrac/quad.hpp"

namespace gfrac::ops {

using quad::DiffConfig;
using quad::EvalResult;
using quad::QuadratureConfig;
using quad::RealFunction;

enum class Side { Left, Right };

/// Orders are restricted to (0, kMaxOrder] so finite-difference noise in the
/// n-th derivative stays controllable.
inline constexpr double kMaxOrder = 3.0;

struct OperatorParams {
  double alpha = 0.5;
  double rho = 1.0;
  double a = 0.0;
  double b = 1.0;
  Side side = Side::Left;

  /// n = ceil(alpha).
  unsigned n() const;
  /// Throws DomainError unless 0 < alpha <= kMaxOrder, rho > 0 and
  /// 0 <= a < b < infinity.
  void validate() const;
};

struct EKParams {
  OperatorParams base;
  double eta = 0.0;
};

// Generalized operators ------------------------------------------------------

EvalResult gfi(const OperatorParams& p, const RealFunction& f, double x,
               const QuadratureConfig& cfg = {});
EvalResult gfi(const OperatorParams& p, const expr::FunctionSpec& f, double x,
               const QuadratureConfig& cfg = {});

EvalResult gfd(const OperatorParams& p, const RealFunction& f, double x,
               const QuadratureConfig& qcfg = {}, const DiffConfig& dcfg = {});
EvalResult gfd(const OperatorParams& p, const expr::FunctionSpec& f, double x,
               const QuadratureConfig& qcfg = {}, const DiffConfig& dcfg = {});

/// Caputo-type derivative: gfd of f minus its Taylor polynomial of degree
/// n-1 (about a for the left side, about b for the right side).
EvalResult caputo_gfd(const OperatorParams& p, const expr::FunctionSpec& f, double x,
                      const QuadratureConfig& qcfg = {}, const DiffConfig& dcfg = {});

/// The n-fold integral
///   int_a^x t1^{rho-1} dt1 int_a^{t1} t2^{rho-1} dt2 ... int_a^{t_{n-1}} tn^{rho-1} f(tn) dtn
/// by nested adaptive quadrature (n <= 3).
EvalResult nfold_oracle(unsigned n, double rho, double a, const RealFunction& f, double x,
                        const QuadratureConfig& cfg = {});

// Riemann-Liouville ----------------------------------------------------------

EvalResult rl_integral(double alpha, double a, double b, Side side, const RealFunction& f, double x,
                       const QuadratureConfig& cfg = {});
EvalResult rl_derivative(double alpha, double a, double b, Side side, const RealFunction& f,
                         double x, const QuadratureConfig& qcfg = {}, const DiffConfig& dcfg = {});

// Hadamard (a > 0) -----------------------------------------------------------

EvalResult hadamard_integral(double alpha, double a, double b, Side side, const RealFunction& f,
                             double x, const QuadratureConfig& cfg = {});
/// (x d/dx)^n applied to the Hadamard integral of order n - alpha; the
/// kernel exponent of the expanded form is n - alpha - 1.
EvalResult hadamard_derivative(double alpha, double a, double b, Side side, const RealFunction& f,
                               double x, const QuadratureConfig& qcfg = {},
                               const DiffConfig& dcfg = {});

// Erdelyi-Kober (left-sided) -------------------------------------------------

EvalResult ek_integral(const EKParams& p, const RealFunction& f, double x,
                       const QuadratureConfig& cfg = {});
/// x^{-rho eta} (1/(rho x^{rho-1}) d/dx)^n x^{rho(n+eta)} (I^{n-alpha}_{rho, eta+alpha} f)(x)
EvalResult ek_derivative(const EKParams& p, const RealFunction& f, double x,
                         const QuadratureConfig& qcfg = {}, const DiffConfig& dcfg = {});

}  // namespace gfrac::ops
