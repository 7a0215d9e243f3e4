#pragma once

#include <functional>

#include "gfrac/errors.hpp"

namespace gfrac::quad {

using RealFunction = std::function<double(double)>;

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_levels = 12;
  /// Number of tanh-sinh intervals at the coarsest level (each level halves
  /// the step).
  int base_nodes = 32;

  void validate() const;
};

struct DiffConfig {
  /// Starting step in the differentiation variable (y = x^rho / rho).
  double initial_step = 1e-2;
  int richardson_levels = 4;

  void validate() const;
};

struct EvalResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int levels_used = 0;
};

/// Quadrature ran out of refinement levels; best() holds the last estimate.
class NoConvergence : public Error {
 public:
  NoConvergence(const char* what, EvalResult best) : Error(what), best_(best) {}
  const EvalResult& best() const noexcept { return best_; }

 private:
  EvalResult best_;
};

/// A finite-difference stencil cannot fit inside the function's domain
/// (the step would have to shrink below 1e-8).
class DomainClipped : public DomainError {
 public:
  using DomainError::DomainError;
};

/// \int_0^1 (1-u)^{mu-1} h(u) du for mu > 0.
///
/// Tanh-sinh rule whose nodes carry u and 1-u separately, so the Jacobi
/// weight is evaluated without cancellation however close to u = 1 the node
/// sits. h(1) is subtracted from the integrand and integrated analytically,
/// which keeps the rule accurate for tiny mu where almost all the weight mass
/// concentrates at u = 1. Endpoint singularities of h at u = 0 are handled
/// by the double-exponential decay of the weights.
///
/// Levels halve the step until two successive estimates differ by less than
/// max(rel_tol |I|, abs_tol); throws NoConvergence otherwise.
EvalResult jacobi_weighted_integral(const RealFunction& h, double mu,
                                    const QuadratureConfig& cfg = {});

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [lo, hi]; at
/// most 2000 panels, NoConvergence beyond that. max_levels is not used here.
EvalResult adaptive_integral(const RealFunction& f, double lo, double hi,
                             const QuadratureConfig& cfg = {});

/// n-th derivative of g at x by central differences with Richardson
/// extrapolation. The stencil stays inside [lo, hi]; the starting step is
/// min(initial_step, d / (4n)) where d is the distance from x to the nearer
/// bound, so singular behaviour at an endpoint stays well resolved.
EvalResult nth_derivative(const RealFunction& g, unsigned n, double x, double lo, double hi,
                          const DiffConfig& cfg = {});

/// (x^{1-rho} d/dx)^n g evaluated at x > 0.
///
/// Under y = x^rho / rho the operator is exactly d/dy, so this is
/// nth_derivative of y -> g((rho y)^{1/rho}) at y = x^rho / rho, with the
/// x-domain [lo, hi] mapped the same way. With rho == 1 it is bitwise
/// identical to nth_derivative(g, n, x, lo, hi).
EvalResult nth_delta_derivative(const RealFunction& g, double rho, unsigned n, double x,
                                double lo, double hi, const DiffConfig& cfg = {});

}  // namespace gfrac::quad
