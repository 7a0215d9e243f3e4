#pragma once

// Residual checks for the operator identities, and the weighted X^p_c norm.

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "gfrac/expr.hpp"
#include "gfrac/operators.hpp"

namespace gfrac::props {

using ops::OperatorParams;
using quad::DiffConfig;
using quad::QuadratureConfig;

struct Report {
  std::string identity_name;
  std::vector<double> grid;
  /// One per grid point; +inf where the evaluation failed.
  std::vector<double> residuals;
  double tolerance = 0.0;
  bool pass = false;
  OperatorParams params;
  /// Parameters that don't fit OperatorParams (beta, n, ...), in insertion order.
  std::vector<std::pair<std::string, double>> extra;
  /// Empty unless something threw.
  std::string diagnostic;

  double max_residual() const;
  /// One JSON object, numbers with 17 significant digits.
  std::string to_json() const;
};

inline constexpr double kIntegralTol = 1e-8;
inline constexpr double kDerivativeTol = 1e-5;

/// 8 Chebyshev points in [a + 0.1(b-a), b - 0.1(b-a)], ascending.
std::vector<double> default_grid(double a, double b, unsigned count = 8);

/// |D^alpha I^alpha f - f| on the grid. Requires 0 < alpha < 1 and a > 0
/// (a report with a diagnostic is returned for a <= 0).
Report verify_inverse(const expr::FunctionSpec& f, const OperatorParams& p,
                      const std::vector<double>& grid, double tol = kDerivativeTol,
                      const QuadratureConfig& qcfg = {}, const DiffConfig& dcfg = {});

/// |D^alpha I^beta f - I^{beta-alpha} f| with p.alpha = alpha; requires
/// 0 < alpha < beta < 1 (DomainError otherwise).
Report verify_composition(const expr::FunctionSpec& f, const OperatorParams& p, double beta,
                          const std::vector<double>& grid, double tol = kDerivativeTol,
                          const QuadratureConfig& qcfg = {}, const DiffConfig& dcfg = {});

/// rho = 1 against the Riemann-Liouville code path: first the integrals,
/// then the derivatives.
std::pair<Report, Report> verify_rl_limit(const expr::FunctionSpec& f, const OperatorParams& p,
                                          const std::vector<double>& grid,
                                          double int_tol = kIntegralTol,
                                          double der_tol = kDerivativeTol,
                                          const QuadratureConfig& qcfg = {},
                                          const DiffConfig& dcfg = {});

/// For each rho (descending) the largest deviation of the generalized
/// integral and derivative from the Hadamard ones over the grid. The report's
/// grid holds the rho values; it passes iff the residuals strictly decrease
/// and the last is <= final_tol.
Report verify_hadamard_limit(const expr::FunctionSpec& f, const OperatorParams& p,
                             const std::vector<double>& grid, const std::vector<double>& rhos,
                             double final_tol = 1e-2, const QuadratureConfig& qcfg = {},
                             const DiffConfig& dcfg = {});

/// |I^n f - nfold_oracle(n)| for n in {1, 2, 3}.
Report verify_nfold(const expr::FunctionSpec& f, unsigned n, double rho, double a,
                    const std::vector<double>& grid, double tol = 1e-7,
                    const QuadratureConfig& qcfg = {});

inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

/// (int_a^b |t^c f(t)|^p dt/t)^{1/p}; p = kInfNorm gives sup |t^c f(t)|
/// by sampling.
double xpc_norm(const quad::RealFunction& f, double p, double c, double a, double b,
                const QuadratureConfig& cfg = {});

}  // namespace gfrac::props
