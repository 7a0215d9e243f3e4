#pragma once

// Power rules for the generalized operators with base point a = 0.

namespace gfrac::closedform {

/// x -> coefficient * x^exponent
struct PowerTerm {
  double coefficient = 0.0;
  double exponent = 0.0;

  double operator()(double x) const;
};

/// Power of rho in the derivative rule rho^p Gamma(1+nu/rho) / Gamma(1+nu/rho-alpha).
/// p = alpha; the numeric derivative separates it from p = alpha - 1 by a
/// factor of rho, and only p = alpha makes gfd_power invert gfi_power.
inline constexpr bool kPrefactorPowerIsAlpha = true;

/// I^alpha x^nu = rho^{-alpha} Gamma(1+nu/rho) / Gamma(1+nu/rho+alpha) x^{nu+alpha rho}.
/// Throws DomainError unless alpha > 0, rho > 0 and nu > -rho.
PowerTerm gfi_power(double alpha, double rho, double nu);

/// D^alpha x^nu = rho^alpha Gamma(1+nu/rho) / Gamma(1+nu/rho-alpha) x^{nu-alpha rho}.
/// The coefficient is 0 when 1+nu/rho-alpha is a pole of Gamma.
PowerTerm gfd_power(double alpha, double rho, double nu);

/// Riemann-Liouville rule, same as gfd_power(alpha, 1, nu). Requires nu > -1.
PowerTerm rl_der_power(double alpha, double nu);

/// Applies the rule for a monomial input: c x^e -> c * rule(e).
PowerTerm apply_gfi(double alpha, double rho, const PowerTerm& t);
PowerTerm apply_gfd(double alpha, double rho, const PowerTerm& t);

}  // namespace gfrac::closedform
