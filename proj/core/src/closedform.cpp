#include "gfrac/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gfrac/errors.hpp"
#include "gfrac/specfun.hpp"

namespace gfrac::closedform {

namespace {

// Gamma(num) / Gamma(den) for num > 0, with 1/Gamma(den) = 0 at the poles.
double gamma_ratio(double num, double den) {
  const double nearest = std::round(den);
  if (den <= 0.0 && std::fabs(den - nearest) <= 1e-12 * std::max(1.0, std::fabs(den))) return 0.0;
  if (num < 170.0 && den < 170.0) return specfun::gamma(num) * specfun::reciprocal_gamma(den);
  if (den > 0.0) return std::exp(specfun::log_gamma(num) - specfun::log_gamma(den));
  throw DomainError("gamma ratio out of range");
}

void check(double alpha, double rho, double nu, const char* op) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError(std::string(op) + ": alpha must be positive");
  }
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError(std::string(op) + ": rho must be positive");
  if (!std::isfinite(nu) || !(1.0 + nu / rho > 0.0)) {
    throw DomainError(std::string(op) + ": requires nu > -rho, got nu = " + std::to_string(nu));
  }
}

}  // namespace

double PowerTerm::operator()(double x) const { return coefficient * std::pow(x, exponent); }

PowerTerm gfi_power(double alpha, double rho, double nu) {
  check(alpha, rho, nu, "gfi_power");
  const double s = 1.0 + nu / rho;
  return {std::pow(rho, -alpha) * gamma_ratio(s, s + alpha), nu + alpha * rho};
}

PowerTerm gfd_power(double alpha, double rho, double nu) {
  check(alpha, rho, nu, "gfd_power");
  const double s = 1.0 + nu / rho;
  const double p = kPrefactorPowerIsAlpha ? alpha : alpha - 1.0;
  return {std::pow(rho, p) * gamma_ratio(s, s - alpha), nu - alpha * rho};
}

PowerTerm rl_der_power(double alpha, double nu) {
  if (!(nu > -1.0)) throw DomainError("rl_der_power: requires nu > -1");
  return gfd_power(alpha, 1.0, nu);
}

PowerTerm apply_gfi(double alpha, double rho, const PowerTerm& t) {
  const PowerTerm r = gfi_power(alpha, rho, t.exponent);
  return {t.coefficient * r.coefficient, r.exponent};
}

PowerTerm apply_gfd(double alpha, double rho, const PowerTerm& t) {
  const PowerTerm r = gfd_power(alpha, rho, t.exponent);
  return {t.coefficient * r.coefficient, r.exponent};
}

}  // namespace gfrac::closedform
