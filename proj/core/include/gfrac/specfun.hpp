#pragma once

#include "gfrac/errors.hpp"

namespace gfrac::specfun {

class SpecFunDomainError : public DomainError {
 public:
  enum class Kind { NonPositiveGammaPole, Overflow };

  SpecFunDomainError(Kind kind, double argument);

  Kind kind() const noexcept { return kind_; }
  double argument() const noexcept { return argument_; }

 private:
  Kind kind_;
  double argument_;
};

/// Gamma function on the real line, excluding the poles {0, -1, -2, ...}.
///
/// Lanczos approximation with g = 6.024680040776729583740234375 and the
/// 13-term rational coefficient set used by CPython's math module (itself
/// taken from Boost's lanczos13m53). Integer arguments up to 23 are returned
/// exactly from a factorial table; negative arguments go through the
/// reflection formula. Relative error is a few ulp on [0.01, 170].
///
/// Throws SpecFunDomainError on a pole or when the result overflows a double
/// (z > 171.6...).
double gamma(double z);

/// ln Gamma(z) for z > 0. Finite for every finite positive z.
double log_gamma(double z);

/// Beta function B(p, q) = Gamma(p) Gamma(q) / Gamma(p + q), p, q > 0.
/// Evaluated in log space, so it stays finite where the individual Gamma
/// values overflow. Symmetric in (p, q) bit for bit.
double beta(double p, double q);

/// 1 / Gamma(z), defined on the whole real line (zero at the poles).
/// Underflows to zero rather than throwing for large z.
double reciprocal_gamma(double z);

}  // namespace gfrac::specfun
