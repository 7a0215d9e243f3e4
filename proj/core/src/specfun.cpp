#include "gfrac/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace gfrac::specfun {

namespace {

// Lanczos sum as a rational function, N = 13 and g = 6.0246800407767296: the
// coefficient set of Boost's lanczos13m53, as used by CPython's math.gamma.
// Agrees with 30-digit references to about 5e-17 relative on [0.5, 20].
constexpr int kLanczosN = 13;
constexpr double kLanczosG = 6.024680040776729583740234375;
constexpr double kLanczosGMinusHalf = 5.524680040776729583740234375;

constexpr std::array<double, kLanczosN> kLanczosNum = {
    23531376880.410759688572007674451636754734846804940,
    42919803642.649098768957899047001988850926355848959,
    35711959237.355668049440185451547166705960488635843,
    17921034426.037209699919755754458931112671403265390,
    6039542586.3520280050642916443072979210699388420708,
    1439720407.3117216736632230727949123939715485786772,
    248874557.86205415651146038641322942321632125127801,
    31426415.585400194380614231628318205362874684987640,
    2876370.6289353724412254090516208496135991145378768,
    186056.26539522349504029498971604569928220784236328,
    8071.6720023658162106380029022722506138218516325024,
    210.82427775157934587250973392071336271166969580291,
    2.5066282746310002701649081771338373386264310793408,
};

// Coefficients of z (z+1) ... (z+11).
constexpr std::array<double, kLanczosN> kLanczosDen = {
    0.0,        39916800.0, 120543840.0, 150917976.0, 105258076.0,
    45995730.0, 13339535.0, 2637558.0,   357423.0,    32670.0,
    1925.0,     66.0,       1.0,
};

constexpr int kExactFactorials = 23;
constexpr std::array<double, kExactFactorials> kFactorials = {
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
    6402373705728000.0,
    121645100408832000.0,
    2432902008176640000.0,
    51090942171709440000.0,
    1124000727777607680000.0,
};

// Largest argument whose Gamma value is a finite double.
constexpr double kGammaMaxArg = 171.61447887182298;

// Rational Lanczos sum for x > 0; Horner in 1/x for large x so the
// degree-12 polynomials never overflow.
double lanczos_sum(double x) {
  double num = 0.0;
  double den = 0.0;
  if (x < 5.0) {
    for (int i = kLanczosN - 1; i >= 0; --i) {
      num = num * x + kLanczosNum[i];
      den = den * x + kLanczosDen[i];
    }
  } else {
    for (int i = 0; i < kLanczosN; ++i) {
      num = num / x + kLanczosNum[i];
      den = den / x + kLanczosDen[i];
    }
  }
  return num / den;
}

// sin(pi x) with exact argument reduction.
double sinpi(double x) {
  const double y = std::fabs(x);
  double r = std::fmod(y, 2.0);
  const int quadrant = static_cast<int>(std::round(2.0 * r));
  double s = 0.0;
  switch (quadrant) {
    case 0:
      s = std::sin(std::numbers::pi * r);
      break;
    case 1:
      s = std::cos(std::numbers::pi * (r - 0.5));
      break;
    case 2:
      s = std::sin(std::numbers::pi * (1.0 - r));
      break;
    case 3:
      s = -std::cos(std::numbers::pi * (r - 1.5));
      break;
    default:  // r rounded up to 2
      s = std::sin(std::numbers::pi * (r - 2.0));
      break;
  }
  return std::copysign(1.0, x) * s;
}

bool is_nonpositive_integer(double z) { return z <= 0.0 && z == std::floor(z); }

// Gamma for x > 0 (no range checks).
double gamma_positive(double x) {
  if (x == std::floor(x) && x <= kExactFactorials) {
    return kFactorials[static_cast<std::size_t>(x) - 1];
  }
  if (x < 1e-20) return 1.0 / x;

  // y = x + g - 1/2 is rounded; the correction term accounts for the
  // rounding error in y.
  const double y = x + kLanczosGMinusHalf;
  double correction = 0.0;
  if (x > kLanczosGMinusHalf) {
    const double q = y - x;
    correction = q - kLanczosGMinusHalf;
  } else {
    const double q = y - kLanczosGMinusHalf;
    correction = q - x;
  }
  correction = correction * kLanczosG / y;

  double r = lanczos_sum(x) / std::exp(y);
  r += correction * r;
  if (x > 140.0) {
    const double sqrtpow = std::pow(y, x / 2.0 - 0.25);
    r *= sqrtpow;
    r *= sqrtpow;
  } else {
    r *= std::pow(y, x - 0.5);
  }
  return r;
}

}  // namespace

SpecFunDomainError::SpecFunDomainError(Kind kind, double argument)
    : DomainError(kind == Kind::NonPositiveGammaPole
                      ? "gamma: pole at nonpositive integer " + std::to_string(argument)
                      : "gamma: result overflows at argument " + std::to_string(argument)),
      kind_(kind),
      argument_(argument) {}

double gamma(double z) {
  if (std::isnan(z)) throw DomainError("gamma: NaN argument");
  if (is_nonpositive_integer(z)) {
    throw SpecFunDomainError(SpecFunDomainError::Kind::NonPositiveGammaPole, z);
  }
  if (z > kGammaMaxArg) {
    throw SpecFunDomainError(SpecFunDomainError::Kind::Overflow, z);
  }
  if (z > 0.0) return gamma_positive(z);

  // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
  const double reflected = 1.0 - z;
  if (reflected > kGammaMaxArg) {
    // |Gamma(z)| underflows; keep the sign.
    return std::copysign(0.0, sinpi(z));
  }
  return std::numbers::pi / (sinpi(z) * gamma_positive(reflected));
}

double log_gamma(double z) {
  if (!(z > 0.0)) {
    throw DomainError("log_gamma: argument must be positive, got " + std::to_string(z));
  }
  if (std::isinf(z)) return z;
  if (z == 1.0 || z == 2.0) return 0.0;
  if (z < 1e-20) return -std::log(z);
  double r = std::log(lanczos_sum(z)) - kLanczosG;
  r += (z - 0.5) * (std::log(z + kLanczosGMinusHalf) - 1.0);
  return r;
}

double beta(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) {
    throw DomainError("beta: arguments must be positive");
  }
  // p + q and lg(p) + lg(q) are both commutative in IEEE arithmetic.
  return std::exp(log_gamma(p) + log_gamma(q) - log_gamma(p + q));
}

double reciprocal_gamma(double z) {
  if (std::isnan(z)) throw DomainError("reciprocal_gamma: NaN argument");
  if (is_nonpositive_integer(z)) return 0.0;
  if (z > kGammaMaxArg) return std::exp(-log_gamma(z));
  if (z > 0.0) return 1.0 / gamma_positive(z);
  const double reflected = 1.0 - z;
  if (reflected > kGammaMaxArg) {
    return sinpi(z) * std::exp(log_gamma(reflected)) / std::numbers::pi;
  }
  return sinpi(z) * gamma_positive(reflected) / std::numbers::pi;
}

}  // namespace gfrac::specfun
