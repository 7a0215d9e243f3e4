#include "gfrac/operators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "gfrac/specfun.hpp"

namespace gfrac::ops {

namespace {

std::string fmt(double v) { return std::to_string(v); }

EvalResult finite_or_throw(EvalResult r, const char* op) {
  if (!std::isfinite(r.value)) throw DomainError(std::string(op) + ": result is not finite");
  return r;
}

EvalResult scaled(const EvalResult& r, double factor) {
  return EvalResult{factor * r.value, std::fabs(factor) * r.error_estimate, r.levels_used};
}

void check_order(double alpha, const char* op) {
  if (!(alpha > 0.0) || !(alpha <= kMaxOrder)) {
    throw DomainError(std::string(op) + ": order must lie in (0, 3], got " + fmt(alpha));
  }
}

void check_interval(double a, double b, const char* op) {
  if (std::isinf(b)) {
    throw DomainError(std::string(op) +
                      ": Liouville-type operators (b = infinity) are not supported; b must be finite");
  }
  if (!(a >= 0.0) || !(a < b)) {
    throw DomainError(std::string(op) + ": requires 0 <= a < b, got a = " + fmt(a) + ", b = " + fmt(b));
  }
}

// Integrals: x may sit on the base point (value 0).
void check_integral_point(double a, double b, double x, const char* op) {
  if (!(x >= a && x <= b)) {
    throw DomainError(std::string(op) + ": x = " + fmt(x) + " lies outside [a, b]");
  }
}

// Derivatives need room for the difference stencil on both sides.
void check_derivative_point(double a, double b, double x, const char* op) {
  if (!(x > a && x < b)) {
    throw DomainError(std::string(op) + ": x = " + fmt(x) + " must lie strictly inside (a, b)");
  }
}

void check_domain(const expr::FunctionSpec& f, double lo, double hi) {
  if (lo < f.domain_lo() || hi > f.domain_hi()) {
    throw DomainError("function domain [" + fmt(f.domain_lo()) + ", " + fmt(f.domain_hi()) +
                      "] does not cover the integration range [" + fmt(lo) + ", " + fmt(hi) + "]");
  }
}

double side_sign(Side side, unsigned n) { return (side == Side::Right && n % 2 == 1) ? -1.0 : 1.0; }

// Rough bound on how inner quadrature error propagates through an n-th
// difference quotient taken with the final Richardson step.
double propagated_error(double inner_err, unsigned n, const DiffConfig& dcfg) {
  if (inner_err == 0.0) return 0.0;
  const double h_last = dcfg.initial_step / std::ldexp(1.0, dcfg.richardson_levels - 1);
  return inner_err * std::pow(2.0 / h_last, static_cast<double>(n));
}

// Generalized integral of order mu > 0. With base = a (left) or b (right),
// tau^rho = base^rho (1 + u E), E = (x/base)^rho - 1, maps u in [0, 1] onto
// the integration range with the kernel singularity at u = 1:
//   I = ((|x^rho - base^rho|) / rho)^mu / Gamma(mu) * int_0^1 (1-u)^{mu-1} f(tau(u)) du.
// expm1/log1p keep the map accurate as rho -> 0.
EvalResult generalized_integral(double mu, double rho, double a, double b, Side side,
                                const RealFunction& f, double x, const QuadratureConfig& cfg) {
  const double base = side == Side::Left ? a : b;
  if (x == base) return {};
  double scale = 0.0;
  RealFunction h;
  if (side == Side::Left && a == 0.0) {
    scale = std::pow(x, rho) / rho;
    const double inv_rho = 1.0 / rho;
    h = [&f, x, inv_rho](double u) { return f(x * std::pow(u, inv_rho)); };
  } else {
    const double e = std::expm1(rho * std::log(x / base));
    scale = std::pow(base, rho) * std::fabs(e) / rho;
    h = [&f, base, e, rho](double u) { return f(base * std::exp(std::log1p(u * e) / rho)); };
  }
  const EvalResult j = quad::jacobi_weighted_integral(h, mu, cfg);
  return scaled(j, std::pow(scale, mu) * specfun::reciprocal_gamma(mu));
}

EvalResult rl_integral_impl(double mu, double a, double b, Side side, const RealFunction& f, double x,
                            const QuadratureConfig& cfg) {
  RealFunction h;
  double length = 0.0;
  if (side == Side::Left) {
    length = x - a;
    h = [&f, a, length](double u) { return f(a + length * u); };
  } else {
    length = b - x;
    h = [&f, b, length](double u) { return f(b - length * u); };
  }
  if (length == 0.0) return {};
  const EvalResult j = quad::jacobi_weighted_integral(h, mu, cfg);
  return scaled(j, std::pow(length, mu) * specfun::reciprocal_gamma(mu));
}

EvalResult hadamard_integral_impl(double mu, double a, double b, Side side, const RealFunction& f,
                                  double x, const QuadratureConfig& cfg) {
  RealFunction h;
  double span = 0.0;
  if (side == Side::Left) {
    span = std::log(x / a);
    h = [&f, a, span](double u) { return f(a * std::exp(u * span)); };
  } else {
    span = std::log(b / x);
    h = [&f, b, span](double u) { return f(b * std::exp(-u * span)); };
  }
  if (span == 0.0) return {};
  const EvalResult j = quad::jacobi_weighted_integral(h, mu, cfg);
  return scaled(j, std::pow(span, mu) * specfun::reciprocal_gamma(mu));
}

// Left-sided Erdelyi-Kober integral. With r = (a/x)^rho the normalisation
// x^{-rho(alpha+eta)} (x^rho - a^rho)^alpha tau^{rho eta} collapses to
// (1 - r)^alpha (r + u (1 - r))^eta.
EvalResult ek_integral_impl(double mu, double rho, double eta, double a, const RealFunction& f, double x,
                            const QuadratureConfig& cfg) {
  if (x == a) return {};
  RealFunction h;
  double factor = specfun::reciprocal_gamma(mu);
  if (a == 0.0) {
    const double inv_rho = 1.0 / rho;
    h = [&f, x, inv_rho, eta](double u) { return std::pow(u, eta) * f(x * std::pow(u, inv_rho)); };
  } else {
    const double log_ratio = rho * std::log(a / x);
    const double r = std::exp(log_ratio);
    const double one_minus_r = -std::expm1(log_ratio);
    const double e = std::expm1(rho * std::log(x / a));
    factor *= std::pow(one_minus_r, mu);
    h = [&f, a, e, rho, r, one_minus_r, eta](double u) {
      return std::pow(r + u * one_minus_r, eta) * f(a * std::exp(std::log1p(u * e) / rho));
    };
  }
  const EvalResult j = quad::jacobi_weighted_integral(h, mu, cfg);
  return scaled(j, factor);
}

}  // namespace

// ---------------------------------------------------------------------------

unsigned OperatorParams::n() const { return static_cast<unsigned>(std::ceil(alpha)); }

void OperatorParams::validate() const {
  check_order(alpha, "operator");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("operator: rho must be positive, got " + fmt(rho));
  check_interval(a, b, "operator");
}

EvalResult gfi(const OperatorParams& p, const RealFunction& f, double x, const QuadratureConfig& cfg) {
  p.validate();
  check_integral_point(p.a, p.b, x, "gfi");
  return finite_or_throw(generalized_integral(p.alpha, p.rho, p.a, p.b, p.side, f, x, cfg), "gfi");
}

EvalResult gfi(const OperatorParams& p, const expr::FunctionSpec& f, double x, const QuadratureConfig& cfg) {
  if (p.side == Side::Left) {
    check_domain(f, p.a, x);
  } else {
    check_domain(f, x, p.b);
  }
  return gfi(p, RealFunction(f), x, cfg);
}

EvalResult gfd(const OperatorParams& p, const RealFunction& f, double x, const QuadratureConfig& qcfg,
               const DiffConfig& dcfg) {
  p.validate();
  check_derivative_point(p.a, p.b, x, "gfd");
  const unsigned n = p.n();
  const double inner_order = n - p.alpha;

  double inner_err = 0.0;
  RealFunction g = f;
  if (inner_order > 0.0) {
    g = [&](double t) {
      const EvalResult r = generalized_integral(inner_order, p.rho, p.a, p.b, p.side, f, t, qcfg);
      inner_err = std::max(inner_err, r.error_estimate);
      return r.value;
    };
  }
  const EvalResult d = quad::nth_delta_derivative(g, p.rho, n, x, p.a, p.b, dcfg);
  EvalResult r{side_sign(p.side, n) * d.value, d.error_estimate + propagated_error(inner_err, n, dcfg),
               d.levels_used};
  return finite_or_throw(r, "gfd");
}

EvalResult gfd(const OperatorParams& p, const expr::FunctionSpec& f, double x, const QuadratureConfig& qcfg,
               const DiffConfig& dcfg) {
  if (p.side == Side::Left) {
    check_domain(f, p.a, x);
  } else {
    check_domain(f, x, p.b);
  }
  return gfd(p, RealFunction(f), x, qcfg, dcfg);
}

EvalResult caputo_gfd(const OperatorParams& p, const expr::FunctionSpec& f, double x,
                      const QuadratureConfig& qcfg, const DiffConfig& dcfg) {
  p.validate();
  const unsigned n = p.n();
  const double base = p.side == Side::Left ? p.a : p.b;

  // Taylor coefficients f^(k)(base) / k!, k < n.
  std::vector<double> taylor(n);
  double factorial = 1.0;
  for (unsigned k = 0; k < n; ++k) {
    if (k > 0) factorial *= k;
    taylor[k] = f.derivative(k)(base) / factorial;
  }
  const RealFunction remainder = [&](double t) {
    double poly = 0.0;
    for (unsigned k = n; k-- > 0;) poly = poly * (t - base) + taylor[k];
    return f(t) - poly;
  };
  if (p.side == Side::Left) {
    check_domain(f, p.a, x);
  } else {
    check_domain(f, x, p.b);
  }
  return gfd(p, remainder, x, qcfg, dcfg);
}

EvalResult nfold_oracle(unsigned n, double rho, double a, const RealFunction& f, double x,
                        const QuadratureConfig& cfg) {
  if (n < 1 || n > 3) throw DomainError("nfold_oracle: n must be 1, 2 or 3");
  if (!(rho > 0.0)) throw DomainError("nfold_oracle: rho must be positive");
  if (!(a >= 0.0) || !(a < x)) throw DomainError("nfold_oracle: requires 0 <= a < x");

  double inner_err = 0.0;
  std::function<double(unsigned, double)> level = [&](unsigned k, double t) -> double {
    if (k == 0) return f(t);
    if (t <= a) return 0.0;
    const EvalResult r = quad::adaptive_integral(
        [&](double s) { return std::pow(s, rho - 1.0) * level(k - 1, s); }, a, t, cfg);
    inner_err = std::max(inner_err, r.error_estimate);
    return r.value;
  };
  const EvalResult outer = quad::adaptive_integral(
      [&](double s) { return std::pow(s, rho - 1.0) * level(n - 1, s); }, a, x, cfg);
  // Each inner error is integrated against the t^{rho-1} weight of the outer level.
  const double weight_mass = (std::pow(x, rho) - std::pow(a, rho)) / rho;
  EvalResult r{outer.value, outer.error_estimate + weight_mass * inner_err, outer.levels_used};
  return finite_or_throw(r, "nfold_oracle");
}

// ---------------------------------------------------------------------------

EvalResult rl_integral(double alpha, double a, double b, Side side, const RealFunction& f, double x,
                       const QuadratureConfig& cfg) {
  check_order(alpha, "rl_integral");
  check_interval(a, b, "rl_integral");
  check_integral_point(a, b, x, "rl_integral");
  return finite_or_throw(rl_integral_impl(alpha, a, b, side, f, x, cfg), "rl_integral");
}

EvalResult rl_derivative(double alpha, double a, double b, Side side, const RealFunction& f, double x,
                         const QuadratureConfig& qcfg, const DiffConfig& dcfg) {
  check_order(alpha, "rl_derivative");
  check_interval(a, b, "rl_derivative");
  check_derivative_point(a, b, x, "rl_derivative");
  const unsigned n = static_cast<unsigned>(std::ceil(alpha));
  const double inner_order = n - alpha;

  double inner_err = 0.0;
  RealFunction g = f;
  if (inner_order > 0.0) {
    g = [&](double t) {
      const EvalResult r = rl_integral_impl(inner_order, a, b, side, f, t, qcfg);
      inner_err = std::max(inner_err, r.error_estimate);
      return r.value;
    };
  }
  const EvalResult d = quad::nth_derivative(g, n, x, a, b, dcfg);
  EvalResult r{side_sign(side, n) * d.value, d.error_estimate + propagated_error(inner_err, n, dcfg),
               d.levels_used};
  return finite_or_throw(r, "rl_derivative");
}

EvalResult hadamard_integral(double alpha, double a, double b, Side side, const RealFunction& f, double x,
                             const QuadratureConfig& cfg) {
  check_order(alpha, "hadamard_integral");
  check_interval(a, b, "hadamard_integral");
  if (!(a > 0.0)) throw DomainError("hadamard_integral: requires a > 0");
  check_integral_point(a, b, x, "hadamard_integral");
  return finite_or_throw(hadamard_integral_impl(alpha, a, b, side, f, x, cfg), "hadamard_integral");
}

EvalResult hadamard_derivative(double alpha, double a, double b, Side side, const RealFunction& f,
                               double x, const QuadratureConfig& qcfg, const DiffConfig& dcfg) {
  check_order(alpha, "hadamard_derivative");
  check_interval(a, b, "hadamard_derivative");
  if (!(a > 0.0)) throw DomainError("hadamard_derivative: requires a > 0");
  check_derivative_point(a, b, x, "hadamard_derivative");
  const unsigned n = static_cast<unsigned>(std::ceil(alpha));
  const double inner_order = n - alpha;

  double inner_err = 0.0;
  // x d/dx is d/dy under y = log x.
  const RealFunction in_log = [&](double y) {
    const double t = std::exp(y);
    if (inner_order == 0.0) return f(t);
    const EvalResult r = hadamard_integral_impl(inner_order, a, b, side, f, t, qcfg);
    inner_err = std::max(inner_err, r.error_estimate);
    return r.value;
  };
  const EvalResult d = quad::nth_derivative(in_log, n, std::log(x), std::log(a), std::log(b), dcfg);
  EvalResult r{side_sign(side, n) * d.value, d.error_estimate + propagated_error(inner_err, n, dcfg),
               d.levels_used};
  return finite_or_throw(r, "hadamard_derivative");
}

// ---------------------------------------------------------------------------

namespace {

void validate_ek(const EKParams& p, const char* op) {
  p.base.validate();
  if (p.base.side != Side::Left) {
    throw DomainError(std::string(op) + ": only the left-sided Erdelyi-Kober operator is defined");
  }
  if (!std::isfinite(p.eta)) throw DomainError(std::string(op) + ": eta must be finite");
}

}  // namespace

EvalResult ek_integral(const EKParams& p, const RealFunction& f, double x, const QuadratureConfig& cfg) {
  validate_ek(p, "ek_integral");
  check_integral_point(p.base.a, p.base.b, x, "ek_integral");
  return finite_or_throw(ek_integral_impl(p.base.alpha, p.base.rho, p.eta, p.base.a, f, x, cfg),
                         "ek_integral");
}

EvalResult ek_derivative(const EKParams& p, const RealFunction& f, double x, const QuadratureConfig& qcfg,
                         const DiffConfig& dcfg) {
  validate_ek(p, "ek_derivative");
  const OperatorParams& base = p.base;
  check_derivative_point(base.a, base.b, x, "ek_derivative");
  const unsigned n = base.n();
  const double inner_order = n - base.alpha;
  const double inner_eta = p.eta + base.alpha;
  const double lift = base.rho * (n + p.eta);

  double inner_err = 0.0;
  const RealFunction g = [&](double t) {
    double inner = 0.0;
    if (inner_order == 0.0) {
      inner = f(t);
    } else {
      const EvalResult r = ek_integral_impl(inner_order, base.rho, inner_eta, base.a, f, t, qcfg);
      inner_err = std::max(inner_err, r.error_estimate * std::pow(t, lift));
      inner = r.value;
    }
    return std::pow(t, lift) * inner;
  };
  // (1/(rho x^{rho-1})) d/dx = rho^{-1} (x^{1-rho} d/dx).
  const EvalResult d = quad::nth_delta_derivative(g, base.rho, n, x, base.a, base.b, dcfg);
  const double factor = std::pow(x, -base.rho * p.eta) * std::pow(base.rho, -static_cast<double>(n));
  EvalResult r{factor * d.value,
               std::fabs(factor) * (d.error_estimate + propagated_error(inner_err, n, dcfg)), d.levels_used};
  return finite_or_throw(r, "ek_derivative");
}

}  // namespace gfrac::ops
