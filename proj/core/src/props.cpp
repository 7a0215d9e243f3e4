#include "gfrac/props.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <thread>

namespace gfrac::props {

namespace {

std::string num(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string list(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + num(v[i]);
  return out + "]";
}

std::string describe(const expr::FunctionSpec& f) { return expr::to_string(f.as_expr()); }

// Residuals at every grid point, computed concurrently. Failures become +inf
// and the lowest-index message ends up in `diagnostic`, so the result does not
// depend on scheduling.
template <class Fn>
std::vector<double> evaluate_grid(const std::vector<double>& grid, const Fn& fn, std::string& diagnostic) {
  std::vector<double> out(grid.size(), 0.0);
  std::vector<std::string> errors(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < grid.size();) {
      try {
        out[i] = fn(grid[i]);
        if (std::isnan(out[i])) throw Error("residual is NaN");
      } catch (const std::exception& e) {
        out[i] = std::numeric_limits<double>::infinity();
        errors[i] = e.what();
      }
    }
  };
  const std::size_t n_threads =
      std::min<std::size_t>(grid.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!errors[i].empty()) {
      diagnostic = "x = " + num(grid[i]) + ": " + errors[i];
      break;
    }
  }
  return out;
}

void finish(Report& r) { r.pass = r.diagnostic.empty() && r.max_residual() <= r.tolerance; }

Report unsupported(Report r, const std::string& why) {
  r.residuals.assign(r.grid.size(), std::numeric_limits<double>::infinity());
  r.diagnostic = why;
  r.pass = false;
  return r;
}

// Integrals that feed a numeric derivative are computed tighter than the
// outer tolerance so their noise stays below the difference quotient's.
QuadratureConfig inner_config(QuadratureConfig cfg) {
  cfg.rel_tol = std::max(1e-13, cfg.rel_tol * 1e-2);
  cfg.abs_tol = std::max(1e-15, cfg.abs_tol * 1e-2);
  return cfg;
}

}  // namespace

double Report::max_residual() const {
  double m = 0.0;
  for (const double r : residuals) m = std::max(m, r);
  return m;
}

std::string Report::to_json() const {
  std::string out = "{\"identity_name\":" + quoted(identity_name);
  out += ",\"params\":{\"alpha\":" + num(params.alpha) + ",\"rho\":" + num(params.rho) +
         ",\"a\":" + num(params.a) + ",\"b\":" + num(params.b) + ",\"side\":" +
         (params.side == ops::Side::Left ? "\"left\"" : "\"right\"");
  for (const auto& [k, v] : extra) out += "," + quoted(k) + ":" + num(v);
  out += "},\"grid\":" + list(grid) + ",\"residuals\":" + list(residuals);
  out += ",\"tolerance\":" + num(tolerance) + ",\"pass\":" + (pass ? "true" : "false");
  if (!diagnostic.empty()) out += ",\"diagnostic\":" + quoted(diagnostic);
  return out + "}";
}

std::vector<double> default_grid(double a, double b, unsigned count) {
  const double lo = a + 0.1 * (b - a);
  const double hi = b - 0.1 * (b - a);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  std::vector<double> g(count);
  for (unsigned k = 0; k < count; ++k) {
    // k = 0 is the largest node; fill from the back to get ascending order.
    g[count - 1 - k] = mid + half * std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * count));
  }
  return g;
}

Report verify_inverse(const expr::FunctionSpec& f, const OperatorParams& p, const std::vector<double>& grid,
                      double tol, const QuadratureConfig& qcfg, const DiffConfig& dcfg) {
  Report r{"inverse: D^alpha I^alpha f = f, f = " + describe(f), grid, {}, tol, false, p, {}, {}};
  if (!(p.alpha > 0.0 && p.alpha < 1.0)) throw DomainError("verify_inverse: requires 0 < alpha < 1");
  if (!(p.a > 0.0)) return unsupported(r, "verify_inverse: a = 0 is not supported (the identity needs a > 0)");
  const QuadratureConfig inner = inner_config(qcfg);
  r.residuals = evaluate_grid(
      grid,
      [&](double x) {
        const quad::RealFunction integral = [&](double t) { return ops::gfi(p, f, t, inner).value; };
        return std::fabs(ops::gfd(p, integral, x, qcfg, dcfg).value - f(x));
      },
      r.diagnostic);
  finish(r);
  return r;
}

Report verify_composition(const expr::FunctionSpec& f, const OperatorParams& p, double beta,
                          const std::vector<double>& grid, double tol, const QuadratureConfig& qcfg,
                          const DiffConfig& dcfg) {
  if (!(p.alpha > 0.0 && p.alpha < beta && beta < 1.0)) {
    throw DomainError("verify_composition: requires 0 < alpha < beta < 1");
  }
  Report r{"composition: D^alpha I^beta f = I^(beta-alpha) f, f = " + describe(f), grid, {}, tol, false, p,
           {{"beta", beta}}, {}};
  if (!(p.a > 0.0)) {
    return unsupported(r, "verify_composition: a = 0 is not supported (the identity needs a > 0)");
  }
  OperatorParams pb = p;
  pb.alpha = beta;
  OperatorParams pd = p;
  pd.alpha = beta - p.alpha;
  const QuadratureConfig inner = inner_config(qcfg);
  r.residuals = evaluate_grid(
      grid,
      [&](double x) {
        const quad::RealFunction integral = [&](double t) { return ops::gfi(pb, f, t, inner).value; };
        const double lhs = ops::gfd(p, integral, x, qcfg, dcfg).value;
        return std::fabs(lhs - ops::gfi(pd, f, x, qcfg).value);
      },
      r.diagnostic);
  finish(r);
  return r;
}

std::pair<Report, Report> verify_rl_limit(const expr::FunctionSpec& f, const OperatorParams& p,
                                          const std::vector<double>& grid, double int_tol, double der_tol,
                                          const QuadratureConfig& qcfg, const DiffConfig& dcfg) {
  OperatorParams q = p;
  q.rho = 1.0;
  const std::string fs = describe(f);
  Report ri{"rl limit (integral): gfi at rho = 1 vs Riemann-Liouville, f = " + fs, grid, {}, int_tol,
            false, q, {}, {}};
  ri.residuals = evaluate_grid(
      grid,
      [&](double x) {
        return std::fabs(ops::gfi(q, f, x, qcfg).value -
                         ops::rl_integral(q.alpha, q.a, q.b, q.side, f, x, qcfg).value);
      },
      ri.diagnostic);
  finish(ri);

  Report rd{"rl limit (derivative): gfd at rho = 1 vs Riemann-Liouville, f = " + fs, grid, {}, der_tol,
            false, q, {}, {}};
  rd.residuals = evaluate_grid(
      grid,
      [&](double x) {
        return std::fabs(ops::gfd(q, f, x, qcfg, dcfg).value -
                         ops::rl_derivative(q.alpha, q.a, q.b, q.side, f, x, qcfg, dcfg).value);
      },
      rd.diagnostic);
  finish(rd);
  return {ri, rd};
}

Report verify_hadamard_limit(const expr::FunctionSpec& f, const OperatorParams& p,
                             const std::vector<double>& grid, const std::vector<double>& rhos,
                             double final_tol, const QuadratureConfig& qcfg, const DiffConfig& dcfg) {
  Report r{"hadamard limit: gfi/gfd as rho -> 0 vs Hadamard, f = " + describe(f), rhos, {}, final_tol, false,
           p, {}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i) r.extra.emplace_back("x" + std::to_string(i), grid[i]);
  if (!(p.a > 0.0)) return unsupported(r, "verify_hadamard_limit: Hadamard operators need a > 0");

  for (const double rho : rhos) {
    OperatorParams q = p;
    q.rho = rho;
    std::string diag;
    const std::vector<double> per_x = evaluate_grid(
        grid,
        [&](double x) {
          const double di = ops::gfi(q, f, x, qcfg).value -
                            ops::hadamard_integral(q.alpha, q.a, q.b, q.side, f, x, qcfg).value;
          const double dd = ops::gfd(q, f, x, qcfg, dcfg).value -
                            ops::hadamard_derivative(q.alpha, q.a, q.b, q.side, f, x, qcfg, dcfg).value;
          return std::max(std::fabs(di), std::fabs(dd));
        },
        diag);
    if (!diag.empty() && r.diagnostic.empty()) r.diagnostic = "rho = " + num(rho) + ", " + diag;
    r.residuals.push_back(*std::max_element(per_x.begin(), per_x.end()));
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < r.residuals.size(); ++i) decreasing = decreasing && r.residuals[i] < r.residuals[i - 1];
  r.pass = r.diagnostic.empty() && decreasing && !r.residuals.empty() && r.residuals.back() <= final_tol;
  return r;
}

Report verify_nfold(const expr::FunctionSpec& f, unsigned n, double rho, double a, const std::vector<double>& grid,
                    double tol, const QuadratureConfig& qcfg) {
  if (n < 1 || n > 3) throw DomainError("verify_nfold: n must be 1, 2 or 3");
  OperatorParams p;
  p.alpha = n;
  p.rho = rho;
  p.a = a;
  p.b = grid.empty() ? a + 1.0 : *std::max_element(grid.begin(), grid.end()) + 1.0;
  Report r{"n-fold: I^n f = repeated integral, f = " + describe(f), grid, {}, tol, false, p,
           {{"n", static_cast<double>(n)}}, {}};
  r.residuals = evaluate_grid(
      grid,
      [&](double x) {
        return std::fabs(ops::gfi(p, f, x, qcfg).value - ops::nfold_oracle(n, rho, a, f, x, qcfg).value);
      },
      r.diagnostic);
  finish(r);
  return r;
}

double xpc_norm(const quad::RealFunction& f, double p, double c, double a, double b, const QuadratureConfig& cfg) {
  if (!(a > 0.0) || !(a < b) || !std::isfinite(b)) throw DomainError("xpc_norm: requires 0 < a < b < infinity");
  if (!(p >= 1.0)) throw DomainError("xpc_norm: requires p >= 1");
  const auto weighted = [&](double t) { return std::fabs(std::pow(t, c) * f(t)); };

  if (std::isinf(p)) {
    constexpr int kSamples = 1024;
    double best = 0.0;
    double best_t = a;
    const double step = (b - a) / (kSamples - 1);
    for (int i = 0; i < kSamples; ++i) {
      const double t = i == kSamples - 1 ? b : a + i * step;
      const double v = weighted(t);
      if (v > best) best = v, best_t = t;
    }
    // One refinement pass over the neighbouring cells.
    const double lo = std::max(a, best_t - step);
    const double hi = std::min(b, best_t + step);
    for (int i = 0; i < kSamples; ++i) best = std::max(best, weighted(lo + (hi - lo) * i / (kSamples - 1)));
    return best;
  }
  const quad::EvalResult r =
      quad::adaptive_integral([&](double t) { return std::pow(weighted(t), p) / t; }, a, b, cfg);
  return std::pow(r.value, 1.0 / p);
}

}  // namespace gfrac::props
