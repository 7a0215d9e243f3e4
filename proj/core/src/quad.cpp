#include "gfrac/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>
#include <string>
#include <utility>
#include <vector>

namespace gfrac::quad {

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("quadrature tolerances must be positive");
  if (max_levels < 1) throw DomainError("quadrature max_levels must be at least 1");
  if (base_nodes < 2) throw DomainError("quadrature base_nodes must be at least 2");
}

void DiffConfig::validate() const {
  if (!(initial_step > 0.0)) throw DomainError("differentiation initial_step must be positive");
  if (richardson_levels < 1) throw DomainError("richardson_levels must be at least 1");
}

namespace {

// ---------------------------------------------------------------------------
// Tanh-sinh node tables on [0, 1]:
//   u(t) = 1 / (1 + exp(-pi sinh t)),   du/dt = pi cosh(t) u (1 - u).

// exp(-pi sinh 6) ~ 1e-275: far enough out that a (1-u)^{-0.9} or u^{-0.9}
// endpoint singularity leaves a truncated tail below 1e-27.
constexpr double kTMax = 6.0;

struct TsNode {
  double u;        // abscissa
  double v;        // 1 - u, computed directly
  double log_v;    // log(1 - u)
  double jac;      // pi cosh(t) u: du/dt divided by (1 - u)
};

struct TsTable {
  double h0;
  std::vector<std::vector<TsNode>> levels;  // level 0: all nodes, then odd multiples
};

TsNode make_node(double t) {
  const double s = std::numbers::pi * std::sinh(t);
  const double q = std::exp(-std::fabs(s));
  const double small = q / (1.0 + q);
  const double large = 1.0 / (1.0 + q);
  // log(small) = -|s| - log1p(q), log(large) = -log1p(q)
  TsNode n{};
  if (t >= 0.0) {
    n.u = large;
    n.v = small;
    n.log_v = -std::fabs(s) - std::log1p(q);
  } else {
    n.u = small;
    n.v = large;
    n.log_v = -std::log1p(q);
  }
  n.jac = std::numbers::pi * std::cosh(t) * n.u;
  return n;
}

std::shared_ptr<const TsTable> build_table(int base_nodes, int levels) {
  auto table = std::make_shared<TsTable>();
  const int half = std::max(1, base_nodes / 2);
  table->h0 = kTMax / half;
  table->levels.resize(static_cast<std::size_t>(levels));
  for (int k = -half; k <= half; ++k) table->levels[0].push_back(make_node(k * table->h0));
  for (int lvl = 1; lvl < levels; ++lvl) {
    const double h = table->h0 / std::ldexp(1.0, lvl);
    const long count = static_cast<long>(half) << lvl;  // odd multiples on each side
    auto& nodes = table->levels[static_cast<std::size_t>(lvl)];
    nodes.reserve(static_cast<std::size_t>(2 * count));
    for (long j = -count; j < count; ++j) nodes.push_back(make_node((2 * j + 1) * h));
  }
  return table;
}

std::shared_ptr<const TsTable> tanh_sinh_table(int base_nodes, int levels) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const TsTable>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{base_nodes, levels}];
  if (!slot) slot = build_table(base_nodes, levels);
  return slot;
}

}  // namespace

EvalResult jacobi_weighted_integral(const RealFunction& h, double mu, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("jacobi weight exponent mu must be positive");

  const auto table = tanh_sinh_table(cfg.base_nodes, cfg.max_levels);
  const double h_end = h(1.0);
  if (!std::isfinite(h_end)) throw DomainError("integrand is not finite at u = 1");
  const double analytic = h_end / mu;

  auto term = [&](const TsNode& n) {
    // pi cosh(t) u (1-u) * (1-u)^{mu-1} = jac * (1-u)^mu
    const double w = n.jac * std::exp(mu * n.log_v);
    if (w == 0.0) return 0.0;
    const double fu = h(n.u);
    if (!std::isfinite(fu)) {
      throw DomainError("integrand is not finite at u = " + std::to_string(n.u));
    }
    return w * (fu - h_end);
  };

  double sum = 0.0;
  double prev = 0.0;
  double prev_err = std::numeric_limits<double>::infinity();
  EvalResult r;
  for (int lvl = 0; lvl < cfg.max_levels; ++lvl) {
    for (const auto& n : table->levels[static_cast<std::size_t>(lvl)]) sum += term(n);
    const double step = table->h0 / std::ldexp(1.0, lvl);
    const double est = step * sum;
    r.levels_used = lvl + 1;
    r.value = analytic + est;
    if (lvl > 0) {
      const double err = std::fabs(est - prev);
      r.error_estimate = err;
      const double tol = std::max(cfg.rel_tol * std::fabs(r.value), cfg.abs_tol);
      // Require a non-increasing pair of estimates so a lucky early
      // agreement between two coarse levels is not accepted, unless the
      // difference is already at the rounding floor.
      const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::fabs(r.value);
      if (lvl >= 2 && err <= tol && (err <= prev_err || err <= floor)) return r;
      prev_err = err;
    }
    prev = est;
  }
  throw NoConvergence("jacobi_weighted_integral: refinement levels exhausted", r);
}

// ---------------------------------------------------------------------------
// Gauss-Kronrod 7/15

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
// Gauss weights for the nodes kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
  double lo, hi, value, error;
  int depth;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const RealFunction& f, double lo, double hi, int depth) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::fabs(resk);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[static_cast<std::size_t>(j)];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double s = f1[j] + f2[j];
    resk += kWgk[static_cast<std::size_t>(j)] * s;
    resabs += kWgk[static_cast<std::size_t>(j)] * (std::fabs(f1[j]) + std::fabs(f2[j]));
    if (j % 2 == 1) resg += kWg[static_cast<std::size_t>(j / 2)] * s;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::fabs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[static_cast<std::size_t>(j)] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));
  }
  const double absh = std::fabs(half);
  resasc *= absh;
  resabs *= absh;
  double err = std::fabs((resk - resg) * half);
  // QUADPACK error scaling.
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  if (!std::isfinite(resk)) throw DomainError("adaptive_integral: integrand is not finite");
  return Panel{lo, hi, resk * half, err, depth};
}

}  // namespace

EvalResult adaptive_integral(const RealFunction& f, double lo, double hi, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("adaptive_integral: requires finite lo < hi");
  }
  constexpr std::size_t kMaxPanels = 2000;
  // Endpoint singularities need deep bisection (about 70 halvings for t^{-1/2}
  // at 1e-10), so panels are only retired once they can't be halved in floating point.
  const auto splittable = [](const Panel& p) {
    return p.hi - p.lo > 8.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(p.lo), std::fabs(p.hi)) &&
           p.hi - p.lo > 1e3 * std::numeric_limits<double>::min();
  };

  std::priority_queue<Panel> queue;
  queue.push(gk15(f, lo, hi, 0));
  double total = queue.top().value;
  double total_err = queue.top().error;
  int deepest = 0;
  std::vector<Panel> finished;  // panels that may not be split further

  auto result = [&] {
    // Re-sum to avoid drift from incremental updates.
    double v = 0.0, e = 0.0;
    auto copy = queue;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().error;
      copy.pop();
    }
    for (const auto& p : finished) {
      v += p.value;
      e += p.error;
    }
    return EvalResult{v, e, deepest + 1};
  };

  while (total_err > std::max(cfg.rel_tol * std::fabs(total), cfg.abs_tol)) {
    if (queue.empty() || queue.size() + finished.size() >= kMaxPanels) {
      throw NoConvergence("adaptive_integral: panel budget exhausted", result());
    }
    Panel worst = queue.top();
    queue.pop();
    if (!splittable(worst)) {
      finished.push_back(worst);
      if (queue.empty()) throw NoConvergence("adaptive_integral: panels cannot be refined further", result());
      continue;
    }
    const double mid = 0.5 * (worst.lo + worst.hi);
    Panel left = gk15(f, worst.lo, mid, worst.depth + 1);
    Panel right = gk15(f, mid, worst.hi, worst.depth + 1);
    deepest = std::max(deepest, worst.depth + 1);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  return result();
}

// ---------------------------------------------------------------------------
// Finite differences

EvalResult nth_derivative(const RealFunction& g, unsigned n, double x, double lo, double hi,
                          const DiffConfig& cfg) {
  cfg.validate();
  if (n == 0) return EvalResult{g(x), 0.0, 0};
  if (!(x > lo && x < hi)) throw DomainClipped("nth_derivative: point is not interior to the domain");

  const double dist = std::min(x - lo, hi - x);
  const double h0 = std::min(cfg.initial_step, dist / (4.0 * n));
  constexpr double kMinStep = 1e-8;
  if (!(h0 >= kMinStep)) {
    throw DomainClipped("nth_derivative: stencil does not fit inside the domain (step " +
                        std::to_string(h0) + " < 1e-8)");
  }

  // Binomial coefficients with alternating sign.
  std::vector<double> coeff(n + 1);
  coeff[0] = 1.0;
  for (unsigned k = 1; k <= n; ++k) coeff[k] = -coeff[k - 1] * (n - k + 1) / k;

  auto difference = [&](double h) {
    double s = 0.0;
    for (unsigned k = 0; k <= n; ++k) {
      const double offset = (0.5 * n - k) * h;
      s += coeff[k] * g(x + offset);
    }
    return s / std::pow(h, static_cast<double>(n));
  };

  // Richardson tableau in h^2.
  const int levels = cfg.richardson_levels;
  std::vector<std::vector<double>> table(static_cast<std::size_t>(levels));
  double h = h0;
  for (int i = 0; i < levels; ++i, h *= 0.5) {
    auto& row = table[static_cast<std::size_t>(i)];
    row.resize(static_cast<std::size_t>(i) + 1);
    row[0] = difference(h);
    double factor = 1.0;
    for (int k = 1; k <= i; ++k) {
      factor *= 4.0;
      row[k] = row[k - 1] + (row[k - 1] - table[static_cast<std::size_t>(i - 1)][k - 1]) / (factor - 1.0);
    }
  }
  const auto& last = table.back();
  EvalResult r;
  r.value = last.back();
  r.levels_used = levels;
  if (levels > 1) {
    const auto& prev = table[table.size() - 2];
    r.error_estimate = std::max(std::fabs(last.back() - last[last.size() - 2]),
                                std::fabs(last.back() - prev.back()));
  }
  return r;
}

EvalResult nth_delta_derivative(const RealFunction& g, double rho, unsigned n, double x, double lo,
                                double hi, const DiffConfig& cfg) {
  if (!(rho > 0.0)) throw DomainError("nth_delta_derivative: rho must be positive");
  if (!(x > 0.0)) throw DomainError("nth_delta_derivative: x must be positive");
  const double inv_rho = 1.0 / rho;
  auto to_y = [&](double t) { return std::pow(t, rho) / rho; };
  const RealFunction in_y = [&](double y) { return g(std::pow(rho * y, inv_rho)); };
  return nth_derivative(in_y, n, to_y(x), to_y(std::max(lo, 0.0)), to_y(hi), cfg);
}

}  // namespace gfrac::quad
