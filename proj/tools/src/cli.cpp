#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "gfrac/closedform.hpp"
#include "gfrac/operators.hpp"
#include "gfrac/props.hpp"
#include "gfrac/specfun.hpp"

namespace gfrac::cli {

namespace {

using expr::FunctionSpec;
using ops::OperatorParams;
using ops::Side;
using quad::EvalResult;
using quad::QuadratureConfig;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Default quadrature tolerance, optionally overridden by GFRAC_QUAD_TOL.
double default_rel_tol() {
  const char* env = std::getenv("GFRAC_QUAD_TOL");
  if (env == nullptr || *env == '\0') return QuadratureConfig{}.rel_tol;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (*end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string("GFRAC_QUAD_TOL must be a positive number, got '") + env + "'");
  }
  return v;
}

Side parse_side(const std::string& s) {
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  throw DomainError("side must be 'left' or 'right', got '" + s + "'");
}

// Evaluates one of the operator families on f at x.
using Evaluator = std::function<EvalResult(const OperatorParams&, double eta, const FunctionSpec&, double x,
                                           const QuadratureConfig&)>;

const std::map<std::string, Evaluator>& evaluators() {
  static const std::map<std::string, Evaluator> table = {
      {"gfi", [](auto& p, double, auto& f, double x, auto& q) { return ops::gfi(p, f, x, q); }},
      {"gfd", [](auto& p, double, auto& f, double x, auto& q) { return ops::gfd(p, f, x, q); }},
      {"caputo", [](auto& p, double, auto& f, double x, auto& q) { return ops::caputo_gfd(p, f, x, q); }},
      {"rl", [](auto& p, double, auto& f, double x, auto& q) {
         return ops::rl_derivative(p.alpha, p.a, p.b, p.side, f, x, q);
       }},
      {"rl-int", [](auto& p, double, auto& f, double x, auto& q) {
         return ops::rl_integral(p.alpha, p.a, p.b, p.side, f, x, q);
       }},
      {"hadamard", [](auto& p, double, auto& f, double x, auto& q) {
         return ops::hadamard_derivative(p.alpha, p.a, p.b, p.side, f, x, q);
       }},
      {"hadamard-int", [](auto& p, double, auto& f, double x, auto& q) {
         return ops::hadamard_integral(p.alpha, p.a, p.b, p.side, f, x, q);
       }},
      {"ek", [](auto& p, double eta, auto& f, double x, auto& q) {
         return ops::ek_derivative({p, eta}, f, x, q);
       }},
      {"ek-int", [](auto& p, double eta, auto& f, double x, auto& q) {
         return ops::ek_integral({p, eta}, f, x, q);
       }},
  };
  return table;
}

std::vector<std::string> op_names(bool sweep) {
  std::vector<std::string> names;
  for (const auto& [name, fn] : evaluators()) {
    if (!sweep || name.find('-') == std::string::npos) names.push_back(name);
  }
  return names;
}

// eval ------------------------------------------------------------------------

struct EvalArgs {
  std::string op = "gfd";
  double alpha = 0.5;
  double rho = 1.0;
  double a = 0.0;
  double b = std::nan("");
  double eta = 0.0;
  std::string side = "left";
  std::string f;
  double x = 1.0;
  double rel_tol = std::nan("");
};

int cmd_eval(const EvalArgs& args, std::ostream& out) {
  OperatorParams p;
  p.alpha = args.alpha;
  p.rho = args.rho;
  p.a = args.a;
  p.side = parse_side(args.side);
  if (std::isnan(args.b)) {
    if (p.side == Side::Right) throw DomainError("--b is required for right-sided operators");
    p.b = args.x + std::max(1.0, std::fabs(args.x));
  } else {
    p.b = args.b;
  }
  QuadratureConfig q;
  q.rel_tol = std::isnan(args.rel_tol) ? default_rel_tol() : args.rel_tol;
  q.validate();

  const FunctionSpec f = FunctionSpec::parsed(args.f);
  const EvalResult r = evaluators().at(args.op)(p, args.eta, f, args.x, q);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g \xC2\xB1%.3g", r.value, r.error_estimate);
  out << buf << '\n';
  return kOk;
}

// sweep -----------------------------------------------------------------------

struct SweepSpec {
  std::string op = "gfd";
  std::vector<double> alphas;
  std::vector<double> rhos;
  std::vector<double> nus;
  double x_lo = 0.0;
  double x_hi = 0.0;
  int x_count = 0;
  double a = 0.0;
  double b = std::nan("");
  double eta = 0.0;
  std::string side = "left";
  double rel_tol = std::nan("");
  std::string out;

  void validate() const {
    if (!evaluators().count(op) || op.find('-') != std::string::npos) {
      throw DomainError("sweep: unknown operator '" + op + "'");
    }
    if (alphas.empty() || rhos.empty() || nus.empty()) {
      throw DomainError("sweep: alphas, rhos and nus must be non-empty");
    }
    if (!(x_lo < x_hi)) throw DomainError("sweep: requires x_lo < x_hi");
    if (x_count < 2) throw DomainError("sweep: x_count must be at least 2");
  }
};

// Config file keys mirror the flag names (dashes become underscores).
void load_sweep_config(const std::string& path, SweepSpec& s) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
    if (j.contains("op")) s.op = j["op"].get<std::string>();
    if (j.contains("alphas")) s.alphas = j["alphas"].get<std::vector<double>>();
    if (j.contains("rhos")) s.rhos = j["rhos"].get<std::vector<double>>();
    if (j.contains("nus")) s.nus = j["nus"].get<std::vector<double>>();
    if (j.contains("x_lo")) s.x_lo = j["x_lo"].get<double>();
    if (j.contains("x_hi")) s.x_hi = j["x_hi"].get<double>();
    if (j.contains("x_count")) s.x_count = j["x_count"].get<int>();
    if (j.contains("a")) s.a = j["a"].get<double>();
    if (j.contains("b")) s.b = j["b"].get<double>();
    if (j.contains("eta")) s.eta = j["eta"].get<double>();
    if (j.contains("side")) s.side = j["side"].get<std::string>();
    if (j.contains("rel_tol")) s.rel_tol = j["rel_tol"].get<double>();
    if (j.contains("out")) s.out = j["out"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("config file '" + path + "': " + e.what());
  }
}

std::string csv_note(const std::string& msg) {
  std::string out = "\"error: ";
  for (const char c : msg) {
    if (c == '"') out += "\"\"";
    else if (c == '\n') out += ' ';
    else out += c;
  }
  return out + "\"";
}

struct Row {
  double x, alpha, rho, nu;
  std::string cells;
};

std::string run_sweep(const SweepSpec& s) {
  QuadratureConfig q;
  q.rel_tol = std::isnan(s.rel_tol) ? default_rel_tol() : s.rel_tol;
  q.validate();
  const Side side = parse_side(s.side);
  const Evaluator& eval = evaluators().at(s.op);

  std::vector<double> xs(s.x_count);
  for (int i = 0; i < s.x_count; ++i) {
    xs[i] = i == s.x_count - 1 ? s.x_hi : s.x_lo + (s.x_hi - s.x_lo) * i / (s.x_count - 1);
  }
  std::vector<Row> rows;
  for (const double alpha : s.alphas)
    for (const double rho : s.rhos)
      for (const double nu : s.nus)
        for (const double x : xs) rows.push_back({x, alpha, rho, nu, {}});

  const double b = std::isnan(s.b) ? 2.0 * s.x_hi : s.b;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < rows.size();) {
      Row& row = rows[i];
      try {
        OperatorParams p;
        p.alpha = row.alpha;
        p.rho = row.rho;
        p.a = s.a;
        p.b = b;
        p.side = side;
        const EvalResult r = eval(p, s.eta, FunctionSpec::power(row.nu), row.x, q);
        row.cells = g17(r.value) + "," + g17(r.error_estimate);
      } catch (const std::exception& e) {
        row.cells = "," + csv_note(e.what());
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::string csv = "# rel_tol=" + g17(q.rel_tol) + "\nx,alpha,rho,nu,value,error_estimate\n";
  for (const Row& r : rows) {
    csv += g17(r.x) + "," + g17(r.alpha) + "," + g17(r.rho) + "," + g17(r.nu) + "," + r.cells + "\n";
  }
  return csv;
}

int cmd_sweep(const SweepSpec& s, std::ostream& out) {
  s.validate();
  const std::string csv = run_sweep(s);
  if (s.out.empty() || s.out == "-") {
    out << csv;
    return kOk;
  }
  std::ofstream f(s.out, std::ios::binary);
  if (!f) throw IoError("cannot open output file '" + s.out + "'");
  f << csv;
  f.close();
  if (!f) throw IoError("failed writing '" + s.out + "'");
  return kOk;
}

// verify ----------------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  std::string config;
  double tol = std::nan("");
  double rel_tol = std::nan("");
  std::vector<double> grid;
};

OperatorParams params(double alpha, double rho, double a, double b) {
  OperatorParams p;
  p.alpha = alpha;
  p.rho = rho;
  p.a = a;
  p.b = b;
  return p;
}

std::vector<props::Report> run_verify(const VerifyArgs& v) {
  QuadratureConfig q;
  q.rel_tol = std::isnan(v.rel_tol) ? default_rel_tol() : v.rel_tol;
  q.validate();
  const auto tol = [&](double fallback) { return std::isnan(v.tol) ? fallback : v.tol; };
  const auto grid = [&](double a, double b) { return v.grid.empty() ? props::default_grid(a, b) : v.grid; };
  const bool all = v.suite == "all";
  std::vector<props::Report> reports;

  if (all || v.suite == "inverse") {
    for (const char* f : {"x^0.5", "x", "x^2", "1", "exp(x)"})
      for (const double alpha : {0.3, 0.5, 0.8})
        for (const double rho : {0.7, 1.0, 1.7}) {
          reports.push_back(props::verify_inverse(FunctionSpec::parsed(f), params(alpha, rho, 0.5, 2.0),
                                                  grid(0.5, 2.0), tol(props::kDerivativeTol), q));
        }
  }
  if (all || v.suite == "composition") {
    for (const char* f : {"x", "sin(x)", "x^2", "exp(x)"})
      for (const auto [alpha, beta] : {std::pair{0.3, 0.7}, std::pair{0.25, 0.75}})
        for (const double rho : {1.0, 2.0}) {
          reports.push_back(props::verify_composition(FunctionSpec::parsed(f), params(alpha, rho, 0.5, 2.0),
                                                      beta, grid(0.5, 2.0), tol(props::kDerivativeTol), q));
        }
  }
  if (all || v.suite == "limits") {
    for (const char* f : {"x^2", "1", "exp(x)", "x^0.5"})
      for (const double alpha : {0.5, 0.9, 1.5})
        for (const double a : {0.0, 0.2}) {
          auto [ri, rd] = props::verify_rl_limit(FunctionSpec::parsed(f), params(alpha, 1.0, a, 2.0),
                                                 grid(a, 2.0), tol(props::kIntegralTol),
                                                 tol(props::kDerivativeTol), q);
          reports.push_back(std::move(ri));
          reports.push_back(std::move(rd));
        }
    for (const char* f : {"1", "log(x)", "x"}) {
      reports.push_back(props::verify_hadamard_limit(FunctionSpec::parsed(f), params(0.5, 1.0, 1.0, 2.0),
                                                     grid(1.0, 2.0), {0.1, 0.01, 0.001}, tol(1e-2), q));
    }
  }
  if (all || v.suite == "nfold") {
    const std::vector<double> xs = v.grid.empty() ? std::vector<double>{0.5, 1.0, 2.0} : v.grid;
    for (const char* f : {"1", "x", "exp(x)"})
      for (const unsigned n : {1u, 2u})
        for (const double rho : {1.0, 1.3, 2.0}) {
          reports.push_back(props::verify_nfold(FunctionSpec::parsed(f), n, rho, 0.0, xs, tol(1e-7), q));
        }
  }
  return reports;
}

void load_verify_config(const std::string& path, VerifyArgs& v, bool tol_flag, bool rel_flag, bool grid_flag) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    if (j.contains("tol") && !tol_flag) v.tol = j["tol"].get<double>();
    if (j.contains("rel_tol") && !rel_flag) v.rel_tol = j["rel_tol"].get<double>();
    if (j.contains("grid") && !grid_flag) v.grid = j["grid"].get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("config file '" + path + "': " + e.what());
  }
}

int cmd_verify(const VerifyArgs& v, std::ostream& out) {
  bool ok = true;
  for (const props::Report& r : run_verify(v)) {
    out << r.to_json() << '\n';
    ok = ok && r.pass;
  }
  return ok ? kOk : kVerificationFailed;
}

// selftest --------------------------------------------------------------------

int cmd_selftest(std::ostream& out) {
  struct Check {
    const char* name;
    double got;
    double want;
    double rel;
  };
  const auto jacobi = [](const quad::RealFunction& h, double mu) {
    return quad::jacobi_weighted_integral(h, mu).value;
  };
  const std::vector<Check> checks = {
      {"gamma(0.5)", specfun::gamma(0.5), 1.7724538509055160273, 1e-14},
      {"gamma(3.7)", specfun::gamma(3.7), 4.1706517837966031654, 1e-14},
      {"gamma(-2.3)", specfun::gamma(-2.3), -1.4471073942559181166, 1e-13},
      {"log_gamma(1000.5)", specfun::log_gamma(1000.5), 5908.6741758486774887, 1e-14},
      {"beta(0.3, 7.2)", specfun::beta(0.3, 7.2), 1.6791401349397154872, 1e-13},
      {"jacobi mu=0.5, h=1", jacobi([](double) { return 1.0; }, 0.5), 2.0, 1e-12},
      {"jacobi mu=0.5, h=u", jacobi([](double u) { return u; }, 0.5), 4.0 / 3.0, 1e-12},
      {"jacobi mu=1e-3, h=exp", jacobi([](double u) { return std::exp(u); }, 1e-3), 2716.1188662503443, 1e-10},
      {"gauss-kronrod sin on [0, pi]",
       quad::adaptive_integral([](double t) { return std::sin(t); }, 0.0, 3.14159265358979323846).value, 2.0,
       1e-12},
      {"nth_derivative exp'' at 0",
       quad::nth_derivative([](double t) { return std::exp(t); }, 2, 0.0, -1.0, 1.0).value, 1.0, 1e-7},
  };
  bool ok = true;
  for (const Check& c : checks) {
    const double rel = std::fabs(c.got - c.want) / std::fabs(c.want);
    const bool pass = rel <= c.rel;
    ok = ok && pass;
    out << (pass ? "PASS " : "FAIL ") << c.name << ": " << g17(c.got) << " (rel err " << g17(rel) << ")\n";
  }
  return ok ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized fractional integrals and derivatives"};
  app.require_subcommand(1);

  EvalArgs ea;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate one operator on an expression at a point");
  eval->add_option("--op", ea.op, "Operator")->check(CLI::IsMember(op_names(false)))->capture_default_str();
  eval->add_option("--alpha", ea.alpha, "Order alpha in (0, 3]")->capture_default_str();
  eval->add_option("--rho", ea.rho, "rho > 0")->capture_default_str();
  eval->add_option("--a", ea.a, "Left end point")->capture_default_str();
  eval->add_option("--b", ea.b, "Right end point (default: x + max(1, |x|); required for --side right)");
  eval->add_option("--eta", ea.eta, "Erdelyi-Kober eta")->capture_default_str();
  eval->add_option("--side", ea.side, "left or right")->capture_default_str();
  eval->add_option("--f", ea.f, "Expression in x")->required();
  eval->add_option("--x", ea.x, "Evaluation point")->required();
  eval->add_option("--rel-tol", ea.rel_tol, "Quadrature relative tolerance (overrides GFRAC_QUAD_TOL)");

  SweepSpec ss;
  std::string sweep_config;
  CLI::App* sweep = app.add_subcommand("sweep", "Evaluate an operator on x^nu over a parameter grid, as CSV");
  sweep->add_option("--config", sweep_config, "JSON file with the same keys as the flags");
  CLI::Option* o_op = sweep->add_option("--op", ss.op, "Operator")->check(CLI::IsMember(op_names(true)));
  CLI::Option* o_alphas = sweep->add_option("--alphas", ss.alphas, "alpha values")->delimiter(',');
  CLI::Option* o_rhos = sweep->add_option("--rhos", ss.rhos, "rho values")->delimiter(',');
  CLI::Option* o_nus = sweep->add_option("--nus", ss.nus, "nu values")->delimiter(',');
  CLI::Option* o_lo = sweep->add_option("--x-lo", ss.x_lo, "Smallest x");
  CLI::Option* o_hi = sweep->add_option("--x-hi", ss.x_hi, "Largest x");
  CLI::Option* o_count = sweep->add_option("--x-count", ss.x_count, "Number of x points (>= 2)");
  CLI::Option* o_a = sweep->add_option("--a", ss.a, "Left end point");
  CLI::Option* o_b = sweep->add_option("--b", ss.b, "Right end point (default 2 x_hi)");
  CLI::Option* o_eta = sweep->add_option("--eta", ss.eta, "Erdelyi-Kober eta");
  CLI::Option* o_side = sweep->add_option("--side", ss.side, "left or right");
  CLI::Option* o_rel = sweep->add_option("--rel-tol", ss.rel_tol, "Quadrature relative tolerance");
  CLI::Option* o_out = sweep->add_option("--out", ss.out, "Output CSV path (default stdout)");

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "Check the operator identities; one JSON report per line");
  verify->add_option("suite", va.suite, "inverse, composition, limits, nfold or all")
      ->check(CLI::IsMember({"inverse", "composition", "limits", "nfold", "all"}))
      ->capture_default_str();
  verify->add_option("--config", va.config, "JSON file with grid, tol, rel_tol");
  CLI::Option* o_tol = verify->add_option("--tol", va.tol, "Tolerance for every report");
  CLI::Option* o_vrel = verify->add_option("--rel-tol", va.rel_tol, "Quadrature relative tolerance");
  CLI::Option* o_grid = verify->add_option("--grid", va.grid, "Grid points")->delimiter(',');

  CLI::App* selftest = app.add_subcommand("selftest", "Check special functions and quadrature against references");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (eval->parsed()) return cmd_eval(ea, out);
    if (sweep->parsed()) {
      if (!sweep_config.empty()) {
        // Flags win over the file: remember them, load, then restore.
        const SweepSpec flags = ss;
        load_sweep_config(sweep_config, ss);
        if (o_op->count()) ss.op = flags.op;
        if (o_alphas->count()) ss.alphas = flags.alphas;
        if (o_rhos->count()) ss.rhos = flags.rhos;
        if (o_nus->count()) ss.nus = flags.nus;
        if (o_lo->count()) ss.x_lo = flags.x_lo;
        if (o_hi->count()) ss.x_hi = flags.x_hi;
        if (o_count->count()) ss.x_count = flags.x_count;
        if (o_a->count()) ss.a = flags.a;
        if (o_b->count()) ss.b = flags.b;
        if (o_eta->count()) ss.eta = flags.eta;
        if (o_side->count()) ss.side = flags.side;
        if (o_rel->count()) ss.rel_tol = flags.rel_tol;
        if (o_out->count()) ss.out = flags.out;
      }
      return cmd_sweep(ss, out);
    }
    if (verify->parsed()) {
      if (!va.config.empty()) load_verify_config(va.config, va, o_tol->count(), o_vrel->count(), o_grid->count());
      return cmd_verify(va, out);
    }
    if (selftest->parsed()) return cmd_selftest(out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const quad::NoConvergence& e) {
    err << "error: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace gfrac::cli
