#include <doctest.h>

#include <cmath>

#include "gfrac/closedform.hpp"
#include "gfrac/operators.hpp"

using namespace gfrac;
using namespace gfrac::closedform;

namespace {

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

}  // namespace

TEST_CASE("gfi_power") {
  PowerTerm t = gfi_power(1, 1, 0);
  CHECK(rel(t.coefficient, 1.0) <= 1e-14);
  CHECK(t.exponent == 1.0);
  t = gfi_power(0.5, 1, 1);
  CHECK(rel(t.coefficient, 0.75225277806367504926) <= 1e-13);
  CHECK(t.exponent == 1.5);
  t = gfi_power(0.5, 2, 2);
  CHECK(rel(t.coefficient, 0.53192304053524357059) <= 1e-13);
  CHECK(t.exponent == 3.0);
  CHECK_THROWS_AS(gfi_power(0.5, 2, -2), DomainError);
  CHECK_THROWS_AS(gfi_power(0.0, 2, 1), DomainError);
}

TEST_CASE("gfd_power") {
  for (const double nu : {0.5, 1.0, 3.0}) {
    const PowerTerm t = gfd_power(1, 1, nu);
    CHECK(rel(t.coefficient, nu) <= 1e-13);
    CHECK(t.exponent == nu - 1);
  }
  PowerTerm t = gfd_power(0.5, 1, 1);
  CHECK(rel(t.coefficient, 1.1283791670955125739) <= 1e-13);
  CHECK(t.exponent == 0.5);
  t = gfd_power(0.5, 2, 2);
  CHECK(rel(t.coefficient, 1.5957691216057307118) <= 1e-13);
  CHECK(t.exponent == 1.0);
  // 1 + nu/rho - alpha = 0: the coefficient vanishes.
  t = gfd_power(1.5, 2, 1);
  CHECK(t.coefficient == 0.0);
  CHECK_THROWS_AS(gfd_power(0.5, 1, -1), DomainError);
}

TEST_CASE("rl_der_power") {
  PowerTerm t = rl_der_power(0.5, 1);
  CHECK(rel(t.coefficient, 1.1283791670955125739) <= 1e-13);
  t = rl_der_power(1, 3);
  CHECK(rel(t.coefficient, 3.0) <= 1e-13);
  CHECK(t.exponent == 2.0);
  t = rl_der_power(0.5, -0.5);
  CHECK(t.coefficient == 0.0);
  CHECK(t.exponent == -1.0);
  CHECK_THROWS_AS(rl_der_power(0.5, -1), DomainError);
  for (const double nu : {0.3, 1.0, 2.5}) {
    CHECK(rl_der_power(0.7, nu).coefficient == gfd_power(0.7, 1, nu).coefficient);
  }
}

TEST_CASE("derivative rule inverts the integral rule") {
  for (const double alpha : {0.1, 0.5, 0.9, 1.7})
    for (const double rho : {0.4, 1.0, 1.4, 3.0})
      for (const double nu : {-0.3, 0.5, 1.0, 2.0}) {
        if (1 + nu / rho <= 0) continue;
        const PowerTerm back = apply_gfd(alpha, rho, gfi_power(alpha, rho, nu));
        CAPTURE(alpha);
        CAPTURE(rho);
        CAPTURE(nu);
        CHECK(rel(back.coefficient, 1.0) <= 1e-12);
        CHECK(std::fabs(back.exponent - nu) <= 1e-12 * std::max(1.0, std::fabs(nu)));
      }
}

TEST_CASE("composition of rules") {
  for (const auto [alpha, beta] : {std::pair{0.3, 0.7}, std::pair{0.25, 0.75}, std::pair{0.1, 0.9}})
    for (const double rho : {0.5, 1.0, 2.0})
      for (const double nu : {0.0, 1.0, 2.5}) {
        const PowerTerm lhs = apply_gfd(alpha, rho, gfi_power(beta, rho, nu));
        const PowerTerm rhs = gfi_power(beta - alpha, rho, nu);
        CHECK(rel(lhs.coefficient, rhs.coefficient) <= 1e-12);
        CHECK(std::fabs(lhs.exponent - rhs.exponent) <= 1e-12);
      }
}

TEST_CASE("closed forms match the numeric operators") {
  for (const double alpha : {0.3, 0.7})
    for (const double rho : {0.6, 1.0, 1.8})
      for (const double nu : {0.5, 2.0}) {
        ops::OperatorParams p;
        p.alpha = alpha;
        p.rho = rho;
        p.a = 0.0;
        p.b = 3.0;
        const auto f = expr::FunctionSpec::power(nu);
        const PowerTerm i = gfi_power(alpha, rho, nu);
        const PowerTerm d = gfd_power(alpha, rho, nu);
        for (const double x : {0.3, 0.7, 1.0, 1.8}) {
          CAPTURE(alpha);
          CAPTURE(rho);
          CAPTURE(nu);
          CAPTURE(x);
          CHECK(rel(ops::gfi(p, f, x).value, i(x)) <= 1e-8);
          CHECK(rel(ops::gfd(p, f, x).value, d(x)) <= 1e-5);
        }
      }
}
