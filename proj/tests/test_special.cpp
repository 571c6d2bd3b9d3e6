// SPDX-License-Identifier: MIT
//
// Parabolic cylinder function tests: closed forms at integer order, the
// three-term recurrence, an integral-representation cross-check, and
// asymptotic behaviour.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gittins/special.hpp"
#include "oracle_utils.hpp"

using namespace gittins;

namespace {

// D_{-1}(x) = e^{x^2/4} sqrt(pi/2) erfc(x/sqrt(2)).
double pcf_order_one(double x) {
  return std::exp(0.25 * x * x) * std::sqrt(std::numbers::pi / 2.0) *
         std::erfc(x / std::sqrt(2.0));
}

}  // namespace

TEST_CASE("order one matches the erfc closed form") {
  CHECK(pcf(1.0, 0.0) ==
        doctest::Approx(std::sqrt(std::numbers::pi / 2.0)).epsilon(1e-13));
  for (double x : {-6.0, -3.0, -1.0, -0.2, 0.0, 0.7, 2.0, 5.0, 12.0}) {
    CHECK(pcf(1.0, x) == doctest::Approx(pcf_order_one(x)).epsilon(1e-11));
  }
}

TEST_CASE("three-term recurrence in the order") {
  // D_{nu+1}(x) - x D_{nu}(x) + nu D_{nu-1}(x) = 0 with nu -> -a gives
  // pcf(a-1, x) = x pcf(a, x) + a pcf(a+1, x) for pcf(a, x) = D_{-a}(x).
  for (double a : {1.5, 2.7, 5.0, 9.25}) {
    for (double x : {-3.0, -0.5, 0.0, 1.0, 3.0}) {
      const double lhs = pcf(a - 1.0, x);
      const double rhs = x * pcf(a, x) + a * pcf(a + 1.0, x);
      const double scale = std::abs(lhs) + std::abs(x * pcf(a, x)) +
                           std::abs(a * pcf(a + 1.0, x));
      CHECK(std::abs(lhs - rhs) <= 1e-11 * scale);
    }
  }
}

TEST_CASE("recurrence closes on the gaussian at order zero") {
  // D_0(x) = e^{-x^2/4}; reached from orders one and two via the recurrence.
  for (double x : {-2.0, -0.3, 0.0, 0.8, 2.5}) {
    const double d0 = x * pcf(1.0, x) + pcf(2.0, x);
    CHECK(d0 == doctest::Approx(std::exp(-0.25 * x * x)).epsilon(1e-11));
  }
}

TEST_CASE("integral representation for positive order") {
  // D_{-nu}(x) = e^{-x^2/4} / Gamma(nu) * int_0^inf t^{nu-1} e^{-t^2/2 - x t} dt.
  for (double nu : {0.8, 1.0, 2.4, 6.0}) {
    for (double x : {-2.0, 0.0, 1.5}) {
      auto f = [nu, x](double t) {
        return std::pow(t, nu - 1.0) * std::exp(-0.5 * t * t - x * t);
      };
      // Unit panels keep the interior peak sampled at every level.
      double integral = 0.0;
      for (int k = 0; k < 24; ++k) {
        integral += testutil::integrate_ref(f, k == 0 ? 1e-13 : k, k + 1.0,
                                            1e-13);
      }
      const double want =
          std::exp(-0.25 * x * x) / std::tgamma(nu) * integral;
      CHECK(pcf(nu, x) == doctest::Approx(want).epsilon(1e-7));
    }
  }
}

TEST_CASE("asymptotics and monotonicity") {
  // Large positive x: D_{-nu}(x) ~ e^{-x^2/4} x^{-nu} (1 - nu(nu+1)/(2x^2) + ...).
  for (double nu : {0.5, 1.3, 4.0}) {
    const double x = 25.0;
    const double ratio = pcf(nu, x) / (std::exp(-0.25 * x * x) *
                                       std::pow(x, -nu));
    const double two_term = 1.0 - nu * (nu + 1.0) / (2.0 * x * x) +
                            nu * (nu + 1.0) * (nu + 2.0) * (nu + 3.0) /
                                (8.0 * x * x * x * x);
    CHECK(ratio == doctest::Approx(two_term).epsilon(1e-4));
  }
  // Decreasing in x for every positive order.
  for (double nu : {0.5, 2.0, 10.0}) {
    double prev = pcf(nu, -8.0);
    for (double x = -7.0; x <= 8.0; x += 1.0) {
      const double cur = pcf(nu, x);
      CHECK(cur < prev);
      prev = cur;
    }
  }
  // Positive everywhere.
  CHECK(pcf(3.7, -30.0) > 0.0);
  CHECK(pcf(3.7, 30.0) > 0.0);
}
