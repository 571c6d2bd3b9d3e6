// SPDX-License-Identifier: MIT
//
// Scale function tests: root finding for the Laplace exponent, closed forms
// in the jump-free case, the defining Laplace transform identity, and the
// two-sided transform variant.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "gittins/scale.hpp"
#include "oracle_utils.hpp"

using namespace gittins;

namespace {

// Analytic continuation of the Laplace exponent past the jump pole at -r;
// the roots -xi_i of psi = q live on both sides of the pole.
double psi_ac(const SnlpParams& p, double t) {
  return p.mu * t + 0.5 * p.sigma * p.sigma * t * t - p.ell * t / (p.r + t);
}

}  // namespace

TEST_CASE("laplace exponent basics") {
  const SnlpParams p{1.0, 1.0, 6.0, 2.0};
  CHECK(laplace_exponent(p, 0.0) == 0.0);
  // psi'(0) = mu - ell/r is the long-run drift.
  const double h = 1e-6;
  const double numeric =
      (laplace_exponent(p, h) - laplace_exponent(p, -h)) / (2.0 * h);
  CHECK(numeric == doctest::Approx(p.mu - p.ell / p.r).epsilon(1e-6));
  CHECK_THROWS_AS(static_cast<void>(laplace_exponent(p, -2.0)),
                  std::domain_error);
  CHECK_THROWS_AS(
      static_cast<void>(build_scale_model(SnlpParams{1.0, 0.0, 6.0, 2.0}, 0.5)),
      std::invalid_argument);
  CHECK_THROWS_AS(static_cast<void>(build_scale_model(p, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("roots of psi = q for a jumpy model") {
  const SnlpParams p{1.0, 1.0, 6.0, 2.0};
  for (double q : {0.1, 0.5, 2.0}) {
    const ScaleModel sm = build_scale_model(p, q);
    CHECK(sm.phi_q > 0.0);
    CHECK(std::abs(laplace_exponent(p, sm.phi_q) - q) <= 1e-10 * (1.0 + q));
    REQUIRE(sm.num_terms == 2);
    const double xi1 = sm.xi[0], xi2 = sm.xi[1];
    CHECK(xi1 > 0.0);
    CHECK(xi1 < p.r);
    CHECK(xi2 > p.r);
    for (double xi : {xi1, xi2}) {
      CHECK(std::abs(psi_ac(p, -xi) - q) <= 1e-8 * (1.0 + q + xi * xi));
    }
    // Independent root location by bisection on the analytic continuation.
    const double phi_ref = testutil::bisect(
        [&](double t) { return psi_ac(p, t) - q; }, 1e-9, 50.0);
    CHECK(sm.phi_q == doctest::Approx(phi_ref).epsilon(1e-10));
  }
}

TEST_CASE("jump-free roots have closed forms") {
  const SnlpParams p{0.3, 1.7, 0.0, 1.0};
  const double q = 0.5;
  const ScaleModel sm = build_scale_model(p, q);
  const double s = std::sqrt(p.mu * p.mu + 2.0 * q * p.sigma * p.sigma);
  CHECK(sm.phi_q ==
        doctest::Approx((-p.mu + s) / (p.sigma * p.sigma)).epsilon(1e-12));
  REQUIRE(sm.num_terms == 1);
  CHECK(sm.xi[0] ==
        doctest::Approx((p.mu + s) / (p.sigma * p.sigma)).epsilon(1e-12));
}

TEST_CASE("driftless unit brownian scale functions") {
  // mu = 0, sigma = 1: W = 2 sinh(x) / s with s = sqrt(2q); at q = 1/2,
  // W(x) = 2 sinh(x) and Z(x) = cosh(x).
  const SnlpParams p{0.0, 1.0, 0.0, 1.0};
  const ScaleModel sm = build_scale_model(p, 0.5);
  for (double x : {0.0, 0.25, 1.0, 3.0, 8.0}) {
    CHECK(w_scale(sm, x) == doctest::Approx(2.0 * std::sinh(x)).epsilon(1e-12));
    CHECK(z_scale(sm, x) == doctest::Approx(std::cosh(x)).epsilon(1e-12));
  }
  CHECK(w_scale(sm, -1.0) == 0.0);
  CHECK(z_scale(sm, -1.0) == 1.0);
}

TEST_CASE("scale function laplace transform identity") {
  // int_0^inf e^{-s x} W^{(q)}(x) dx = 1 / (psi(s) - q) for s > Phi(q).
  for (const SnlpParams& p :
       {SnlpParams{1.0, 1.0, 6.0, 2.0}, SnlpParams{2.0, 10.0, 2.0, 2.0}}) {
    const double q = 0.5;
    const ScaleModel sm = build_scale_model(p, q);
    for (double ds : {0.5, 1.0, 3.0}) {
      const double s = sm.phi_q + ds;
      const double upper = 45.0 / ds;  // e^{Phi x} growth leaves e^{-ds x}
      const double direct = testutil::integrate_ref(
          [&](double x) { return std::exp(-s * x) * w_scale(sm, x); }, 0.0,
          upper, 1e-13);
      CHECK(direct ==
            doctest::Approx(1.0 / (laplace_exponent(p, s) - q)).epsilon(1e-8));
    }
  }
}

TEST_CASE("W is nonnegative and increasing, Z starts at one") {
  const ScaleModel sm = build_scale_model(SnlpParams{-1.0, 2.0, 4.0, 2.0}, 0.7);
  double prev_w = 0.0, prev_z = 1.0;
  CHECK(z_scale(sm, 0.0) == 1.0);
  for (double x = 0.1; x <= 12.0; x += 0.3) {
    const double w = w_scale(sm, x);
    const double z = z_scale(sm, x);
    CHECK(w > prev_w);
    CHECK(z >= prev_z);
    prev_w = w;
    prev_z = z;
  }
}

TEST_CASE("two-sided transform against direct quadrature") {
  // z_phi(x) = Z^{(q+lambda)}(x, Phi(q))
  //          = e^{Phi(q) x} (1 + lambda int_0^x e^{-Phi(q) z} W^{(q+lambda)}(z) dz).
  const SnlpParams p{1.0, 1.0, 6.0, 2.0};
  const double q = 0.5, lambda = 0.1;
  const ScaleModel sm_q = build_scale_model(p, q);
  const ScaleModel sm_ql = build_scale_model(p, q + lambda);
  for (double x : {0.5, 2.0, 5.0}) {
    const double integral = testutil::integrate_ref(
        [&](double z) {
          return std::exp(-sm_q.phi_q * z) * w_scale(sm_ql, z);
        },
        0.0, x, 1e-13);
    const double want = std::exp(sm_q.phi_q * x) * (1.0 + lambda * integral);
    CHECK(z_phi(sm_q, sm_ql, x) == doctest::Approx(want).epsilon(1e-9));
    CHECK(z_phi(sm_q, lambda, x) == doctest::Approx(want).epsilon(1e-9));
  }
  // At and below zero the transform collapses to e^{Phi(q) x}.
  CHECK(z_phi(sm_q, sm_ql, 0.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(z_phi(sm_q, sm_ql, -2.0) ==
        doctest::Approx(std::exp(-2.0 * sm_q.phi_q)).epsilon(1e-13));
}

TEST_CASE("model construction is deterministic") {
  const SnlpParams p{1.0, 1.0, 6.0, 2.0};
  const ScaleModel a = build_scale_model(p, 0.5);
  const ScaleModel b = build_scale_model(p, 0.5);
  CHECK(a.phi_q == b.phi_q);
  REQUIRE(a.num_terms == b.num_terms);
  for (int i = 0; i < a.num_terms; ++i) {
    const auto k = static_cast<std::size_t>(i);
    CHECK(a.xi[k] == b.xi[k]);
    CHECK(a.coeff_b[k] == b.coeff_b[k]);
  }
}
