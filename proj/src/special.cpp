// SPDX-License-Identifier: MIT
//
// Parabolic cylinder function via adaptive quadrature of the integral
// representation, organised to stay in floating-point range for large nu.
#include "gittins/special.hpp"

#include <cmath>
#include <stdexcept>

#include "gittins/quadrature.hpp"

namespace gittins {

namespace {

// Exponent g(t) = (nu-1) ln t - x t - t^2/2 of the integrand e^{g(t)};
// g''(t) = -(nu-1)/t^2 - 1 <= -1 for nu >= 1, and the -t^2/2 term alone
// guarantees super-Gaussian decay past the peak in every case.
double log_integrand(double nu, double x, double t) {
  return (nu - 1.0) * std::log(t) - x * t - 0.5 * t * t;
}

}  // namespace

double pcf(double nu, double x) {
  if (!(nu > 0)) throw std::domain_error("pcf: nu must be > 0");

  // Head [0, t_lo]: expand e^{-x t - t^2/2} = sum a_k t^k (recurrence
  // (k+1) a_{k+1} = -x a_k - a_{k-1}) and integrate against t^{nu-1} term by
  // term, which absorbs the t^{nu-1} endpoint behaviour exactly:
  //   int_0^{t_lo} t^{nu-1} e^{-xt-t^2/2} dt = t_lo^nu * sum_k a_k t_lo^k/(nu+k).
  constexpr double t_lo = 0.1;
  constexpr int kTerms = 26;  // truncation below 1e-25 for |x| <= 20
  double head_sum = 1.0 / nu;
  {
    double a_km1 = 0.0, a_k = 1.0, tl_pow = 1.0;
    for (int k = 1; k < kTerms; ++k) {
      const double a_kp1 = -(x * a_k + a_km1) / k;
      a_km1 = a_k;
      a_k = a_kp1;
      tl_pow *= t_lo;
      head_sum += a_k * tl_pow / (nu + k);
    }
  }

  // Peak of g on (0, inf): g'(t) t = (nu-1) - x t - t^2 = 0, larger root when
  // real; otherwise g is decreasing and the effective peak is t_lo.
  const double disc = x * x + 4.0 * (nu - 1.0);
  double peak = t_lo;
  if (disc >= 0.0) peak = std::max(t_lo, 0.5 * (-x + std::sqrt(disc)));
  const double log_peak = log_integrand(nu, x, peak);

  // Body [t_lo, T] scaled by the peak value; g'' <= -1 makes the integrand
  // fall below e^{-112} of the peak at T = peak + 15.
  const double T = peak + 15.0;
  const double body = integrate_adaptive(
      [&](double t) { return std::exp(log_integrand(nu, x, t) - log_peak); },
      t_lo, T, {1e-16, 1e-12, 4000});

  const double head = head_sum * std::exp(nu * std::log(t_lo) - log_peak);

  return std::exp(-0.25 * x * x + log_peak - std::lgamma(nu)) * (head + body);
}

}  // namespace gittins
