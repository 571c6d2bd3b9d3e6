// SPDX-License-Identifier: MIT
//
// Diffusion Gittins indices via resolvent functionals.  The index at x is
// H(x; R) / H(x; 1) where, with psi/phi the increasing/decreasing fundamental
// solutions at rates q and q+lambda, w the Wronskian, and m the speed density,
//
//   H(x; f) = f(x) Theta(x)
//           + lambda d(x) T3f(x)
//           + lambda^2 (d(x)/w_q) [ T4f(x) - A1f(x) T6(x) + T5f(x)
//                                    - (psi_q(x)/phi_q(x)) T2f(x) T6(x) ],
//   Theta(x) = 1 - lambda d(x) T6(x) / phi_q(x),   d(x) = psi_{q+l}(x)/w_{q+l},
//
// built from one left-anchored antiderivative A1f(z) = int_lo^z f psi_q m and
// right-anchored tails T2f..T6 of f phi_q m, f phi_{q+l} m,
// phi_{q+l} phi_q A1f m, phi_{q+l} psi_q T2f m, and phi_{q+l} phi_q m.  Tails
// are accumulated from the truncation point U downward so that their relative
// accuracy follows the local tail magnitude rather than the full-range mass.
#include "gittins/index_diffusion.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "gittins/special.hpp"

namespace gittins {

namespace {

void validate_spec(const DiffusionSpec& spec) {
  switch (spec.kind) {
    case DiffusionKind::bm:
    case DiffusionKind::rbm:
      if (!(spec.sigma > 0.0)) {
        throw std::invalid_argument("diffusion: sigma must be positive");
      }
      break;
    case DiffusionKind::ou:
      if (!(spec.gamma > 0.0)) {
        throw std::invalid_argument("diffusion: gamma must be positive");
      }
      break;
  }
}

// Fundamental solutions psi (increasing) / phi (decreasing) of the resolvent
// equation at one rate, together with the scale-adjusted Wronskian.
struct Fund {
  DiffusionKind kind = DiffusionKind::bm;
  double sigma = 1.0;
  double barrier = 0.0;
  double gam = 1.0;
  double rate = 1.0;
  double beta = 0.0;    // bm/rbm: sqrt(2 rate)/sigma
  double nu = 0.0;      // ou: rate/gamma
  double root2g = 0.0;  // ou: sqrt(2 gamma)
  double wr = 1.0;

  static Fund make(const DiffusionSpec& spec, double rate) {
    if (!(rate > 0.0)) {
      throw std::invalid_argument("diffusion: resolvent rate must be positive");
    }
    Fund f;
    f.kind = spec.kind;
    f.sigma = spec.sigma;
    f.barrier = spec.barrier;
    f.gam = spec.gamma;
    f.rate = rate;
    switch (spec.kind) {
      case DiffusionKind::bm:
        f.beta = std::sqrt(2.0 * rate) / spec.sigma;
        f.wr = 2.0 * f.beta;
        break;
      case DiffusionKind::rbm:
        f.beta = std::sqrt(2.0 * rate) / spec.sigma;
        f.wr = f.beta * std::exp(-f.beta * spec.barrier);
        break;
      case DiffusionKind::ou:
        f.nu = rate / spec.gamma;
        if (f.nu > 170.0) {
          throw std::invalid_argument(
              "diffusion: rate/gamma too large for the OU fundamental system");
        }
        f.root2g = std::sqrt(2.0 * spec.gamma);
        f.wr = 2.0 * std::sqrt(spec.gamma * M_PI) / std::tgamma(f.nu);
        break;
    }
    return f;
  }

  [[nodiscard]] double psi(double u) const {
    switch (kind) {
      case DiffusionKind::bm: return std::exp(beta * u);
      case DiffusionKind::rbm: return std::cosh(beta * (u - barrier));
      case DiffusionKind::ou:
        return std::exp(0.5 * gam * u * u) * pcf(nu, -u * root2g);
    }
    return 0.0;
  }

  [[nodiscard]] double phi(double u) const {
    switch (kind) {
      case DiffusionKind::bm:
      case DiffusionKind::rbm: return std::exp(-beta * u);
      case DiffusionKind::ou:
        return std::exp(0.5 * gam * u * u) * pcf(nu, u * root2g);
    }
    return 0.0;
  }
};

double speed_density_unchecked(const DiffusionSpec& spec, double y) {
  if (spec.kind == DiffusionKind::ou) {
    return 2.0 * std::exp(-spec.gamma * y * y);
  }
  return 2.0 / (spec.sigma * spec.sigma);
}

// Tail antiderivative T(x) = int_x^U g: stored as a forward antiderivative of
// v -> g(U - v) so the accumulated rounding error scales with T(x) itself.
struct TailAnti {
  PiecewiseChebyshev rev;
  double U = 0.0;

  [[nodiscard]] double operator()(double x) const {
    return rev.antiderivative(U - x);
  }
};

template <typename F>
TailAnti build_tail(F&& g, double lo, double U, double rel_tol) {
  auto reflected = [g = std::forward<F>(g), U](double v) { return g(U - v); };
  return TailAnti{
      PiecewiseChebyshev::build(reflected, 0.0, U - lo, rel_tol, 1e-290), U};
}

constexpr double kBuildRelTol = 1e-11;

}  // namespace

// ============================================================================
// Free kernel functions
// ============================================================================

double speed_density(const DiffusionSpec& spec, double y) {
  validate_spec(spec);
  if (spec.kind == DiffusionKind::rbm && y < spec.barrier) {
    throw std::domain_error("speed_density: point below the RBM barrier");
  }
  return speed_density_unchecked(spec, y);
}

double phi_ratio(const DiffusionSpec& spec, double q, double x, double y) {
  validate_spec(spec);
  if (!(q > 0.0)) {
    throw std::invalid_argument("phi_ratio: q must be positive");
  }
  if (y > x) {
    throw std::domain_error("phi_ratio: requires y <= x");
  }
  if (spec.kind == DiffusionKind::rbm && y < spec.barrier) {
    throw std::domain_error("phi_ratio: point below the RBM barrier");
  }
  switch (spec.kind) {
    case DiffusionKind::bm:
    case DiffusionKind::rbm: {
      const double beta = std::sqrt(2.0 * q) / spec.sigma;
      return std::exp(-beta * (x - y));
    }
    case DiffusionKind::ou: {
      const double nu = q / spec.gamma;
      const double s = std::sqrt(2.0 * spec.gamma);
      return std::exp(0.5 * spec.gamma * (x * x - y * y)) * pcf(nu, x * s) /
             pcf(nu, y * s);
    }
  }
  return 0.0;
}

double green(const DiffusionSpec& spec, double alpha_rate, double x, double y) {
  validate_spec(spec);
  if (spec.kind == DiffusionKind::rbm &&
      (x < spec.barrier || y < spec.barrier)) {
    throw std::domain_error("green: point below the RBM barrier");
  }
  const Fund f = Fund::make(spec, alpha_rate);
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  return f.psi(lo) * f.phi(hi) / f.wr;
}

// ============================================================================
// Shared-precomputation index evaluator
// ============================================================================

struct DiffusionIndexEvaluator::Impl {
  DiffusionSpec spec{};
  double q = 0.0;
  double lambda = 0.0;
  RewardSpec reward{};
  double lo = 0.0;  // left end of the antiderivative domain (= eval_lo)
  double hi = 0.0;  // largest supported evaluation point
  double U = 0.0;   // tail truncation point

  Fund fq{};   // rate q
  Fund fql{};  // rate q + lambda

  struct FTables {
    PiecewiseChebyshev a1;  // int_lo^z f psi_q m
    TailAnti t2;            // int_z^U f phi_q m
    TailAnti t3;            // int_z^U f phi_{q+l} m
    TailAnti t4;            // int_z^U phi_{q+l} phi_q A1f m
    TailAnti t5;            // int_z^U phi_{q+l} psi_q T2f m
  };
  FTables fr{};  // f = reward
  FTables fo{};  // f = 1
  TailAnti t6{};  // int_z^U phi_{q+l} phi_q m

  Impl(const DiffusionSpec& spec_in, double q_in, double lambda_in,
       RewardSpec reward_in, double eval_lo, double eval_hi)
      : spec(spec_in), q(q_in), lambda(lambda_in), reward(std::move(reward_in)) {
    validate_spec(spec);
    if (!(q > 0.0)) {
      throw std::invalid_argument("gittins_diffusion: q must be positive");
    }
    if (!(lambda > 0.0)) {
      throw std::invalid_argument("gittins_diffusion: lambda must be positive");
    }
    if (!(eval_lo <= eval_hi)) {
      throw std::invalid_argument("gittins_diffusion: empty evaluation range");
    }
    lo = eval_lo;
    hi = eval_hi;
    if (spec.kind == DiffusionKind::rbm) {
      lo = std::max(lo, spec.barrier);
      hi = std::max(hi, lo);
    }

    fq = Fund::make(spec, q);
    fql = Fund::make(spec, q + lambda);

    const double pad = std::log(2.0 + std::abs(hi) + std::abs(lo));
    if (spec.kind == DiffusionKind::ou) {
      const double hm = std::max(hi, 0.0);
      U = std::sqrt(hm * hm + (52.0 + 2.0 * pad) / spec.gamma);
    } else {
      U = hi + (52.0 + pad) / fql.beta;
    }

    auto m = [this](double u) { return speed_density_unchecked(spec, u); };
    auto build_f = [&](auto f) {
      FTables t;
      t.a1 = PiecewiseChebyshev::build(
          [&](double u) { return f(u) * fq.psi(u) * m(u); }, lo, U,
          kBuildRelTol, 1e-290);
      t.t2 = build_tail([&](double u) { return f(u) * fq.phi(u) * m(u); }, lo,
                        U, kBuildRelTol);
      t.t3 = build_tail([&](double u) { return f(u) * fql.phi(u) * m(u); }, lo,
                        U, kBuildRelTol);
      t.t4 = build_tail(
          [&](double u) {
            return fql.phi(u) * fq.phi(u) * t.a1.antiderivative(u) * m(u);
          },
          lo, U, kBuildRelTol);
      t.t5 = build_tail(
          [&](double u) { return fql.phi(u) * fq.psi(u) * t.t2(u) * m(u); },
          lo, U, kBuildRelTol);
      return t;
    };
    fr = build_f([this](double u) { return reward(u); });
    fo = build_f([](double) { return 1.0; });
    t6 = build_tail([&](double u) { return fql.phi(u) * fq.phi(u) * m(u); },
                    lo, U, kBuildRelTol);
  }

  [[nodiscard]] double theta_at(double x) const {
    return 1.0 - lambda * (fql.psi(x) / fql.wr) * t6(x) / fq.phi(x);
  }

  [[nodiscard]] double functional(double x, double fx,
                                  const FTables& t) const {
    const double psq = fq.psi(x);
    const double phq = fq.phi(x);
    const double d = fql.psi(x) / fql.wr;
    const double t6x = t6(x);
    const double theta = 1.0 - lambda * d * t6x / phq;
    const double bracket = t.t4(x) - t.a1.antiderivative(x) * t6x + t.t5(x) -
                           (psq / phq) * t.t2(x) * t6x;
    return fx * theta + lambda * d * t.t3(x) +
           lambda * lambda * (d / fq.wr) * bracket;
  }

  [[nodiscard]] double gamma_at(double x) const {
    if (spec.kind == DiffusionKind::rbm && x < spec.barrier) {
      x = spec.barrier;
    }
    const double slack = 1e-9 * (1.0 + std::abs(lo) + std::abs(hi));
    if (x < lo - slack || x > hi + slack) {
      throw std::domain_error(
          "gittins_diffusion: point outside the evaluator range");
    }
    x = std::min(std::max(x, lo), hi);
    const double theta = theta_at(x);
    if (!(theta > 0.0) || !(theta < 1.0 + 1e-9)) {
      throw std::runtime_error(
          "gittins_diffusion: Theta(x) outside (0,1); quadrature failure");
    }
    const double num = functional(x, reward(x), fr);
    const double den = functional(x, 1.0, fo);
    if (!(den > 0.0)) {
      throw std::runtime_error(
          "gittins_diffusion: denominator functional not positive");
    }
    return num / den;
  }
};

DiffusionIndexEvaluator::DiffusionIndexEvaluator(const DiffusionSpec& spec,
                                                 double q, double lambda,
                                                 RewardSpec reward,
                                                 double eval_lo, double eval_hi)
    : impl_(std::make_unique<Impl>(spec, q, lambda, std::move(reward), eval_lo,
                                   eval_hi)) {}

DiffusionIndexEvaluator::~DiffusionIndexEvaluator() = default;
DiffusionIndexEvaluator::DiffusionIndexEvaluator(
    DiffusionIndexEvaluator&&) noexcept = default;
DiffusionIndexEvaluator& DiffusionIndexEvaluator::operator=(
    DiffusionIndexEvaluator&&) noexcept = default;

double DiffusionIndexEvaluator::gamma(double x) const {
  return impl_->gamma_at(x);
}

double DiffusionIndexEvaluator::eval_lo() const { return impl_->lo; }
double DiffusionIndexEvaluator::eval_hi() const { return impl_->hi; }

// ============================================================================
// Stopped discrete resolvent (reference implementation)
// ============================================================================

double resolvent_until_down(const DiffusionSpec& spec, double q, double lambda,
                            double y,
                            const std::function<double(double)>& h) {
  validate_spec(spec);
  if (!(q > 0.0) || !(lambda > 0.0)) {
    throw std::invalid_argument(
        "resolvent_until_down: q and lambda must be positive");
  }
  if (!h) {
    throw std::invalid_argument("resolvent_until_down: empty integrand");
  }
  if (spec.kind == DiffusionKind::rbm && y < spec.barrier) {
    throw std::domain_error(
        "resolvent_until_down: start below the RBM barrier");
  }

  const Fund fq = Fund::make(spec, q);
  const Fund fql = Fund::make(spec, q + lambda);
  auto m = [&spec](double u) { return speed_density_unchecked(spec, u); };

  double U = 0.0;
  double L = 0.0;
  const double pad = std::log(2.0 + std::abs(y));
  if (spec.kind == DiffusionKind::ou) {
    U = std::sqrt(y * y + (52.0 + 2.0 * pad) / spec.gamma);
    L = -U;
  } else {
    const double reach = (52.0 + pad) / fql.beta;
    U = y + reach;
    L = (spec.kind == DiffusionKind::rbm) ? spec.barrier : y - reach;
  }

  // The occupation measure gives no mass to the single point y, so on the
  // right half-line h only enters through its values on (y, U].  Pinning the
  // evaluation point strictly above y keeps integrands smooth there even when
  // h jumps exactly at y (the indicator 1_{(y,inf)} of the renewal
  // identities); Chebyshev nodes would otherwise straddle the jump.
  const double y_up =
      std::nextafter(y, std::numeric_limits<double>::infinity());
  auto hr = [&h, y_up](double u) { return h(u < y_up ? y_up : u); };

  const QuadratureOptions qo{1e-300, 3e-11, 20000};
  const double i_left =
      (L < y) ? integrate_adaptive(
                    [&](double u) { return h(u) * fql.psi(u) * m(u); }, L, y, qo)
              : 0.0;
  const double i_right = integrate_adaptive(
      [&](double u) { return hr(u) * fql.phi(u) * m(u); }, y, U, qo);
  const double t1 = (fql.phi(y) * i_left + fql.psi(y) * i_right) / fql.wr;

  // K_h(z) = int_{u>y} h(u) [G_q(z,u) - (phi_q(z)/phi_q(y)) G_q(y,u)] m(du)
  auto pa = PiecewiseChebyshev::build(
      [&](double u) { return hr(u) * fq.psi(u) * m(u); }, y, U, kBuildRelTol,
      1e-290);
  auto qt = build_tail([&](double u) { return hr(u) * fq.phi(u) * m(u); }, y, U,
                       kBuildRelTol);
  const double qd_y = qt(y);
  const double ratio_y = fq.psi(y) / fq.phi(y);
  auto kernel = [&](double z) {
    return (fq.phi(z) * pa.antiderivative(z) + fq.psi(z) * qt(z) -
            fq.phi(z) * ratio_y * qd_y) /
           fq.wr;
  };
  const double i2 = integrate_adaptive(
      [&](double z) { return fql.phi(z) * kernel(z) * m(z); }, y, U, qo);
  const double i_theta = integrate_adaptive(
      [&](double z) { return fq.phi(z) * fql.phi(z) * m(z); }, y, U, qo);

  const double theta =
      1.0 - lambda * (fql.psi(y) / fql.wr) * i_theta / fq.phi(y);
  if (!(theta > 0.0)) {
    throw std::runtime_error(
        "resolvent_until_down: Theta(y) not positive; quadrature failure");
  }
  return (t1 + lambda * (fql.psi(y) / fql.wr) * i2) / theta;
}

double gittins_diffusion(const DiffusionSpec& spec, double q, double lambda,
                         const RewardSpec& reward, double x) {
  validate_spec(spec);
  if (spec.kind == DiffusionKind::rbm && x < spec.barrier) {
    x = spec.barrier;
  }
  DiffusionIndexEvaluator ev(spec, q, lambda, reward, x, x);
  return ev.gamma(x);
}

}  // namespace gittins
