// SPDX-License-Identifier: MIT
//
// One-dimensional quadrature helpers used throughout the library:
//  - integrate_adaptive: globally adaptive Gauss-Kronrod 7-15 integration on a
//    finite interval, refining the interval with the largest error estimate.
//  - PiecewiseChebyshev: adaptive piecewise-Chebyshev *antiderivative* of a
//    smooth integrand, evaluable at arbitrary points of its domain.  Used to
//    turn nested integrals into cheap function evaluations.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace gittins {

// ===================================================================== GK 7-15

namespace detail {

// Kronrod 15-point abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights on the odd-indexed nodes.
inline constexpr std::array<double, 8> kGkNodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct PanelResult {
  double integral = 0;  // 15-point Kronrod value
  double error = 0;     // |K15 - G7| based estimate
};

template <class F>
PanelResult gk15_panel(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double k15 = 0, g7 = 0;
  for (std::size_t i = 0; i < 8; ++i) {
    const double dx = half * kGkNodes[i];
    double v;
    if (i == 7) {
      v = f(mid);
      k15 += kKronrodWeights[i] * v;
      g7 += kGaussWeights[3] * v;
    } else {
      v = f(mid - dx) + f(mid + dx);
      k15 += kKronrodWeights[i] * v;
      if (i % 2 == 1) g7 += kGaussWeights[i / 2] * v;
    }
  }
  PanelResult r;
  r.integral = half * k15;
  // Standard rescaled error estimate; the plain |K-G| difference is already
  // conservative for the smooth integrands used here.
  r.error = std::abs(half * (k15 - g7));
  return r;
}

}  // namespace detail

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_panels = 4000;
};

// Globally adaptive integration of f over [a, b].  Throws std::runtime_error
// if the error estimate cannot be brought below the requested tolerance.
template <class F>
double integrate_adaptive(F&& f, double a, double b,
                          const QuadratureOptions& opts = {}) {
  if (a == b) return 0.0;
  struct Panel {
    double a, b, integral, error;
    bool operator<(const Panel& o) const { return error < o.error; }
  };
  std::priority_queue<Panel> heap;
  auto first = detail::gk15_panel(f, a, b);
  heap.push({a, b, first.integral, first.error});
  double total = first.integral;
  double total_err = first.error;
  int panels = 1;
  while (total_err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
    if (panels >= opts.max_panels)
      throw std::runtime_error(
          "integrate_adaptive: failed to converge (achieved error " +
          std::to_string(total_err) + " with " + std::to_string(panels) +
          " panels)");
    Panel worst = heap.top();
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    auto left = detail::gk15_panel(f, worst.a, m);
    auto right = detail::gk15_panel(f, m, worst.b);
    total += left.integral + right.integral - worst.integral;
    total_err += left.error + right.error - worst.error;
    heap.push({worst.a, m, left.integral, left.error});
    heap.push({m, worst.b, right.integral, right.error});
    ++panels;
  }
  return total;
}

// ========================================================= PiecewiseChebyshev

// Adaptive piecewise-Chebyshev antiderivative builder.  build(f, a, b) fits
// degree-16 Chebyshev interpolants of f on adaptively split segments of
// [a, b], accepting a segment when the coefficient tail is negligible, and
// stores the (exactly integrated) antiderivative of each interpolant.  The
// resulting object evaluates F(x) = integral of f over [a, x] in O(log
// segments + degree) time.
class PiecewiseChebyshev {
 public:
  static constexpr int kDegree = 16;  // 17 Chebyshev-Lobatto nodes per segment

  template <class F>
  static PiecewiseChebyshev build(F&& f, double a, double b,
                                  double rel_tol = 1e-11,
                                  double abs_tol = 1e-14,
                                  int max_segments = 20000) {
    if (!(b > a)) throw std::invalid_argument("PiecewiseChebyshev: empty domain");
    PiecewiseChebyshev pc;
    pc.lo_ = a;
    pc.hi_ = b;
    const double min_width = (b - a) * 0x1p-45;
    // Depth-first left-to-right so segments come out sorted.
    struct Job {
      double a, b;
    };
    std::vector<Job> stack{{a, b}};
    double cumulative = 0;
    while (!stack.empty()) {
      Job j = stack.back();
      stack.pop_back();
      Segment seg;
      double tail, scale;
      fit_segment(f, j.a, j.b, seg, tail, scale);
      const bool ok = tail <= abs_tol / (b - a) + rel_tol * scale;
      if (!ok && j.b - j.a > min_width) {
        if (static_cast<int>(pc.segments_.size()) + static_cast<int>(stack.size()) >= max_segments)
          throw std::runtime_error("PiecewiseChebyshev: segment budget exhausted");
        const double m = 0.5 * (j.a + j.b);
        stack.push_back({m, j.b});  // pushed first, popped second
        stack.push_back({j.a, m});
        continue;
      }
      if (!ok && !(tail <= 1e6 * (abs_tol / (b - a) + rel_tol * scale)))
        throw std::runtime_error("PiecewiseChebyshev: integrand not resolvable");
      seg.offset = cumulative;
      cumulative += seg.coeff_total;
      pc.segments_.push_back(seg);
    }
    pc.total_ = cumulative;
    return pc;
  }

  // integral of f over [domain_lo, x]; x clamped to the domain.
  [[nodiscard]] double antiderivative(double x) const {
    if (x <= lo_) return 0.0;
    if (x >= hi_) return total_;
    // binary search for the segment containing x
    std::size_t lo = 0, hi = segments_.size();
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      if (segments_[mid].a <= x)
        lo = mid;
      else
        hi = mid;
    }
    const Segment& s = segments_[lo];
    const double t = (2.0 * x - (s.a + s.b)) / (s.b - s.a);
    return s.offset + clenshaw(s.anti, t);
  }

  [[nodiscard]] double total() const { return total_; }
  [[nodiscard]] double domain_lo() const { return lo_; }
  [[nodiscard]] double domain_hi() const { return hi_; }
  [[nodiscard]] std::size_t segment_count() const { return segments_.size(); }

 private:
  struct Segment {
    double a = 0, b = 0;
    std::array<double, kDegree + 2> anti{};  // antiderivative coefficients
    double coeff_total = 0;                  // integral of f over [a, b]
    double offset = 0;                       // integral of f over [domain_lo, a]
  };

  static double clenshaw(const std::array<double, kDegree + 2>& c, double t) {
    double b1 = 0, b2 = 0;
    for (int k = kDegree + 1; k >= 1; --k) {
      const double bk = 2.0 * t * b1 - b2 + c[static_cast<std::size_t>(k)];
      b2 = b1;
      b1 = bk;
    }
    return c[0] + t * b1 - b2;
  }

  // Chebyshev-Lobatto interpolation of f on [a, b] followed by exact
  // integration of the interpolant; `tail` reports the trailing-coefficient
  // magnitude used as the convergence estimate, `scale` the value scale.
  template <class F>
  static void fit_segment(F&& f, double a, double b, Segment& seg, double& tail,
                          double& scale) {
    constexpr int N = kDegree;
    static const auto cos_table = [] {
      std::array<double, 2 * N> t{};
      for (int m = 0; m < 2 * N; ++m)
        t[static_cast<std::size_t>(m)] = std::cos(M_PI * m / N);
      return t;
    }();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::array<double, N + 1> v{};
    scale = 0;
    for (int j = 0; j <= N; ++j) {
      // node t_j = cos(pi j / N); j = 0 is the right endpoint
      const double x = mid + half * cos_table[static_cast<std::size_t>(j % (2 * N))];
      v[static_cast<std::size_t>(j)] = f(x);
      scale = std::max(scale, std::abs(v[static_cast<std::size_t>(j)]));
    }
    std::array<double, N + 1> c{};
    for (int k = 0; k <= N; ++k) {
      double s = 0.5 * (v[0] * cos_table[0] +
                        v[N] * cos_table[static_cast<std::size_t>((N * k) % (2 * N))]);
      for (int j = 1; j < N; ++j)
        s += v[static_cast<std::size_t>(j)] *
             cos_table[static_cast<std::size_t>((j * k) % (2 * N))];
      c[static_cast<std::size_t>(k)] = 2.0 * s / N;
    }
    c[0] *= 0.5;
    c[N] *= 0.5;
    tail = std::abs(c[N]) + std::abs(c[N - 1]) + std::abs(c[N - 2]);

    // antiderivative coefficients on [-1, 1] ...
    std::array<double, N + 2> C{};
    C[1] = c[0] - 0.5 * c[2];
    for (int m = 2; m <= N + 1; ++m) {
      const double cm1 = c[static_cast<std::size_t>(m - 1)];
      const double cp1 = (m + 1 <= N) ? c[static_cast<std::size_t>(m + 1)] : 0.0;
      C[static_cast<std::size_t>(m)] = (cm1 - cp1) / (2.0 * m);
    }
    // ... scaled to the physical variable and anchored so F(a) = 0
    for (int m = 1; m <= N + 1; ++m) C[static_cast<std::size_t>(m)] *= half;
    double at_left = 0;
    for (int m = 1; m <= N + 1; ++m)
      at_left += (m % 2 == 0 ? 1.0 : -1.0) * C[static_cast<std::size_t>(m)];
    C[0] = -at_left;
    seg.a = a;
    seg.b = b;
    seg.anti = C;
    seg.coeff_total = clenshaw(C, 1.0);
  }

  std::vector<Segment> segments_;
  double lo_ = 0, hi_ = 0, total_ = 0;
};

}  // namespace gittins
