// SPDX-License-Identifier: MIT
//
// Special functions: numerical evaluation of the parabolic cylinder function
// D_{-nu}(x) for nu > 0 from its integral representation
//   D_{-nu}(x) = e^{-x^2/4} / Gamma(nu) * int_0^inf t^{nu-1} e^{-x t - t^2/2} dt.
#pragma once

namespace gittins {

// Parabolic cylinder function D_{-nu}(x), nu > 0, any real x.
// Relative accuracy ~1e-11; strictly decreasing in x.
// Throws std::domain_error for nu <= 0.
[[nodiscard]] double pcf(double nu, double x);

}  // namespace gittins
