#pragma once

// Special functions and quadrature engines used across the library: gamma
// helpers, the parabolic cylinder function D_{-c} through two independent
// routes, the Hankel-loop function fhat with its expansion coefficients, and
// generic closed-contour / finite-segment quadrature.

#include <array>
#include <functional>
#include <vector>

#include "planarortho/mp.hpp"

namespace planar {

struct PrecisionContext {
  long mantissa_bits = 256;
  long quadrature_nodes = 512;

  void validate() const {
    if (mantissa_bits < 64) throw domain_error("PrecisionContext: mantissa_bits must be >= 64");
    if (quadrature_nodes < 8) throw domain_error("PrecisionContext: quadrature_nodes must be >= 8");
  }
};

// ln Gamma(x), x > 0.
Real log_gamma(const Real& x, const PrecisionContext& ctx = {});

// 1/Gamma(x) for any real x; exactly 0 at the poles x = 0, -1, -2, ...
Real reciprocal_gamma(const Real& x, const PrecisionContext& ctx = {});

// (x)_n = x(x+1)...(x+n-1), direct product, (x)_0 = 1.
Real pochhammer(const Real& x, long n, const PrecisionContext& ctx = {});

// Closed curve as a periodic parametrization over t in [0, 2pi).
struct ParametricContour {
  std::function<Complex(const Real&)> z;
  std::function<Complex(const Real&)> dz;
};

ParametricContour circle_contour(const Complex& center, const Real& radius);

// Trapezoidal rule with node doubling; geometric convergence for integrands
// analytic near the contour. Throws convergence_error when doubling stalls.
Complex contour_quadrature(const std::function<Complex(const Complex&)>& f,
                           const ParametricContour& contour,
                           const PrecisionContext& ctx = {});

// tanh-sinh quadrature on [a, b]; tolerates integrable endpoint
// singularities. f receives the abscissa.
Complex tanh_sinh(const std::function<Complex(const Real&)>& f, const Real& a,
                  const Real& b, const PrecisionContext& ctx = {});

struct QuadratureRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

// n-point Gauss-Legendre rule on [-1, 1], Newton-refined to working
// precision.
QuadratureRule gauss_legendre(long n, const PrecisionContext& ctx = {});

// D_{-c}(zeta) by vertical-line quadrature of its integral representation,
// valid for every complex zeta, c > -1. Working precision is raised
// internally to absorb the cancellation the line integral suffers when
// |zeta| is large.
Complex weber_D(const Real& c, const Complex& zeta, const PrecisionContext& ctx = {});

struct AsymptoticValue {
  Complex value;
  Real bound;  // rigorous remainder bound on |D_{-c}(zeta) - value|
};

// Divergent-series route for D_{-c}, |arg zeta| < pi/2. The remainder bound
// carries the proven constant 2^{n+2}, which is only valid once
// |zeta^2| >= 2|1-2c|; outside that gate the call is refused.
AsymptoticValue weber_D_asymptotic(const Real& c, const Complex& zeta, long terms,
                                   const PrecisionContext& ctx = {});

// Absolute residuals of the three D-function connection identities (the
// first one rescaled by 1/Gamma(1-c) so it stays finite at integer c).
std::array<Real, 3> weber_connection_residuals(const Real& c, const Complex& zeta,
                                               const PrecisionContext& ctx = {});

// fhat(zeta) = -(1/2i pi) Int_L e^s s^{-c} / (s - zeta) ds over a keyhole
// loop around (-inf, 0]: rays at angles +-(pi - ray_delta) joined by a circle
// of radius 1e-3. zeta closer than 1e-6 to the contour is refused; pass a
// different ray_delta to rotate the rays away.
Complex fhat(const Real& c, const Complex& zeta, const PrecisionContext& ctx = {},
             double ray_delta = 0.2);

// Expansion coefficients of fhat at infinity:
// c_k = (-1)^{k-1} sin(c pi) Gamma(k-c) / pi, a removable point at integer c.
Real hankel_ck(const Real& c, long k, const PrecisionContext& ctx = {});

}  // namespace planar
