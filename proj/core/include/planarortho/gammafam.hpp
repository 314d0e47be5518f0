#pragma once

// Regularized family with a small disk of charge removed near the insertion
// point: droplet boundary, the mother-body arc S_gamma carrying the measure,
// the density generator y_gamma, and the phase integral phi_gamma. As
// gamma -> 0 all of it collapses onto the gamma = 0 objects in geometry.hpp.

#include <cstddef>
#include <vector>

#include "planarortho/geometry.hpp"

namespace planar {

struct GammaFamilyParams {
  Real a;
  Real gamma;
  // exterior-map data, populated only when exterior_map is true (a >= 1)
  Real alpha;    // cubic root, in (0, 1/a]
  Real rho;      // (1 + a^2 alpha^2) / (2 a alpha)
  Real kappa;    // (1 - alpha^2)(1 - a^2 alpha^2) / (2 a alpha)
  Real b_gamma;  // rho / alpha, real zero of y_gamma
  Complex beta_gamma;  // branch point; upper endpoint of S_gamma when a >= 1,
                       // real and > a when a < 1
  Complex beta_gamma_conj;
  bool exterior_map = false;
};

// Solves the parameter cubic X^3 - ((a^2+4 gamma+2)/(2a^2)) X^2 + 1/(2a^4)
// by bisection on (0, 1/a^2], where the sign change is guaranteed, and fills
// the derived fields. For a < 1 requires 4 a^2 gamma < (1-a^2)^2.
GammaFamilyParams solve_gamma_params(const Real& a, const Real& gamma,
                                     const PrecisionContext& ctx = {});

// Density generator. a >= 1: a(z-b_gamma) R(z) / (z(z-a)) with R the square
// root of (z-beta_gamma)(z-conj) cut along the vertical segment between the
// branch points, positive on (b_gamma, inf). a < 1: the rational expression
// a + gamma/(z-a) - (1+gamma)/z, negated on the Int side.
Complex y_gamma(const GammaFamilyParams& p, const Complex& z,
                Side side = Side::Ext);

// Exterior conformal map rho nu - kappa/(nu-alpha) - kappa/alpha (a >= 1).
Complex f_gamma_map(const GammaFamilyParams& p, const Complex& nu);

struct TraceDiagnostics {
  Real max_re_drift;  // worst per-step |Re d(phi)| / |d(phi)| after projection
  Complex phi_end;    // accumulated integral of y dz along the curve
};

// Traces the trajectory of y^2 dz^2 < 0 through beta_gamma by arclength RK4
// with per-step projection that keeps Re of the accumulated phase at zero.
// a >= 1: open arc ending at beta_gamma_conj; a < 1: closed curve around
// [0, a]. Candidate launch directions at the branch point are tried from the
// most origin-facing one until the trace both reaches its endpoint and
// carries total phase -2 pi i.
PlanarCurve trace_S_gamma(const GammaFamilyParams& p, double step,
                          const PrecisionContext& ctx = {},
                          TraceDiagnostics* diag = nullptr);

// Phase integral of y from beta_gamma to z along a routed path that stays
// off [0, inf) and the branch segment; targets on the positive axis are
// taken as limits from above. Throws if z sits on a pole or the open cut.
Complex phi_gamma(const GammaFamilyParams& p, const Complex& z,
                  const PrecisionContext& ctx = {});

// Quadrature of y dz along an explicit waypoint chain; the building block of
// phi_gamma, exposed so path independence can be checked from outside.
Complex integrate_y_path(const GammaFamilyParams& p,
                         const std::vector<Complex>& waypoints,
                         const PrecisionContext& ctx = {});

// a >= 1: single closed curve, the image of the unit circle under the
// exterior map. a < 1: two closed curves, |z| = sqrt(1+gamma) and the hole
// boundary |z - a| = sqrt(gamma).
std::vector<PlanarCurve> droplet_boundary(const GammaFamilyParams& p,
                                          std::size_t n_samples);

// Density |y_gamma| / (2 pi) sampled on a traced curve; mass 1 on S_gamma.
CurveMeasure mu_gamma_on_curve(const GammaFamilyParams& p,
                               const PlanarCurve& curve);

}  // namespace planar
