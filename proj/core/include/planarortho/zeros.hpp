#pragma once

// Simultaneous root extraction for the emitted monic polynomials, and the
// statistics that compare a zero cloud against its limit curves.

#include <vector>

#include "planarortho/geometry.hpp"
#include "planarortho/lax.hpp"

namespace planar {

struct RootSet {
  std::vector<Complex> roots;  // length = degree; multiple roots repeated
  Real residual_bound;         // max Newton correction at the accepted sweep
};

// Aberth-Ehrlich simultaneous iteration on a monic coefficient vector.
// Start points sit on a circle of radius (1 + max |coeff|)^(1/degree),
// spread by the golden angle so no symmetry of the input survives in the
// initial configuration. A sweep reads only the previous sweep's iterates.
// Converged once every correction is below 2^(-mantissa_bits/2); roots
// closer than 2^(-mantissa_bits/4) are snapped to their cluster mean, so a
// multiple root comes back as repeated identical entries. log_scale is
// never read: roots of e^L P and of P coincide.
// Throws convergence_error when 500 sweeps do not reach the tolerance.
RootSet find_roots(const ScaledPolynomial& poly, const PrecisionContext& ctx = {});

// Distance from z to the sampled curve: nearest sample, refined by
// orthogonal projection onto the two adjacent segments (plus the wrap
// segment when closed).
Real distance_to_curve(const Complex& z, const PlanarCurve& curve);

struct ZeroCurveStats {
  Real max_dist;
  Real median_dist;
  Real frac_ext;
  Real frac_int;
};

// Distances from each root to `curve`, and side fractions classified
// against `skeleton` (which must be closed). Roots inside the exclusion
// disk around exclude_near drop out of both the distances and the
// fractions; pass radius 0 to keep everything. OnCurve roots count toward
// neither fraction. An all-excluded cloud reports zeros.
ZeroCurveStats zero_curve_stats(const RootSet& roots, const PlanarCurve& curve,
                                const PlanarCurve& skeleton,
                                const Complex& exclude_near,
                                const Real& exclude_radius);

// Sup distance between the empirical arclength law of the roots projected
// onto measure.curve and the measure's own arclength law (both CDFs taken
// from the curve's sample-0 origin). The measure must live on a closed
// curve.
Real empirical_vs_mu(const RootSet& roots, const CurveMeasure& measure);

}  // namespace planar
