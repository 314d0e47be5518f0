#pragma once

// Potential-theoretic geometry for the unperturbed (gamma = 0) problem: the
// limiting skeleton curve, the measure carried on it, the phase function
// phi_A and g-function, level curves of Re phi_A, and the curve the zeros
// accumulate on at finite degree.

#include <vector>

#include "planarortho/mpnum.hpp"

namespace planar {

struct ProblemParams {
  Real a;     // point-charge location, a > 0
  Real c;     // charge strength, c > -1
  Real N;     // external-field scale; equals the degree in every workflow
  Real beta;  // min(a, 1/a): where the skeleton meets the real axis
  Real ell;   // log(beta) - a*beta
};

ProblemParams make_params(const Real& a, const Real& c, const Real& N);

struct PlanarCurve {
  std::vector<Complex> points;
  bool closed = false;
  std::vector<Real> arclength;  // cumulative along points, arclength[0] = 0

  // Total length; for a closed curve this includes the wrap segment.
  Real total_length() const;
  // Largest gap between consecutive samples.
  Real max_spacing() const;
};

// Fills curve.arclength from curve.points.
void compute_arclength(PlanarCurve& curve);

struct CurveMeasure {
  PlanarCurve curve;
  std::vector<Real> density;  // per unit arclength at each sample
  Real total_mass() const;    // trapezoidal
};

enum class Side { Ext, Int };
enum class Region { Ext, Int, OnCurve };

// phi_A(z) = a(z - beta) - log(z / beta), principal log.
Complex phi_A(const ProblemParams& p, const Complex& z);

// g(z) = log z outside the skeleton, a z + ell inside.
Complex g_function(const ProblemParams& p, const Complex& z, Side side);

// The closed level curve |z| = beta exp(a(Re z - beta)) traced by polar rays
// from the origin; passes through beta at angle 0 and encloses the origin.
PlanarCurve trace_skeleton(const ProblemParams& p, long n_samples,
                           const PrecisionContext& ctx = {});

// Density |a - 1/z| / (2 pi) on a traced skeleton; total mass 1.
CurveMeasure mu_on_skeleton(const ProblemParams& p, const PlanarCurve& curve);

// Point-in-polygon against the sampled skeleton, with an OnCurve band of
// ten sample spacings.
Region classify_point(const ProblemParams& p, const PlanarCurve& skeleton,
                      const Complex& z);

// Level curve Re phi_A = eta inside the skeleton (eta = 0 reproduces it).
PlanarCurve eta_curve(const ProblemParams& p, const Real& eta, long n_samples,
                      const PrecisionContext& ctx = {});

// Radius of the disk around beta excluded from finite-degree statements:
// min(|a - beta|, beta) / 3.
Real default_beta_disk_radius(const ProblemParams& p);

// Finite-degree zero-accumulation curve: solves Re phi_A(z) = -RHS(z) with
// the full degree-dependent right-hand side along polar rays, seeded at the
// skeleton. Samples inside the beta-disk (radius exclude_radius, default
// default_beta_disk_radius) are omitted, so the result is an open arc.
// Rays where the solve fails are skipped.
PlanarCurve zero_attraction_curve(const ProblemParams& p, long n, long n_samples,
                                  const PrecisionContext& ctx = {},
                                  double exclude_radius = -1.0);

// Symmetric Hausdorff distance between sampled curves (point-to-segment,
// resolution bias below one sample spacing).
Real hausdorff(const PlanarCurve& A, const PlanarCurve& B);

}  // namespace planar
