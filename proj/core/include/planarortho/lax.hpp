#pragma once

// Coefficient recurrence for the monic orthogonal polynomials of the planar
// weight |z-a|^{2c} e^{-N|z|^2}: the per-step updates with their two closure
// relations, three initialization routes for the seed pair (b0, beta0), and
// synthesis of the polynomial family in coefficient space.

#include <vector>

#include "planarortho/geometry.hpp"

namespace planar {

// Recurrence state after n steps. eta_n and c_n are derived, not stepped:
// eta_n = (1 + beta_n gamma_n) / alpha_n and c_n is the leading coefficient
// of the companion polynomial of degree n-1 (unused at n = 0).
struct CoeffState {
  long n = 0;
  Real a_n;
  Real b_n;
  Real alpha_n;
  Real beta_n;
  Real gamma_n;
  Real eta_n;
  Real c_n;
};

// Polynomial with an explicit scale: value = e^{log_scale} sum coeffs[k] z^k.
// coeffs[degree] is exactly 1.
struct ScaledPolynomial {
  long degree = 0;
  std::vector<Complex> coeffs;
  Real log_scale;
};

enum class InitMode {
  ClosedForm,  // seed (a, 1 + a^2 N); these are the c = 1 values, gated to c = 1
  Contour,     // seed from contour integrals of the weight transform, any c > -1
  Oracle,      // seed inverted from the moment-table Gram-Schmidt answer
};

// omega_n(w) = ((w-a)/w)^c e^{-N a w} / w^n, principal branch, single-valued
// off the cut [0, a].
Complex weight_omega(const ProblemParams& p, long n, const Complex& w);

CoeffState initial_state(const ProblemParams& p, InitMode mode,
                         const PrecisionContext& ctx = {});

// One step n -> n+1. Computed at the current working precision; throws a
// convergence_error naming n when the state degenerates (b_n, alpha_n or
// beta_n vanishing makes the updates divide by zero).
CoeffState step(const CoeffState& s, const ProblemParams& p);

// P_0 .. P_n_max by the two-term synthesis
//   P_{n+1} = (z + a_{n+1} - a_n) P_n - b_n Q_{n-1},
//   Q_n     = c_{n+1} P_n + Q_{n-1}.
// c = 0 short-circuits to P_n = z^n (the radially symmetric weight makes
// monomials orthogonal, and the recurrence degenerates there).
std::vector<ScaledPolynomial> synthesize(const ProblemParams& p, long n_max,
                                         InitMode mode,
                                         const PrecisionContext& ctx = {});

// States 0 .. n_max in one run (the CSV state trace exports this).
std::vector<CoeffState> state_trace(const ProblemParams& p, long n_max,
                                    InitMode mode,
                                    const PrecisionContext& ctx = {});

// Horner evaluation; the result carries log_scale so z^N-sized magnitudes
// survive.
LogComplex evaluate(const ScaledPolynomial& poly, const Complex& z,
                    const PrecisionContext& ctx = {});

}  // namespace planar
