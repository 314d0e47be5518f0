#pragma once

// Independent ground truth for the orthogonal polynomials: moment tables of
// the weight |z-a|^{2c} e^{-N|z|^2} (exact binomial sums at integer c, polar
// product quadrature otherwise) and Gram-Schmidt construction from them.
// Desk-scale by design; the recurrence is the production path.

#include "planarortho/lax.hpp"

namespace planar {

enum class MomentMode { ClosedForm, Quadrature };

struct MomentTable {
  long size = 0;
  MomentMode mode = MomentMode::ClosedForm;
  // entries[j][k] = integral z^j conj(z)^k |z-a|^{2c} e^{-N|z|^2} dA(z);
  // Hermitian by construction.
  std::vector<std::vector<Complex>> entries;

  const Complex& at(long j, long k) const;
};

// pi delta_{jk} k! / N^{k+1}: moments of the bare Gaussian weight.
Complex gaussian_moment(long j, long k, const Real& N,
                        const PrecisionContext& ctx = {});

// Moment table up to monomial degree size-1. Integer c expands |z-a|^{2c}
// binomially over gaussian_moment (exact); other c uses Gauss-Legendre radial
// times trapezoid angular quadrature with an accuracy target of 1e-10. The
// resolution overrides exist for convergence studies; 0 picks the default
// scaling with size.
MomentTable perturbed_moments(const ProblemParams& p, long size,
                              const PrecisionContext& ctx = {},
                              long radial_nodes = 0, long angular_nodes = 0);

// <f, g> against the table, both polynomials as coefficient vectors.
Complex moment_inner_product(const MomentTable& m,
                             const std::vector<Complex>& f,
                             const std::vector<Complex>& g,
                             const PrecisionContext& ctx = {});

struct OrthoSet {
  std::vector<ScaledPolynomial> polys;  // monic, degrees 0 .. n_max
  std::vector<Real> norms;              // h_n = <P_n, P_n>, all > 0
};

// Monic orthogonal polynomials by Gram-Schmidt on the monomial basis.
// Requires n_max < moments.size; pivot loss throws a precision_error
// advising a higher mantissa_bits.
OrthoSet gram_schmidt(const MomentTable& moments, long n_max,
                      const PrecisionContext& ctx = {});

}  // namespace planar
