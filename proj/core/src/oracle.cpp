#include "planarortho/oracle.hpp"

namespace planar {

namespace {

Real round_to(const Real& x, long bits) {
  PrecGuard g(bits);
  return x.rounded();
}

Complex round_to(const Complex& z, long bits) {
  PrecGuard g(bits);
  return {z.re.rounded(), z.im.rounded()};
}

// c as a nonnegative integer if it is one, else -1
long integer_charge(const Real& c) {
  if (!(c >= 0.0)) return -1;
  if (!(c == floor_r(c))) return -1;
  double cd = c.to_double();
  if (cd > 1e9) return -1;
  return (long)cd;
}

Real factorial(long k) {
  Real f(1.0);
  for (long i = 2; i <= k; ++i) f *= double(i);
  return f;
}

// C(m, p) for integer m >= p >= 0, exact
Real binomial(long m, long p) {
  if (p < 0 || p > m) return Real(0.0);
  Real b(1.0);
  for (long i = 1; i <= p; ++i) b = b * double(m - p + i) / double(i);
  return b;
}

// all Cholesky pivots > 0; the moment tables must be positive definite or
// the quadrature (or the parameters) went wrong
void require_positive_definite(const std::vector<std::vector<Complex>>& m, long n,
                               const char* who) {
  std::vector<std::vector<Complex>> L(n, std::vector<Complex>(n, Complex(0.0)));
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j <= i; ++j) {
      Complex s = m[i][j];
      for (long k = 0; k < j; ++k) s -= L[i][k] * conj(L[j][k]);
      if (i == j) {
        if (!s.re.is_finite() || !(s.re > 0.0))
          throw convergence_error(std::string(who) +
                                  ": Gram matrix is not positive definite");
        L[i][i] = Complex(sqrt(s.re));
      } else {
        L[i][j] = s / L[j][j].re;
      }
    }
  }
}

}  // namespace

const Complex& MomentTable::at(long j, long k) const {
  if (j < 0 || k < 0 || j >= size || k >= size)
    throw domain_error("MomentTable: index outside the table");
  return entries[j][k];
}

Complex gaussian_moment(long j, long k, const Real& N, const PrecisionContext& ctx) {
  ctx.validate();
  if (j < 0 || k < 0) throw domain_error("gaussian_moment: need j, k >= 0");
  if (!(N > 0.0)) throw domain_error("gaussian_moment: need N > 0");
  if (j != k) return Complex(0.0);
  PrecGuard g(ctx.mantissa_bits + 32);
  Real v = const_pi() * factorial(k) / pow(N, k + 1);
  return Complex(round_to(v, ctx.mantissa_bits));
}

MomentTable perturbed_moments(const ProblemParams& p, long size,
                              const PrecisionContext& ctx, long radial_nodes,
                              long angular_nodes) {
  ctx.validate();
  if (size < 1) throw domain_error("perturbed_moments: need size >= 1");
  if (size > 64) throw domain_error("perturbed_moments: desk-scale oracle, size <= 64");

  MomentTable table;
  table.size = size;
  table.entries.assign(size, std::vector<Complex>(size, Complex(0.0)));

  const long m_charge = integer_charge(p.c);
  if (m_charge >= 0) {
    table.mode = MomentMode::ClosedForm;
    PrecGuard g(ctx.mantissa_bits + 64);
    for (long j = 0; j < size; ++j) {
      for (long k = 0; k <= j; ++k) {
        // only binomial terms with j+p = k+q survive the angular integral
        Real sum(0.0);
        for (long pp = 0; pp <= m_charge; ++pp) {
          long q = j + pp - k;
          if (q < 0 || q > m_charge) continue;
          long s = j + pp;
          long e = 2 * m_charge - pp - q;
          Real term = binomial(m_charge, pp) * binomial(m_charge, q) *
                      pow(p.a, e) * const_pi() * factorial(s) / pow(p.N, s + 1);
          if (e % 2 == 1) term = -term;
          sum += term;
        }
        Complex v(round_to(sum, ctx.mantissa_bits));
        table.entries[j][k] = v;
        table.entries[k][j] = v;
      }
    }
  } else {
    table.mode = MomentMode::Quadrature;
    PrecGuard g(ctx.mantissa_bits + 32);
    PrecisionContext work{ctx.mantissa_bits + 32, ctx.quadrature_nodes};

    const long n_r = radial_nodes > 0 ? radial_nodes : 48 + 4 * size;
    long M = angular_nodes > 0 ? angular_nodes : 256 * (size + 4);
    if (M % 2 == 1) ++M;

    // truncation radius: the discarded Gaussian tail sits below 2^{-64-size}
    const Real R = sqrt(Real(double(64 + size)) * log(Real(2.0)) / p.N) + p.a;
    const long d_max = size - 1;
    const Real two_pi = const_pi() * 2.0;

    std::vector<Real> cos_theta(M / 2 + 1);
    for (long q = 0; q <= M / 2; ++q)
      cos_theta[q] = cos(two_pi * double(q) / double(M));

    QuadratureRule rule = gauss_legendre(n_r, work);

    std::vector<std::vector<Real>> acc(size, std::vector<Real>(size, Real(0.0)));
    std::vector<Real> ang(d_max + 1);
    std::vector<Real> rpow(2 * d_max + 1);

    // two panels split at r = a; the angular integral has a |r-a|^{2c+1}
    // kink there and Gauss-Legendre wants it at a panel edge
    const Real panel_edges[3] = {Real(0.0), p.a, R};
    for (int panel = 0; panel < 2; ++panel) {
      const Real lo = panel_edges[panel], hi = panel_edges[panel + 1];
      const Real mid = (lo + hi) * 0.5, rad = (hi - lo) * 0.5;
      for (long i = 0; i < n_r; ++i) {
        const Real r = mid + rad * rule.nodes[i];
        const Real base = rad * rule.weights[i] * r * exp(-p.N * r * r);
        if (base.is_zero()) continue;
        const Real rr_aa = r * r + p.a * p.a;
        const Real two_ar = 2.0 * p.a * r;
        for (long d = 0; d <= d_max; ++d) ang[d] = Real(0.0);
        for (long q = 0; q <= M / 2; ++q) {
          const Real& cs = cos_theta[q];
          Real w = pow(rr_aa - two_ar * cs, p.c);
          if (!(q == 0 || q == M / 2)) w += w;  // fold theta <-> 2pi - theta
          // cos(d theta) by recurrence
          Real cd_prev(1.0), cd = cs;
          ang[0] += w;
          for (long d = 1; d <= d_max; ++d) {
            ang[d] += w * cd;
            Real cd_next = 2.0 * cs * cd - cd_prev;
            cd_prev = cd;
            cd = cd_next;
          }
        }
        const Real scale = base * two_pi / double(M);
        rpow[0] = Real(1.0);
        for (long s = 1; s <= 2 * d_max; ++s) rpow[s] = rpow[s - 1] * r;
        for (long j = 0; j < size; ++j)
          for (long k = 0; k <= j; ++k)
            acc[j][k] += rpow[j + k] * ang[j - k] * scale;
      }
    }
    for (long j = 0; j < size; ++j) {
      for (long k = 0; k <= j; ++k) {
        Complex v(round_to(acc[j][k], ctx.mantissa_bits));
        table.entries[j][k] = v;
        table.entries[k][j] = v;
      }
    }
  }

  require_positive_definite(table.entries, size, "perturbed_moments");
  return table;
}

Complex moment_inner_product(const MomentTable& m, const std::vector<Complex>& f,
                             const std::vector<Complex>& g,
                             const PrecisionContext& ctx) {
  ctx.validate();
  if ((long)f.size() > m.size || (long)g.size() > m.size)
    throw domain_error("moment_inner_product: polynomial degree exceeds the table");
  PrecGuard guard(ctx.mantissa_bits + 32);
  Complex s(0.0);
  for (long j = 0; j < (long)f.size(); ++j) {
    if (f[j].is_zero()) continue;
    Complex row(0.0);
    for (long k = 0; k < (long)g.size(); ++k) row += conj(g[k]) * m.entries[j][k];
    s += f[j] * row;
  }
  return round_to(s, ctx.mantissa_bits);
}

OrthoSet gram_schmidt(const MomentTable& moments, long n_max,
                      const PrecisionContext& ctx) {
  ctx.validate();
  if (n_max < 0) throw domain_error("gram_schmidt: need n_max >= 0");
  if (n_max >= moments.size)
    throw domain_error("gram_schmidt: n_max must be < moments.size");

  PrecGuard guard(ctx.mantissa_bits + 64);
  std::vector<std::vector<Complex>> co(n_max + 1);
  std::vector<Real> h(n_max + 1);

  for (long n = 0; n <= n_max; ++n) {
    co[n].assign(n + 1, Complex(0.0));
    co[n][n] = Complex(1.0);
    for (long j = 0; j < n; ++j) {
      // <z^n, P_j> / h_j
      Complex ip(0.0);
      for (long k = 0; k <= j; ++k) ip += conj(co[j][k]) * moments.entries[n][k];
      Complex coef = ip / h[j];
      for (long k = 0; k <= j; ++k) co[n][k] -= coef * co[j][k];
    }
    // h_n as the full quadratic form (equals <P_n, z^n> exactly, but this
    // form degrades gracefully when the table is only quadrature-accurate)
    Complex hn(0.0);
    for (long j = 0; j <= n; ++j) {
      if (co[n][j].is_zero()) continue;
      Complex row(0.0);
      for (long k = 0; k <= n; ++k) row += conj(co[n][k]) * moments.entries[j][k];
      hn += co[n][j] * row;
    }
    if (!hn.re.is_finite() || !(hn.re > 0.0))
      throw precision_error("gram_schmidt: positivity lost; raise mantissa_bits");
    h[n] = hn.re;
  }

  OrthoSet out;
  out.polys.resize(n_max + 1);
  out.norms.resize(n_max + 1);
  for (long n = 0; n <= n_max; ++n) {
    ScaledPolynomial& poly = out.polys[n];
    poly.degree = n;
    poly.log_scale = Real(0.0);
    poly.coeffs.resize(n + 1);
    for (long k = 0; k <= n; ++k) poly.coeffs[k] = round_to(co[n][k], ctx.mantissa_bits);
    poly.coeffs[n] = Complex(1.0);
    out.norms[n] = round_to(h[n], ctx.mantissa_bits);
  }
  return out;
}

}  // namespace planar
