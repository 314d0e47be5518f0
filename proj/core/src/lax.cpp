#include "planarortho/lax.hpp"

#include <cmath>
#include <string>
#include <utility>

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

CoeffState round_state(const CoeffState& s, long bits) {
  CoeffState r;
  r.n = s.n;
  r.a_n = round_to(s.a_n, bits);
  r.b_n = round_to(s.b_n, bits);
  r.alpha_n = round_to(s.alpha_n, bits);
  r.beta_n = round_to(s.beta_n, bits);
  r.gamma_n = round_to(s.gamma_n, bits);
  r.eta_n = round_to(s.eta_n, bits);
  r.c_n = round_to(s.c_n, bits);
  return r;
}

bool state_finite(const CoeffState& s) {
  return s.a_n.is_finite() && s.b_n.is_finite() && s.alpha_n.is_finite() &&
         s.beta_n.is_finite() && s.gamma_n.is_finite() && s.eta_n.is_finite() &&
         s.c_n.is_finite();
}

}  // namespace

Complex weight_omega(const ProblemParams& p, long n, const Complex& w) {
  if (w.im.is_zero() && w.re >= 0.0 && w.re <= p.a)
    throw domain_error("weight_omega: w on the branch cut [0, a]");
  Complex ratio = (w - Complex{p.a, Real(0.0)}) / w;
  Complex val = pow(ratio, p.c) * exp(-(p.N * p.a) * w);
  if (n != 0) val = val / pow(w, n);
  return val;
}

CoeffState initial_state(const ProblemParams& p, InitMode mode,
                         const PrecisionContext& ctx) {
  ctx.validate();
  CoeffState s;
  s.n = 0;
  PrecGuard g(ctx.mantissa_bits + 32);
  s.a_n = Real(0.0);
  s.alpha_n = Real(1.0);
  s.gamma_n = Real(0.0);
  s.eta_n = Real(1.0);
  s.c_n = Real(0.0);  // unused at n = 0

  switch (mode) {
    case InitMode::ClosedForm: {
      if (!(p.c == 1.0))
        throw domain_error(
            "initial_state: the closed-form seed (a, 1 + a^2 N) is the c = 1 "
            "residue value and is wrong elsewhere; use Contour or Oracle");
      s.b_n = p.a;
      s.beta_n = 1.0 + p.a * p.a * p.N;
      break;
    }
    case InitMode::Contour: {
      // max Re(-N a w) on the circle is about 0.1 N a; that much cancellation
      // has to fit under the mantissa before the quadrature is meaningful
      const long need =
          64 + (long)std::ceil(0.15 * (p.N * p.a).to_double() / std::log(2.0));
      const long bits = std::max(ctx.mantissa_bits, need);
      PrecisionContext qctx{bits, ctx.quadrature_nodes};
      PrecGuard g2(bits + 32);
      auto contour =
          circle_contour(Complex{p.a * 0.5, Real(0.0)}, p.a * 0.5 + 0.1);
      Complex I0 = contour_quadrature(
          [&](const Complex& w) { return weight_omega(p, 0, w); }, contour, qctx);
      Complex I1 = contour_quadrature(
          [&](const Complex& w) { return weight_omega(p, 0, w) / w; }, contour,
          qctx);
      const Real two_pi = const_pi() * 2.0;
      // b0 = -I0/(2 pi i), beta0 = I1/(2 pi i); both real for real parameters
      Complex b0{-I0.im / two_pi, I0.re / two_pi};
      Complex be0{I1.im / two_pi, -I1.re / two_pi};
      const Real tol = pow(Real(2.0), -(bits / 2));
      if (abs(b0.im) > tol * (1.0 + abs(b0.re)) ||
          abs(be0.im) > tol * (1.0 + abs(be0.re)))
        throw precision_error(
            "initial_state: contour integrals did not come out real; raise "
            "mantissa_bits");
      s.b_n = b0.re;
      s.beta_n = be0.re;
      break;
    }
    case InitMode::Oracle: {
      PrecisionContext octx{ctx.mantissa_bits + 32, ctx.quadrature_nodes};
      MomentTable t = perturbed_moments(p, 2, octx);
      const Real h0 = t.at(0, 0).re;
      const Real g1c = exp(log_gamma(1.0 + p.c, octx));
      s.beta_n = pow(p.N, 1.0 + p.c) * h0 / (const_pi() * g1c);
      s.b_n = s.beta_n * (-t.at(1, 0).re / h0);
      break;
    }
  }
  return round_state(s, ctx.mantissa_bits);
}

CoeffState step(const CoeffState& s, const ProblemParams& p) {
  if (!state_finite(s))
    throw convergence_error("step: non-finite state at n = " + std::to_string(s.n));
  if (s.b_n.is_zero() || s.alpha_n.is_zero() || s.beta_n.is_zero())
    throw convergence_error("step: degenerate state at n = " + std::to_string(s.n));

  const Real& a = p.a;
  const double n = double(s.n);
  const Real common = 1.0 + s.beta_n * s.gamma_n;
  const Real ab = s.alpha_n * s.beta_n;
  const Real r = common / ab;

  CoeffState t;
  t.n = s.n + 1;
  t.a_n = s.a_n + s.b_n * r;
  t.alpha_n = s.b_n / s.beta_n;
  t.gamma_n = -1.0 / s.beta_n;
  t.b_n = (1.0 + n) * s.b_n / (a * p.N) + a * s.b_n - (p.c + n) * ab / p.N +
          s.b_n * s.b_n * r;

  const Real cn1 = p.c + n + 1.0;
  const Real al2 = s.alpha_n * s.alpha_n;
  const Real be2 = s.beta_n * s.beta_n;
  const Real num = a * al2 * be2 * cn1 -
                   p.N * a * a * s.alpha_n * s.b_n * s.beta_n * common -
                   p.N * a * al2 * s.b_n * be2 * s.c_n -
                   p.N * a * s.b_n * s.b_n * common * common -
                   n * s.alpha_n * s.b_n * s.beta_n * common;
  const Real den = a * al2 * s.beta_n * cn1;
  t.beta_n = num / den;

  t.c_n = -r;  // leading coefficient of Q_n: forced by det M_n = z
  t.eta_n = (1.0 + t.beta_n * t.gamma_n) / t.alpha_n;

  if (!state_finite(t))
    throw convergence_error("step: state blew up at n = " + std::to_string(s.n));
  return t;
}

namespace {

ScaledPolynomial emit_monic(const std::vector<Real>& work, long bits) {
  ScaledPolynomial poly;
  poly.degree = (long)work.size() - 1;
  poly.log_scale = Real(0.0);
  poly.coeffs.resize(work.size());
  const Real& lead = work.back();
  for (size_t k = 0; k + 1 < work.size(); ++k)
    poly.coeffs[k] = Complex(round_to(work[k] / lead, bits));
  poly.coeffs.back() = Complex(1.0);
  return poly;
}

}  // namespace

std::vector<ScaledPolynomial> synthesize(const ProblemParams& p, long n_max,
                                         InitMode mode,
                                         const PrecisionContext& ctx) {
  ctx.validate();
  if (n_max < 1) throw domain_error("synthesize: need n_max >= 1");

  std::vector<ScaledPolynomial> out;
  out.reserve(n_max + 1);

  if (p.c.is_zero()) {
    // radially symmetric weight: monomials are already orthogonal, and the
    // recurrence degenerates (b_0 = 0)
    for (long n = 0; n <= n_max; ++n) {
      ScaledPolynomial poly;
      poly.degree = n;
      poly.log_scale = Real(0.0);
      poly.coeffs.assign(n + 1, Complex(0.0));
      poly.coeffs[n] = Complex(1.0);
      out.push_back(std::move(poly));
    }
    return out;
  }

  // The forward recurrence amplifies rounding error by a few bits per step
  // (the monic-basis condition number grows exponentially with the degree),
  // so the working precision scales with the run length.
  const long work_bits = ctx.mantissa_bits + 64 + 3 * n_max;
  PrecGuard g(work_bits);
  PrecisionContext ictx{work_bits, ctx.quadrature_nodes};
  CoeffState st = initial_state(p, mode, ictx);

  // The pair (P, Q) is carried under one shared scale e^{L}; everything
  // emitted is scale-free (coefficient ratios), L only keeps the working
  // arrays' magnitudes inside e^{+-64}.
  std::vector<Real> pw = {Real(1.0)};
  std::vector<Real> qw;
  Real L(0.0);
  const Real hi_mag = exp(Real(64.0)), lo_mag = exp(Real(-64.0));

  out.push_back(emit_monic(pw, ctx.mantissa_bits));
  for (long n = 0; n < n_max; ++n) {
    CoeffState nx = step(st, p);
    const Real da = nx.a_n - st.a_n;
    // P_{n+1} = (z + da) P_n - b_n Q_{n-1}
    std::vector<Real> pnew(n + 2, Real(0.0));
    for (long k = 0; k <= n; ++k) {
      pnew[k + 1] += pw[k];
      pnew[k] += da * pw[k];
    }
    for (size_t k = 0; k < qw.size(); ++k) pnew[k] -= st.b_n * qw[k];
    // Q_n = c_{n+1} P_n + Q_{n-1}
    std::vector<Real> qnew(n + 1, Real(0.0));
    for (long k = 0; k <= n; ++k) qnew[k] = nx.c_n * pw[k];
    for (size_t k = 0; k < qw.size(); ++k) qnew[k] += qw[k];

    pw = std::move(pnew);
    qw = std::move(qnew);
    st = nx;

    Real mx(0.0);
    for (const Real& x : pw) mx = max(mx, abs(x));
    for (const Real& x : qw) mx = max(mx, abs(x));
    if (mx > hi_mag || mx < lo_mag) {
      const Real shift = log(mx);
      const Real undo = exp(-shift);
      for (Real& x : pw) x *= undo;
      for (Real& x : qw) x *= undo;
      L += shift;
    }
    out.push_back(emit_monic(pw, ctx.mantissa_bits));
  }
  return out;
}

std::vector<CoeffState> state_trace(const ProblemParams& p, long n_max,
                                    InitMode mode, const PrecisionContext& ctx) {
  ctx.validate();
  if (n_max < 0) throw domain_error("state_trace: need n_max >= 0");
  // same per-step error amplification as in synthesize
  const long work_bits = ctx.mantissa_bits + 64 + 3 * n_max;
  PrecGuard g(work_bits);
  PrecisionContext ictx{work_bits, ctx.quadrature_nodes};
  CoeffState st = initial_state(p, mode, ictx);
  std::vector<CoeffState> out;
  out.reserve(n_max + 1);
  out.push_back(round_state(st, ctx.mantissa_bits));
  for (long n = 0; n < n_max; ++n) {
    st = step(st, p);
    out.push_back(round_state(st, ctx.mantissa_bits));
  }
  return out;
}

LogComplex evaluate(const ScaledPolynomial& poly, const Complex& z,
                    const PrecisionContext& ctx) {
  ctx.validate();
  PrecGuard g(ctx.mantissa_bits + 32);
  Complex acc = poly.coeffs.back();
  for (long k = poly.degree - 1; k >= 0; --k) acc = acc * z + poly.coeffs[k];
  LogComplex r = LogComplex::from(acc);
  r.log_mag += poly.log_scale;
  r.log_mag = round_to(r.log_mag, ctx.mantissa_bits);
  r.phase = round_to(r.phase, ctx.mantissa_bits);
  return r;
}

}  // namespace planar
