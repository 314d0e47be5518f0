#include "planarortho/mpnum.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace planar {

namespace {

Complex round_to(const Complex& z, long bits) {
  PrecGuard g(bits);
  return {z.re.rounded(), z.im.rounded()};
}

Real round_to(const Real& x, long bits) {
  PrecGuard g(bits);
  return x.rounded();
}

}  // namespace

Real log_gamma(const Real& x, const PrecisionContext& ctx) {
  ctx.validate();
  PrecGuard g(ctx.mantissa_bits);
  return log_gamma_pos(x.rounded());
}

Real reciprocal_gamma(const Real& x, const PrecisionContext& ctx) {
  ctx.validate();
  PrecGuard g(ctx.mantissa_bits);
  Real xr = x.rounded();
  if (xr <= 0.0 && floor_r(xr) == xr) return Real(0.0);
  int sign = 1;
  Real lg = log_gamma_signed(xr, sign);
  return exp(-lg) * double(sign);
}

Real pochhammer(const Real& x, long n, const PrecisionContext& ctx) {
  ctx.validate();
  if (n < 0) throw domain_error("pochhammer: n must be >= 0");
  PrecGuard g(ctx.mantissa_bits);
  Real p(1.0);
  for (long i = 0; i < n; ++i) p *= x + double(i);
  return p;
}

ParametricContour circle_contour(const Complex& center, const Real& radius) {
  ParametricContour c;
  c.z = [center, radius](const Real& t) { return center + polar(radius, t); };
  c.dz = [radius](const Real& t) {
    Complex e = polar(radius, t);
    return Complex(-e.im, e.re);  // i * radius * e^{it}
  };
  return c;
}

Complex contour_quadrature(const std::function<Complex(const Complex&)>& f,
                           const ParametricContour& contour,
                           const PrecisionContext& ctx) {
  ctx.validate();
  const long work = ctx.mantissa_bits + 16;
  PrecGuard g(work);
  const Real two_pi = const_pi() * 2.0;
  const Real tol = exp(Real(-double(ctx.mantissa_bits - 8)) * log(Real(2.0)));

  long m = ctx.quadrature_nodes;
  Complex sum(0.0);
  Real peak(0.0);
  {
    Real h = two_pi / Real::from_long(m);
    for (long j = 0; j < m; ++j) {
      Real t = h * Real::from_long(j);
      Complex v = f(contour.z(t)) * contour.dz(t);
      peak = max(peak, abs(v));
      sum += v;
    }
  }
  Complex integral = sum * (two_pi / Real::from_long(m));

  for (int pass = 0; pass < 7; ++pass) {
    // refine with the odd-indexed nodes of the doubled grid
    Real h = two_pi / Real::from_long(2 * m);
    Complex odd(0.0);
    for (long j = 0; j < m; ++j) {
      Real t = h * Real::from_long(2 * j + 1);
      Complex v = f(contour.z(t)) * contour.dz(t);
      peak = max(peak, abs(v));
      odd += v;
    }
    Complex refined = integral * 0.5 + odd * h;
    Real change = abs(refined - integral);
    // floor the scale at the integrand peak so exactly-cancelling integrals
    // still converge (absolute accuracy is peak-relative, not better)
    Real scale = max(abs(refined), peak);
    integral = refined;
    m *= 2;
    if (change <= tol * scale) return round_to(integral, ctx.mantissa_bits);
  }
  throw convergence_error("contour_quadrature: node doubling did not converge");
}

Complex tanh_sinh(const std::function<Complex(const Real&)>& f, const Real& a,
                  const Real& b, const PrecisionContext& ctx) {
  ctx.validate();
  const long work = ctx.mantissa_bits + 16;
  PrecGuard g(work);
  const Real half_pi = const_pi() * 0.5;
  const Real mid = (a + b) * 0.5, rad = (b - a) * 0.5;
  const Real tol = exp(Real(-double(ctx.mantissa_bits - 8)) * log(Real(2.0)));
  // cutoff where the double-exponential weight drops below the target;
  // integer U keeps every node u = k 2^{-m} an exact dyadic
  const double target = double(work) * 0.6931471805599453 + 40.0;
  const long U = (long)std::ceil(std::log(2.0 * target / 3.141592653589793) + 0.6);

  // Node abscissae come out as offsets from the nearest endpoint: writing
  // x = mid + rad*tanh(..) collapses onto the endpoint once tanh rounds to 1,
  // silently truncating the window. 1 -+ tanh(y) = 2/(e^{+-2y}+1) is exact.
  auto node = [&](double u, Complex& val, Real& w) -> bool {
    Real ur(u);
    Real sh = half_pi * (exp(ur) - exp(-ur)) * 0.5;            // (pi/2) sinh u
    Real ch_u = (exp(ur) + exp(-ur)) * 0.5;                    // cosh u
    Real sech = 2.0 / (exp(sh) + exp(-sh));
    w = rad * half_pi * ch_u * sech * sech;
    if (w.is_zero()) return false;
    Real x;
    if (u <= 0.0) {
      Real off = 2.0 / (exp(-(sh + sh)) + 1.0);  // 1 + tanh(sh)
      x = a + rad * off;
    } else {
      Real off = 2.0 / (exp(sh + sh) + 1.0);     // 1 - tanh(sh)
      x = b - rad * off;
    }
    if (x <= a || x >= b) return false;  // keep evaluations strictly interior
    val = f(x);
    return val.is_finite();
  };

  double h = 0.5;
  Complex integral(0.0);
  Real peak(0.0);
  {
    Complex s(0.0);
    for (long k = -2 * U; k <= 2 * U; ++k) {
      Complex v;
      Real w;
      if (node(double(k) * h, v, w)) {
        s += v * w;
        peak = max(peak, abs(v) * w);
      }
    }
    integral = s * Real(h);
  }
  for (int level = 0; level < 10; ++level) {
    // halve the step: the new nodes are the odd multiples of h/2
    double h2 = h * 0.5;
    long K = (long)std::llround(double(U) / h2);
    Complex odd(0.0);
    for (long k = -K + 1; k <= K; k += 2) {
      Complex v;
      Real w;
      if (node(double(k) * h2, v, w)) {
        odd += v * w;
        peak = max(peak, abs(v) * w);
      }
    }
    h = h2;
    Complex refined = integral * 0.5 + odd * Real(h);
    Real change = abs(refined - integral);
    integral = refined;
    if (level >= 2 && change <= tol * max(abs(refined), peak)) {
      return round_to(integral, ctx.mantissa_bits);
    }
  }
  throw convergence_error("tanh_sinh: refinement did not converge");
}

QuadratureRule gauss_legendre(long n, const PrecisionContext& ctx) {
  ctx.validate();
  if (n < 1) throw domain_error("gauss_legendre: need n >= 1");
  PrecGuard g(ctx.mantissa_bits + 16);
  QuadratureRule rule;
  rule.nodes.assign(n, Real(0.0));
  rule.weights.assign(n, Real(0.0));
  const Real tol = exp(Real(-double(ctx.mantissa_bits + 4)) * log(Real(2.0)));
  const Real pi = const_pi();
  for (long i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-angle seed, then Newton on P_n
    Real x = cos(pi * (Real(double(i)) + 0.75) / (Real(double(n)) + 0.5));
    Real dp(0.0);
    for (int it = 0; it < 80; ++it) {
      Real p0(1.0), p1 = x;
      for (long k = 2; k <= n; ++k) {
        Real p2 = ((2.0 * double(k) - 1.0) * x * p1 - (double(k) - 1.0) * p0) / double(k);
        p0 = p1;
        p1 = p2;
      }
      dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
      Real dx = p1 / dp;
      x -= dx;
      if (abs(dx) <= tol * max(Real(1.0), abs(x))) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    Real w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    // the middle node is exactly 0 for odd n; the loop's seeded value for it
    // is already converged but pin it
    rule.nodes[n / 2] = Real(0.0);
  }
  const long out = ctx.mantissa_bits;
  PrecGuard g2(out);
  for (long i = 0; i < n; ++i) {
    rule.nodes[i] = rule.nodes[i].rounded();
    rule.weights[i] = rule.weights[i].rounded();
  }
  return rule;
}

Complex weber_D(const Real& c, const Complex& zeta, const PrecisionContext& ctx) {
  ctx.validate();
  if (!(c > -1.0)) throw domain_error("weber_D: requires c > -1");
  const long base = ctx.mantissa_bits;

  // Coarse scan (double precision) of the integrand's log-magnitude along the
  // line to size the cancellation loss; the result magnitude is estimated
  // from the leading asymptotics.
  const double eps_d = std::max(1.0, 0.5 * abs(zeta).to_double());
  const double zr = zeta.re.to_double(), zi = zeta.im.to_double();
  const double cd = c.to_double();
  const double Wd = std::sqrt(2.0 * (double(base + 32) * 0.6931 + 30.0));
  double A = -1e300;
  for (int i = 0; i <= 128; ++i) {
    double t = zi - Wd + (2.0 * Wd) * double(i) / 128.0;
    double gre = -zr * eps_d + zi * t + 0.5 * (eps_d * eps_d - t * t);
    double lmod = gre - cd * 0.5 * std::log(eps_d * eps_d + t * t);
    A = std::max(A, lmod);
  }
  // the line integral itself carries e^{-zeta^2/2} of the recessive solution
  // (the e^{+zeta^2/4} prefactor is applied afterwards), so the cancellation
  // margin is measured against that magnitude
  const double mod_z = std::max(std::sqrt(zr * zr + zi * zi), 1.0);
  const double B = -0.5 * (zr * zr - zi * zi) - cd * std::log(mod_z);
  const long margin = std::max(0L, (long)std::ceil((A - B) / 0.6931471805599453));
  const long work = base + margin + 64;

  PrecGuard g(work);
  const Complex z = round_to(zeta, work);
  const Real cw = round_to(c, work);
  const Real eps(eps_d);
  const Real W = sqrt(Real(2.0) * (Real(double(work)) * log(Real(2.0)) + 30.0));
  const Real t0 = z.im;
  const Real tol = exp(Real(-double(base - 8)) * log(Real(2.0)));

  auto integrand = [&](const Real& t) {
    Complex s(eps, t);
    Complex e = -z * s + s * s * 0.5 - Complex(cw) * log(s);
    return exp(e);
  };

  long m = std::max<long>(ctx.quadrature_nodes / 2,
                          (long)(2.0 * (double(work) * 0.6931 + 30.0) / 3.141592653589793) + 16);
  Real lo = t0 - W, hi = t0 + W;
  Real h = (hi - lo) / Real::from_long(m);
  Complex sum = (integrand(lo) + integrand(hi)) * 0.5;
  for (long j = 1; j < m; ++j) sum += integrand(lo + h * Real::from_long(j));
  Complex I = sum * h;

  // below e^B the sum is rounding noise; treat that magnitude as "converged"
  Real floor_scale = exp(Real(B));
  for (int pass = 0; pass < 7; ++pass) {
    Complex odd(0.0);
    Real h2 = h * 0.5;
    for (long j = 0; j < m; ++j) odd += integrand(lo + h2 * Real::from_long(2 * j + 1));
    Complex refined = I * 0.5 + odd * h2;
    Real change = abs(refined - I);
    I = refined;
    m *= 2;
    h = h2;
    if (change <= tol * max(abs(I), floor_scale)) {
      Complex pref = exp(z * z * 0.25) / sqrt(const_pi() * 2.0);
      return round_to(pref * I, base);
    }
  }
  throw convergence_error("weber_D: line quadrature did not converge");
}

AsymptoticValue weber_D_asymptotic(const Real& c, const Complex& zeta, long terms,
                                   const PrecisionContext& ctx) {
  ctx.validate();
  if (terms < 1) throw domain_error("weber_D_asymptotic: terms must be >= 1");
  if (!(zeta.re > 0.0))
    throw domain_error("weber_D_asymptotic: requires |arg zeta| < pi/2");
  PrecGuard g(ctx.mantissa_bits);
  Complex z = {zeta.re.rounded(), zeta.im.rounded()};
  Real cc = c.rounded();
  Complex z2 = z * z;
  if (abs(z2) < abs(Real(2.0) * abs(Real(1.0) - cc * 2.0)))
    throw domain_error("weber_D_asymptotic: |zeta^2| < 2|1-2c|, bound constant not proven");

  Complex inv2z2 = 1.0 / (z2 * 2.0);
  Complex series(1.0);
  Complex zpow(1.0);
  Real fact(1.0);
  for (long s = 1; s < terms; ++s) {
    zpow *= inv2z2;
    fact *= double(s);
    Real p = pochhammer(cc, 2 * s, ctx);
    Complex term = zpow * (p / fact);
    if (s % 2 == 1) term = -term;
    series += term;
  }
  Complex envelope = exp(-z2 * 0.25) * pow(z, -cc);
  AsymptoticValue out;
  out.value = envelope * series;

  Real n_fact(1.0);
  for (long s = 1; s <= terms; ++s) n_fact *= double(s);
  Real num = abs(pochhammer(cc * 0.5, terms, ctx) * pochhammer((cc + 1.0) * 0.5, terms, ctx));
  Real mag_env = abs(envelope);
  out.bound = pow(Real(2.0), terms + 2) * num / (n_fact * pow(abs(z), 2 * terms)) * mag_env;
  return out;
}

std::array<Real, 3> weber_connection_residuals(const Real& c, const Complex& zeta,
                                               const PrecisionContext& ctx) {
  ctx.validate();
  PrecGuard g(ctx.mantissa_bits + 16);
  const Real pi = const_pi();
  const Real sq2pi = sqrt(pi * 2.0);
  const Complex i_unit(Real(0.0), Real(1.0));
  const Complex z = {zeta.re.rounded(), zeta.im.rounded()};
  const Real cc = c.rounded();

  Complex d_neg_c = weber_D(cc, z, ctx);
  Complex d_neg_c_m = weber_D(cc, -z, ctx);
  Complex d_cm1_i = weber_D(Real(1.0) - cc, i_unit * z, ctx);   // D_{c-1}(i zeta)
  Complex d_cm1_mi = weber_D(Real(1.0) - cc, -i_unit * z, ctx); // D_{c-1}(-i zeta)

  auto phase = [&](const Real& x) { return exp(Complex(Real(0.0), x)); };

  // identity 1 rescaled by sqrt(2pi)/Gamma(1-c) so integer c stays finite
  Real rg1mc = reciprocal_gamma(Real(1.0) - cc, ctx);
  Complex lhs1 = d_neg_c * (sq2pi * rg1mc);
  Complex rhs1 = phase(-cc * pi * 0.5) * d_cm1_i + phase(cc * pi * 0.5) * d_cm1_mi;

  Real rgc = reciprocal_gamma(cc, ctx);
  Complex rhs2 = phase(-cc * pi) * d_neg_c_m + Complex(sq2pi * rgc) * phase((Real(1.0) - cc) * pi * 0.5) * d_cm1_mi;
  Complex rhs3 = phase(cc * pi) * d_neg_c_m + Complex(sq2pi * rgc) * phase((cc - 1.0) * pi * 0.5) * d_cm1_i;

  std::array<Real, 3> out = {abs(lhs1 - rhs1), abs(d_neg_c - rhs2), abs(d_neg_c - rhs3)};
  for (auto& r : out) r = round_to(r, ctx.mantissa_bits);
  return out;
}

Complex fhat(const Real& c, const Complex& zeta, const PrecisionContext& ctx,
             double ray_delta) {
  ctx.validate();
  if (!(c > -1.0 && c < 2.0)) throw domain_error("fhat: requires c in (-1, 2)");
  if (!(ray_delta > 1e-3 && ray_delta < 1.5)) throw domain_error("fhat: bad ray_delta");
  const long base = ctx.mantissa_bits;
  const long work = base + 32;
  PrecGuard g(work);

  const Real pi = const_pi();
  const double r0 = 1e-3;
  const Real theta0 = pi - ray_delta;
  const double cos_delta = std::cos(ray_delta);
  const Real T = (Real(double(work)) * log(Real(2.0)) + 40.0) / cos_delta;

  // collision check in double precision (threshold 1e-6, far above rounding)
  {
    const double zr = zeta.re.to_double(), zi = zeta.im.to_double();
    const double th = 3.141592653589793 - ray_delta;
    const double Td = T.to_double();
    auto seg_dist = [&](double sign) {
      double dx = std::cos(sign * th), dy = std::sin(sign * th);
      double t = zr * dx + zi * dy;
      t = std::clamp(t, r0, Td);
      double px = t * dx - zr, py = t * dy - zi;
      return std::sqrt(px * px + py * py);
    };
    double dist = std::min(seg_dist(1.0), seg_dist(-1.0));
    double mod = std::sqrt(zr * zr + zi * zi);
    dist = std::min(dist, std::abs(mod - r0));
    if (dist < 1e-6)
      throw domain_error("fhat: zeta within 1e-6 of the contour; rotate ray_delta");
  }

  const Complex z = round_to(zeta, work);
  const Real cc = round_to(c, work);
  auto h = [&](const Complex& s) {
    return exp(Complex(s) - Complex(cc) * log(s)) / (s - z);
  };

  Complex e_up = polar(Real(1.0), theta0);
  Complex e_dn = polar(Real(1.0), -theta0);
  PrecisionContext qctx{work, ctx.quadrature_nodes};

  Complex ray_in = tanh_sinh([&](const Real& t) { return h(e_dn * t) * e_dn; }, Real(r0), T, qctx);
  Complex ray_out = tanh_sinh([&](const Real& t) { return h(e_up * t) * e_up; }, Real(r0), T, qctx);
  Complex arc = tanh_sinh(
      [&](const Real& phi) {
        Complex s = polar(Real(r0), phi);
        return h(s) * Complex(-s.im, s.re);  // i s
      },
      -theta0, theta0, qctx);

  Complex total = -ray_in + arc + ray_out;  // ray_in runs T -> r0
  Complex result = total / (Complex(Real(0.0), Real(2.0)) * pi);
  return round_to(-result, base);
}

Real hankel_ck(const Real& c, long k, const PrecisionContext& ctx) {
  ctx.validate();
  if (k < 1) throw domain_error("hankel_ck: k must be >= 1");
  PrecGuard g(ctx.mantissa_bits);
  Real cc = c.rounded();
  if (floor_r(cc) == cc) {
    long m = cc.to_long();
    if (m <= 0 || k > m) return Real(0.0);
    Real f(1.0);
    for (long i = 2; i <= m - k; ++i) f *= double(i);
    return 1.0 / f;  // 1/(m-k)!
  }
  // (-1)^{k-1} Gamma(k-c) / (Gamma(c) Gamma(1-c)), all via signed lngamma
  int s1 = 1, s2 = 1, s3 = 1;
  Real l1 = log_gamma_signed(Real(double(k)) - cc, s1);
  Real l2 = log_gamma_signed(cc, s2);
  Real l3 = log_gamma_signed(Real(1.0) - cc, s3);
  Real mag = exp(l1 - l2 - l3);
  int sign = s1 * s2 * s3 * ((k % 2 == 1) ? 1 : -1);
  return mag * double(sign);
}

}  // namespace planar
