#include "planarortho/gammafam.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "planarortho/errors.hpp"

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

Real cubic_P(const Real& a, const Real& gamma, const Real& X) {
  Real a2 = a * a;
  Real c2 = (a2 + 4.0 * gamma + 2.0) / (2.0 * a2);
  Real c0 = 0.5 / (a2 * a2);
  return ((X - c2) * X) * X + c0;
}

}  // namespace

GammaFamilyParams solve_gamma_params(const Real& a, const Real& gamma,
                                     const PrecisionContext& ctx) {
  ctx.validate();
  if (!(a > 0.0)) throw domain_error("solve_gamma_params: a must be > 0");
  if (!(gamma > 0.0))
    throw domain_error("solve_gamma_params: gamma must be > 0");
  PrecGuard guard(ctx.mantissa_bits + 64);

  GammaFamilyParams p;
  p.a = round_to(a, working_prec());
  p.gamma = round_to(gamma, working_prec());

  if (p.a >= 1.0) {
    p.exterior_map = true;
    // P(0) = 1/(2a^4) > 0 and P(1/a^2) = -2 gamma / a^6 < 0 bracket the
    // unique root; plain bisection keeps the branch selection exact
    Real lo(0.0);
    Real hi = 1.0 / (p.a * p.a);
    if (!(cubic_P(p.a, p.gamma, hi) < 0.0))
      throw convergence_error("solve_gamma_params: bracket lost at 1/a^2");
    Real width_floor = hi * pow(Real(2.0), -(working_prec() - 8));
    while (hi - lo > width_floor) {
      Real mid = (lo + hi) * 0.5;
      if (cubic_P(p.a, p.gamma, mid) > 0.0)
        lo = mid;
      else
        hi = mid;
    }
    Real X = (lo + hi) * 0.5;
    p.alpha = sqrt(X);
    p.rho = (1.0 + p.a * p.a * X) / (2.0 * p.a * p.alpha);
    p.kappa = (1.0 - X) * (1.0 - p.a * p.a * X) / (2.0 * p.a * p.alpha);
    if (p.kappa < 0.0) p.kappa = Real(0.0);  // rounding dust as gamma -> 0
    p.b_gamma = p.rho / p.alpha;
    Real m = p.alpha * p.rho - p.kappa / p.alpha;
    Real d = 2.0 * sqrt(p.kappa * p.rho);
    p.beta_gamma = Complex{m, d};
    p.beta_gamma_conj = Complex{m, -d};
  } else {
    Real one_m_a2 = 1.0 - p.a * p.a;
    Real disc = one_m_a2 * one_m_a2 - 4.0 * p.a * p.a * p.gamma;
    if (!(disc > 0.0))
      throw domain_error(
          "solve_gamma_params: gamma too large for a < 1, need "
          "4 a^2 gamma < (1 - a^2)^2");
    Real bg = (p.a * p.a + 1.0 - sqrt(disc)) / (2.0 * p.a);
    p.alpha = Real(0.0);
    p.rho = Real(0.0);
    p.kappa = Real(0.0);
    p.b_gamma = Real(0.0);
    p.beta_gamma = Complex{bg, Real(0.0)};
    p.beta_gamma_conj = p.beta_gamma;
  }
  long base = ctx.mantissa_bits;
  p.a = round_to(p.a, base);
  p.gamma = round_to(p.gamma, base);
  p.alpha = round_to(p.alpha, base);
  p.rho = round_to(p.rho, base);
  p.kappa = round_to(p.kappa, base);
  p.b_gamma = round_to(p.b_gamma, base);
  p.beta_gamma = round_to(p.beta_gamma, base);
  p.beta_gamma_conj = round_to(p.beta_gamma_conj, base);
  return p;
}

Complex y_gamma(const GammaFamilyParams& p, const Complex& z, Side side) {
  if (z.is_zero()) throw domain_error("y_gamma: singular at z = 0");
  Complex za = z - Complex{p.a, Real(0.0)};
  if (za.is_zero()) throw domain_error("y_gamma: singular at z = a");

  if (p.exterior_map) {
    Complex w = z - Complex{p.beta_gamma.re, Real(0.0)};
    Real d = p.beta_gamma.im;
    if (w.re.is_zero() && abs(w.im) < d)
      throw domain_error("y_gamma: on the branch segment");
    // R = w sqrt(1 + d^2/w^2): principal sqrt puts the cut exactly on the
    // vertical segment between the branch points and R ~ z - m at infinity
    Complex R = w * sqrt(Complex{Real(1.0), Real(0.0)} + (d * d) / (w * w));
    return p.a * (z - Complex{p.b_gamma, Real(0.0)}) * R / (z * za);
  }

  Complex y = Complex{p.a, Real(0.0)} + p.gamma / za -
              (1.0 + p.gamma) / z;
  if (side == Side::Int) y = -y;
  return y;
}

Complex f_gamma_map(const GammaFamilyParams& p, const Complex& nu) {
  if (!p.exterior_map)
    throw domain_error("f_gamma_map: exterior map exists only for a >= 1");
  Complex den = nu - Complex{p.alpha, Real(0.0)};
  if (den.is_zero()) throw domain_error("f_gamma_map: pole at nu = alpha");
  return p.rho * nu - p.kappa / den - Complex{p.kappa / p.alpha, Real(0.0)};
}

namespace {

// unit tangent of the trajectory field at z, sign-aligned with ref
Complex trajectory_tangent(const GammaFamilyParams& p, const Complex& z,
                           const Complex& ref) {
  Complex y = y_gamma(p, z, Side::Ext);
  Real ay = abs(y);
  if (ay.is_zero())
    throw convergence_error("trace_S_gamma: tangent at a zero of y");
  Complex t = Complex{Real(0.0), Real(1.0)} * conj(y) / ay;
  if (t.re * ref.re + t.im * ref.im < 0.0) t = -t;
  return t;
}

struct TraceResult {
  PlanarCurve curve;
  Real max_re_drift;
  Complex phi_end;
  bool reached = false;
};

// One full trace attempt from beta_gamma along launch direction dir.
// Projection: after each RK4 step the accumulated phase is re-zeroed in its
// real part by a Newton shift along conj(y), which is the direction in which
// Re phi moves fastest.
TraceResult trace_attempt(const GammaFamilyParams& p, const Complex& dir,
                          double step) {
  const Complex start = p.beta_gamma;
  const Complex target = p.exterior_map ? p.beta_gamma_conj : p.beta_gamma;
  const bool closed = !p.exterior_map;

  Real sep = abs(p.beta_gamma - p.beta_gamma_conj);
  Real snap = 1e-4 * max(sep, abs(p.beta_gamma));
  const double min_step = 1e-6;
  Real cap = 50.0 * (1.0 + sep + p.a + 1.0 / p.a);
  const Real min_close_len = closed ? Real(1.0) : Real(0.0);

  TraceResult out;
  out.max_re_drift = Real(0.0);
  out.curve.closed = closed;
  out.curve.points.push_back(start);

  // launch off the branch point where the tangent field is defined
  Real off = min(Real(step), 0.25 * snap + Real(step) * 0.01);
  Complex z = start + off * dir;
  out.curve.points.push_back(z);
  Complex ref = dir;
  Complex phi_acc = y_gamma(p, (start + z) * 0.5, Side::Ext) * (z - start);
  Real len = abs(z - start);

  long max_steps = 4 * static_cast<long>(cap.to_double() / step) + 2000;
  for (long it = 0; it < max_steps; ++it) {
    Real dist = abs(z - target);
    if (len > min_close_len && dist < snap) {
      out.curve.points.push_back(target);
      phi_acc = phi_acc +
                y_gamma(p, (z + target) * 0.5, Side::Ext) * (target - z);
      out.reached = true;
      break;
    }
    double h = step;
    if (len.to_double() > min_close_len.to_double() - 1.0 &&
        dist.to_double() < 5.0 * step)
      h = std::max(dist.to_double() / 4.0, min_step);

    Complex k1 = trajectory_tangent(p, z, ref);
    Complex k2 = trajectory_tangent(p, z + (h / 2.0) * k1, k1);
    Complex k3 = trajectory_tangent(p, z + (h / 2.0) * k2, k1);
    Complex k4 = trajectory_tangent(p, z + h * k3, k1);
    Complex dz = (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    Complex zs = z + dz;
    // Simpson increment of phi along the chord; exact up to quadrature
    // error because y is analytic between chord and arc
    Complex dphi = (dz / 6.0) * (y_gamma(p, z, Side::Ext) +
                                 4.0 * y_gamma(p, z + dz * 0.5, Side::Ext) +
                                 y_gamma(p, zs, Side::Ext));
    Complex ys = y_gamma(p, zs, Side::Ext);
    Real eps = (phi_acc + dphi).re;
    Complex shift = (-eps) * conj(ys) / norm2(ys);
    Complex zn = zs + shift;
    Complex corr = dphi + ys * shift;
    phi_acc = phi_acc + corr;
    Real denom = abs(corr);
    if (!denom.is_zero()) {
      Real drift = abs(phi_acc.re) / denom;
      out.max_re_drift = max(out.max_re_drift, drift);
    }

    len += abs(zn - z);
    ref = zn - z;
    z = zn;
    out.curve.points.push_back(z);
    if (len > cap) break;
  }

  out.phi_end = phi_acc;
  compute_arclength(out.curve);
  return out;
}

}  // namespace

PlanarCurve trace_S_gamma(const GammaFamilyParams& p, double step,
                          const PrecisionContext& ctx,
                          TraceDiagnostics* diag) {
  ctx.validate();
  if (!(step > 0.0 && step < 0.5))
    throw domain_error("trace_S_gamma: step must be in (0, 0.5)");
  PrecGuard guard(ctx.mantissa_bits);

  // candidate launch directions at the branch point: y^2 ~ A (z - beta)
  // gives three rays 120 degrees apart for a >= 1; for a < 1 the zero of
  // the rational y is simple, giving four rays 90 degrees apart
  std::vector<Complex> dirs;
  Real pi = const_pi();
  if (p.exterior_map) {
    Complex u = p.beta_gamma - Complex{p.b_gamma, Real(0.0)};
    Complex v = p.beta_gamma - Complex{p.a, Real(0.0)};
    Complex num = p.a * p.a * (u * u) * (p.beta_gamma - p.beta_gamma_conj);
    Complex den = p.beta_gamma * p.beta_gamma * (v * v);
    Real argA = arg(num / den);
    for (int k = 0; k < 3; ++k) {
      Real th = (pi - argA + 2.0 * pi * double(k)) / 3.0;
      dirs.push_back(Complex{cos(th), sin(th)});
    }
  } else {
    for (double q : {3.0, 1.0, -3.0, -1.0}) {
      Real th = pi * q / 4.0;
      dirs.push_back(Complex{cos(th), sin(th)});
    }
  }

  // most origin-facing first; the measure-carrying arc heads toward the
  // region the gamma = 0 skeleton encloses, not into the lower half plane
  Complex inward = -p.beta_gamma / abs(p.beta_gamma);
  std::sort(dirs.begin(), dirs.end(), [&](const Complex& u, const Complex& v) {
    return (u.re * inward.re + u.im * inward.im) >
           (v.re * inward.re + v.im * inward.im);
  });

  // accept only the arc carrying total phase -2 pi i; wrong saddle loops
  // differ from it by multiples of 2 pi gamma (missed or doubled poles),
  // so the window must shrink with gamma
  Real two_pi = 2.0 * pi;
  Real phi_tol = min(max(pi * p.gamma, Real(1e-5)), Real(0.5));
  TraceResult best;
  for (const Complex& d : dirs) {
    TraceResult r = trace_attempt(p, d, step);
    if (r.reached && abs(r.phi_end.im + two_pi) < phi_tol) {
      best = r;
      break;
    }
  }
  if (!best.reached)
    throw convergence_error(
        "trace_S_gamma: no launch direction produced the unit-mass arc");

  if (diag) {
    diag->max_re_drift = best.max_re_drift;
    diag->phi_end = best.phi_end;
  }
  return best.curve;
}

namespace {

// segment crossing tests against the excluded set, in double precision;
// endpoint touches are allowed, transversal crossings are not
bool crosses_positive_ray(const Complex& P0, const Complex& P1) {
  double y0 = P0.im.to_double(), y1 = P1.im.to_double();
  if (y0 == 0.0 && y1 == 0.0) {
    // collinear with the axis: overlap with x > 0 is a crossing
    double xlo = std::min(P0.re.to_double(), P1.re.to_double());
    double xhi = std::max(P0.re.to_double(), P1.re.to_double());
    return xhi > 0.0 && xhi > xlo;
  }
  if ((y0 > 0.0 && y1 > 0.0) || (y0 < 0.0 && y1 < 0.0)) return false;
  // one endpoint exactly on the axis is a touch, not a crossing
  if (y0 == 0.0 || y1 == 0.0) return false;
  double t = y0 / (y0 - y1);
  double x = P0.re.to_double() + t * (P1.re.to_double() - P0.re.to_double());
  return x > 0.0;
}

bool crosses_branch_segment(const Complex& P0, const Complex& P1, double m,
                            double d) {
  if (d <= 0.0) return false;
  double x0 = P0.re.to_double() - m, x1 = P1.re.to_double() - m;
  if ((x0 > 0.0 && x1 > 0.0) || (x0 < 0.0 && x1 < 0.0)) return false;
  if (x0 == 0.0 || x1 == 0.0) return false;  // endpoint on the cut line
  double t = x0 / (x0 - x1);
  double y = P0.im.to_double() + t * (P1.im.to_double() - P0.im.to_double());
  return std::fabs(y) < d;
}

}  // namespace

Complex integrate_y_path(const GammaFamilyParams& p,
                         const std::vector<Complex>& waypoints,
                         const PrecisionContext& ctx) {
  ctx.validate();
  if (waypoints.size() < 2)
    throw domain_error("integrate_y_path: need at least two waypoints");
  PrecGuard guard(ctx.mantissa_bits + 32);
  PrecisionContext inner = ctx;
  inner.mantissa_bits = working_prec();
  Complex total = Complex{Real(0.0), Real(0.0)};
  for (size_t i = 0; i + 1 < waypoints.size(); ++i) {
    Complex P0 = waypoints[i], P1 = waypoints[i + 1];
    Complex delta = P1 - P0;
    if (delta.is_zero()) continue;
    auto f = [&](const Real& t) -> Complex {
      return y_gamma(p, P0 + t * delta, Side::Ext) * delta;
    };
    total = total + tanh_sinh(f, Real(0.0), Real(1.0), inner);
  }
  return round_to(total, ctx.mantissa_bits);
}

Complex phi_gamma(const GammaFamilyParams& p, const Complex& z,
                  const PrecisionContext& ctx) {
  ctx.validate();
  PrecGuard guard(ctx.mantissa_bits + 32);

  if (z.is_zero() || (z - Complex{p.a, Real(0.0)}).is_zero())
    throw domain_error("phi_gamma: z is a pole of y_gamma");
  const Real m = p.beta_gamma.re;
  const Real d = p.beta_gamma.im;
  if (z.re == m && abs(z.im) < d)
    throw domain_error("phi_gamma: z on the open branch segment");

  const Complex bg = p.beta_gamma;
  if ((z - bg).is_zero()) return Complex{Real(0.0), Real(0.0)};

  // waypoints over the top; lower-half targets detour around the left so the
  // path never meets [0, inf) or the branch segment
  Real H = max(max(d, abs(z)), abs(bg)) + 1.0;
  std::vector<Complex> pts;
  pts.push_back(bg);
  pts.push_back(Complex{m, H});
  if (z.im >= 0.0) {
    if (z.re == m && z.im < d)
      throw domain_error("phi_gamma: target shadowed by the branch segment");
    pts.push_back(Complex{z.re, H});
    pts.push_back(z);
  } else {
    Real X = max(max(abs(z.re), m + d), Real(1.0)) + 1.0;
    Real H2 = max(abs(z.im), d) + 1.0;
    pts.push_back(Complex{-X, H});
    pts.push_back(Complex{-X, -H2});
    pts.push_back(Complex{z.re, -H2});
    pts.push_back(z);
  }

  const double md = m.to_double(), dd = d.to_double();
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    if (crosses_positive_ray(pts[i], pts[i + 1]) ||
        crosses_branch_segment(pts[i], pts[i + 1], md, dd))
      throw domain_error("phi_gamma: path crosses the excluded set");
  }

  PrecisionContext inner = ctx;
  return integrate_y_path(p, pts, inner);
}

std::vector<PlanarCurve> droplet_boundary(const GammaFamilyParams& p,
                                          std::size_t n_samples) {
  if (n_samples < 16)
    throw domain_error("droplet_boundary: need at least 16 samples");
  Real two_pi = 2.0 * const_pi();
  std::vector<PlanarCurve> out;

  auto circle = [&](const Complex& center, const Real& radius) {
    PlanarCurve c;
    c.closed = true;
    c.points.reserve(n_samples);
    for (std::size_t j = 0; j < n_samples; ++j) {
      Real th = two_pi * double(j) / double(n_samples);
      c.points.push_back(center + Complex{radius * cos(th), radius * sin(th)});
    }
    compute_arclength(c);
    return c;
  };

  if (p.exterior_map) {
    PlanarCurve c;
    c.closed = true;
    c.points.reserve(n_samples);
    for (std::size_t j = 0; j < n_samples; ++j) {
      Real th = two_pi * double(j) / double(n_samples);
      c.points.push_back(f_gamma_map(p, Complex{cos(th), sin(th)}));
    }
    compute_arclength(c);
    out.push_back(std::move(c));
  } else {
    out.push_back(circle(Complex{Real(0.0), Real(0.0)}, sqrt(1.0 + p.gamma)));
    out.push_back(circle(Complex{p.a, Real(0.0)}, sqrt(p.gamma)));
  }
  return out;
}

CurveMeasure mu_gamma_on_curve(const GammaFamilyParams& p,
                               const PlanarCurve& curve) {
  CurveMeasure mu;
  mu.curve = curve;
  mu.density.reserve(curve.points.size());
  Real inv_two_pi = 0.5 / const_pi();
  for (const Complex& z : curve.points) {
    bool at_branch = (z - p.beta_gamma).is_zero() ||
                     (z - p.beta_gamma_conj).is_zero();
    if (at_branch) {
      mu.density.push_back(Real(0.0));
      continue;
    }
    mu.density.push_back(abs(y_gamma(p, z, Side::Ext)) * inv_two_pi);
  }
  return mu;
}

}  // namespace planar
