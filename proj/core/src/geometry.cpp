#include "planarortho/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace planar {

ProblemParams make_params(const Real& a, const Real& c, const Real& N) {
  if (!(a > 0.0)) throw domain_error("make_params: a must be > 0");
  if (!(c > -1.0)) throw domain_error("make_params: c must be > -1");
  if (!(N > 0.0)) throw domain_error("make_params: N must be > 0");
  ProblemParams p;
  p.a = a;
  p.c = c;
  p.N = N;
  p.beta = min(a, 1.0 / a);
  p.ell = log(p.beta) - a * p.beta;
  return p;
}

Real PlanarCurve::total_length() const {
  if (points.empty()) return Real(0.0);
  Real L = arclength.back();
  if (closed && points.size() > 1) L += abs(points.front() - points.back());
  return L;
}

Real PlanarCurve::max_spacing() const {
  Real m(0.0);
  for (size_t i = 1; i < points.size(); ++i) m = max(m, abs(points[i] - points[i - 1]));
  if (closed && points.size() > 1) m = max(m, abs(points.front() - points.back()));
  return m;
}

void compute_arclength(PlanarCurve& curve) {
  curve.arclength.clear();
  curve.arclength.reserve(curve.points.size());
  Real s(0.0);
  for (size_t i = 0; i < curve.points.size(); ++i) {
    if (i > 0) s += abs(curve.points[i] - curve.points[i - 1]);
    curve.arclength.push_back(s);
  }
}

Real CurveMeasure::total_mass() const {
  const auto& pts = curve.points;
  if (pts.size() < 2) return Real(0.0);
  Real mass(0.0);
  for (size_t i = 1; i < pts.size(); ++i)
    mass += (density[i] + density[i - 1]) * 0.5 * abs(pts[i] - pts[i - 1]);
  if (curve.closed)
    mass += (density.front() + density.back()) * 0.5 * abs(pts.front() - pts.back());
  return mass;
}

Complex phi_A(const ProblemParams& p, const Complex& z) {
  if (z.is_zero()) throw domain_error("phi_A: singular at z = 0");
  return p.a * (z - p.beta) - log(z / p.beta);
}

Complex g_function(const ProblemParams& p, const Complex& z, Side side) {
  if (side == Side::Ext) {
    if (z.is_zero()) throw domain_error("g_function: log z singular at 0");
    return log(z);
  }
  return p.a * z + p.ell;
}

namespace {

// Skeleton level function along the ray angle theta:
//   F(r) = log(r/beta) - a (r cos theta - beta),
// strictly increasing on (0, r*] with r* = 1/(a cos theta) when cos theta > 0
// (r* = +inf otherwise), and F(beta) >= 0. The inner root of F = target is
// what every curve solver here wants.
struct RayLevel {
  const ProblemParams& p;
  Real cos_t;

  Real F(const Real& r) const { return log(r / p.beta) - p.a * (r * cos_t - p.beta); }
  Real dF(const Real& r) const { return 1.0 / r - p.a * cos_t; }
};

// Safeguarded Newton with a maintained bracket [lo, hi], F(lo) < target <= F(hi).
Real solve_ray(const RayLevel& ray, const Real& target, const Real& tol, const Real& hi_limit) {
  const ProblemParams& p = ray.p;
  Real hi = p.beta;
  if (!(ray.F(hi) >= target)) {
    // root lies beyond beta (positive targets near theta = 0); expand toward
    // the maximum of F on the ray
    Real cap = hi_limit;
    Real step = (cap - hi) * 0.5;
    while (ray.F(hi) < target) {
      if (step < tol) throw convergence_error("solve_ray: no crossing on ray");
      if (ray.F(hi + step) >= ray.F(hi)) {
        hi += step;
      } else {
        step *= 0.5;  // stepped past the crest
      }
      if (hi > cap) { hi = cap; break; }
    }
    if (ray.F(hi) < target) throw convergence_error("solve_ray: target above ray maximum");
  }
  Real lo = hi * 0.5;
  while (!(ray.F(lo) < target)) lo *= 0.5;

  Real r = (lo + hi) * 0.5;
  for (int it = 0; it < 60; ++it) {
    Real f = ray.F(r) - target;
    if (abs(f) <= tol) return r;
    if (f < 0.0) lo = r; else hi = r;
    Real d = ray.dF(r);
    Real next = (d.is_zero()) ? (lo + hi) * 0.5 : r - f / d;
    if (!(next > lo && next < hi)) next = (lo + hi) * 0.5;
    r = next;
  }
  if (abs(ray.F(r) - target) <= tol * 1e6) return r;  // near miss at double-root angles
  throw convergence_error("solve_ray: Newton did not converge");
}

Real newton_tol(const PrecisionContext& ctx) {
  return exp(Real(-double(ctx.mantissa_bits / 2)) * log(Real(2.0)));
}

// hi_limit: past the crest of F the level set leaves the inner branch, so cap
// the expansion at the crest radius (or a generous multiple of beta).
Real ray_cap(const ProblemParams& p, const Real& cos_t) {
  if (cos_t > 0.0) return 1.0 / (p.a * cos_t);
  return p.beta * 4.0;
}

PlanarCurve trace_level(const ProblemParams& p, const Real& target_const, long n_samples,
                        const PrecisionContext& ctx) {
  if (n_samples < 64) throw domain_error("curve tracing needs n_samples >= 64");
  PrecGuard g(ctx.mantissa_bits);
  PlanarCurve out;
  out.closed = true;
  out.points.reserve(n_samples);
  const Real two_pi = const_pi() * 2.0;
  const Real tol = newton_tol(ctx);
  for (long j = 0; j < n_samples; ++j) {
    Real theta = two_pi * Real::from_long(j) / Real::from_long(n_samples);
    Real ct = cos(theta), st = sin(theta);
    Real r;
    if (j == 0 && target_const.is_zero()) {
      r = p.beta;  // exact by construction
    } else {
      RayLevel ray{p, ct};
      r = solve_ray(ray, target_const, tol, ray_cap(p, ct));
    }
    out.points.push_back({r * ct, r * st});
  }
  compute_arclength(out);
  return out;
}

}  // namespace

PlanarCurve trace_skeleton(const ProblemParams& p, long n_samples, const PrecisionContext& ctx) {
  return trace_level(p, Real(0.0), n_samples, ctx);
}

CurveMeasure mu_on_skeleton(const ProblemParams& p, const PlanarCurve& curve) {
  CurveMeasure m;
  m.curve = curve;
  m.density.reserve(curve.points.size());
  Real inv_two_pi = 0.5 / const_pi();
  for (const auto& z : curve.points) m.density.push_back(abs(Complex(p.a) - 1.0 / z) * inv_two_pi);
  return m;
}

Region classify_point(const ProblemParams& p, const PlanarCurve& skeleton, const Complex& z) {
  (void)p;
  const auto& pts = skeleton.points;
  if (pts.size() < 3) throw domain_error("classify_point: degenerate skeleton");
  const double x = z.re.to_double(), y = z.im.to_double();

  double band = 10.0 * skeleton.max_spacing().to_double();
  double min_d2 = 1e300;
  bool inside = false;
  size_t n = pts.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    double xi = pts[i].re.to_double(), yi = pts[i].im.to_double();
    double xj = pts[j].re.to_double(), yj = pts[j].im.to_double();
    // distance to segment
    double dx = xj - xi, dy = yj - yi;
    double L2 = dx * dx + dy * dy;
    double t = L2 > 0 ? ((x - xi) * dx + (y - yi) * dy) / L2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    double px = xi + t * dx - x, py = yi + t * dy - y;
    min_d2 = std::min(min_d2, px * px + py * py);
    // ray cast
    if ((yi > y) != (yj > y)) {
      double xcross = xi + (y - yi) * (xj - xi) / (yj - yi);
      if (x < xcross) inside = !inside;
    }
  }
  if (min_d2 <= band * band) return Region::OnCurve;
  return inside ? Region::Int : Region::Ext;
}

PlanarCurve eta_curve(const ProblemParams& p, const Real& eta, long n_samples,
                      const PrecisionContext& ctx) {
  if (eta < 0.0) throw domain_error("eta_curve: eta must be >= 0");
  // Re phi_A = eta is F = -eta in ray coordinates
  return trace_level(p, -eta, n_samples, ctx);
}

Real default_beta_disk_radius(const ProblemParams& p) {
  return min(abs(p.a - p.beta), p.beta) / 3.0;
}

PlanarCurve zero_attraction_curve(const ProblemParams& p, long n, long n_samples,
                                  const PrecisionContext& ctx, double exclude_radius) {
  if (p.c.is_zero()) throw domain_error("zero_attraction_curve: c = 0 has no curve");
  if (n < 2) throw domain_error("zero_attraction_curve: degree too small");
  if (n_samples < 64) throw domain_error("zero_attraction_curve: n_samples >= 64");
  PrecGuard g(ctx.mantissa_bits);

  const Real Nn = Real::from_long(n);
  const Real tol = newton_tol(ctx);
  const Real two_pi = const_pi() * 2.0;
  const bool outer = p.a > 1.0;  // which zero-location law applies
  Real excl = exclude_radius >= 0.0 ? Real(exclude_radius) : default_beta_disk_radius(p);

  // z-independent part of the right-hand side
  Real rhs0;
  {
    Real logN = log(Nn);
    Real lg_c = log_gamma_pos(p.c);
    if (outer) {
      rhs0 = (p.c - 0.5) * logN / Nn - lg_c / Nn +
             (log(const_pi() * 2.0) * 0.5 + p.c * log(p.a * p.a - 1.0) - log(p.a)) / Nn;
    } else {
      rhs0 = (p.c - 1.0) * logN / Nn - lg_c / Nn +
             (log(p.a) + (p.c - 1.0) * log(1.0 - p.a * p.a)) / Nn;
    }
  }
  auto rhs_z = [&](const Complex& z) -> Real {
    if (outer) {
      return rhs0 + ((p.c * 2.0 - 1.0) * log(abs(z - p.beta)) - p.c * log(abs(z - p.a)) -
                     p.c * log(abs(z))) / Nn;
    }
    return rhs0 + (-(Real(1.0) - p.c) * log(abs(z - p.a)) - p.c * log(abs(z))) / Nn;
  };

  PlanarCurve out;
  out.closed = false;
  for (long j = 0; j < n_samples; ++j) {
    Real theta = two_pi * Real::from_long(j) / Real::from_long(n_samples);
    Real ct = cos(theta), st = sin(theta);
    RayLevel ray{p, ct};
    // Stay on the inner branch: past the crest of F the level set continues on
    // a far branch that is not the zero-attraction curve.
    Real cap = ray_cap(p, ct);
    Real r;
    bool ok = false;
    try {
      r = solve_ray(ray, Real(0.0), tol, cap);  // seed on the skeleton
      for (int it = 0; it < 60; ++it) {
        Complex z{r * ct, r * st};
        Real f = ray.F(r) - rhs_z(z);
        if (abs(f) <= tol) { ok = true; break; }
        Real d = ray.dF(r);
        if (d.is_zero()) break;
        Real next = r - f / d;
        if (!(next > 0.0 && next < cap)) break;
        r = next;
      }
    } catch (const convergence_error&) {
    }
    if (!ok) continue;  // sample omitted (ray fails near the beta disk crest)
    Complex z{r * ct, r * st};
    if (abs(z - p.beta) < excl) continue;
    out.points.push_back(z);
  }
  compute_arclength(out);
  return out;
}

Real hausdorff(const PlanarCurve& A, const PlanarCurve& B) {
  if (A.points.empty() || B.points.empty()) throw domain_error("hausdorff: empty curve");
  auto pts_of = [](const PlanarCurve& c) {
    std::vector<std::pair<double, double>> v;
    v.reserve(c.points.size());
    for (const auto& z : c.points) v.push_back({z.re.to_double(), z.im.to_double()});
    return v;
  };
  auto pa = pts_of(A), pb = pts_of(B);

  auto sup_inf = [](const std::vector<std::pair<double, double>>& P,
                    const std::vector<std::pair<double, double>>& Q, bool q_closed) {
    double worst = 0.0;
    size_t nq = Q.size();
    size_t limit = q_closed ? nq : nq - 1;
    for (const auto& [x, y] : P) {
      double best = 1e300;
      for (size_t i = 0; i < limit; ++i) {
        auto [xi, yi] = Q[i];
        auto [xj, yj] = Q[(i + 1) % nq];
        double dx = xj - xi, dy = yj - yi;
        double L2 = dx * dx + dy * dy;
        double t = L2 > 0 ? ((x - xi) * dx + (y - yi) * dy) / L2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        double px = xi + t * dx - x, py = yi + t * dy - y;
        best = std::min(best, px * px + py * py);
      }
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  double h = std::max(sup_inf(pa, pb, B.closed), sup_inf(pb, pa, A.closed));
  return Real(h);
}

}  // namespace planar
