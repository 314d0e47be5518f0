#include "planarortho/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "planarortho/errors.hpp"

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

// p(z) and p'(z) in one Horner pass over a monic coefficient vector.
void eval_with_derivative(const std::vector<Complex>& co, const Complex& z,
                          Complex& p, Complex& dp) {
  long d = long(co.size()) - 1;
  p = co[d];
  dp = Complex(0.0);
  for (long k = d - 1; k >= 0; --k) {
    dp = dp * z + p;
    p = p * z + co[k];
  }
}

}  // namespace

RootSet find_roots(const ScaledPolynomial& poly, const PrecisionContext& ctx) {
  const long d = poly.degree;
  if (d < 1) throw domain_error("find_roots: degree must be at least 1");
  if (long(poly.coeffs.size()) != d + 1 || !(poly.coeffs[d] == Complex(1.0)))
    throw domain_error("find_roots: expects a monic coefficient vector");

  // Clustered roots make |P'| exponentially small in the degree, so the
  // Newton-correction noise floor sits near 2^(-wp + kappa d) with kappa the
  // pair log-energy of the root cloud. Start with a degree-scaled margin and
  // escalate when the endgame plateaus above tolerance, resuming the same
  // iterates; the sweep budget of 500 is global across escalations.
  long wp = ctx.mantissa_bits + 32 + (5 * d) / 8;
  const Real tol = [&] {
    PrecGuard g(ctx.mantissa_bits);
    return pow(Real(2.0), -(ctx.mantissa_bits / 2));
  }();

  std::vector<Complex> co, z, znew(d);
  Real last_max(0.0);
  bool done = false;
  int sweep = 0;
  for (int attempt = 0; attempt < 3 && !done; ++attempt, wp += std::max(128L, d)) {
    PrecGuard guard(wp);
    if (attempt == 0) {
      co.assign(poly.coeffs.begin(), poly.coeffs.end());
      Real big(0.0);
      for (long k = 0; k < d; ++k) big = max(big, abs(co[k]));
      Real radius = pow(1.0 + big, 1.0 / Real::from_long(d));
      // golden angle: the circle never inherits a symmetry of the input
      const Real golden = const_pi() * (3.0 - sqrt(Real(5.0)));
      z.resize(d);
      for (long k = 0; k < d; ++k) z[k] = polar(radius, Real::from_long(k) * golden);
    }
    const Real endgame = pow(Real(2.0), -(ctx.mantissa_bits / 4));
    Real floor_seen(-1.0);
    int plateau = 0;
    for (; sweep < 500 && !done; ++sweep) {
      Real max_corr(0.0);
      for (long k = 0; k < d; ++k) {
        Complex p, dp;
        eval_with_derivative(co, z[k], p, dp);
        if (abs(p).is_zero()) {
          znew[k] = z[k];
          continue;
        }
        if (abs(dp).is_zero()) {
          // stationary start point; shove it off and let the next sweep work
          znew[k] = z[k] + polar(abs(z[k]) * 1e-8 + 1e-8, Real::from_long(k + 1));
          max_corr = max(max_corr, Real(1.0));
          continue;
        }
        Complex w = p / dp;
        Complex S(0.0);
        for (long j = 0; j < d; ++j) {
          if (j == k) continue;
          Complex diff = z[k] - z[j];
          if (abs(diff).is_zero()) continue;  // co-located pair, handled by snapping
          S = S + Complex(1.0) / diff;
        }
        Complex denom = Complex(1.0) - w * S;
        Complex corr = abs(denom).is_zero() ? w : w / denom;
        znew[k] = z[k] - corr;
        max_corr = max(max_corr, abs(corr));
      }
      z.swap(znew);
      last_max = max_corr;
      done = max_corr < tol;
      if (done) break;
      // plateau of small corrections = noise floor, not slow convergence
      if (max_corr < endgame) {
        if (floor_seen < 0.0 || max_corr < floor_seen * 0.5) {
          floor_seen = max_corr;
          plateau = 0;
        } else if (++plateau >= 10) {
          break;  // escalate precision, keep the iterates
        }
      }
    }
  }
  if (!done)
    throw convergence_error(
        "find_roots: sweep budget (500) ended with max correction " +
        to_string(last_max, 6) + " above tolerance " + to_string(tol, 6) +
        " at degree " + std::to_string(d) + "; partial iterates discarded");
  PrecGuard guard(wp);
  const Real cluster_tol = pow(Real(2.0), -(ctx.mantissa_bits / 4));

  // snap clusters to their mean so multiplicities read back as exact repeats
  std::vector<long> head(d);
  std::iota(head.begin(), head.end(), 0);
  auto find_head = [&](long i) {
    while (head[i] != i) i = head[i] = head[head[i]];
    return i;
  };
  for (long i = 0; i < d; ++i)
    for (long j = i + 1; j < d; ++j)
      if (abs(z[i] - z[j]) < cluster_tol) head[find_head(j)] = find_head(i);
  for (long rep = 0; rep < d; ++rep) {
    if (find_head(rep) != rep) continue;
    Complex sum(0.0);
    long count = 0;
    for (long i = 0; i < d; ++i)
      if (find_head(i) == rep) {
        sum = sum + z[i];
        ++count;
      }
    if (count > 1) {
      Complex mean = sum / Real::from_long(count);
      for (long i = 0; i < d; ++i)
        if (find_head(i) == rep) z[i] = mean;
    }
  }

  RootSet rs;
  rs.roots.reserve(d);
  for (const Complex& r : z) rs.roots.push_back(round_to(r, ctx.mantissa_bits));

  // The bound must describe the roots as delivered: rounding them to the
  // context precision dominates the internal corrections, so re-measure the
  // Newton step at each rounded root and pad with the evaluation noise a
  // caller working at context precision sees.
  const Real noise_unit = pow(Real(2.0), -ctx.mantissa_bits);
  Real bound = last_max;
  for (const Complex& r : rs.roots) {
    Complex p, dp;
    eval_with_derivative(co, r, p, dp);
    if (abs(dp).is_zero()) continue;
    Real amax(0.0);
    const Real ar = abs(r);
    for (long k = d; k >= 0; --k) amax = amax * ar + abs(co[k]);
    bound = max(bound, (abs(p) + amax * noise_unit) / abs(dp));
  }
  rs.residual_bound = round_to(bound, ctx.mantissa_bits);
  return rs;
}

namespace {

struct Projection {
  Real dist;
  Real s;  // arclength position of the foot point
};

// exact point-to-segment distance plus arclength of the foot point
void segment_dist(const Complex& z, const Complex& A, const Complex& B,
                  const Real& s_at_A, Projection& best) {
  Complex v = B - A, w = z - A;
  Real vv = v.re * v.re + v.im * v.im;
  Real t = vv.is_zero() ? Real(0.0) : (w.re * v.re + w.im * v.im) / vv;
  if (t < 0.0) t = Real(0.0);
  if (t > 1.0) t = Real(1.0);
  Complex foot = A + Complex(t) * v;
  Real dist = abs(z - foot);
  if (dist < best.dist) {
    best.dist = dist;
    best.s = s_at_A + t * sqrt(vv);
  }
}

Projection project_to_curve(const Complex& z, const PlanarCurve& curve,
                            const std::vector<double>& xs,
                            const std::vector<double>& ys) {
  const long n = long(curve.points.size());
  // coarse nearest sample at hardware precision
  double zx = z.re.to_double(), zy = z.im.to_double();
  long i0 = 0;
  double best2 = 1e300;
  for (long i = 0; i < n; ++i) {
    double dx = xs[i] - zx, dy = ys[i] - zy;
    double d2 = dx * dx + dy * dy;
    if (d2 < best2) {
      best2 = d2;
      i0 = i;
    }
  }
  // exact refinement on the segments around the coarse winner
  Projection best{abs(z - curve.points[i0]), curve.arclength[i0]};
  for (long off = -2; off <= 1; ++off) {
    long i = i0 + off;
    if (curve.closed) {
      long a = ((i % n) + n) % n;
      long b = (a + 1) % n;
      Real s_at_A = curve.arclength[a];
      segment_dist(z, curve.points[a], curve.points[b], s_at_A, best);
    } else {
      if (i < 0 || i + 1 >= n) continue;
      segment_dist(z, curve.points[i], curve.points[i + 1], curve.arclength[i],
                   best);
    }
  }
  return best;
}

std::vector<double> coord_cache(const PlanarCurve& curve, bool imag) {
  std::vector<double> v(curve.points.size());
  for (size_t i = 0; i < curve.points.size(); ++i)
    v[i] = (imag ? curve.points[i].im : curve.points[i].re).to_double();
  return v;
}

}  // namespace

Real distance_to_curve(const Complex& z, const PlanarCurve& curve) {
  if (curve.points.size() < 2)
    throw domain_error("distance_to_curve: need at least two samples");
  auto xs = coord_cache(curve, false), ys = coord_cache(curve, true);
  return project_to_curve(z, curve, xs, ys).dist;
}

ZeroCurveStats zero_curve_stats(const RootSet& roots, const PlanarCurve& curve,
                                const PlanarCurve& skeleton,
                                const Complex& exclude_near,
                                const Real& exclude_radius) {
  if (!skeleton.closed)
    throw domain_error("zero_curve_stats: skeleton must be closed");
  if (curve.points.size() < 2 || skeleton.points.size() < 3)
    throw domain_error("zero_curve_stats: curves are undersampled");

  // a dummy params carrier: classify_point only reads the curve
  auto xs = coord_cache(curve, false), ys = coord_cache(curve, true);
  ProblemParams pp = make_params(Real(1.0), Real(0.0), Real(1.0));

  std::vector<Real> dists;
  long n_ext = 0, n_int = 0, used = 0;
  for (const Complex& r : roots.roots) {
    if (exclude_radius > 0.0 && abs(r - exclude_near) < exclude_radius) continue;
    ++used;
    dists.push_back(project_to_curve(r, curve, xs, ys).dist);
    Region side = classify_point(pp, skeleton, r);
    if (side == Region::Ext) ++n_ext;
    if (side == Region::Int) ++n_int;
  }

  ZeroCurveStats st{Real(0.0), Real(0.0), Real(0.0), Real(0.0)};
  if (used == 0) return st;
  std::sort(dists.begin(), dists.end(),
            [](const Real& a, const Real& b) { return a < b; });
  st.max_dist = dists.back();
  st.median_dist = (used % 2) ? dists[used / 2]
                              : (dists[used / 2 - 1] + dists[used / 2]) / 2.0;
  st.frac_ext = Real::from_long(n_ext) / Real::from_long(used);
  st.frac_int = Real::from_long(n_int) / Real::from_long(used);
  return st;
}

Real empirical_vs_mu(const RootSet& roots, const CurveMeasure& measure) {
  const PlanarCurve& curve = measure.curve;
  if (!curve.closed) throw domain_error("empirical_vs_mu: measure curve must be closed");
  const long n_samp = long(curve.points.size());
  if (n_samp < 3 || measure.density.size() != size_t(n_samp))
    throw domain_error("empirical_vs_mu: measure is undersampled or mismatched");
  if (roots.roots.empty()) throw domain_error("empirical_vs_mu: empty root set");

  // cumulative mass at each sample, wrap segment closing the total
  std::vector<Real> cum(n_samp + 1);
  cum[0] = Real(0.0);
  for (long i = 1; i < n_samp; ++i) {
    Real ds = curve.arclength[i] - curve.arclength[i - 1];
    cum[i] = cum[i - 1] + 0.5 * (measure.density[i - 1] + measure.density[i]) * ds;
  }
  Real wrap = abs(curve.points[0] - curve.points[n_samp - 1]);
  cum[n_samp] =
      cum[n_samp - 1] + 0.5 * (measure.density[n_samp - 1] + measure.density[0]) * wrap;
  Real total = cum[n_samp];
  Real length = curve.arclength[n_samp - 1] + wrap;

  auto mu_cdf = [&](const Real& s) {
    // last sample with arclength <= s; the final interval ends at `length`
    auto it = std::upper_bound(
        curve.arclength.begin(), curve.arclength.end(), s,
        [](const Real& val, const Real& el) { return val < el; });
    long i = std::clamp(long(it - curve.arclength.begin()) - 1, 0L, n_samp - 1);
    Real s0 = curve.arclength[i];
    Real s1 = (i + 1 < n_samp) ? curve.arclength[i + 1] : length;
    Real seg = s1 - s0;
    Real t = seg.is_zero() ? Real(0.0) : (s - s0) / seg;
    return (cum[i] + t * (cum[i + 1] - cum[i])) / total;
  };

  auto xs = coord_cache(curve, false), ys = coord_cache(curve, true);
  std::vector<Real> positions;
  positions.reserve(roots.roots.size());
  for (const Complex& r : roots.roots)
    positions.push_back(project_to_curve(r, curve, xs, ys).s);
  std::sort(positions.begin(), positions.end(),
            [](const Real& a, const Real& b) { return a < b; });

  const long n = long(positions.size());
  Real ks(0.0);
  for (long k = 0; k < n; ++k) {
    Real F = mu_cdf(positions[k]);
    ks = max(ks, abs(F - Real::from_long(k) / Real::from_long(n)));
    ks = max(ks, abs(Real::from_long(k + 1) / Real::from_long(n) - F));
  }
  return ks;
}

}  // namespace planar
