#include "planarortho/geometry.hpp"

#include <random>

#include "testutil.hpp"

using namespace planar;
using namespace planar::testing;

namespace {
PrecisionContext ctx256() { return PrecisionContext{256, 512}; }
ProblemParams outer() { return make_params(sqrt(Real(2.0)), Real(1.0), Real(100.0)); }
ProblemParams inner() { return make_params(Real(1.0) / sqrt(Real(2.0)), Real(1.0), Real(100.0)); }
}

TEST_SUITE("geometry") {

TEST_CASE("derived parameters") {
  auto p = outer();
  CHECK(rel_err(p.beta, Real(1.0) / sqrt(Real(2.0))) < R("1e-75"));
  CHECK(rel_err(p.ell, log(p.beta) - p.a * p.beta) < R("1e-75"));
  auto q = inner();
  CHECK(q.beta == q.a);
  CHECK_THROWS_AS(make_params(Real(-1.0), Real(1.0), Real(10.0)), domain_error);
  CHECK_THROWS_AS(make_params(Real(1.0), Real(-1.5), Real(10.0)), domain_error);
}

TEST_CASE("external field basics") {
  auto p = outer();
  CHECK(abs(phi_A(p, Complex(p.beta))) < R("1e-75"));
  CHECK(rel_err(phi_A(p, Complex(Real(1.0))).re,
                R("0.0676399720931223940930726634806097945")) < R("1e-34"));
  CHECK(abs(phi_A(p, Complex(Real(1.0))).im) < R("1e-75"));
  // derivative identity phi_A' = a - 1/z by central difference; the floor is
  // the 2^-256 rounding of the O(1) values divided by the 2h step
  Complex z{Real("0.4"), Real("0.3")};
  Real h("1e-30");
  Complex der = (phi_A(p, z + Complex(h)) - phi_A(p, z - Complex(h))) / (h * 2.0);
  CHECK(rel_err(der, Complex(p.a) - Complex(Real(1.0)) / z) < R("1e-44"));
  CHECK_THROWS_AS(phi_A(p, Complex(Real(0.0))), domain_error);
}

TEST_CASE("two-sided potential") {
  auto p = outer();
  CHECK(rel_err(g_function(p, Complex(Real(2.0)), Side::Ext), Complex(log(Real(2.0)))) <
        R("1e-75"));
  // both branches meet at beta with value log beta
  Complex ge = g_function(p, Complex(p.beta), Side::Ext);
  Complex gi = g_function(p, Complex(p.beta), Side::Int);
  CHECK(rel_err(ge, gi) < R("1e-75"));
  CHECK(rel_err(ge, Complex(log(p.beta))) < R("1e-75"));
  // phi = az + log z - 2 g + ell reproduces +-phi_A on each side
  Complex zi{Real("0.2"), Real("0.1")};
  Complex phi_int = Complex(p.a) * zi + log(zi) - g_function(p, zi, Side::Int) * 2.0 + p.ell;
  CHECK(rel_err(phi_int, -phi_A(p, zi)) < R("1e-74"));
  Complex ze{Real("1.4"), Real("0.6")};
  Complex phi_ext = Complex(p.a) * ze + log(ze) - g_function(p, ze, Side::Ext) * 2.0 + p.ell;
  CHECK(rel_err(phi_ext, phi_A(p, ze)) < R("1e-74"));
}

TEST_CASE("skeleton trace") {
  auto ctx = ctx256();
  for (auto p : {outer(), inner()}) {
    auto s = trace_skeleton(p, 512, ctx);
    REQUIRE(s.points.size() == 512);
    CHECK(s.closed);
    CHECK(s.points[0].re == p.beta);
    CHECK(s.points[0].im.is_zero());
    // level-set identity in the real form x^2 + y^2 = beta^2 e^{2a(x-beta)}
    Real worst(0.0);
    for (const auto& z : s.points) {
      Real lhs = z.re * z.re + z.im * z.im;
      Real rhs = p.beta * p.beta * exp((z.re - p.beta) * p.a * 2.0);
      worst = max(worst, abs(lhs - rhs));
    }
    CHECK(worst < p.beta * p.beta * R("1e-12"));
    // arclength strictly increasing
    for (size_t i = 1; i < s.arclength.size(); ++i) CHECK(s.arclength[i] > s.arclength[i - 1]);
  }
  // frozen radius checks against an independent bisection oracle (the oracle
  // itself is good to ~1e-29)
  auto s = trace_skeleton(outer(), 512, ctx);
  CHECK(rel_err(abs(s.points[256]), R("0.196904166506366614448723582995343828")) < R("1e-28"));
  auto si = trace_skeleton(inner(), 512, ctx);
  CHECK(rel_err(abs(si.points[256]), R("0.337763740196120100321261738489570345")) < R("1e-28"));
  CHECK_THROWS_AS(trace_skeleton(outer(), 32, ctx), domain_error);
}

TEST_CASE("equilibrium measure on the skeleton") {
  auto ctx = ctx256();
  for (auto p : {outer(), inner()}) {
    auto s = trace_skeleton(p, 8192, ctx);
    auto mu = mu_on_skeleton(p, s);
    REQUIRE(mu.density.size() == s.points.size());
    // density formula per sample
    for (size_t i = 0; i < s.points.size(); i += 511) {
      Real want = abs(Complex(p.a) - Complex(Real(1.0)) / s.points[i]) / (const_pi() * 2.0);
      CHECK(rel_err(mu.density[i], want) < R("1e-70"));
    }
    CHECK(abs(mu.total_mass() - 1.0) < R("1e-6"));
    // the same mass as a holomorphic differential around the curve
    Complex acc(Real(0.0));
    size_t n = s.points.size();
    for (size_t i = 0; i < n; ++i) {
      const Complex& z0 = s.points[i];
      const Complex& z1 = s.points[(i + 1) % n];
      Complex f0 = Complex(Real(1.0)) / z0 - p.a;
      Complex f1 = Complex(Real(1.0)) / z1 - p.a;
      acc += (f0 + f1) * 0.5 * (z1 - z0);
    }
    Complex total = acc / Complex{Real(0.0), const_pi() * 2.0};
    CHECK(abs(total - Complex(Real(1.0))) < R("1e-6"));
  }
  // density vanishes at beta when a > 1 and not when a < 1
  auto po = outer();
  auto mo = mu_on_skeleton(po, trace_skeleton(po, 512, ctx));
  CHECK(mo.density[0] < R("1e-70"));
  auto pi_ = inner();
  auto mi = mu_on_skeleton(pi_, trace_skeleton(pi_, 512, ctx));
  CHECK(rel_err(mi.density[0], (Real(1.0) / pi_.a - pi_.a) / (const_pi() * 2.0)) < R("1e-70"));
}

TEST_CASE("point classification") {
  auto ctx = ctx256();
  auto p = outer();
  auto s = trace_skeleton(p, 2048, ctx);
  CHECK(classify_point(p, s, Complex(Real(0.0))) == Region::Int);
  CHECK(classify_point(p, s, Complex(Real(2.0))) == Region::Ext);
  CHECK(classify_point(p, s, Complex(p.beta)) == Region::OnCurve);
  CHECK(classify_point(p, s, Complex{Real("0.05"), Real("0.02")}) == Region::Int);
  CHECK(classify_point(p, s, Complex{Real(0.0), Real(1.0)}) == Region::Ext);
}

TEST_CASE("interior level curves") {
  auto ctx = ctx256();
  auto p = outer();
  auto s = trace_skeleton(p, 512, ctx);
  auto e0 = eta_curve(p, Real(0.0), 512, ctx);
  Real worst(0.0);
  for (size_t i = 0; i < 512; ++i) worst = max(worst, abs(e0.points[i] - s.points[i]));
  CHECK(worst < R("1e-10"));

  auto e4 = eta_curve(p, Real("0.4"), 512, ctx);
  CHECK(rel_err(abs(e4.points[256]), R("0.142537274620778855457826632960432314")) < R("1e-28"));
  // every sample sits on Re phi_A = eta
  Real bad(0.0);
  for (const auto& z : e4.points) bad = max(bad, abs(phi_A(p, z).re - Real("0.4")));
  CHECK(bad < R("1e-35"));

  // enclosed area shrinks as eta grows
  auto area = [](const PlanarCurve& c) {
    double acc = 0.0;
    size_t n = c.points.size();
    for (size_t i = 0; i < n; ++i) {
      auto& z0 = c.points[i];
      auto& z1 = c.points[(i + 1) % n];
      acc += z0.re.to_double() * z1.im.to_double() - z1.re.to_double() * z0.im.to_double();
    }
    return 0.5 * acc;
  };
  auto e2 = eta_curve(p, Real("0.2"), 512, ctx);
  double a0 = area(e0), a2 = area(e2), a4 = area(e4);
  CHECK(a0 > a2);
  CHECK(a2 > a4);
  CHECK(a4 > 0.0);
  CHECK_THROWS_AS(eta_curve(p, Real(-0.1), 512, ctx), domain_error);
}

TEST_CASE("sign structure of the external field") {
  auto ctx = ctx256();
  auto p = outer();
  auto s = trace_skeleton(p, 1024, ctx);
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> uth(0.0, 2.0 * 3.14159265358979);
  std::uniform_real_distribution<double> ur(0.02, 0.95);
  for (int k = 0; k < 100; ++k) {
    double th = uth(rng);
    size_t idx = size_t(th / (2.0 * 3.14159265358979) * 1024) % 1024;
    Complex z = s.points[idx] * ur(rng);  // radial shrink keeps it interior
    CHECK(phi_A(p, z).re > 0.0);
  }
  // just outside, away from the corner at beta
  for (int k = 0; k < 40; ++k) {
    size_t idx = 100 + (824 * k) / 40;
    Complex z = s.points[idx] * Real("1.05");
    CHECK(phi_A(p, z).re < 0.0);
  }
  // a > 1: the segment (beta, a] is exterior yet Re phi_A stays positive
  for (int k = 1; k <= 50; ++k) {
    Real t = Real::from_long(k) / 50.0;
    Complex z(p.beta + (p.a - p.beta) * t);
    CHECK(phi_A(p, z).re > 0.0);
  }
}

TEST_CASE("zero attraction curves") {
  auto ctx = ctx256();
  auto p100 = make_params(sqrt(Real(2.0)), Real(1.0), Real(100.0));
  auto p300 = make_params(sqrt(Real(2.0)), Real(1.0), Real(300.0));
  auto s = trace_skeleton(p100, 2048, ctx);
  auto c100 = zero_attraction_curve(p100, 100, 512, ctx);
  auto c300 = zero_attraction_curve(p300, 300, 512, ctx);
  REQUIRE(c100.points.size() > 400);
  REQUIRE(c300.points.size() > 400);
  CHECK_FALSE(c100.closed);

  // one-sided sup distance from a curve to the skeleton polyline; symmetric
  // hausdorff would only measure the deliberate hole near beta
  auto sup_dist = [&](const PlanarCurve& c) {
    double worst = 0.0;
    size_t n = s.points.size();
    for (const auto& z : c.points) {
      double x = z.re.to_double(), y = z.im.to_double();
      double best = 1e300;
      for (size_t i = 0; i < n; ++i) {
        double xi = s.points[i].re.to_double(), yi = s.points[i].im.to_double();
        double xj = s.points[(i + 1) % n].re.to_double(), yj = s.points[(i + 1) % n].im.to_double();
        double dx = xj - xi, dy = yj - yi;
        double L2 = dx * dx + dy * dy;
        double t = L2 > 0 ? std::clamp(((x - xi) * dx + (y - yi) * dy) / L2, 0.0, 1.0) : 0.0;
        double px = xi + t * dx - x, py = yi + t * dy - y;
        best = std::min(best, px * px + py * py);
      }
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  double d100 = sup_dist(c100);
  double d300 = sup_dist(c300);
  CHECK(d300 < d100);
  CHECK(d100 < 0.06);

  // pointwise by ray: both curves sample theta_j = 2 pi j / 512 and the
  // 2048-sample skeleton contains those rays at index 4j
  auto by_ray = [&](const PlanarCurve& c) {
    std::vector<double> r(512, -1.0);
    for (const auto& z : c.points) {
      double th = std::atan2(z.im.to_double(), z.re.to_double());
      if (th < 0) th += 2.0 * 3.141592653589793;
      long j = std::lround(th * 512.0 / (2.0 * 3.141592653589793)) % 512;
      r[size_t(j)] = abs(z).to_double();
    }
    return r;
  };
  auto r100 = by_ray(c100), r300 = by_ray(c300);
  int compared = 0;
  for (size_t j = 0; j < 512; ++j) {
    if (r100[j] < 0 || r300[j] < 0) continue;
    double rs = abs(s.points[4 * j]).to_double();
    CHECK(std::abs(r300[j] - rs) < std::abs(r100[j] - rs));
    ++compared;
  }
  CHECK(compared > 350);

  // c > 1/2 with a > 1 attracts zeros from outside: radial excess at theta = pi/2
  REQUIRE(r300[128] > 0);
  CHECK(r300[128] > abs(s.points[512]).to_double());

  // the excluded zone near beta is honored
  Real excl = default_beta_disk_radius(p100);
  for (const auto& z : c100.points) CHECK(abs(z - p100.beta) >= excl);

  // c = 1/2 kills the log N / N term: curve hugs the skeleton tighter
  auto ph = make_params(sqrt(Real(2.0)), Real("0.5"), Real(300.0));
  auto ch = zero_attraction_curve(ph, 300, 512, ctx);
  CHECK(sup_dist(ch) < d300);

  CHECK_THROWS_AS(zero_attraction_curve(make_params(sqrt(Real(2.0)), Real(0.0), Real(100.0)),
                                        100, 512, ctx),
                  domain_error);
}

TEST_CASE("hausdorff distance") {
  PlanarCurve u, v;
  u.closed = v.closed = true;
  for (int k = 0; k < 512; ++k) {
    Real th = const_pi() * 2.0 * Real::from_long(k) / 512.0;
    u.points.push_back(polar(Real(1.0), th));
    v.points.push_back(polar(Real("1.1"), th));
  }
  compute_arclength(u);
  compute_arclength(v);
  CHECK(abs(hausdorff(u, u)) < R("1e-30"));
  CHECK(abs(hausdorff(u, v) - Real("0.1")) < R("1e-3"));
}

}  // TEST_SUITE
