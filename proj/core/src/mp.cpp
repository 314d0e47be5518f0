#include "planarortho/mp.hpp"

#include <cstdlib>
#include <cstring>
#include <vector>

namespace planar {

Real log_gamma_pos(const Real& x) {
  if (!(x > 0.0)) throw domain_error("log_gamma_pos: argument must be > 0");
  Real r;
  mpfr_lngamma(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real log_gamma_signed(const Real& x, int& sign_out) {
  if (x <= 0.0 && floor_r(x) == x)
    throw domain_error("log_gamma_signed: pole at nonpositive integer");
  Real r;
  mpfr_lgamma(r.raw(), &sign_out, x.raw(), MPFR_RNDN);
  return r;
}

std::string to_string(const Real& x) {
  if (x.is_nan()) return "nan";
  if (x.is_inf()) return x.sign() > 0 ? "inf" : "-inf";
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, 0, x.raw(), MPFR_RNDN);
  std::string digits(s);
  mpfr_free_str(s);
  bool neg = !digits.empty() && digits[0] == '-';
  std::string mant = neg ? digits.substr(1) : digits;
  if (mant.empty() || mant == "0" || x.is_zero()) return "0";
  std::string out = (neg ? "-" : "");
  out += mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  out += "e" + std::to_string(static_cast<long>(e - 1));
  return out;
}

std::string to_string(const Real& x, int digits) {
  if (digits <= 0) return to_string(x);
  if (x.is_nan()) return "nan";
  if (x.is_inf()) return x.sign() > 0 ? "inf" : "-inf";
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), x.raw(), MPFR_RNDN);
  std::string d(s);
  mpfr_free_str(s);
  bool neg = !d.empty() && d[0] == '-';
  std::string mant = neg ? d.substr(1) : d;
  if (x.is_zero()) return "0";
  std::string out = (neg ? "-" : "");
  out += mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  out += "e" + std::to_string(static_cast<long>(e - 1));
  return out;
}

Complex sqrt(const Complex& z) {
  if (z.im.is_zero()) {
    if (z.re >= 0.0) return {sqrt(z.re), Real(0.0)};
    // stay on the principal side: sqrt(-r + 0i) = i sqrt(r)
    return {Real(0.0), sqrt(-z.re)};
  }
  Real r = abs(z);
  if (z.re >= 0.0) {
    Real t = sqrt((r + z.re) * 0.5);
    return {t, z.im / (t * 2.0)};
  }
  Real u = sqrt((r - z.re) * 0.5);
  if (z.im.sign() >= 0) return {z.im / (u * 2.0), u};
  return {-z.im / (u * 2.0), -u};
}

LogComplex LogComplex::zero() {
  LogComplex r;
  mpfr_set_inf(r.log_mag.raw(), -1);
  r.phase = 0.0;
  return r;
}

Real wrap_phase(const Real& p) {
  Real two_pi = const_pi() * 2.0;
  Real w = remainder(p, two_pi);  // lands in [-pi, pi]
  if (w <= -const_pi()) w += two_pi;
  return w;
}

LogComplex operator*(const LogComplex& a, const LogComplex& b) {
  return {a.log_mag + b.log_mag, wrap_phase(a.phase + b.phase)};
}

LogComplex operator/(const LogComplex& a, const LogComplex& b) {
  return {a.log_mag - b.log_mag, wrap_phase(a.phase - b.phase)};
}

LogComplex operator-(const LogComplex& a) {
  return {a.log_mag, wrap_phase(a.phase + const_pi())};
}

LogComplex lc_add(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const LogComplex& big = (a.log_mag >= b.log_mag) ? a : b;
  const LogComplex& sml = (a.log_mag >= b.log_mag) ? b : a;
  Complex s = polar(Real(1.0), big.phase) + polar(exp(sml.log_mag - big.log_mag), sml.phase);
  if (s.is_zero()) return LogComplex::zero();
  LogComplex r = LogComplex::from(s);
  r.log_mag += big.log_mag;
  return r;
}

LogComplex lc_pow(const Complex& z, const Real& c) {
  if (z.is_zero()) return c.is_zero() ? LogComplex::one() : LogComplex::zero();
  return {c * log(abs(z)), wrap_phase(c * arg(z))};
}

LogComplex lc_pow(const LogComplex& z, const Real& c) {
  if (z.is_zero()) return c.is_zero() ? LogComplex::one() : LogComplex::zero();
  return {c * z.log_mag, wrap_phase(c * z.phase)};
}

Real lc_rel_diff(const LogComplex& a, const LogComplex& b) {
  if (b.is_zero()) {
    if (a.is_zero()) return Real(0.0);
    Real inf;
    mpfr_set_inf(inf.raw(), 1);
    return inf;
  }
  LogComplex q = a / b;
  if (q.log_mag > 2.0) return exp(q.log_mag);  // far off; exact value irrelevant
  Complex d = polar(exp(q.log_mag), q.phase) - 1.0;
  return abs(d);
}

}  // namespace planar
