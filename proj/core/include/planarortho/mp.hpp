#pragma once

// Arbitrary-precision real/complex kernel over MPFR. Every arithmetic result
// is rounded to the thread-local working precision (set with PrecGuard), so a
// whole computation runs at one precision and re-running under a wider guard
// is the generic accuracy check.

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

#include "planarortho/errors.hpp"

namespace planar {

namespace detail {
inline long& prec_slot() {
  thread_local long bits = 256;
  return bits;
}
}  // namespace detail

inline long working_prec() { return detail::prec_slot(); }
inline void set_working_prec(long bits) {
  if (bits < MPFR_PREC_MIN) bits = MPFR_PREC_MIN;
  detail::prec_slot() = bits;
}

// RAII working-precision switch.
class PrecGuard {
 public:
  explicit PrecGuard(long bits) : saved_(working_prec()) { set_working_prec(bits); }
  ~PrecGuard() { set_working_prec(saved_); }
  PrecGuard(const PrecGuard&) = delete;
  PrecGuard& operator=(const PrecGuard&) = delete;

 private:
  long saved_;
};

class Real {
 public:
  Real() {
    mpfr_init2(x_, working_prec());
    mpfr_set_zero(x_, 1);
  }
  Real(double d) {
    mpfr_init2(x_, working_prec());
    mpfr_set_d(x_, d, MPFR_RNDN);
  }
  explicit Real(const std::string& s) {
    mpfr_init2(x_, working_prec());
    if (mpfr_set_str(x_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw domain_error("Real: unparseable literal '" + s + "'");
  }
  Real(const Real& o) {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_set(x_, o.x_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    x_[0] = o.x_[0];
    mpfr_init2(o.x_, MPFR_PREC_MIN);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(x_, mpfr_get_prec(o.x_));
      mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(x_, o.x_);
    return *this;
  }
  Real& operator=(double d) {
    mpfr_set_d(x_, d, MPFR_RNDN);
    return *this;
  }
  ~Real() { mpfr_clear(x_); }

  static Real from_long(long v) {
    Real r;
    mpfr_set_si(r.x_, v, MPFR_RNDN);
    return r;
  }

  long prec() const { return mpfr_get_prec(x_); }
  // Value rounded into the current working precision.
  Real rounded() const {
    Real r;
    mpfr_set(r.x_, x_, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(x_, MPFR_RNDN); }

  bool is_nan() const { return mpfr_nan_p(x_) != 0; }
  bool is_inf() const { return mpfr_inf_p(x_) != 0; }
  bool is_finite() const { return mpfr_number_p(x_) != 0; }
  bool is_zero() const { return mpfr_zero_p(x_) != 0; }
  int sign() const { return mpfr_sgn(x_); }

  mpfr_ptr raw() { return x_; }
  mpfr_srcptr raw() const { return x_; }

  Real& operator+=(const Real& o) { mpfr_add(x_, x_, o.x_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(x_, x_, o.x_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(x_, x_, o.x_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(x_, x_, o.x_, MPFR_RNDN); return *this; }
  Real& operator+=(double d) { mpfr_add_d(x_, x_, d, MPFR_RNDN); return *this; }
  Real& operator-=(double d) { mpfr_sub_d(x_, x_, d, MPFR_RNDN); return *this; }
  Real& operator*=(double d) { mpfr_mul_d(x_, x_, d, MPFR_RNDN); return *this; }
  Real& operator/=(double d) { mpfr_div_d(x_, x_, d, MPFR_RNDN); return *this; }

  friend Real operator-(const Real& a) {
    Real r;
    mpfr_neg(r.x_, a.x_, MPFR_RNDN);
    return r;
  }
  friend Real operator+(const Real& a, const Real& b) {
    Real r;
    mpfr_add(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r;
    mpfr_sub(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r;
    mpfr_mul(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r;
    mpfr_div(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
  }
  friend Real operator+(const Real& a, double d) {
    Real r;
    mpfr_add_d(r.x_, a.x_, d, MPFR_RNDN);
    return r;
  }
  friend Real operator+(double d, const Real& a) { return a + d; }
  friend Real operator-(const Real& a, double d) {
    Real r;
    mpfr_sub_d(r.x_, a.x_, d, MPFR_RNDN);
    return r;
  }
  friend Real operator-(double d, const Real& a) {
    Real r;
    mpfr_d_sub(r.x_, d, a.x_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, double d) {
    Real r;
    mpfr_mul_d(r.x_, a.x_, d, MPFR_RNDN);
    return r;
  }
  friend Real operator*(double d, const Real& a) { return a * d; }
  friend Real operator/(const Real& a, double d) {
    Real r;
    mpfr_div_d(r.x_, a.x_, d, MPFR_RNDN);
    return r;
  }
  friend Real operator/(double d, const Real& a) {
    Real r;
    mpfr_d_div(r.x_, d, a.x_, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.x_, b.x_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return mpfr_equal_p(a.x_, b.x_) == 0; }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.x_, b.x_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.x_, b.x_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.x_, b.x_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.x_, b.x_) != 0; }
  friend bool operator==(const Real& a, double d) { return mpfr_cmp_d(a.x_, d) == 0; }
  friend bool operator!=(const Real& a, double d) { return mpfr_cmp_d(a.x_, d) != 0; }
  friend bool operator<(const Real& a, double d) { return mpfr_cmp_d(a.x_, d) < 0; }
  friend bool operator<=(const Real& a, double d) { return mpfr_cmp_d(a.x_, d) <= 0; }
  friend bool operator>(const Real& a, double d) { return mpfr_cmp_d(a.x_, d) > 0; }
  friend bool operator>=(const Real& a, double d) { return mpfr_cmp_d(a.x_, d) >= 0; }
  friend bool operator<(double d, const Real& a) { return a > d; }
  friend bool operator>(double d, const Real& a) { return a < d; }
  friend bool operator<=(double d, const Real& a) { return a >= d; }
  friend bool operator>=(double d, const Real& a) { return a <= d; }

 private:
  mpfr_t x_;
};

#define PLANAR_MP_UNARY(name, mpfr_name)        \
  inline Real name(const Real& a) {             \
    Real r;                                     \
    mpfr_name(r.raw(), a.raw(), MPFR_RNDN);     \
    return r;                                   \
  }

PLANAR_MP_UNARY(abs, mpfr_abs)
PLANAR_MP_UNARY(sqrt, mpfr_sqrt)
PLANAR_MP_UNARY(exp, mpfr_exp)
PLANAR_MP_UNARY(expm1, mpfr_expm1)
PLANAR_MP_UNARY(log, mpfr_log)
PLANAR_MP_UNARY(log1p, mpfr_log1p)
PLANAR_MP_UNARY(sin, mpfr_sin)
PLANAR_MP_UNARY(cos, mpfr_cos)
PLANAR_MP_UNARY(tan, mpfr_tan)
PLANAR_MP_UNARY(atan, mpfr_atan)
PLANAR_MP_UNARY(asin, mpfr_asin)
PLANAR_MP_UNARY(acos, mpfr_acos)
PLANAR_MP_UNARY(erf, mpfr_erf)
PLANAR_MP_UNARY(erfc, mpfr_erfc)
#undef PLANAR_MP_UNARY

inline Real floor_r(const Real& a) {
  Real r;
  mpfr_floor(r.raw(), a.raw());
  return r;
}
inline Real ceil_r(const Real& a) {
  Real r;
  mpfr_ceil(r.raw(), a.raw());
  return r;
}

inline Real atan2(const Real& y, const Real& x) {
  Real r;
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}
inline Real hypot(const Real& x, const Real& y) {
  Real r;
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
inline Real pow(const Real& a, const Real& b) {
  Real r;
  mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
inline Real pow(const Real& a, long n) {
  Real r;
  mpfr_pow_si(r.raw(), a.raw(), n, MPFR_RNDN);
  return r;
}
inline Real remainder(const Real& a, const Real& b) {
  Real r;
  mpfr_remainder(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
inline Real max(const Real& a, const Real& b) { return a >= b ? a : b; }
inline Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
inline Real const_pi() {
  Real r;
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}
// ln Gamma(x) for x > 0.
Real log_gamma_pos(const Real& x);
// ln |Gamma(x)| with the sign of Gamma(x) reported; poles raise domain_error.
Real log_gamma_signed(const Real& x, int& sign_out);
inline Real tgamma(const Real& x) {
  Real r;
  mpfr_gamma(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

// Exact-round-trip decimal form (digits chosen by MPFR so re-parsing at the
// same precision recovers the value bit for bit).
std::string to_string(const Real& x);
// Fixed significant-digit form for plotting-grade output.
std::string to_string(const Real& x, int digits);

class Complex {
 public:
  Real re, im;

  Complex() = default;
  Complex(Real r) : re(std::move(r)) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(double r) : re(r) {}
  Complex(double r, double i) : re(r), im(i) {}

  bool is_finite() const { return re.is_finite() && im.is_finite(); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }
  Complex& operator/=(const Complex& o) { return *this = *this / o; }

  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  friend Complex operator+(const Complex& a, const Real& s) { return {a.re + s, a.im}; }
  friend Complex operator+(const Real& s, const Complex& a) { return a + s; }
  friend Complex operator-(const Complex& a, const Real& s) { return {a.re - s, a.im}; }
  friend Complex operator-(const Real& s, const Complex& a) { return {s - a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
  friend Complex operator*(const Real& s, const Complex& a) { return a * s; }
  friend Complex operator/(const Complex& a, const Real& s) { return {a.re / s, a.im / s}; }
  friend Complex operator/(const Real& s, const Complex& a) { return Complex(s) / a; }
  friend Complex operator+(const Complex& a, double s) { return {a.re + s, a.im}; }
  friend Complex operator+(double s, const Complex& a) { return a + s; }
  friend Complex operator-(const Complex& a, double s) { return {a.re - s, a.im}; }
  friend Complex operator-(double s, const Complex& a) { return {s - a.re, -a.im}; }
  friend Complex operator*(const Complex& a, double s) { return {a.re * s, a.im * s}; }
  friend Complex operator*(double s, const Complex& a) { return a * s; }
  friend Complex operator/(const Complex& a, double s) { return {a.re / s, a.im / s}; }
  friend Complex operator/(double s, const Complex& a) { return Complex(Real(s)) / a; }

  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }
inline Real abs(const Complex& z) { return hypot(z.re, z.im); }
inline Real norm2(const Complex& z) { return z.re * z.re + z.im * z.im; }
inline Real arg(const Complex& z) { return atan2(z.im, z.re); }

inline Complex polar(const Real& mag, const Real& phase) {
  Real s, c;
  mpfr_sin_cos(s.raw(), c.raw(), phase.raw(), MPFR_RNDN);
  return {mag * c, mag * s};
}

inline Complex exp(const Complex& z) { return polar(exp(z.re), z.im); }
inline Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

Complex sqrt(const Complex& z);  // principal branch
inline Complex pow(const Complex& z, const Real& c) {
  if (z.is_zero()) return Complex(0.0);
  return exp(Complex(c) * log(z));
}
inline Complex pow(const Complex& z, long n) {
  if (n == 0) return Complex(1.0);
  if (n < 0) return 1.0 / pow(z, -n);
  Complex acc(1.0), base = z;
  long k = n;
  while (k > 0) {
    if (k & 1) acc *= base;
    if (k >>= 1) base *= base;
  }
  return acc;
}

// Complex value carried as (ln magnitude, phase); survives z^N dynamic range.
// Phase is normalized into (-pi, pi].
struct LogComplex {
  Real log_mag;  // -inf encodes zero
  Real phase;

  static LogComplex from(const Complex& z) {
    LogComplex r;
    r.log_mag = log(abs(z));
    r.phase = arg(z);
    return r;
  }
  static LogComplex one() { return {Real(0.0), Real(0.0)}; }
  static LogComplex zero();

  Complex to_complex() const { return polar(exp(log_mag), phase); }
  bool is_zero() const { return log_mag.is_inf() && log_mag.sign() < 0; }
};

Real wrap_phase(const Real& p);  // into (-pi, pi]
LogComplex operator*(const LogComplex& a, const LogComplex& b);
LogComplex operator/(const LogComplex& a, const LogComplex& b);
LogComplex operator-(const LogComplex& a);
// a + b without leaving log space (exact when one side is zero).
LogComplex lc_add(const LogComplex& a, const LogComplex& b);
// z^c in log space, principal phase of z.
LogComplex lc_pow(const Complex& z, const Real& c);
LogComplex lc_pow(const LogComplex& z, const Real& c);
// |a/b - 1|, safe for huge magnitudes as long as the ratio is moderate.
Real lc_rel_diff(const LogComplex& a, const LogComplex& b);

}  // namespace planar
