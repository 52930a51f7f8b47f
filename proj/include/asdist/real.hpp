#pragma once

// High-precision reals (MPFR through Boost.Multiprecision) and a minimal
// complex type on top of them.
//
// Boost 1.74 keeps the default precision of mpfr_float in a single global,
// so PrecisionScope is not thread-safe: numeric entry points set it once and
// run single-threaded.

#include <gmpxx.h>
#include <mpfr.h>

#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <string>

namespace asdist {

using Real = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultPrecisionBits = 200;

inline unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

/// Sets the working precision for newly created Real values and restores
/// the previous setting on scope exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits) : saved_(Real::default_precision()) {
    Real::default_precision(bits_to_digits10(bits));
  }
  ~PrecisionScope() { Real::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

inline Real to_real(const mpz_class& z) {
  Real r;
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

inline Real to_real(const mpq_class& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

/// Copy of x rounded to the current default precision (plain copies keep
/// the precision of their source).
inline Real at_current_precision(const Real& x) {
  Real r;
  mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

/// x^e for a huge integer exponent, by repeated squaring.
inline Real real_pow(const Real& x, const mpz_class& e) {
  if (e < 0) return Real(1) / real_pow(x, mpz_class(-e));
  Real result = 1, base = x;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(e.get_mpz_t(), i)) result *= base;
    if (i + 1 < bits) base *= base;
  }
  return result;
}

/// 2^-bits as a Real, the unit roundoff scale at a given precision.
inline Real epsilon_bits(unsigned bits) { return boost::multiprecision::ldexp(Real(1), -static_cast<int>(bits)); }

inline Real real_pi() {
  Real pi;
  mpfr_const_pi(pi.backend().data(), MPFR_RNDN);
  return pi;
}

inline std::string to_decimal(const Real& x, int digits = 12) {
  return x.str(digits, std::ios_base::fmtflags(0));
}

struct Complex {
  Real re = 0;
  Real im = 0;

  Complex() = default;
  Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT: implicit from real
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  static Complex polar(const Real& modulus, const Real& angle) {
    return {modulus * boost::multiprecision::cos(angle), modulus * boost::multiprecision::sin(angle)};
  }

  /// exp(2 pi i * num / den).
  static Complex root_of_unity(long num, long den) {
    return polar(Real(1), 2 * real_pi() * Real(num) / Real(den));
  }

  Complex conj() const { return {re, -im}; }
  Real norm() const { return re * re + im * im; }
  Real abs() const { return boost::multiprecision::sqrt(norm()); }
  Real arg() const { return boost::multiprecision::atan2(im, re); }

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
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    const Real n = o.norm();
    Real r = (re * o.re + im * o.im) / n;
    im = (im * o.re - re * o.im) / n;
    re = std::move(r);
    return *this;
  }
  Complex operator-() const { return {-re, -im}; }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
};

inline Complex complex_pow(const Complex& x, const mpz_class& e) {
  if (e < 0) return Complex(Real(1)) / complex_pow(x, mpz_class(-e));
  Complex result(Real(1)), base = x;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(e.get_mpz_t(), i)) result *= base;
    if (i + 1 < bits) base *= base;
  }
  return result;
}

inline Complex complex_pow(const Complex& x, long e) { return complex_pow(x, mpz_class(e)); }

}  // namespace asdist
