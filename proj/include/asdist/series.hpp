#pragma once

// Exact truncated power series in one variable t.
//
// A TruncatedSeries<T> of order M stores the coefficients of t^0..t^M.
// Binary operations truncate to the smaller operand order, so a result never
// claims more precision than its inputs carry.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "asdist/errors.hpp"

namespace asdist {

template <class T>
class TruncatedSeries {
 public:
  using value_type = T;

  explicit TruncatedSeries(std::size_t order) : coeffs_(order + 1, T(0)) {}

  /// Coefficients beyond `order` are dropped, missing ones are zero.
  TruncatedSeries(std::vector<T> coeffs, std::size_t order) : coeffs_(std::move(coeffs)) {
    coeffs_.resize(order + 1, T(0));
  }

  TruncatedSeries(std::initializer_list<T> coeffs, std::size_t order)
      : TruncatedSeries(std::vector<T>(coeffs), order) {}

  static TruncatedSeries one(std::size_t order) { return monomial(T(1), 0, order); }

  static TruncatedSeries monomial(const T& c, std::size_t power, std::size_t order) {
    TruncatedSeries s(order);
    if (power <= order) s.coeffs_[power] = c;
    return s;
  }

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  const T& operator[](std::size_t n) const { return coeffs_.at(n); }
  std::span<const T> coeffs() const noexcept { return coeffs_; }

  bool operator==(const TruncatedSeries& o) const { return coeffs_ == o.coeffs_; }

 private:
  std::vector<T> coeffs_;
};

using Series = TruncatedSeries<mpq_class>;

template <class T>
TruncatedSeries<T> truncate(const TruncatedSeries<T>& a, std::size_t order) {
  order = std::min(order, a.order());
  return TruncatedSeries<T>(std::vector<T>(a.coeffs().begin(), a.coeffs().begin() + order + 1), order);
}

template <class T>
TruncatedSeries<T> ps_add(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  const std::size_t m = std::min(a.order(), b.order());
  std::vector<T> c(m + 1);
  for (std::size_t n = 0; n <= m; ++n) c[n] = a[n] + b[n];
  return TruncatedSeries<T>(std::move(c), m);
}

template <class T>
TruncatedSeries<T> ps_sub(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  const std::size_t m = std::min(a.order(), b.order());
  std::vector<T> c(m + 1);
  for (std::size_t n = 0; n <= m; ++n) c[n] = a[n] - b[n];
  return TruncatedSeries<T>(std::move(c), m);
}

template <class T>
TruncatedSeries<T> ps_scale(const TruncatedSeries<T>& a, const T& s) {
  std::vector<T> c(a.coeffs().begin(), a.coeffs().end());
  for (auto& x : c) x *= s;
  return TruncatedSeries<T>(std::move(c), a.order());
}

/// Cauchy product truncated at min(order(a), order(b)).
template <class T>
TruncatedSeries<T> ps_mul(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  const std::size_t m = std::min(a.order(), b.order());
  std::vector<T> c(m + 1, T(0));
  for (std::size_t i = 0; i <= m; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j <= m; ++j) {
      if (b[j] == 0) continue;
      c[i + j] += a[i] * b[j];
    }
  }
  return TruncatedSeries<T>(std::move(c), m);
}

template <class T>
TruncatedSeries<T> ps_inv(const TruncatedSeries<T>& a) {
  if (a[0] == 0) throw input_error("not invertible as power series: zero constant term");
  const std::size_t m = a.order();
  const T inv0 = T(1) / a[0];
  std::vector<T> b(m + 1, T(0));
  b[0] = inv0;
  for (std::size_t n = 1; n <= m; ++n) {
    T acc(0);
    for (std::size_t k = 1; k <= n; ++k) {
      if (a[k] != 0) acc += a[k] * b[n - k];
    }
    b[n] = -acc * inv0;
  }
  return TruncatedSeries<T>(std::move(b), m);
}

/// a^e by repeated squaring; e may be huge (prime counts grow like q^d/d).
/// Negative exponents go through ps_inv.
template <class T>
TruncatedSeries<T> ps_pow(const TruncatedSeries<T>& a, const mpz_class& e) {
  if (e < 0) return ps_pow(ps_inv(a), mpz_class(-e));
  auto result = TruncatedSeries<T>::one(a.order());
  if (e == 0) return result;
  auto base = a;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(e.get_mpz_t(), i)) result = ps_mul(result, base);
    if (i + 1 < bits) base = ps_mul(base, base);
  }
  return result;
}

/// t -> scale * t^power. The coefficient of t^(n*power) becomes a_n * scale^n.
template <class T>
TruncatedSeries<T> ps_subst_monomial(const TruncatedSeries<T>& a, const T& scale, std::size_t power) {
  if (power == 0) throw input_error("ps_subst_monomial: power must be positive");
  const std::size_t m = a.order();
  std::vector<T> c(m + 1, T(0));
  T s(1);
  for (std::size_t n = 0; n * power <= m; ++n) {
    c[n * power] = a[n] * s;
    s *= scale;
  }
  return TruncatedSeries<T>(std::move(c), m);
}

template <class T>
TruncatedSeries<T> operator+(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) { return ps_add(a, b); }
template <class T>
TruncatedSeries<T> operator-(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) { return ps_sub(a, b); }
template <class T>
TruncatedSeries<T> operator*(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) { return ps_mul(a, b); }

/// Series of a polynomial given by ascending coefficients.
template <class T, class U>
TruncatedSeries<T> series_from_poly(std::span<const U> poly, std::size_t order) {
  std::vector<T> c(order + 1, T(0));
  for (std::size_t i = 0; i < poly.size() && i <= order; ++i) c[i] = T(poly[i]);
  return TruncatedSeries<T>(std::move(c), order);
}

/// Running sums s_n = a_0 + ... + a_n.
template <class T>
std::vector<T> partial_sums(const TruncatedSeries<T>& a) {
  std::vector<T> s(a.order() + 1);
  T acc(0);
  for (std::size_t n = 0; n <= a.order(); ++n) {
    acc += a[n];
    s[n] = acc;
  }
  return s;
}

template <class T>
bool has_nonnegative_integer_coeffs(const TruncatedSeries<T>& a) {
  for (const auto& c : a.coeffs()) {
    if (c < 0) return false;
    if constexpr (std::is_same_v<T, mpq_class>) {
      if (c.get_den() != 1) return false;
    }
  }
  return true;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const TruncatedSeries<T>& a) {
  os << '[';
  for (std::size_t n = 0; n <= a.order(); ++n) os << (n ? ", " : "") << a[n];
  return os << "] + O(t^" << a.order() + 1 << ')';
}

}  // namespace asdist
