#pragma once

// Dense univariate polynomials over Z and Q (ascending coefficients) and
// rational functions N(t)/D(t) with integer coefficients.

#include <gmpxx.h>

#include <algorithm>
#include <ostream>
#include <utility>
#include <vector>

#include "asdist/errors.hpp"
#include "asdist/real.hpp"
#include "asdist/series.hpp"

namespace asdist {

using IntPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;

namespace poly {

template <class T>
void trim(std::vector<T>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Degree of a trimmed polynomial; -1 for zero.
template <class T>
long degree(const std::vector<T>& a) {
  return static_cast<long>(a.size()) - 1;
}

template <class T>
std::vector<T> mul(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<T> c(a.size() + b.size() - 1, T(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  trim(c);
  return c;
}

template <class T>
std::vector<T> add(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> c(std::max(a.size(), b.size()), T(0));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  trim(c);
  return c;
}

template <class T>
std::vector<T> derivative(const std::vector<T>& a) {
  if (a.size() <= 1) return {};
  std::vector<T> d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * T(static_cast<long>(i));
  trim(d);
  return d;
}

inline QPoly to_q(const IntPoly& a) {
  QPoly r(a.begin(), a.end());
  trim(r);
  return r;
}

/// The primitive integer polynomial proportional to a (sign unchanged).
inline IntPoly primitive_part(const QPoly& a) {
  mpz_class l = 1;
  for (const auto& c : a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  IntPoly r(a.size());
  mpz_class g = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i] = mpq_class(a[i] * l).get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r[i].get_mpz_t());
  }
  if (g > 1)
    for (auto& c : r) c /= g;
  trim(r);
  return r;
}

/// Quotient and remainder of a by b over Q.
inline std::pair<QPoly, QPoly> divmod(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  if (b.empty()) throw input_error("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  QPoly quot(a.size() - b.size() + 1, 0);
  const mpq_class lead = b.back();
  for (std::size_t k = quot.size(); k-- > 0;) {
    const mpq_class c = a[k + b.size() - 1] / lead;
    quot[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(quot);
  return {quot, a};
}

inline QPoly monic(QPoly a) {
  trim(a);
  if (a.empty()) return a;
  const mpq_class lead = a.back();
  for (auto& c : a) c /= lead;
  return a;
}

inline QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

inline QPoly exact_div(const QPoly& a, const QPoly& b) {
  auto [quot, rem] = divmod(a, b);
  if (!rem.empty()) throw consistency_error("polynomial division left a remainder");
  return quot;
}

/// Yun's squarefree decomposition: a = c * prod_k f_k^k with f_k squarefree,
/// pairwise coprime and monic. Entry k-1 holds f_k (possibly constant 1).
inline std::vector<QPoly> squarefree_decomposition(const QPoly& a) {
  QPoly f = monic(a);
  std::vector<QPoly> out;
  if (degree(f) <= 0) return out;
  QPoly g = gcd(f, derivative(f));
  QPoly c = exact_div(f, g);
  QPoly d = add(exact_div(derivative(f), g), [&] {
    QPoly m = derivative(c);
    for (auto& x : m) x = -x;
    return m;
  }());
  while (degree(c) > 0) {
    QPoly y = gcd(c, d);
    out.push_back(y);
    c = exact_div(c, y);
    d = add(exact_div(d, y), [&] {
      QPoly m = derivative(c);
      for (auto& x : m) x = -x;
      return m;
    }());
  }
  return out;
}

inline mpq_class eval(const QPoly& a, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline Complex eval(const QPoly& a, const Complex& x) {
  Complex acc;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + Complex(to_real(*it));
  return acc;
}

/// a(c t^k) for an exact scale c.
inline IntPoly subst_monomial(const IntPoly& a, const mpz_class& scale, unsigned k) {
  if (a.empty()) return {};
  IntPoly r((a.size() - 1) * k + 1, 0);
  mpz_class s = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i * k] = a[i] * s;
    s *= scale;
  }
  return r;
}

}  // namespace poly

/// N(t) / D(t) with integer coefficients, D(0) != 0. Normalised so that the
/// common polynomial gcd is cancelled, the joint content is 1 and D(0) > 0.
class RationalFunction {
 public:
  RationalFunction() : num_{1}, den_{1} {}
  RationalFunction(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  const IntPoly& numerator() const noexcept { return num_; }
  const IntPoly& denominator() const noexcept { return den_; }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return {poly::mul(a.num_, b.num_), poly::mul(a.den_, b.den_)};
  }

  bool operator==(const RationalFunction&) const = default;

  Series to_series(std::size_t order) const {
    const Series n = series_from_poly<mpq_class, mpz_class>(num_, order);
    const Series d = series_from_poly<mpq_class, mpz_class>(den_, order);
    return ps_mul(n, ps_inv(d));
  }

  mpq_class operator()(const mpq_class& t) const {
    const mpq_class d = poly::eval(poly::to_q(den_), t);
    if (d == 0) throw input_error("rational function evaluated at a pole");
    return poly::eval(poly::to_q(num_), t) / d;
  }

  Complex operator()(const Complex& t) const {
    return poly::eval(poly::to_q(num_), t) / poly::eval(poly::to_q(den_), t);
  }

 private:
  void normalize() {
    poly::trim(num_);
    poly::trim(den_);
    if (den_.empty() || den_[0] == 0) throw input_error("rational function denominator must have nonzero constant term");
    if (num_.empty()) {
      den_ = {1};
      return;
    }
    const QPoly g = poly::gcd(poly::to_q(num_), poly::to_q(den_));
    QPoly n = poly::to_q(num_), d = poly::to_q(den_);
    if (poly::degree(g) > 0) {
      n = poly::exact_div(n, g);
      d = poly::exact_div(d, g);
    }
    // Common scale making both integral with joint content 1.
    mpz_class l = 1;
    for (const auto& c : n) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    for (const auto& c : d) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    num_.assign(n.size(), 0);
    den_.assign(d.size(), 0);
    mpz_class content = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
      num_[i] = mpq_class(n[i] * l).get_num();
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), num_[i].get_mpz_t());
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
      den_[i] = mpq_class(d[i] * l).get_num();
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), den_[i].get_mpz_t());
    }
    if (den_[0] < 0) content = -content;
    for (auto& c : num_) c /= content;
    for (auto& c : den_) c /= content;
  }

  IntPoly num_;
  IntPoly den_;
};

inline std::ostream& operator<<(std::ostream& os, const IntPoly& a) {
  if (a.empty()) return os << '0';
  bool first = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (!first) os << (a[i] < 0 ? " - " : " + ");
    else if (a[i] < 0) os << '-';
    first = false;
    const mpz_class m = abs(a[i]);
    if (i == 0 || m != 1) os << m;
    if (i >= 1) os << 't';
    if (i >= 2) os << '^' << i;
  }
  return os;
}

inline std::ostream& operator<<(std::ostream& os, const RationalFunction& f) {
  return os << '(' << f.numerator() << ") / (" << f.denominator() << ')';
}

}  // namespace asdist
