#pragma once

// Table-driven finite fields F_q (q = p^k <= 4096) and dense polynomials
// over them.
//
// An element is the integer sum c_i p^i for c_0 + c_1 a + ... + c_{k-1} a^{k-1}
// in a fixed polynomial basis, so the prime field is {0, ..., p-1}.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "asdist/arith.hpp"
#include "asdist/errors.hpp"

namespace asdist::oracle {

using GFElem = std::uint32_t;
using GFPoly = std::vector<GFElem>;  // ascending, trimmed (no trailing zeros)

class GF {
 public:
  static constexpr std::uint64_t kMaxOrder = 4096;

  explicit GF(std::uint64_t q) : q_(q) {
    if (q < 2 || q > kMaxOrder) throw input_error("GF: q must lie in [2, " + std::to_string(kMaxOrder) + "]");
    p_ = 0;
    for (std::uint64_t d = 2; d <= q; ++d)
      if (q % d == 0) {
        p_ = d;
        break;
      }
    const auto k = log_exact(q, p_);
    if (!k) throw input_error("GF: q = " + std::to_string(q) + " is not a prime power");
    k_ = *k;
    build();
  }

  std::uint64_t p() const noexcept { return p_; }
  unsigned k() const noexcept { return k_; }
  std::uint64_t q() const noexcept { return q_; }

  GFElem add(GFElem a, GFElem b) const { return add_[a * q_ + b]; }
  GFElem neg(GFElem a) const { return neg_[a]; }
  GFElem sub(GFElem a, GFElem b) const { return add(a, neg(b)); }
  GFElem mul(GFElem a, GFElem b) const { return mul_[a * q_ + b]; }
  GFElem inv(GFElem a) const {
    if (a == 0) throw input_error("GF: zero has no inverse");
    return inv_[a];
  }
  GFElem pow(GFElem a, std::uint64_t e) const {
    GFElem r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  GFElem frob(GFElem a) const { return pow(a, p_); }
  GFElem frob_inv(GFElem a) const { return pow(a, q_ / p_); }

  /// Absolute trace to F_p, returned as an element of {0, ..., p-1}.
  GFElem trace(GFElem a) const {
    GFElem s = 0, x = a;
    for (unsigned i = 0; i < k_; ++i) {
      s = add(s, x);
      x = frob(x);
    }
    return s;
  }

 private:
  // Multiplication of base-p digit vectors modulo a monic degree-k modulus.
  GFElem mul_slow(GFElem a, GFElem b, const std::vector<std::uint64_t>& modulus) const {
    std::vector<std::uint64_t> da(k_), db(k_), prod(2 * k_, 0);
    for (unsigned i = 0; i < k_; ++i) {
      da[i] = a % p_;
      a /= static_cast<GFElem>(p_);
      db[i] = b % p_;
      b /= static_cast<GFElem>(p_);
    }
    for (unsigned i = 0; i < k_; ++i)
      for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    for (unsigned i = 2 * k_; i-- > k_;) {
      const std::uint64_t c = prod[i];
      if (!c) continue;
      for (unsigned j = 0; j <= k_; ++j) prod[i - k_ + j] = (prod[i - k_ + j] + (p_ - c) * modulus[j]) % p_;
    }
    GFElem r = 0;
    for (unsigned i = k_; i-- > 0;) r = static_cast<GFElem>(r * p_ + prod[i]);
    return r;
  }

  void build() {
    add_.assign(q_ * q_, 0);
    neg_.assign(q_, 0);
    for (GFElem a = 0; a < q_; ++a) {
      GFElem na = 0, pw = 1;
      for (GFElem x = a, i = 0; i < k_; ++i, x /= static_cast<GFElem>(p_), pw *= static_cast<GFElem>(p_))
        na += static_cast<GFElem>((p_ - x % p_) % p_) * pw;
      neg_[a] = na;
      for (GFElem b = 0; b < q_; ++b) {
        GFElem s = 0, x = a, y = b;
        pw = 1;
        for (unsigned i = 0; i < k_; ++i) {
          s += static_cast<GFElem>((x % p_ + y % p_) % p_) * pw;
          x /= static_cast<GFElem>(p_);
          y /= static_cast<GFElem>(p_);
          pw *= static_cast<GFElem>(p_);
        }
        add_[a * q_ + b] = s;
      }
    }
    // Search monic moduli until every nonzero element is invertible.
    std::vector<std::uint64_t> modulus(k_ + 1, 0);
    modulus[k_] = 1;
    for (std::uint64_t code = 0; code < q_; ++code) {
      for (unsigned i = 0, c = static_cast<unsigned>(code); i < k_; ++i, c /= static_cast<unsigned>(p_))
        modulus[i] = c % p_;
      if (k_ > 1 && modulus[0] == 0) continue;
      mul_.assign(q_ * q_, 0);
      for (GFElem a = 0; a < q_; ++a)
        for (GFElem b = a; b < q_; ++b) mul_[a * q_ + b] = mul_[b * q_ + a] = mul_slow(a, b, modulus);
      inv_.assign(q_, 0);
      bool field = true;
      for (GFElem a = 1; a < q_ && field; ++a) {
        for (GFElem b = 1; b < q_; ++b)
          if (mul_[a * q_ + b] == 1) {
            inv_[a] = b;
            break;
          }
        field = inv_[a] != 0;
      }
      if (field) return;
    }
    throw consistency_error("GF: no irreducible modulus found");
  }

  std::uint64_t p_ = 0, q_ = 0;
  unsigned k_ = 0;
  std::vector<GFElem> add_, neg_, mul_, inv_;
};

namespace gfpoly {

inline void trim(GFPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline long degree(const GFPoly& a) { return static_cast<long>(a.size()) - 1; }

inline GFPoly add(const GF& f, const GFPoly& a, const GFPoly& b) {
  GFPoly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = f.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(c);
  return c;
}

inline GFPoly scale(const GF& f, const GFPoly& a, GFElem s) {
  GFPoly c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = f.mul(a[i], s);
  trim(c);
  return c;
}

inline GFPoly neg(const GF& f, const GFPoly& a) {
  GFPoly c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = f.neg(a[i]);
  return c;
}

inline GFPoly sub(const GF& f, const GFPoly& a, const GFPoly& b) { return add(f, a, neg(f, b)); }

inline GFPoly mul(const GF& f, const GFPoly& a, const GFPoly& b) {
  if (a.empty() || b.empty()) return {};
  GFPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
  }
  trim(c);
  return c;
}

inline std::pair<GFPoly, GFPoly> divmod(const GF& f, GFPoly a, const GFPoly& b) {
  if (b.empty()) throw input_error("GF polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  GFPoly quot(a.size() - b.size() + 1, 0);
  const GFElem lead_inv = f.inv(b.back());
  for (std::size_t k = quot.size(); k-- > 0;) {
    const GFElem c = f.mul(a[k + b.size() - 1], lead_inv);
    quot[k] = c;
    if (!c) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] = f.sub(a[k + j], f.mul(c, b[j]));
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(quot);
  return {quot, a};
}

inline GFPoly mod(const GF& f, const GFPoly& a, const GFPoly& b) { return divmod(f, a, b).second; }

inline GFPoly pow_mod(const GF& f, GFPoly a, std::uint64_t e, const GFPoly& m) {
  GFPoly r = mod(f, GFPoly{1}, m);
  a = mod(f, a, m);
  while (e) {
    if (e & 1) r = mod(f, mul(f, r, a), m);
    a = mod(f, mul(f, a, a), m);
    e >>= 1;
  }
  return r;
}

/// Inverse of a modulo m; throws if they are not coprime.
inline GFPoly inverse_mod(const GF& f, const GFPoly& a, const GFPoly& m) {
  GFPoly r0 = m, r1 = mod(f, a, m), s0{}, s1{1};
  while (!r1.empty()) {
    auto [quot, rem] = divmod(f, r0, r1);
    GFPoly s2 = sub(f, s0, mul(f, quot, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) throw consistency_error("GF polynomial is not invertible modulo the given modulus");
  return mod(f, scale(f, s0, f.inv(r0[0])), m);
}

inline GFPoly power(const GF& f, const GFPoly& a, unsigned e) {
  GFPoly r{1};
  for (unsigned i = 0; i < e; ++i) r = mul(f, r, a);
  return r;
}

/// The monic polynomial x^deg + sum c_i x^i whose lower coefficients are the
/// base-q digits of code.
inline GFPoly monic_from_code(const GF& f, std::uint64_t code, unsigned deg) {
  GFPoly a(deg + 1, 0);
  for (unsigned i = 0; i < deg; ++i) {
    a[i] = static_cast<GFElem>(code % f.q());
    code /= f.q();
  }
  a[deg] = 1;
  return a;
}

inline std::string to_string(const GFPoly& a) {
  if (a.empty()) return "0";
  std::string s;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (!a[i]) continue;
    if (!s.empty()) s += " + ";
    if (a[i] != 1 || i == 0) s += (i == 0 ? std::to_string(a[i]) : "[" + std::to_string(a[i]) + "]");
    if (i >= 1) s += 'x';
    if (i >= 2) s += '^' + std::to_string(i);
  }
  return s;
}

}  // namespace gfpoly

/// Monic irreducible polynomials of degree 1..D, grouped by degree and
/// sorted by their code (lower coefficients read as base-q digits).
inline std::vector<std::vector<GFPoly>> irreducibles_by_degree(const GF& f, unsigned D,
                                                               std::size_t budget = 10'000'000) {
  if (D < 1) throw input_error("irreducibles_up_to: D must be >= 1");
  std::vector<std::vector<GFPoly>> out(D + 1);
  for (unsigned d = 1; d <= D; ++d) {
    const auto count = zpow(mpz_class(static_cast<unsigned long>(f.q())), d);
    if (count > mpz_class(static_cast<unsigned long>(budget))) throw budget_exceeded("irreducibles_up_to: too many polynomials");
    const std::uint64_t n = count.get_ui();
    std::vector<bool> reducible(n, false);
    // Products P * g with P irreducible of degree i <= d/2 and g monic of degree d - i.
    for (unsigned i = 1; 2 * i <= d; ++i) {
      const std::uint64_t m = zpow(mpz_class(static_cast<unsigned long>(f.q())), d - i).get_ui();
      for (const auto& P : out[i])
        for (std::uint64_t code = 0; code < m; ++code) {
          const GFPoly prod = gfpoly::mul(f, P, gfpoly::monic_from_code(f, code, d - i));
          std::uint64_t c = 0;
          for (unsigned j = d; j-- > 0;) c = c * f.q() + prod[j];
          reducible[c] = true;
        }
    }
    for (std::uint64_t code = 0; code < n; ++code)
      if (!reducible[code]) out[d].push_back(gfpoly::monic_from_code(f, code, d));
  }
  return out;
}

/// Flat list of the monic irreducibles of degree <= D.
inline std::vector<GFPoly> irreducibles_up_to(std::uint64_t q, unsigned D) {
  const GF f(q);
  std::vector<GFPoly> flat;
  for (auto& group : irreducibles_by_degree(f, D))
    for (auto& P : group) flat.push_back(std::move(P));
  return flat;
}

}  // namespace asdist::oracle
