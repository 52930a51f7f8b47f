#pragma once

// Brute-force census of Artin-Schreier extensions of F_q(x).
//
// Classes of F / P(F), P(y) = y^p - y, are stored in the reduced form
//   lambda * c0 + sum_{p not| d} a_d x^d + sum_P sum_{p not| j} h_j / P^j
// with c0 a fixed element of absolute trace 1 and deg h_j < deg P. The local
// conductor exponent at a pole of order n (p not| n) is n + 1.

#include <gmpxx.h>

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "asdist/arith.hpp"
#include "asdist/divisor_module.hpp"
#include "asdist/errors.hpp"
#include "asdist/oracle/gf.hpp"

namespace asdist::oracle {

/// Field, irreducibles up to a degree, and the abstract prime labels used by
/// the field model (degree-1 indices 0..q-1 are x + a, index q is infinity).
class ASContext {
 public:
  ASContext(std::uint64_t q, unsigned max_prime_degree)
      : field_(q), irreducibles_(irreducibles_by_degree(field_, std::max(1u, max_prime_degree))) {
    for (unsigned d = 1; d < irreducibles_.size(); ++d)
      for (std::size_t i = 0; i < irreducibles_[d].size(); ++i) index_.emplace(irreducibles_[d][i], Prime{d, i});
    for (GFElem a = 1; a < q; ++a)
      if (field_.trace(a) == 1) {
        c0_ = a;
        break;
      }
  }

  const GF& field() const noexcept { return field_; }
  std::uint64_t p() const noexcept { return field_.p(); }
  std::uint64_t q() const noexcept { return field_.q(); }
  unsigned max_prime_degree() const noexcept { return static_cast<unsigned>(irreducibles_.size() - 1); }
  GFElem constant_generator() const noexcept { return c0_; }
  const std::vector<std::vector<GFPoly>>& irreducibles() const noexcept { return irreducibles_; }

  Prime prime_of(const GFPoly& P) const {
    const auto it = index_.find(P);
    if (it == index_.end()) throw input_error("not a known monic irreducible: " + gfpoly::to_string(P));
    return it->second;
  }
  Prime infinite_prime() const noexcept { return Prime{1, q()}; }

 private:
  GF field_;
  std::vector<std::vector<GFPoly>> irreducibles_;
  std::map<GFPoly, Prime> index_;
  GFElem c0_ = 1;
};

struct ASRep {
  GFElem constant = 0;                           // lambda in F_p
  std::vector<GFElem> infinity;                  // infinity[d-1] = a_d
  std::map<GFPoly, std::vector<GFPoly>> finite;  // P -> blocks, entry j-1 = h_j

  bool is_zero() const noexcept { return constant == 0 && infinity.empty() && finite.empty(); }
  bool operator==(const ASRep&) const = default;
  auto operator<=>(const ASRep&) const = default;
};

namespace detail {

inline void trim_rep(ASRep& rep) {
  while (!rep.infinity.empty() && rep.infinity.back() == 0) rep.infinity.pop_back();
  for (auto it = rep.finite.begin(); it != rep.finite.end();) {
    auto& blocks = it->second;
    for (auto& h : blocks) gfpoly::trim(h);
    while (!blocks.empty() && blocks.back().empty()) blocks.pop_back();
    it = blocks.empty() ? rep.finite.erase(it) : std::next(it);
  }
}

}  // namespace detail

/// Checks the stored-form invariants: indices coprime to p, blocks reduced
/// modulo their prime, no trailing zero blocks, lambda in the prime field.
inline bool is_normalized(const ASContext& ctx, const ASRep& rep) {
  const std::uint64_t p = ctx.p();
  if (rep.constant >= p) return false;
  if (!rep.infinity.empty() && rep.infinity.back() == 0) return false;
  for (std::size_t d = 1; d <= rep.infinity.size(); ++d)
    if (d % p == 0 && rep.infinity[d - 1] != 0) return false;
  for (const auto& [P, blocks] : rep.finite) {
    if (blocks.empty() || blocks.back().empty()) return false;
    for (std::size_t j = 1; j <= blocks.size(); ++j) {
      const auto& h = blocks[j - 1];
      if (!h.empty() && h.back() == 0) return false;
      if (gfpoly::degree(h) >= gfpoly::degree(P)) return false;
      if (j % p == 0 && !h.empty()) return false;
    }
  }
  return true;
}

/// Pole order + 1 at every pole; the pure constant class is unramified.
inline DivisorModule rep_conductor(const ASContext& ctx, const ASRep& rep) {
  DivisorModule m;
  if (!rep.infinity.empty()) m.add(ctx.infinite_prime(), static_cast<unsigned>(rep.infinity.size() + 1));
  for (const auto& [P, blocks] : rep.finite) m.add(ctx.prime_of(P), static_cast<unsigned>(blocks.size() + 1));
  return m;
}

inline ASRep rep_add(const ASContext& ctx, const ASRep& a, const ASRep& b) {
  const GF& f = ctx.field();
  ASRep c;
  c.constant = f.add(a.constant, b.constant);
  c.infinity.assign(std::max(a.infinity.size(), b.infinity.size()), 0);
  for (std::size_t i = 0; i < c.infinity.size(); ++i)
    c.infinity[i] = f.add(i < a.infinity.size() ? a.infinity[i] : 0, i < b.infinity.size() ? b.infinity[i] : 0);
  c.finite = a.finite;
  for (const auto& [P, blocks] : b.finite) {
    auto& dst = c.finite[P];
    if (dst.size() < blocks.size()) dst.resize(blocks.size());
    for (std::size_t j = 0; j < blocks.size(); ++j) dst[j] = gfpoly::add(f, dst[j], blocks[j]);
  }
  detail::trim_rep(c);
  return c;
}

/// lambda * rep for lambda in the prime field.
inline ASRep rep_scale(const ASContext& ctx, const ASRep& a, GFElem lambda) {
  const GF& f = ctx.field();
  ASRep c = a;
  c.constant = f.mul(a.constant, lambda);
  for (auto& x : c.infinity) x = f.mul(x, lambda);
  for (auto& [P, blocks] : c.finite)
    for (auto& h : blocks) h = gfpoly::scale(f, h, lambda);
  detail::trim_rep(c);
  return c;
}

/// The represented function as num / den (den monic).
inline std::pair<GFPoly, GFPoly> to_rational(const ASContext& ctx, const ASRep& rep) {
  const GF& f = ctx.field();
  GFPoly den{1};
  for (const auto& [P, blocks] : rep.finite) den = gfpoly::mul(f, den, gfpoly::power(f, P, static_cast<unsigned>(blocks.size())));
  GFPoly poly(rep.infinity.size() + 1, 0);
  poly[0] = f.mul(rep.constant, ctx.constant_generator());
  for (std::size_t d = 1; d <= rep.infinity.size(); ++d) poly[d] = rep.infinity[d - 1];
  gfpoly::trim(poly);
  GFPoly num = gfpoly::mul(f, poly, den);
  for (const auto& [P, blocks] : rep.finite)
    for (std::size_t j = 1; j <= blocks.size(); ++j) {
      if (blocks[j - 1].empty()) continue;
      const GFPoly cofactor = gfpoly::divmod(f, den, gfpoly::power(f, P, static_cast<unsigned>(j))).first;
      num = gfpoly::add(f, num, gfpoly::mul(f, blocks[j - 1], cofactor));
    }
  return {num, den};
}

/// Reduced representative of the class of num / den. Every irreducible factor
/// of den must have degree <= ctx.max_prime_degree().
inline ASRep normalize(const ASContext& ctx, GFPoly num, GFPoly den) {
  const GF& f = ctx.field();
  const std::uint64_t p = ctx.p();
  gfpoly::trim(num);
  gfpoly::trim(den);
  if (den.empty()) throw input_error("normalize: zero denominator");
  const GFElem lead_inv = f.inv(den.back());
  num = gfpoly::scale(f, num, lead_inv);
  den = gfpoly::scale(f, den, lead_inv);

  auto [poly, rem] = gfpoly::divmod(f, num, den);

  // Partial fractions: rem / den = sum_P A_P / P^{e_P}, then A_P in base P.
  std::map<GFPoly, std::vector<GFPoly>> parts;
  GFPoly left = den;
  for (const auto& group : ctx.irreducibles())
    for (const auto& P : group) {
      unsigned e = 0;
      while (gfpoly::degree(left) >= gfpoly::degree(P)) {
        auto [quot, r] = gfpoly::divmod(f, left, P);
        if (!r.empty()) break;
        left = std::move(quot);
        ++e;
      }
      if (e) parts[P].resize(e);
    }
  if (left.size() != 1) throw input_error("normalize: denominator has an irreducible factor beyond the context degree");
  for (auto& [P, blocks] : parts) {
    const unsigned e = static_cast<unsigned>(blocks.size());
    const GFPoly Pe = gfpoly::power(f, P, e);
    const GFPoly cof = gfpoly::divmod(f, den, Pe).first;
    GFPoly A = gfpoly::mod(f, gfpoly::mul(f, rem, gfpoly::inverse_mod(f, cof, Pe)), Pe);
    for (unsigned i = 0; i < e; ++i) {
      auto [quot, digit] = gfpoly::divmod(f, A, P);
      blocks[e - 1 - i] = std::move(digit);
      A = std::move(quot);
    }
  }

  // Remove pole orders divisible by p, top down, by subtracting P(b / P^{j/p}).
  for (auto& [P, blocks] : parts) {
    const unsigned delta = static_cast<unsigned>(gfpoly::degree(P));
    const mpz_class N = zpow(mpz_class(static_cast<unsigned long>(ctx.q())), delta);
    if (!fits_int64(N)) throw input_error("normalize: residue field too large");
    const std::uint64_t root_exp = mpz_class(N / p).get_ui();
    for (std::size_t j = blocks.size(); j >= 1; --j) {
      if (j % p != 0 || blocks[j - 1].empty()) continue;
      const GFPoly b = gfpoly::pow_mod(f, blocks[j - 1], root_exp, P);
      auto [quot, r] = gfpoly::divmod(f, gfpoly::power(f, b, static_cast<unsigned>(p)),
                                      gfpoly::power(f, P, static_cast<unsigned>(j)));
      poly = gfpoly::sub(f, poly, quot);
      for (std::size_t i = 0; i < j; ++i) {
        auto [q2, digit] = gfpoly::divmod(f, r, P);
        blocks[j - 1 - i] = gfpoly::sub(f, blocks[j - 1 - i], digit);
        r = std::move(q2);
      }
      blocks[j / p - 1] = gfpoly::add(f, blocks[j / p - 1], b);
    }
  }
  for (std::size_t d = poly.size(); d-- > 1;) {
    if (d % p != 0 || poly[d] == 0) continue;
    const GFElem b = f.frob_inv(poly[d]);
    poly[d] = 0;
    poly[d / p] = f.add(poly[d / p], b);
  }
  gfpoly::trim(poly);

  ASRep rep;
  rep.constant = poly.empty() ? 0 : f.trace(poly[0]);
  if (poly.size() > 1) rep.infinity.assign(poly.begin() + 1, poly.end());
  rep.finite = std::move(parts);
  detail::trim_rep(rep);
  return rep;
}

/// Calls fn(rep, conductor) once for every nonzero class with conductor
/// degree <= B. Throws budget_exceeded after `budget` classes.
inline void enumerate_classes(const ASContext& ctx, unsigned B,
                              const std::function<void(const ASRep&, const DivisorModule&)>& fn,
                              std::size_t budget = 10'000'000) {
  if (ctx.max_prime_degree() < B / 2) throw input_error("enumerate_classes: context lacks primes of degree B/2");
  const std::uint64_t p = ctx.p(), q = ctx.q();

  struct Place {
    bool infinite;
    const GFPoly* poly;
    unsigned degree;
  };
  std::vector<Place> places{{true, nullptr, 1}};
  for (unsigned d = 1; 2 * d <= B; ++d)
    for (const auto& P : ctx.irreducibles()[d]) places.push_back({false, &P, d});

  std::size_t emitted = 0;
  ASRep rep;
  DivisorModule module;

  auto emit = [&] {
    for (GFElem lambda = 0; lambda < p; ++lambda) {
      rep.constant = lambda;
      if (rep.is_zero()) continue;
      if (++emitted > budget) throw budget_exceeded("enumerate_classes: enumeration budget exceeded");
      fn(rep, module);
    }
    rep.constant = 0;
  };

  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned remaining) {
    if (i == places.size() || 2 * places[i].degree > remaining) {
      emit();
      return;
    }
    rec(i + 1, remaining);  // place unramified
    const Place& pl = places[i];
    const Prime prime = pl.infinite ? ctx.infinite_prime() : ctx.prime_of(*pl.poly);
    const std::uint64_t block_count = pl.infinite ? q : zpow(mpz_class(static_cast<unsigned long>(q)), pl.degree).get_ui();
    for (unsigned e = 2; e * pl.degree <= remaining; ++e) {
      if ((e - 1) % p == 0) continue;
      // Free slots j = 1..e-1, p not| j; slot e-1 nonzero.
      std::vector<unsigned> slots;
      for (unsigned j = 1; j < e; ++j)
        if (j % p) slots.push_back(j);
      std::vector<std::uint64_t> digit(slots.size(), 0);
      digit.back() = 1;
      const DivisorModule saved = module;
      module.add(prime, e);
      for (;;) {
        if (pl.infinite) {
          rep.infinity.assign(e - 1, 0);
          for (std::size_t s = 0; s < slots.size(); ++s) rep.infinity[slots[s] - 1] = static_cast<GFElem>(digit[s]);
        } else {
          auto& blocks = rep.finite[*pl.poly];
          blocks.assign(e - 1, {});
          for (std::size_t s = 0; s < slots.size(); ++s) {
            GFPoly h(pl.degree, 0);
            std::uint64_t code = digit[s];
            for (unsigned c = 0; c < pl.degree; ++c, code /= q) h[c] = static_cast<GFElem>(code % q);
            gfpoly::trim(h);
            blocks[slots[s] - 1] = std::move(h);
          }
        }
        rec(i + 1, remaining - e * pl.degree);
        std::size_t s = 0;
        for (; s < digit.size(); ++s) {
          if (++digit[s] < block_count) break;
          digit[s] = s + 1 == digit.size() ? 1 : 0;
        }
        if (s == digit.size()) break;
      }
      if (pl.infinite) {
        rep.infinity.clear();
      } else {
        rep.finite.erase(*pl.poly);
      }
      module = saved;
    }
  };
  rec(0, B);
}

inline DivisorModule module_lcm(const DivisorModule& a, const DivisorModule& b) {
  DivisorModule m = a;
  for (const auto& [prime, mult] : b.entries()) {
    const unsigned have = a.multiplicity(prime);
    if (mult > have) m.add(prime, mult - have);
  }
  return m;
}

/// Coordinates over F_p of a reduced class, in a layout fixed by (ctx, B):
/// lambda, then a_d (d < B, p not| d), then h_j for each prime of degree <= B/2.
inline std::vector<GFElem> rep_coordinates(const ASContext& ctx, const ASRep& rep, unsigned B) {
  const std::uint64_t p = ctx.p();
  const unsigned k = ctx.field().k();
  std::vector<GFElem> v{rep.constant};
  auto push_elem = [&](GFElem x) {
    for (unsigned i = 0; i < k; ++i, x /= static_cast<GFElem>(p)) v.push_back(static_cast<GFElem>(x % p));
  };
  for (unsigned d = 1; d < B; ++d)
    if (d % p) push_elem(d <= rep.infinity.size() ? rep.infinity[d - 1] : 0);
  for (unsigned delta = 1; 2 * delta <= B; ++delta)
    for (const auto& P : ctx.irreducibles()[delta]) {
      const auto it = rep.finite.find(P);
      for (unsigned j = 1; (j + 1) * delta <= B; ++j) {
        if (j % p == 0) continue;
        for (unsigned c = 0; c < delta; ++c) {
          GFElem x = 0;
          if (it != rep.finite.end() && j <= it->second.size() && c < it->second[j - 1].size()) x = it->second[j - 1][c];
          push_elem(x);
        }
      }
    }
  return v;
}

/// c_n for n <= B: the number of C_p^r-extensions of F_q(x) with conductor
/// degree n, counted by brute force over reduced Artin-Schreier classes.
inline std::vector<mpz_class> oracle_count(std::uint64_t q, std::uint64_t p, unsigned r, unsigned B,
                                           std::size_t budget = 10'000'000) {
  if (!is_prime(p) || !log_exact(q, p)) throw input_error("oracle_count: q must be a power of the prime p");
  if (r < 1) throw input_error("oracle_count: r must be >= 1");
  const ASContext ctx(q, std::max(1u, B / 2));
  std::vector<mpz_class> counts(B + 1, 0);
  if (r == 1) {
    enumerate_classes(ctx, B, [&](const ASRep&, const DivisorModule& m) { counts[m.degree()] += 1; }, budget);
    for (auto& c : counts) {
      if (c % (p - 1) != 0) throw consistency_error("oracle_count: class count not divisible by p - 1");
      c /= p - 1;
    }
    return counts;
  }

  // r >= 2: r-dimensional subspaces through their reduced echelon bases. The
  // conductor of a subspace is the lcm over any basis.
  struct Vec {
    std::vector<GFElem> coords;
    std::size_t pivot;
    DivisorModule conductor;
  };
  std::vector<Vec> monic;
  enumerate_classes(
      ctx, B,
      [&](const ASRep& rep, const DivisorModule& m) {
        auto v = rep_coordinates(ctx, rep, B);
        std::size_t pivot = 0;
        while (v[pivot] == 0) ++pivot;
        if (v[pivot] == 1) monic.push_back({std::move(v), pivot, m});
      },
      budget);
  std::sort(monic.begin(), monic.end(), [](const Vec& a, const Vec& b) { return a.pivot < b.pivot; });

  std::size_t visited = 0;
  std::vector<const Vec*> chosen;
  std::function<void(std::size_t, const DivisorModule&)> rec = [&](std::size_t start, const DivisorModule& cond) {
    if (chosen.size() == r) {
      counts[cond.degree()] += 1;
      return;
    }
    for (std::size_t i = start; i < monic.size(); ++i) {
      const Vec& v = monic[i];
      if (!chosen.empty() && v.pivot <= chosen.back()->pivot) continue;
      if (++visited > budget) throw budget_exceeded("oracle_count: subspace enumeration budget exceeded");
      bool ok = true;
      for (const Vec* w : chosen) ok = ok && v.coords[w->pivot] == 0 && w->coords[v.pivot] == 0;
      if (!ok) continue;
      const DivisorModule next = module_lcm(cond, v.conductor);
      if (next.degree() > B) continue;
      chosen.push_back(&v);
      rec(i + 1, next);
      chosen.pop_back();
    }
  };
  rec(0, DivisorModule{});
  return counts;
}

}  // namespace asdist::oracle
