#pragma once

// Per-conductor counts c_m of C_p^r-extensions.
//
// Ingredients: the subgroup-counting polynomial e(X), the unit-filtration
// exponents r_m, a sufficient criterion for the Selmer ray group to vanish,
// and the finite exceptional set M on which the product formula can fail.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "asdist/arith.hpp"
#include "asdist/divisor_module.hpp"
#include "asdist/errors.hpp"
#include "asdist/field_model.hpp"

namespace asdist {

/// The elementary abelian group C_p^r together with the coefficients of
/// e(X) = prod_{i<r} (pX - p^i) / (p^r - p^i), which counts the C_p^r
/// quotients of an elementary abelian group of order pX.
struct GroupSpec {
  std::uint64_t p = 2;
  unsigned r = 1;
  std::vector<mpq_class> e_coeffs;  // e_0..e_r
  mpz_class group_order;            // p^r
  mpz_class aut_order;              // |GL_r(F_p)|

  mpq_class e_at(const mpq_class& x) const {
    mpq_class acc = 0;
    for (auto it = e_coeffs.rbegin(); it != e_coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// sum_{i>=1} e_i.
  mpq_class e_tail_sum() const {
    mpq_class s = 0;
    for (std::size_t i = 1; i < e_coeffs.size(); ++i) s += e_coeffs[i];
    return s;
  }
};

inline GroupSpec subgroup_count_poly(std::uint64_t p, unsigned r) {
  if (!is_prime(p)) throw input_error("group: p = " + std::to_string(p) + " is not prime");
  if (r < 1) throw input_error("group: rank r must be >= 1");
  GroupSpec g;
  g.p = p;
  g.r = r;
  const mpz_class pr = zpow(p, r);
  std::vector<mpq_class> poly{mpq_class(1)};
  g.aut_order = 1;
  for (unsigned i = 0; i < r; ++i) {
    const mpz_class pi = zpow(p, i);
    const mpq_class den(pr - pi);
    // multiply by (p X - p^i) / (p^r - p^i)
    std::vector<mpq_class> next(poly.size() + 1, mpq_class(0));
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j] -= poly[j] * mpq_class(pi) / den;
      next[j + 1] += poly[j] * mpq_class(p) / den;
    }
    poly = std::move(next);
    g.aut_order *= pr - pi;
  }
  g.e_coeffs = std::move(poly);
  g.group_order = pr;
  return g;
}

/// r_0 = 0, r_m = m - 1 - floor((m - 1) / p): log_{N(P)} |U_{P^m}|.
inline unsigned long wild_exponent(unsigned long m, std::uint64_t p) {
  if (m == 0) return 0;
  return m - 1 - (m - 1) / p;
}

/// N(P)^{r_m} for a prime of degree d.
inline mpz_class local_unit_order(const FieldModel& model, unsigned degree, unsigned long m) {
  return zpow(model.q(), static_cast<unsigned long>(degree) * wild_exponent(m, model.p()));
}

/// |U_m| = prod_{P^k || m} N(P)^{r_k}.
inline mpz_class unit_group_order(const FieldModel& model, const DivisorModule& m) {
  mpz_class u = 1;
  for (const auto& [prime, mult] : m.entries()) u *= local_unit_order(model, prime.degree, mult);
  return u;
}

/// Sufficient condition for a trivial Selmer ray group:
/// sum_{P^k || m} (k - 1) deg P > 2g - 2. A false result claims nothing.
inline bool selmer_trivial(const FieldModel& model, const DivisorModule& m) {
  long long lhs = 0;
  for (const auto& [prime, mult] : m.entries())
    lhs += static_cast<long long>(mult - 1) * prime.degree;
  return lhs > 2 * static_cast<long long>(model.genus()) - 2;
}

/// Trivial module, or squareful and supported on primes of degree <= 2g-2
/// with multiplicities <= 2g.
inline bool in_exceptional_set(unsigned genus, const DivisorModule& m) {
  if (m.is_trivial()) return true;
  if (!m.squareful()) return false;
  const long long max_deg = 2 * static_cast<long long>(genus) - 2;
  for (const auto& [prime, mult] : m.entries()) {
    if (static_cast<long long>(prime.degree) > max_deg || mult > 2 * genus) return false;
  }
  return true;
}

/// Enumerates the exceptional set M from the place counts b_1..b_{2g-2}
/// (prime_counts[d] = b_d, index 0 ignored).
inline std::set<DivisorModule> exceptional_modules(unsigned genus, const std::vector<mpz_class>& prime_counts,
                                                   std::size_t budget = 1'000'000) {
  std::set<DivisorModule> out{DivisorModule::trivial()};
  if (genus <= 1) return out;
  const unsigned max_deg = 2 * genus - 2;
  if (prime_counts.size() <= max_deg)
    throw input_error("exceptional_modules: place counts up to degree " + std::to_string(max_deg) + " required");
  std::vector<Prime> primes;
  for (unsigned d = 1; d <= max_deg; ++d) {
    if (!prime_counts[d].fits_ulong_p() || prime_counts[d] > mpz_class(static_cast<unsigned long>(budget)))
      throw budget_exceeded("exceptional_modules: too many primes of degree " + std::to_string(d));
    for (unsigned long i = 0; i < prime_counts[d].get_ui(); ++i) primes.push_back(Prime{d, i});
  }
  DivisorModule current;
  std::function<void(std::size_t, DivisorModule)> rec = [&](std::size_t i, DivisorModule m) {
    if (i == primes.size()) {
      if (out.size() >= budget) throw budget_exceeded("exceptional_modules: enumeration budget exceeded");
      out.insert(m);
      return;
    }
    rec(i + 1, m);
    for (unsigned k = 2; k <= 2 * genus; ++k) {
      DivisorModule next = m;
      next.add(primes[i], k);
      rec(i + 1, next);
    }
  };
  rec(0, current);
  return out;
}

inline std::set<DivisorModule> exceptional_modules(const FieldModel& model, const GroupSpec& /*group*/) {
  if (model.genus() <= 1) return {DivisorModule::trivial()};
  return exceptional_modules(model.genus(), prime_degree_counts(model, 2 * model.genus() - 2));
}

/// b_m = sum_{i=1}^r e_i prod_{P^k || m} (N^{i r_k} - N^{i r_{k-1}}): the count
/// for modules whose Selmer corrections all vanish (rational, may be
/// non-integral for modules outside that family).
inline mpq_class generic_conductor_term(const FieldModel& model, const GroupSpec& group, const DivisorModule& m) {
  mpq_class total = 0;
  for (unsigned i = 1; i <= group.r; ++i) {
    mpz_class prod = 1;
    for (const auto& [prime, mult] : m.entries()) {
      const unsigned long di = static_cast<unsigned long>(prime.degree) * i;
      prod *= zpow(model.q(), di * wild_exponent(mult, model.p())) -
              zpow(model.q(), di * wild_exponent(mult - 1, model.p()));
    }
    total += group.e_coeffs[i] * mpq_class(prod);
  }
  return total;
}

inline void check_prime_exists(const FieldModel& model, const Prime& prime) {
  if (model.prime_count(prime.degree) <= prime.index)
    throw input_error("prime " + std::to_string(prime.degree) + "." + std::to_string(prime.index) +
                      " does not exist (only " + model.prime_count(prime.degree).get_str() + " primes of degree " +
                      std::to_string(prime.degree) + ")");
}

/// c~_{m0} for m0 in M: c_1 - sum_{i>=0} e_i for the trivial module,
/// c_{m0} - b_{m0} otherwise (c_{m0} taken from the model's exceptional data).
inline mpq_class exceptional_correction(const FieldModel& model, const GroupSpec& group, const DivisorModule& m0) {
  if (m0.is_trivial()) return group.e_at(mpq_class(model.clp_order())) - group.e_at(1);
  const auto it = model.exceptional_counts().find(m0);
  if (it == model.exceptional_counts().end())
    throw unsupported_input("no exceptional conductor count supplied for module " + m0.to_string() +
                            " (required for genus >= 2)");
  return mpq_class(it->second) - generic_conductor_term(model, group, m0);
}

/// Number c_m of C_p^r-extensions with conductor exactly m.
inline mpz_class conductor_count(const FieldModel& model, const GroupSpec& group, const DivisorModule& m) {
  if (group.p != model.p()) throw input_error("group exponent p must equal the characteristic");
  for (const auto& [prime, mult] : m.entries()) check_prime_exists(model, prime);

  mpq_class c;
  if (m.is_trivial()) {
    c = group.e_at(mpq_class(model.clp_order()));
  } else {
    // Split m = m0 * m1^2 with m1 the squarefree part on primes of degree > 2g-2.
    const long long max_deg = 2 * static_cast<long long>(model.genus()) - 2;
    DivisorModule m0, m1;
    bool case_b = true;
    for (const auto& [prime, mult] : m.entries()) {
      if (static_cast<long long>(prime.degree) > max_deg) {
        if (mult == 2) {
          m1.add(prime, 1);
        } else {
          case_b = false;
        }
      } else {
        m0.add(prime, mult);
      }
    }
    if (case_b && !in_exceptional_set(model.genus(), m0)) case_b = false;
    const mpq_class generic = generic_conductor_term(model, group, m);
    if (case_b) {
      if (m1.is_trivial()) {
        // m itself lies in M \ {1}: only the supplied count is available.
        const auto it = model.exceptional_counts().find(m0);
        if (it == model.exceptional_counts().end())
          throw unsupported_input("no exceptional conductor count supplied for module " + m0.to_string());
        c = mpq_class(it->second);
      } else {
        c = m1.mobius() * exceptional_correction(model, group, m0) + generic;
      }
    } else {
      c = generic;
    }
  }
  if (c.get_den() != 1 || c < 0)
    throw consistency_error("conductor count for " + m.to_string() + " is " + c.get_str() +
                            ", not a nonnegative integer");
  return c.get_num();
}

/// Calls fn on every module of degree <= max_degree built from the model's
/// primes (only sensible for tiny fields and degrees).
inline void for_each_module(const FieldModel& model, unsigned max_degree,
                            const std::function<void(const DivisorModule&)>& fn, std::size_t budget = 10'000'000) {
  std::vector<Prime> primes;
  for (unsigned d = 1; d <= max_degree; ++d) {
    const mpz_class b = model.prime_count(d);
    if (b > mpz_class(static_cast<unsigned long>(budget))) throw budget_exceeded("for_each_module: too many primes");
    for (unsigned long i = 0; i < b.get_ui(); ++i) primes.push_back(Prime{d, i});
  }
  std::size_t visited = 0;
  std::function<void(std::size_t, DivisorModule&, unsigned long)> rec = [&](std::size_t i, DivisorModule& cur,
                                                                             unsigned long deg) {
    if (i == primes.size()) {
      if (++visited > budget) throw budget_exceeded("for_each_module: enumeration budget exceeded");
      fn(cur);
      return;
    }
    rec(i + 1, cur, deg);
    const unsigned d = primes[i].degree;
    for (unsigned k = 1; deg + static_cast<unsigned long>(k) * d <= max_degree; ++k) {
      DivisorModule next = cur;
      next.add(primes[i], k);
      rec(i + 1, next, deg + static_cast<unsigned long>(k) * d);
    }
  };
  DivisorModule start;
  rec(0, start, 0);
}

}  // namespace asdist
