#pragma once

// Small integer helpers shared by the analytic and brute-force sides.

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace asdist {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// k with q = p^k, or nullopt if q is not a positive power of p.
inline std::optional<unsigned> log_exact(std::uint64_t q, std::uint64_t p) {
  if (p < 2 || q < p) return std::nullopt;
  unsigned k = 0;
  while (q % p == 0) {
    q /= p;
    ++k;
  }
  if (q != 1) return std::nullopt;
  return k;
}

inline mpz_class zpow(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline mpz_class zpow(std::uint64_t base, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

/// Exact rational power; negative exponents allowed for nonzero bases.
inline mpq_class qpow(const mpq_class& base, long e) {
  if (e < 0) return qpow(mpq_class(base.get_den(), base.get_num()), -e);
  mpz_class num = zpow(mpz_class(base.get_num()), static_cast<unsigned long>(e));
  mpz_class den = zpow(mpz_class(base.get_den()), static_cast<unsigned long>(e));
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

inline int mobius(unsigned n) {
  int result = 1;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

inline std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> ds;
  for (unsigned d = 1; d <= n; ++d)
    if (n % d == 0) ds.push_back(d);
  return ds;
}

/// lcm(2, ..., n); 1 for n < 2.
inline std::uint64_t lcm_upto(std::uint64_t n) {
  std::uint64_t l = 1;
  for (std::uint64_t k = 2; k <= n; ++k) l = std::lcm(l, k);
  return l;
}

inline mpz_class factorial(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline bool fits_int64(const mpz_class& z) {
  return mpz_sizeinbase(z.get_mpz_t(), 2) <= 62;
}

}  // namespace asdist
