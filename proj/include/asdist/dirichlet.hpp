#pragma once

// The conductor Dirichlet series Phi(F, C_p^r; s) as a power series in
// t = q^{-s}: Euler products Phi_i, the correction term Upsilon, the
// factorisation Phi_r = Psi_r * Lambda_r, and pole / exponent reports.

#include <gmpxx.h>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "asdist/arith.hpp"
#include "asdist/counting.hpp"
#include "asdist/errors.hpp"
#include "asdist/field_model.hpp"
#include "asdist/rational_function.hpp"
#include "asdist/real.hpp"
#include "asdist/series.hpp"

namespace asdist {

/// The term N^{u - v s} for a prime of degree d (N = q^d) as the monomial
/// q^{d u} t^{d v}. All s-to-t bookkeeping goes through here.
inline Series prime_power_term(std::uint64_t q, unsigned d, unsigned long u, unsigned long v, std::size_t order) {
  const unsigned long power = static_cast<unsigned long>(d) * v;
  if (power > order) return Series(order);
  return Series::monomial(mpq_class(zpow(q, static_cast<unsigned long>(d) * u)), power, order);
}

/// Euler factor of Phi_i at a prime of degree d:
/// 1 + (N^i - 1) sum_{n >= 1, p | n fails} N^{i r_n} N^{-(n+1) s}.
inline Series phi_i_euler_factor(std::uint64_t q, std::uint64_t p, unsigned d, unsigned i, std::size_t order) {
  Series f = Series::one(order);
  const mpq_class scale(zpow(q, static_cast<unsigned long>(d) * i) - 1);
  for (unsigned long n = 1; static_cast<unsigned long>(d) * (n + 1) <= order; ++n) {
    if (n % p == 0) continue;
    f = f + ps_scale(prime_power_term(q, d, i * wild_exponent(n, p), n + 1, order), scale);
  }
  return f;
}

/// Phi_i(s) = prod_P (Euler factor), grouped by degree with exponent b_d.
inline Series phi_i_series(const FieldModel& model, const GroupSpec& group, unsigned i, std::size_t order) {
  if (i < 1 || i > group.r) throw input_error("phi_i_series: need 1 <= i <= r");
  if (group.p != model.p()) throw input_error("group exponent p must equal the characteristic");
  Series acc = Series::one(order);
  for (unsigned d = 1; 2 * static_cast<std::size_t>(d) <= order; ++d)
    acc = acc * ps_pow(phi_i_euler_factor(model.q(), model.p(), d, i, order), model.prime_count(d));
  return acc;
}

/// prod_{deg P > 2g-2} (1 - t^{2 deg P}), i.e. the Moebius sum over squarefree
/// m_1 supported there, evaluated at t^2.
inline Series squarefree_tail_product(const FieldModel& model, std::size_t order) {
  // 1/Z_F(t^2) = prod_P (1 - t^{2 deg P}); remove the low-degree primes.
  Series acc = ps_subst_monomial(ps_inv(zeta_series(model, order)), mpq_class(1), 2);
  const long long max_deg = 2 * static_cast<long long>(model.genus()) - 2;
  for (long long d = 1; d <= max_deg && 2 * d <= static_cast<long long>(order); ++d) {
    const Series f = Series::one(order) + Series::monomial(-1, static_cast<std::size_t>(2 * d), order);
    acc = acc * ps_pow(f, mpz_class(-model.prime_count(static_cast<unsigned>(d))));
  }
  return acc;
}

/// Upsilon_r = e_0 + sum_{m0 in M} c~_{m0} t^{deg m0} prod_{deg P > 2g-2}(1 - t^{2 deg P}).
inline Series upsilon_series(const FieldModel& model, const GroupSpec& group, std::size_t order) {
  if (group.p != model.p()) throw input_error("group exponent p must equal the characteristic");
  Series inner(order);
  for (const auto& m0 : exceptional_modules(model, group)) {
    if (m0.degree() > order) continue;
    inner = inner + Series::monomial(exceptional_correction(model, group, m0), m0.degree(), order);
  }
  return Series::monomial(group.e_coeffs[0], 0, order) + inner * squarefree_tail_product(model, order);
}

/// Phi(F, C_p^r; s) = sum_i e_i Phi_i(s) + Upsilon_r(s).
inline Series phi_series(const FieldModel& model, const GroupSpec& group, std::size_t order) {
  Series acc = upsilon_series(model, group, order);
  for (unsigned i = 1; i <= group.r; ++i) acc = acc + ps_scale(phi_i_series(model, group, i, order), group.e_coeffs[i]);
  for (std::size_t n = 0; n <= order; ++n) {
    if (acc[n] < 0 || acc[n].get_den() != 1)
      throw consistency_error("Phi coefficient of t^" + std::to_string(n) + " is " + acc[n].get_str() +
                              ", not a nonnegative integer");
  }
  if (acc[0] != group.e_at(mpq_class(model.clp_order())))
    throw consistency_error("Phi constant term differs from e(|Cl[p]|)");
  return acc;
}

/// Lambda_r = prod_{l=2}^p Z_F(q^{(l-1) r} t^l) as one reduced rational function.
inline RationalFunction lambda_rational(const FieldModel& model, std::uint64_t p, unsigned r) {
  if (!is_prime(p)) throw input_error("lambda_rational: p must be prime");
  if (r < 1) throw input_error("lambda_rational: r must be >= 1");
  const std::uint64_t q = model.q();
  IntPoly num{1}, den{1};
  for (unsigned l = 2; l <= p; ++l) {
    const mpz_class scale = zpow(q, static_cast<unsigned long>(l - 1) * r);
    num = poly::mul(num, poly::subst_monomial(model.l_poly(), scale, l));
    IntPoly f1(l + 1, 0), f2(l + 1, 0);
    f1[0] = 1;
    f1[l] = -scale;
    f2[0] = 1;
    f2[l] = -scale * q;
    den = poly::mul(den, poly::mul(f1, f2));
  }
  return {num, den};
}

/// Per-prime factor of Psi_r for a prime of degree d:
/// (1 + sum_{l=0}^{p-2} x_l) prod_{l=0}^{p-2} (1 - x_l), x_l = N^{l r - (l+1) s}.
inline Series psi_euler_factor(std::uint64_t q, std::uint64_t p, unsigned r, unsigned d, std::size_t order) {
  Series sum = Series::one(order), prod = Series::one(order);
  for (unsigned long l = 0; l + 2 <= p; ++l) {
    const Series x = prime_power_term(q, d, l * r, l + 1, order);
    sum = sum + x;
    prod = prod * (Series::one(order) - x);
  }
  return sum * prod;
}

inline Series psi_series(const FieldModel& model, std::uint64_t p, unsigned r, std::size_t order) {
  if (!is_prime(p)) throw input_error("psi_series: p must be prime");
  Series acc = Series::one(order);
  for (unsigned d = 1; d <= order; ++d)
    acc = acc * ps_pow(psi_euler_factor(model.q(), p, r, d, order), model.prime_count(d));
  return acc;
}

/// Compares the Euler factor of Phi_r at a degree-d prime in its defining sum
/// form with (1 - N^{(p-1) r} t^{dp})^{-1} (1 + sum_{l<=p-2} N^{l r} t^{d(l+1)}) (1 - t^d).
inline bool euler_factor_closed_form_check(unsigned d, std::uint64_t p, unsigned r, std::uint64_t q,
                                           std::size_t order) {
  if (!is_prime(p) || !log_exact(q, p)) throw input_error("euler_factor_closed_form_check: need q a power of prime p");
  const Series direct = phi_i_euler_factor(q, p, d, r, order);
  const Series geometric = ps_inv(Series::one(order) - prime_power_term(q, d, (p - 1) * r, p, order));
  Series middle = Series::one(order);
  for (unsigned long l = 0; l + 2 <= p; ++l) middle = middle + prime_power_term(q, d, l * r, l + 1, order);
  const Series last = Series::one(order) - prime_power_term(q, d, 0, 1, order);
  return direct == geometric * middle * last;
}

/// Abscissa a(G) = (1 + (p-1) r) / p.
inline mpq_class abscissa(std::uint64_t p, unsigned r) {
  mpq_class a(1 + static_cast<long>(p - 1) * r, static_cast<long>(p));
  a.canonicalize();
  return a;
}

struct BoundedValue {
  Real value;
  Real error_bound;  // |true - value| <= error_bound
};

namespace detail {

/// Relative error e^T - 1 of the Psi Euler product truncated at degree D,
/// where |x_l| at a degree-d prime is q^{d (l r - (l+1) sigma)} and
/// sigma = Re(s) is the abscissa.
inline Real psi_tail_bound(const FieldModel& model, std::uint64_t p, unsigned r, unsigned D) {
  // Largest |x_l| exponent is -kappa with kappa = (p + r - 1)/p (l = p - 2).
  const Real kappa = Real(static_cast<long>(p + r - 1)) / Real(static_cast<long>(p));
  const Real lq = boost::multiprecision::log(Real(model.q()));
  const Real rho = boost::multiprecision::exp(lq * (1 - 2 * kappa));
  if (rho >= 1) throw precision_error("Psi tail bound does not converge");
  const Real s0 = Real(static_cast<long>(p - 1)) * boost::multiprecision::exp(-lq * kappa * (D + 1));
  const Real k0 = 1 + (1 + s0) * boost::multiprecision::exp(s0) / 2;
  const Real delta_max = s0 * s0 * k0;
  if (delta_max >= 1) throw precision_error("Psi tail bound: degree cutoff too small");
  // b_d <= (2 + 2g) q^d / (D + 1) and delta_d <= k0 (p-1)^2 q^{-2 d kappa} for d > D.
  const Real c = (2 + 2 * Real(model.genus())) / Real(D + 1) * k0 * Real(static_cast<long>((p - 1) * (p - 1)));
  const Real geometric = boost::multiprecision::pow(rho, Real(D + 1)) / (1 - rho);
  const Real T = c * geometric / (1 - delta_max);
  return boost::multiprecision::expm1(T);
}

}  // namespace detail

/// Psi_r at the abscissa s = (1 + (p-1) r)/p, from the Euler product over
/// primes of degree <= D, with a rigorous bound on the neglected tail.
/// Evaluated at the current Real precision (see PrecisionScope).
inline BoundedValue psi_at_abscissa(const FieldModel& model, std::uint64_t p, unsigned r, unsigned D) {
  if (D < 1) throw input_error("psi_at_abscissa: degree cutoff must be >= 1");
  if (!is_prime(p)) throw input_error("psi_at_abscissa: p must be prime");
  const mpq_class a = abscissa(p, r);
  const Real lq = boost::multiprecision::log(Real(model.q()));
  Real value = 1;
  for (unsigned d = 1; d <= D; ++d) {
    Real sum = 1, prod = 1;
    for (unsigned long l = 0; l + 2 <= p; ++l) {
      const mpq_class e = mpq_class(static_cast<long>(l * r)) - mpq_class(static_cast<long>(l + 1)) * a;
      const Real x = boost::multiprecision::exp(lq * Real(d) * to_real(e));
      sum += x;
      prod *= 1 - x;
    }
    value *= real_pow(sum * prod, model.prime_count(d));
  }
  const Real rel = detail::psi_tail_bound(model, p, r, D);
  return {value, boost::multiprecision::abs(value) * rel};
}

/// Psi_r(t) at a complex point |t| = q^{-a}, Euler product truncated at D.
/// The relative truncation error is bounded by the same tail estimate.
inline Complex psi_at(const FieldModel& model, std::uint64_t p, unsigned r, const Complex& t, unsigned D) {
  Complex value(Real(1));
  const Real q = Real(model.q());
  for (unsigned d = 1; d <= D; ++d) {
    const Complex td = complex_pow(t, static_cast<long>(d));
    Complex sum(Real(1)), prod(Real(1));
    Complex tp = td;  // t^{d (l+1)}
    for (unsigned long l = 0; l + 2 <= p; ++l) {
      const Complex x = tp * Complex(boost::multiprecision::pow(q, Real(static_cast<long>(d * l * r))));
      sum += x;
      prod *= Complex(Real(1)) - x;
      tp *= td;
    }
    value *= complex_pow(sum * prod, model.prime_count(d));
  }
  return value;
}

/// Pole data of Phi(F, C_p^r; s) on the circle |t| = q^{-a}.
struct PoleReport {
  mpq_class abscissa;                      // a
  std::uint64_t q = 0;                     // radius R = q^{-a}
  unsigned log_order = 1;                  // b
  std::uint64_t progression = 1;           // l
  std::vector<mpq_class> max_order_angles;  // fractions of a full turn
  std::vector<mpq_class> all_angles;        // j / l, j = 0..l-1

  Real radius() const {
    return boost::multiprecision::exp(-boost::multiprecision::log(Real(q)) * to_real(abscissa));
  }
};

/// Poles come from the factors Z_F(q^{(l-1) r} t^l) of Lambda_r. For r = 1
/// every l = 2..p contributes a pole at t = 1/q (order p - 1) and the poles
/// at t = zeta/q with zeta^l = 1 of smaller order; for r > 1 only l = p
/// reaches the circle, giving p simple poles.
inline PoleReport pole_analysis(std::uint64_t p, unsigned r, std::uint64_t q = 0) {
  if (!is_prime(p)) throw input_error("pole_analysis: p must be prime");
  if (r < 1) throw input_error("pole_analysis: r must be >= 1");
  PoleReport rep;
  rep.abscissa = abscissa(p, r);
  rep.q = q;
  rep.log_order = r == 1 ? static_cast<unsigned>(p - 1) : 1;
  rep.progression = r == 1 ? lcm_upto(p) : p;
  for (std::uint64_t j = 0; j < rep.progression; ++j) {
    mpq_class angle(static_cast<long>(j), static_cast<long>(rep.progression));
    angle.canonicalize();
    rep.all_angles.push_back(angle);
    // Order at angle j/l: number of l' in 2..p (r = 1) with l' * angle integral, or 1 for r > 1.
    unsigned order = 0;
    if (r == 1) {
      for (std::uint64_t l = 2; l <= p; ++l)
        if (mpz_class(angle.get_num() * l) % angle.get_den() == 0) ++order;
    } else {
      order = 1;
    }
    if (order == rep.log_order) rep.max_order_angles.push_back(angle);
  }
  return rep;
}

/// C(F, G; q^n) = sum_{k <= n} c_k for n = 0..m.
inline std::vector<mpz_class> counting_function(const FieldModel& model, const GroupSpec& group, std::size_t m) {
  const auto sums = partial_sums(phi_series(model, group, m));
  std::vector<mpz_class> out;
  out.reserve(sums.size());
  for (const auto& s : sums) out.push_back(s.get_num());
  return out;
}

/// Exponents of the discriminant counting function Z(F, C_p^r; X).
struct ExponentReport {
  mpq_class conductor_exponent;  // a(G) for C(F,G;X)
  mpq_class lower;               // a_p(G), Z in Omega(X^{a_p})
  mpq_class upper;               // d_p(G), Z in O(X^{d_p})
  mpq_class malle;               // a(G) = l / (|G| (l - 1)), l = p
  mpz_class comparison_numerator;  // ((r-1)(p-1)^2 - p) p^{r-1} + p
  int comparison_sign = 0;         // sign of a_p - a(G)
};

inline ExponentReport exponent_report(std::uint64_t p, unsigned r) {
  if (!is_prime(p)) throw input_error("exponent_report: p must be prime");
  if (r < 1) throw input_error("exponent_report: r must be >= 1");
  ExponentReport rep;
  rep.conductor_exponent = abscissa(p, r);
  const mpz_class pr = zpow(p, r), pr1 = zpow(p, r - 1);
  rep.lower = rep.conductor_exponent / mpq_class(pr - 1);
  rep.upper = rep.conductor_exponent / mpq_class(pr - pr1);
  rep.malle = mpq_class(static_cast<long>(p)) / mpq_class(pr * (p - 1));
  const mpz_class pm1(static_cast<unsigned long>(p - 1));
  rep.comparison_numerator = (mpz_class(r - 1) * pm1 * pm1 - p) * pr1 + p;
  const mpq_class diff = rep.lower - rep.malle;
  rep.comparison_sign = sgn(diff);
  return rep;
}

struct DiscriminantView {
  ExponentReport exponents;
  std::optional<std::vector<mpz_class>> exact_counts;  // Z(F,G;q^n), n = 0..N, only for r = 1
  std::string statement;
};

/// For r = 1 the discriminant of a C_p-extension is f^{p-1}, so
/// Z(F, C_p; q^n) = C(F, C_p; q^{floor(n/(p-1))}). For r >= 2 only the
/// exponent bounds are reported.
inline DiscriminantView discriminant_view(const FieldModel& model, const GroupSpec& group, std::size_t up_to_degree) {
  DiscriminantView v;
  v.exponents = exponent_report(group.p, group.r);
  if (group.r == 1) {
    const std::size_t k = up_to_degree / (group.p - 1);
    const auto C = counting_function(model, group, k);
    std::vector<mpz_class> z(up_to_degree + 1);
    for (std::size_t n = 0; n <= up_to_degree; ++n) z[n] = C[n / (group.p - 1)];
    v.exact_counts = std::move(z);
    v.statement = "Z(F,G;X) exact (discriminant = conductor^(p-1))";
  } else {
    v.statement = "Z(F,G;X) in Omega(X^" + v.exponents.lower.get_str() + ") and O(X^" + v.exponents.upper.get_str() +
                  "); exact values not available for r >= 2";
  }
  return v;
}

}  // namespace asdist
