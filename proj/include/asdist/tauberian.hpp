#pragma once

// Coefficient asymptotics for power series whose only singularities near
// the circle of convergence |t| = R are poles at R xi^{-j}, xi a primitive
// l-th root of unity; plus the closed-form constants for p = 2 and r = 1.

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "asdist/arith.hpp"
#include "asdist/counting.hpp"
#include "asdist/dirichlet.hpp"
#include "asdist/errors.hpp"
#include "asdist/field_model.hpp"
#include "asdist/rational_function.hpp"
#include "asdist/real.hpp"
#include "asdist/series.hpp"

namespace asdist {

namespace bmp = boost::multiprecision;

/// Leading pole data of f on its circle of convergence.
struct MeromorphicModel {
  Real radius;
  std::optional<mpq_class> exact_radius;
  unsigned pole_order = 1;        // b
  std::uint64_t root_count = 1;   // l
  std::vector<Complex> principal;  // p_j at u = R xi^{-j}, index j - 1 (j = 1..l)
  std::vector<std::optional<mpq_class>> exact_principal;  // set when u and p_j are rational
  unsigned precision_bits = kDefaultPrecisionBits;
};

/// c X^a log(X)^{b-1} with X = exp(n * log_base), valid for n = e mod l.
struct AsymptoticEstimate {
  mpq_class exponent = 1;  // a
  unsigned log_order = 1;  // b
  Real constant;           // c
  std::optional<mpq_class> exact_constant;
  std::uint64_t progression = 1;  // l
  std::uint64_t residue = 1;      // e, 1 <= e <= l
  Real log_base;                  // log q, or -log R for a bare power series
  unsigned precision_bits = kDefaultPrecisionBits;

  Real evaluate(std::size_t n) const {
    PrecisionScope scope(precision_bits);
    const Real logx = Real(static_cast<unsigned long>(n)) * log_base;
    Real v = constant * bmp::exp(to_real(exponent) * logx);
    if (log_order > 1) v *= bmp::pow(logx, Real(log_order - 1));
    return v;
  }
};

namespace detail {

/// Continued-fraction convergents of x until |x - h/k| <= tol; nullopt once
/// k exceeds max_den.
inline std::optional<mpq_class> rational_approx(const Real& x, const mpz_class& max_den, const Real& tol) {
  Real y = x;
  mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;  // h_{-1}, h_{-2}, k_{-1}, k_{-2}
  for (int iter = 0; iter < 200; ++iter) {
    const Real fl = bmp::floor(y + tol);
    mpz_class a;
    mpfr_get_z(a.get_mpz_t(), fl.backend().data(), MPFR_RNDN);
    const mpz_class h = a * h0 + h1, k = a * k0 + k1;
    if (k > max_den) return std::nullopt;
    mpq_class cand(h, k);
    cand.canonicalize();
    if (bmp::abs(x - to_real(cand)) <= tol) return cand;
    h1 = h0;
    h0 = h;
    k1 = k0;
    k0 = k;
    const Real frac = y - fl;
    if (bmp::abs(frac) <= tol) return std::nullopt;
    y = 1 / frac;
  }
  return std::nullopt;
}

/// All roots of a squarefree polynomial (Aberth iteration at the current
/// precision, `bits` bits).
inline std::vector<Complex> polynomial_roots(const QPoly& f, unsigned bits, const std::vector<Complex>* start = nullptr) {
  const long n = poly::degree(f);
  if (n < 1) return {};
  const QPoly df = poly::derivative(f);
  std::vector<Complex> z;
  if (start && static_cast<long>(start->size()) == n) {
    for (const auto& s : *start) z.emplace_back(at_current_precision(s.re), at_current_precision(s.im));
  } else {
    // Initial guesses on a circle of radius |a_0 / a_n|^{1/n}, rotated off the axes.
    const Real r0 = bmp::pow(bmp::abs(to_real(f[0]) / to_real(f.back())), Real(1) / Real(n));
    for (long k = 0; k < n; ++k)
      z.push_back(Complex::polar(r0, 2 * real_pi() * (Real(k) + Real(0.25)) / Real(n) + Real(0.4)));
  }
  const Real tol = epsilon_bits(bits > 16 ? bits - 12 : bits);
  for (int iter = 0; iter < 2000; ++iter) {
    Real worst = 0;
    for (long k = 0; k < n; ++k) {
      const Complex pk = poly::eval(f, z[k]);
      if (pk.norm() == 0) continue;
      const Complex ratio = pk / poly::eval(df, z[k]);
      Complex s;
      for (long j = 0; j < n; ++j)
        if (j != k) s += Complex(Real(1)) / (z[k] - z[j]);
      const Complex w = ratio / (Complex(Real(1)) - ratio * s);
      z[k] -= w;
      const Real scale = bmp::max(Real(1), z[k].abs());
      worst = bmp::max(worst, w.abs() / scale);
    }
    if (worst <= tol) return z;
  }
  throw precision_error("root finder did not converge");
}

struct PoleCandidate {
  Complex u;
  unsigned multiplicity;
  std::optional<mpq_class> exact;  // rational root
};

inline std::vector<PoleCandidate> find_poles(const RationalFunction& f, unsigned bits,
                                             const std::vector<std::vector<Complex>>* start,
                                             std::vector<std::vector<Complex>>* roots_out) {
  const auto parts = poly::squarefree_decomposition(poly::to_q(f.denominator()));
  if (parts.empty()) throw input_error("principal_parts: rational function has no poles");
  std::vector<PoleCandidate> out;
  const Real tol = epsilon_bits(bits / 2);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (poly::degree(parts[k]) < 1) {
      if (roots_out) roots_out->push_back({});
      continue;
    }
    const auto roots = polynomial_roots(parts[k], bits, start && k < start->size() ? &(*start)[k] : nullptr);
    if (roots_out) roots_out->push_back(roots);
    const IntPoly prim = poly::primitive_part(parts[k]);
    const mpz_class lead = abs(prim.back());
    for (const auto& u : roots) {
      PoleCandidate c{u, static_cast<unsigned>(k + 1), std::nullopt};
      if (bmp::abs(u.im) <= tol * bmp::max(Real(1), u.abs())) {
        if (auto cand = rational_approx(u.re, lead, tol * bmp::max(Real(1), u.abs()))) {
          if (poly::eval(parts[k], *cand) == 0) c.exact = *cand;
        }
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

/// lim_{t -> u} (t - u)^b N(t)/D(t) = N(u) b! / D^{(b)}(u) for a root u of D of multiplicity b.
inline Complex leading_coefficient_at(const RationalFunction& f, const Complex& u, unsigned b) {
  QPoly d = poly::to_q(f.denominator());
  for (unsigned i = 0; i < b; ++i) d = poly::derivative(d);
  return poly::eval(poly::to_q(f.numerator()), u) * Complex(to_real(mpq_class(factorial(b)))) / poly::eval(d, u);
}

inline mpq_class leading_coefficient_at(const RationalFunction& f, const mpq_class& u, unsigned b) {
  QPoly d = poly::to_q(f.denominator());
  for (unsigned i = 0; i < b; ++i) d = poly::derivative(d);
  return poly::eval(poly::to_q(f.numerator()), u) * mpq_class(factorial(b)) / poly::eval(d, u);
}

struct PoleSnapshot {
  Real radius;
  std::optional<mpq_class> exact_radius;
  unsigned b = 0;
  std::uint64_t ell = 1;
  std::vector<Complex> principal;
  std::vector<std::optional<mpq_class>> exact_principal;
  std::vector<Complex> points;  // u_j = R xi^{-j}
};

inline PoleSnapshot snapshot(const RationalFunction& f, unsigned bits, const std::optional<Real>& radius_hint,
                             const Real& hint_tol,
                             const std::vector<std::vector<Complex>>* start,
                             std::vector<std::vector<Complex>>* roots_out) {
  auto poles = find_poles(f, bits, start, roots_out);
  Real R = poles.front().u.abs();
  for (const auto& c : poles) R = bmp::min(R, c.u.abs());
  const Real same = epsilon_bits(bits / 2);
  const Real ambiguous = epsilon_bits(bits / 8);
  std::vector<const PoleCandidate*> on_circle;
  for (const auto& c : poles) {
    const Real rel = (c.u.abs() - R) / R;
    if (rel <= same) {
      on_circle.push_back(&c);
    } else if (rel <= ambiguous) {
      throw precision_error("poles of nearly equal modulus cannot be separated at " + std::to_string(bits) + " bits");
    }
  }
  if (radius_hint && bmp::abs(*radius_hint - R) > hint_tol * R)
    throw input_error("principal_parts: smallest pole modulus " + to_decimal(R) + " differs from the expected radius " +
                      to_decimal(*radius_hint));

  PoleSnapshot s;
  s.radius = R;
  for (const auto* c : on_circle)
    if (c->exact && c->exact->get_num() > 0) s.exact_radius = *c->exact;
  if (s.exact_radius) s.radius = to_real(*s.exact_radius);

  // Angles as rational fractions of a full turn.
  const Real two_pi = 2 * real_pi();
  std::vector<mpq_class> angles;
  std::uint64_t ell = 1;
  for (const auto* c : on_circle) {
    Real theta = c->u.arg() / two_pi;
    if (theta < 0) theta += 1;
    auto frac = rational_approx(theta, mpz_class(10'000'000), same);
    if (!frac) throw precision_error("pole angle is not a recognisable rational multiple of 2 pi");
    if (*frac == 1) *frac = 0;
    angles.push_back(*frac);
    const mpz_class den = frac->get_den();
    ell = std::lcm(ell, den.get_ui());
    s.b = std::max(s.b, c->multiplicity);
  }
  s.ell = ell;
  s.principal.assign(ell, Complex());
  s.exact_principal.assign(ell, std::nullopt);
  for (std::uint64_t j = 1; j <= ell; ++j)
    s.points.push_back(Complex::polar(s.radius, -two_pi * Real(static_cast<unsigned long>(j)) / Real(ell)));
  for (std::size_t i = 0; i < on_circle.size(); ++i) {
    const auto* c = on_circle[i];
    if (c->multiplicity != s.b) continue;
    // u = R xi^{-j}: angle = -j / l mod 1.
    const mpq_class scaled = angles[i] * mpq_class(mpz_class(ell));
    const mpz_class jl = (mpz_class(ell) - scaled.get_num()) % ell;
    const std::uint64_t j = jl == 0 ? ell : jl.get_ui();
    if (c->exact) {
      const mpq_class pe = leading_coefficient_at(f, *c->exact, s.b);
      s.exact_principal[j - 1] = pe;
      s.principal[j - 1] = Complex(to_real(pe));
    } else {
      s.principal[j - 1] = leading_coefficient_at(f, c->u, s.b);
    }
  }
  return s;
}

inline Complex xi_power(std::uint64_t ell, long long k) {
  const long long m = ((k % static_cast<long long>(ell)) + static_cast<long long>(ell)) % static_cast<long long>(ell);
  return Complex::root_of_unity(m, static_cast<long>(ell));
}

}  // namespace detail

/// Pole data of f on its circle of convergence. Rational poles give exact
/// principal coefficients; others are refined at bits, 2 bits and 4 bits and
/// accepted only if the coefficients stagnate. A correction g multiplies
/// the principal coefficients by g(u) (for products g * f with g holomorphic
/// on the closed disc).
inline MeromorphicModel principal_parts(const RationalFunction& f, std::optional<Real> radius_hint = std::nullopt,
                                        const std::function<Complex(const Complex&)>& correction = {},
                                        unsigned bits = kDefaultPrecisionBits) {
  if (bits < 64) throw input_error("principal_parts: precision must be at least 64 bits");
  std::vector<detail::PoleSnapshot> snaps;
  std::vector<std::vector<Complex>> roots;
  bool all_exact = true;
  for (unsigned level = 0; level < 3; ++level) {
    const unsigned b = bits << level;
    PrecisionScope scope(b);
    std::vector<std::vector<Complex>> next;
    std::optional<Real> hint;
    if (radius_hint) hint = at_current_precision(*radius_hint);
    snaps.push_back(detail::snapshot(f, b, hint, epsilon_bits(bits / 2), level ? &roots : nullptr, &next));
    roots = std::move(next);
    if (level == 0) {
      for (std::size_t j = 0; j < snaps[0].principal.size(); ++j)
        if (snaps[0].principal[j].norm() != 0 && !snaps[0].exact_principal[j]) all_exact = false;
      if (all_exact) break;
    }
  }
  const auto& final = snaps.back();
  if (snaps.size() == 3) {
    PrecisionScope scope(bits << 2);
    for (const auto& s : snaps)
      if (s.b != final.b || s.ell != final.ell) throw precision_error("pole structure changed under precision doubling");
    for (std::size_t j = 0; j < final.principal.size(); ++j) {
      const Real d1 = (snaps[0].principal[j] - snaps[1].principal[j]).abs();
      const Real d2 = (snaps[1].principal[j] - final.principal[j]).abs();
      const Real scale = bmp::max(Real(1), final.principal[j].abs());
      if (d2 > d1 && d2 > epsilon_bits(bits) * scale)
        throw precision_error("principal coefficient did not stagnate across precision doublings");
      if (d1 > epsilon_bits(bits / 2) * scale) throw precision_error("principal coefficient unstable at working precision");
    }
  }

  PrecisionScope scope(bits);
  MeromorphicModel m;
  m.radius = at_current_precision(final.radius);
  m.exact_radius = final.exact_radius;
  m.pole_order = final.b;
  m.root_count = final.ell;
  m.precision_bits = bits;
  m.exact_principal = final.exact_principal;
  for (std::size_t j = 0; j < final.principal.size(); ++j) {
    Complex pj(at_current_precision(final.principal[j].re), at_current_precision(final.principal[j].im));
    if (correction && pj.norm() != 0) {
      pj *= correction(Complex::polar(m.radius, -2 * real_pi() * Real(static_cast<unsigned long>(j + 1)) /
                                                     Real(static_cast<unsigned long>(final.ell))));
      m.exact_principal[j].reset();
    }
    m.principal.push_back(pj);
  }
  bool any = false;
  for (const auto& pj : m.principal) any = any || pj.norm() != 0;
  if (!any) throw input_error("principal_parts: no pole of maximal order with nonzero coefficient");
  return m;
}

namespace detail {

inline Real real_part_checked(const Complex& z, const char* what) {
  const Real mag = z.abs();
  if (bmp::abs(z.im) > Real("1e-20") * bmp::max(mag, epsilon_bits(60)))
    throw precision_error(std::string(what) + ": imaginary part does not cancel");
  return z.re;
}

/// sum_j (-R xi^{-j})^{-b} p_j xi^{j n} / (b-1)! [ / (1 - R xi^{-j}) ].
inline Complex pole_sum(const MeromorphicModel& m, long long n, bool partial) {
  Complex acc;
  const Complex minus_r(-m.radius);
  for (std::uint64_t j = 1; j <= m.root_count; ++j) {
    const Complex& pj = m.principal[j - 1];
    if (pj.norm() == 0) continue;
    const Complex uj = Complex(m.radius) * xi_power(m.root_count, -static_cast<long long>(j));
    Complex term = complex_pow(-uj, -static_cast<long>(m.pole_order)) * pj *
                   xi_power(m.root_count, static_cast<long long>(j) * n);
    if (partial) term /= Complex(Real(1)) - uj;
    acc += term;
  }
  return acc / Complex(to_real(mpq_class(factorial(m.pole_order - 1))));
}

/// Exact version of pole_sum when l <= 2 and all data is rational.
inline std::optional<mpq_class> exact_pole_sum(const MeromorphicModel& m, long long n, bool partial) {
  if (m.root_count > 2 || !m.exact_radius) return std::nullopt;
  mpq_class acc = 0;
  for (std::uint64_t j = 1; j <= m.root_count; ++j) {
    if (m.principal[j - 1].norm() == 0) continue;
    if (!m.exact_principal[j - 1]) return std::nullopt;
    const int xi_j = (m.root_count == 2 && j % 2 == 1) ? -1 : 1;  // xi = -1 for l = 2
    const mpq_class uj = *m.exact_radius * xi_j;
    mpq_class term = qpow(-uj, -static_cast<long>(m.pole_order)) * *m.exact_principal[j - 1];
    if (xi_j == -1 && (static_cast<long long>(j) * n) % 2 != 0) term = -term;
    if (partial) term /= 1 - uj;
    acc += term;
  }
  return acc / mpq_class(factorial(m.pole_order - 1));
}

}  // namespace detail

/// Leading-term prediction for c_n: (sum_j (-R xi^{-j})^{-b} p_j xi^{jn} / (b-1)!) R^{-n} n^{b-1}.
inline Real predict_coefficients(const MeromorphicModel& m, std::size_t n) {
  if (n < 1) throw input_error("predict_coefficients: n must be >= 1");
  PrecisionScope scope(m.precision_bits);
  const Real k = detail::real_part_checked(detail::pole_sum(m, static_cast<long long>(n), false), "predict_coefficients");
  return k * bmp::pow(m.radius, -Real(static_cast<unsigned long>(n))) *
         bmp::pow(Real(static_cast<unsigned long>(n)), Real(m.pole_order - 1));
}

struct PartialSumPrediction {
  AsymptoticEstimate estimate;  // normalised with X = R^{-m}
  Real value;                   // predicted sum_{n <= m} c_n
};

/// Asymptotic class of sum_{n<=m} c_n along m = e (mod l):
/// c = -sum_j (R xi^{-j})^{-b} p_j xi^{je} / ((b-1)! (1 - R xi^{-j}) log(R)^{b-1}).
inline PartialSumPrediction predict_partial_sums(const MeromorphicModel& m, std::size_t at) {
  PrecisionScope scope(m.precision_bits);
  const long long e = static_cast<long long>(at % m.root_count);
  const Real k = detail::real_part_checked(detail::pole_sum(m, e, true), "predict_partial_sums");
  AsymptoticEstimate est;
  est.exponent = 1;
  est.log_order = m.pole_order;
  est.progression = m.root_count;
  est.residue = e == 0 ? m.root_count : static_cast<std::uint64_t>(e);
  est.log_base = -bmp::log(m.radius);
  est.precision_bits = m.precision_bits;
  est.constant = k / bmp::pow(est.log_base, Real(m.pole_order - 1));
  if (m.pole_order == 1)
    if (auto exact = detail::exact_pole_sum(m, e, true)) {
      est.exact_constant = *exact;
      est.constant = to_real(*exact);
    }
  PartialSumPrediction out{est, est.evaluate(at)};
  return out;
}

/// Re-expresses an estimate in X = q^m, where R = q^{-a}: X_R = X^a and
/// log X_R = a log X, so the constant picks up a^{b-1}.
inline AsymptoticEstimate in_conductor_norm(const AsymptoticEstimate& est, std::uint64_t q, const mpq_class& a) {
  PrecisionScope scope(est.precision_bits);
  AsymptoticEstimate out = est;
  out.exponent = a;
  out.log_base = bmp::log(Real(q));
  const mpq_class scale = qpow(a, static_cast<long>(est.log_order) - 1);
  out.constant = est.constant * to_real(scale);
  if (est.exact_constant) out.exact_constant = *est.exact_constant * scale;
  return out;
}

/// |sum_{n<=m} C(n+l, l) t^{-n} - t^{-m} m^l / (l! (1 - t))| / (R^{-m} m^l), R = |t|.
inline Real binomial_sum_check(unsigned l, const Complex& t, std::size_t m, unsigned bits = kDefaultPrecisionBits) {
  PrecisionScope scope(bits);
  const Complex tt(Real(t.re), Real(t.im));
  const Complex inv = Complex(Real(1)) / tt;
  Complex sum, power(Real(1));
  mpz_class binom = 1;  // C(n + l, l)
  for (std::size_t n = 0; n <= m; ++n) {
    if (n > 0) binom = binom * (n + l) / n;
    sum += power * Complex(to_real(binom));
    power *= inv;
  }
  const Complex tm = complex_pow(inv, static_cast<long>(m));
  const Real ml = bmp::pow(Real(static_cast<unsigned long>(m)), Real(l));
  const Complex approx = tm * Complex(ml / to_real(mpq_class(factorial(l)))) / (Complex(Real(1)) - tt);
  const Real R = tt.abs();
  return (sum - approx).abs() / (bmp::pow(R, -Real(static_cast<unsigned long>(m))) * ml);
}

/// Exact variant for a rational point t with |t| < 1.
inline mpq_class binomial_sum_check(unsigned l, const mpq_class& t, std::size_t m) {
  if (t == 0 || abs(t) >= 1) throw input_error("binomial_sum_check: need 0 < |t| < 1");
  mpq_class sum = 0, power = 1;
  const mpq_class inv = 1 / t;
  mpz_class binom = 1;
  for (std::size_t n = 0; n <= m; ++n) {
    if (n > 0) binom = binom * (n + l) / n;
    sum += power * binom;
    power *= inv;
  }
  const mpz_class ml = zpow(mpz_class(static_cast<unsigned long>(m)), l);
  const mpq_class approx = qpow(inv, static_cast<long>(m)) * mpq_class(ml) / (mpq_class(factorial(l)) * (1 - t));
  return abs(sum - approx) / (qpow(abs(inv), static_cast<long>(m)) * mpq_class(ml));
}

/// Closed-form constant c(F, G) for p = 2 (any r) or r = 1 (any p).
struct AddendumConstant {
  AsymptoticEstimate estimate;  // in X = q^m
  mpq_class rational_part;      // c = rational_part * euler_product * log(q)^log_q_power
  int log_q_power = 0;
  Real euler_product = 1;
  Real error_bound = 0;  // absolute bound on |c_true - c|
};

inline AddendumConstant addendum_constants(const FieldModel& model, const GroupSpec& group, unsigned degree_cutoff = 20,
                                           unsigned bits = kDefaultPrecisionBits) {
  if (group.p != model.p()) throw input_error("group exponent p must equal the characteristic");
  PrecisionScope scope(bits);
  const mpq_class rho = zeta_residue(model).value;  // log(q) * Res zeta_F(1)
  const mpq_class q(model.q());
  const auto poles = pole_analysis(group.p, group.r, model.q());
  AddendumConstant out;
  out.estimate.precision_bits = bits;
  out.estimate.exponent = poles.abscissa;
  out.estimate.log_order = poles.log_order;
  out.estimate.log_base = bmp::log(Real(model.q()));
  if (group.p == 2) {
    // e_r * rho / ((1 - q^{-(r+1)}) Z_F(q^{-(r+1)})); log q cancels.
    const mpq_class x = qpow(1 / q, static_cast<long>(group.r) + 1);
    out.rational_part = group.e_coeffs[group.r] * rho / ((1 - x) * model.eval_zeta(x));
    out.log_q_power = 0;
    out.estimate.exact_constant = out.rational_part;
    out.estimate.constant = to_real(out.rational_part);
    out.estimate.progression = 2;
    out.estimate.residue = 2;
    return out;
  }
  if (group.r != 1)
    throw unsupported_input("closed-form constant only for p = 2 or r = 1; use the generic Tauberian extraction");
  // e_1 / (p-2)! / (1 - 1/q) * rho^{p-1} / p! * prod_P (1 + (p-1)/N)(1 - 1/N)^{p-1} / log(q)^{p-2}.
  const unsigned long p = group.p;
  out.rational_part = group.e_coeffs[1] / mpq_class(factorial(p - 2)) / (1 - 1 / q) *
                      qpow(rho, static_cast<long>(p - 1)) / mpq_class(factorial(p));
  out.log_q_power = -static_cast<int>(p - 2);
  const BoundedValue psi = psi_at_abscissa(model, p, 1, degree_cutoff);
  out.euler_product = psi.value;
  const Real scale = to_real(out.rational_part) * bmp::pow(out.estimate.log_base, Real(out.log_q_power));
  out.estimate.constant = scale * psi.value;
  out.error_bound = bmp::abs(scale) * psi.error_bound;
  out.estimate.progression = poles.progression;
  out.estimate.residue = poles.progression;
  return out;
}

/// Generic route: principal parts of e_r * Psi_r * Lambda_r on |t| = q^{-a},
/// with Psi_r evaluated by its Euler product (cutoff D), then the partial-sum
/// constant for the progression class of `residue`.
inline AsymptoticEstimate tauberian_constant(const FieldModel& model, const GroupSpec& group, unsigned degree_cutoff = 20,
                                             std::size_t residue = 0, unsigned bits = kDefaultPrecisionBits) {
  if (group.p != model.p()) throw input_error("group exponent p must equal the characteristic");
  const mpq_class a = abscissa(group.p, group.r);
  const RationalFunction lambda = lambda_rational(model, group.p, group.r);
  MeromorphicModel m;
  {
    PrecisionScope scope(bits);
    const Real R = bmp::exp(-bmp::log(Real(model.q())) * to_real(a));
    const mpq_class er = group.e_coeffs[group.r];
    m = principal_parts(
        lambda, R,
        [&](const Complex& u) {
          return Complex(to_real(er)) * psi_at(model, group.p, group.r, u, degree_cutoff);
        },
        bits);
  }
  const auto pred = predict_partial_sums(m, residue);
  PrecisionScope scope(bits);
  return in_conductor_norm(pred.estimate, model.q(), a);
}

/// sum_{k<=n} c_k / (c X^a log(X)^{b-1}) along the estimate's progression.
inline Real empirical_ratio(const Series& series, const AsymptoticEstimate& est, std::size_t n) {
  if (n > series.order()) throw input_error("empirical_ratio: n exceeds the series order");
  if ((n % est.progression) != (est.residue % est.progression))
    throw input_error("empirical_ratio: n is not in the estimate's progression class");
  PrecisionScope scope(est.precision_bits);
  mpq_class s = 0;
  for (std::size_t k = 0; k <= n; ++k) s += series[k];
  return to_real(s) / est.evaluate(n);
}

}  // namespace asdist
