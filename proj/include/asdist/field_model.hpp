#pragma once

// A global function field described purely by numerical invariants:
// characteristic p, constant field size q, genus, L-polynomial and |Cl[p]|.
// Everything downstream depends on primes only through their degrees, so the
// place counts b_d derived from L_F(t) are all we need of the curve itself.

#include <gmpxx.h>

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "asdist/arith.hpp"
#include "asdist/divisor_module.hpp"
#include "asdist/errors.hpp"
#include "asdist/series.hpp"

namespace asdist {

/// Exact rational part of Res_{s=1} zeta_F(s); the true residue is value / log(q).
struct PerLogQ {
  mpq_class value;
  bool operator==(const PerLogQ&) const = default;
};

class FieldModel {
 public:
  /// Place counts are computed eagerly up to this degree; the validity check
  /// b_d >= 0 covers the same range.
  static constexpr unsigned kEagerDegrees = 64;

  std::uint64_t p() const noexcept { return p_; }
  std::uint64_t q() const noexcept { return q_; }
  unsigned k() const noexcept { return k_; }
  unsigned genus() const noexcept { return genus_; }
  const std::vector<mpz_class>& l_poly() const noexcept { return l_poly_; }
  const mpz_class& clp_order() const noexcept { return clp_order_; }
  const std::map<DivisorModule, mpz_class>& exceptional_counts() const noexcept { return exceptional_; }

  /// h_F = L_F(1).
  mpz_class class_number() const {
    mpz_class h = 0;
    for (const auto& c : l_poly_) h += c;
    return h;
  }

  /// Number N_d of degree-1 places of F (x) F_{q^d}.
  mpz_class rational_points(unsigned d) const {
    if (d == 0) throw input_error("rational_points: degree must be >= 1");
    if (d <= kEagerDegrees) return points_[d];
    return compute_points(d).back();
  }

  /// Number b_d of places of degree d.
  mpz_class prime_count(unsigned d) const {
    if (d == 0) throw input_error("prime_count: degree must be >= 1");
    if (d <= kEagerDegrees) return primes_[d];
    const auto pts = compute_points(d);
    return primes_from_points(pts, d);
  }

  /// L_F evaluated at an exact rational.
  mpq_class eval_l(const mpq_class& t) const {
    mpq_class acc = 0;
    for (auto it = l_poly_.rbegin(); it != l_poly_.rend(); ++it) acc = acc * t + mpq_class(*it);
    return acc;
  }

  /// Z_F(t) = L_F(t) / ((1 - t)(1 - q t)) at an exact rational |t| < 1/q.
  mpq_class eval_zeta(const mpq_class& t) const {
    return eval_l(t) / ((1 - t) * (1 - mpq_class(q_) * t));
  }

  friend FieldModel make_field_model(std::uint64_t p, std::uint64_t q, unsigned genus,
                                     std::vector<mpz_class> l_poly, mpz_class clp_order,
                                     std::map<DivisorModule, mpz_class> exceptional_counts);

 private:
  FieldModel() = default;

  // N_1..N_D via Newton's identities: s_n = -n a_n - sum_{k<n} s_k a_{n-k},
  // N_n = q^n + 1 - s_n. Index 0 unused.
  std::vector<mpz_class> compute_points(unsigned D) const {
    std::vector<mpz_class> s(D + 1, 0), pts(D + 1, 0);
    auto a = [&](unsigned i) -> mpz_class { return i < l_poly_.size() ? l_poly_[i] : mpz_class(0); };
    for (unsigned n = 1; n <= D; ++n) {
      mpz_class v = -mpz_class(n) * a(n);
      for (unsigned k = 1; k < n; ++k) v -= s[k] * a(n - k);
      s[n] = v;
      pts[n] = zpow(q_, n) + 1 - s[n];
    }
    return pts;
  }

  static mpz_class primes_from_points(const std::vector<mpz_class>& pts, unsigned d) {
    mpz_class acc = 0;
    for (unsigned e : divisors(d)) {
      const int mu = mobius(e);
      if (mu) acc += mu * pts[d / e];
    }
    if (acc < 0 || !mpz_divisible_ui_p(acc.get_mpz_t(), d))
      throw consistency_error("model inconsistency: place count b_" + std::to_string(d) + " = " +
                              acc.get_str() + "/" + std::to_string(d) + " is not a nonnegative integer");
    return acc / d;
  }

  std::uint64_t p_ = 0;
  std::uint64_t q_ = 0;
  unsigned k_ = 0;
  unsigned genus_ = 0;
  std::vector<mpz_class> l_poly_;
  mpz_class clp_order_ = 1;
  std::map<DivisorModule, mpz_class> exceptional_;
  std::vector<mpz_class> points_;
  std::vector<mpz_class> primes_;
};

/// Validates and builds a model. For genus 0 an empty l_poly is accepted and
/// replaced by [1].
inline FieldModel make_field_model(std::uint64_t p, std::uint64_t q, unsigned genus, std::vector<mpz_class> l_poly,
                                   mpz_class clp_order,
                                   std::map<DivisorModule, mpz_class> exceptional_counts = {}) {
  if (!is_prime(p)) throw input_error("p = " + std::to_string(p) + " is not prime");
  const auto k = log_exact(q, p);
  if (!k) throw input_error("q = " + std::to_string(q) + " is not a power of p = " + std::to_string(p));
  if (genus == 0 && l_poly.empty()) l_poly = {1};
  if (l_poly.size() != 2 * static_cast<std::size_t>(genus) + 1)
    throw input_error("l_poly must have degree 2*genus = " + std::to_string(2 * genus));
  if (l_poly[0] != 1) throw input_error("l_poly must have constant term 1");
  // L(t) = q^g t^{2g} L(1/(qt))  <=>  a_{2g-i} = q^{g-i} a_i.
  for (unsigned i = 0; i <= genus; ++i) {
    if (l_poly[2 * genus - i] != zpow(q, genus - i) * l_poly[i])
      throw input_error("l_poly violates the functional equation at t^" + std::to_string(2 * genus - i));
  }
  if (clp_order < 1 || !clp_order.fits_ulong_p() || (clp_order != 1 && !log_exact(clp_order.get_ui(), p)))
    throw input_error("clp_order must be a power of p (including 1)");
  if (genus == 0 && clp_order != 1) throw input_error("genus 0 forces clp_order = 1");
  if (!exceptional_counts.empty() && genus < 2)
    throw input_error("exceptional conductor counts only apply to genus >= 2");
  for (const auto& [m, c] : exceptional_counts) {
    if (m.is_trivial()) throw input_error("the trivial module is not an exceptional entry (c_1 = e(|Cl[p]|))");
    if (c < 0) throw input_error("exceptional count for " + m.to_string() + " is negative");
  }

  FieldModel model;
  model.p_ = p;
  model.q_ = q;
  model.k_ = *k;
  model.genus_ = genus;
  model.l_poly_ = std::move(l_poly);
  model.clp_order_ = std::move(clp_order);
  model.exceptional_ = std::move(exceptional_counts);

  const mpz_class h = model.class_number();
  if (h <= 0) throw input_error("class number L(1) = " + h.get_str() + " is not positive");
  // Cl[p] sits inside the degree-0 class group (order h) and has p-rank <= genus.
  if (!mpz_divisible_p(h.get_mpz_t(), model.clp_order_.get_mpz_t()))
    throw input_error("clp_order must divide the class number " + h.get_str());
  if (model.clp_order_ > zpow(p, genus)) throw input_error("clp_order exceeds p^genus");

  model.points_ = model.compute_points(FieldModel::kEagerDegrees);
  model.primes_.assign(FieldModel::kEagerDegrees + 1, 0);
  for (unsigned d = 1; d <= FieldModel::kEagerDegrees; ++d) {
    try {
      model.primes_[d] = FieldModel::primes_from_points(model.points_, d);
    } catch (const consistency_error& e) {
      throw input_error(e.what());
    }
  }
  return model;
}

inline FieldModel rational_function_field(std::uint64_t p, std::uint64_t q) {
  return make_field_model(p, q, 0, {1}, 1);
}

/// b_1..b_D (index 0 holds 0).
inline std::vector<mpz_class> prime_degree_counts(const FieldModel& model, unsigned D) {
  if (D < 1) throw input_error("prime_degree_counts: D must be >= 1");
  std::vector<mpz_class> b(D + 1, 0);
  for (unsigned d = 1; d <= D; ++d) b[d] = model.prime_count(d);
  return b;
}

/// Z_F(t) = L_F(t) / ((1 - t)(1 - q t)) to order M.
inline Series zeta_series(const FieldModel& model, std::size_t M) {
  const Series l = series_from_poly<mpq_class, mpz_class>(model.l_poly(), M);
  const mpq_class q(model.q());
  const Series den({mpq_class(1), -1 - q, q}, M);
  return ps_mul(l, ps_inv(den));
}

/// L_F(1/q) / (1 - 1/q), i.e. log(q) * Res_{s=1} zeta_F(s).
inline PerLogQ zeta_residue(const FieldModel& model) {
  const mpq_class inv_q(1, model.q());
  return {model.eval_l(inv_q) / (1 - inv_q)};
}

/// Line-based key=value model description. Keys: p, q, genus, l_poly
/// (comma-separated, ascending degree), clp_order, and repeatable
/// `exceptional = <module>:<count>` lines. '#' starts a comment.
inline FieldModel parse_model(std::istream& in) {
  std::optional<std::uint64_t> p, q;
  unsigned genus = 0;
  std::vector<mpz_class> l_poly;
  mpz_class clp = 1;
  std::map<DivisorModule, mpz_class> exceptional;
  std::string line;
  unsigned lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  auto to_u64 = [&](const std::string& v, const std::string& key) -> std::uint64_t {
    try {
      std::size_t pos = 0;
      const auto x = std::stoull(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      throw input_error("line " + std::to_string(lineno) + ": bad value for " + key + ": '" + v + "'");
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw input_error("line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "p") {
      p = to_u64(value, key);
    } else if (key == "q") {
      q = to_u64(value, key);
    } else if (key == "genus") {
      genus = static_cast<unsigned>(to_u64(value, key));
    } else if (key == "clp_order") {
      clp = mpz_class(to_u64(value, key));
    } else if (key == "l_poly") {
      l_poly.clear();
      std::istringstream is(value);
      std::string item;
      while (std::getline(is, item, ',')) {
        item = trim(item);
        mpz_class c;
        if (item.empty() || c.set_str(item, 10) != 0)
          throw input_error("line " + std::to_string(lineno) + ": bad l_poly coefficient '" + item + "'");
        l_poly.push_back(c);
      }
    } else if (key == "exceptional") {
      const auto colon = value.rfind(':');
      if (colon == std::string::npos)
        throw input_error("line " + std::to_string(lineno) + ": exceptional expects <module>:<count>");
      mpz_class c;
      if (c.set_str(trim(value.substr(colon + 1)), 10) != 0)
        throw input_error("line " + std::to_string(lineno) + ": bad exceptional count");
      exceptional[DivisorModule::parse(trim(value.substr(0, colon)))] = c;
    } else {
      throw input_error("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!p || !q) throw input_error("model file must define p and q");
  return make_field_model(*p, *q, genus, std::move(l_poly), clp, std::move(exceptional));
}

inline FieldModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open model file '" + path + "'");
  return parse_model(in);
}

}  // namespace asdist
