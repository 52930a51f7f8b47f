#pragma once

// Effective divisors ("modules") of a function field, with primes kept
// abstract: only the degree of a prime enters the counting formulas, the
// index merely tells distinct primes of equal degree apart.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "asdist/errors.hpp"

namespace asdist {

/// The index-th prime of the given degree (0 <= index < b_degree).
struct Prime {
  unsigned degree = 1;
  std::uint64_t index = 0;

  auto operator<=>(const Prime&) const = default;
};

class DivisorModule {
 public:
  DivisorModule() = default;

  DivisorModule(std::initializer_list<std::pair<const Prime, unsigned>> entries) {
    for (const auto& [prime, mult] : entries) add(prime, mult);
  }

  static DivisorModule trivial() { return {}; }

  /// Raises the multiplicity of `prime` by `mult`.
  DivisorModule& add(const Prime& prime, unsigned mult) {
    if (prime.degree == 0) throw input_error("prime of degree 0");
    if (mult == 0) return *this;
    entries_[prime] += mult;
    return *this;
  }

  const std::map<Prime, unsigned>& entries() const noexcept { return entries_; }
  bool is_trivial() const noexcept { return entries_.empty(); }

  unsigned multiplicity(const Prime& prime) const {
    auto it = entries_.find(prime);
    return it == entries_.end() ? 0 : it->second;
  }

  unsigned long degree() const noexcept {
    unsigned long d = 0;
    for (const auto& [prime, mult] : entries_) d += static_cast<unsigned long>(prime.degree) * mult;
    return d;
  }

  bool squareful() const noexcept {
    for (const auto& [prime, mult] : entries_)
      if (mult < 2) return false;
    return true;
  }

  bool squarefree() const noexcept {
    for (const auto& [prime, mult] : entries_)
      if (mult > 1) return false;
    return true;
  }

  /// 0 if some multiplicity is >= 2, else (-1)^(number of primes).
  int mobius() const noexcept {
    if (!squarefree()) return 0;
    return entries_.size() % 2 == 0 ? 1 : -1;
  }

  bool divides(const DivisorModule& other) const {
    for (const auto& [prime, mult] : entries_)
      if (other.multiplicity(prime) < mult) return false;
    return true;
  }

  /// this / other; requires other | this.
  DivisorModule quotient(const DivisorModule& other) const {
    if (!other.divides(*this)) throw input_error("quotient: divisor does not divide module");
    DivisorModule q;
    for (const auto& [prime, mult] : entries_) {
      const unsigned rest = mult - other.multiplicity(prime);
      if (rest) q.entries_[prime] = rest;
    }
    return q;
  }

  /// Calls fn on every divisor n | m (including 1 and m).
  void for_each_divisor(const std::function<void(const DivisorModule&)>& fn) const {
    std::vector<std::pair<Prime, unsigned>> items(entries_.begin(), entries_.end());
    DivisorModule current;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == items.size()) {
        fn(current);
        return;
      }
      for (unsigned k = 0; k <= items[i].second; ++k) {
        if (k) current.entries_[items[i].first] = k;
        rec(i + 1);
      }
      current.entries_.erase(items[i].first);
    };
    rec(0);
  }

  auto operator<=>(const DivisorModule&) const = default;
  bool operator==(const DivisorModule&) const = default;

  /// Text form "d.i^m*d.i^m", e.g. "1.0^2*2.0^3"; "1" is the trivial module.
  std::string to_string() const {
    if (entries_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [prime, mult] : entries_) {
      if (!first) os << '*';
      first = false;
      os << prime.degree << '.' << prime.index;
      if (mult != 1) os << '^' << mult;
    }
    return os.str();
  }

  static DivisorModule parse(const std::string& text) {
    DivisorModule m;
    if (text == "1" || text.empty()) return m;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, '*')) {
      unsigned degree = 0;
      unsigned long long index = 0;
      unsigned mult = 1;
      char dot = 0;
      std::istringstream it(item);
      if (!(it >> degree >> dot >> index) || dot != '.')
        throw input_error("malformed prime '" + item + "' (expected degree.index[^mult])");
      char caret = 0;
      if (it >> caret) {
        if (caret != '^' || !(it >> mult) || mult == 0)
          throw input_error("malformed multiplicity in '" + item + "'");
      }
      std::string rest;
      if (it >> rest) throw input_error("trailing characters in '" + item + "'");
      m.add(Prime{degree, index}, mult);
    }
    return m;
  }

 private:
  std::map<Prime, unsigned> entries_;
};

}  // namespace asdist
