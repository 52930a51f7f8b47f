// Small walk through the library: series, counts, poles, constants, oracle.

#include <iostream>

#include "asdist/asdist.hpp"

using namespace asdist;

int main() {
  const FieldModel F = rational_function_field(3, 3);
  const GroupSpec G = subgroup_count_poly(3, 1);

  const Series phi = phi_series(F, G, 8);
  std::cout << "Phi(F_3(x), C_3) = " << phi << '\n';

  const auto C = counting_function(F, G, 8);
  std::cout << "C(q^n):";
  for (const auto& c : C) std::cout << ' ' << c;
  std::cout << '\n';

  const auto oracle = oracle::oracle_count(3, 3, 1, 6);
  std::cout << "brute force:";
  for (const auto& c : oracle) std::cout << ' ' << c;
  std::cout << '\n';

  const PoleReport poles = pole_analysis(3, 1, 3);
  std::cout << "abscissa " << poles.abscissa << ", pole order " << poles.log_order << ", progression "
            << poles.progression << '\n';

  const AddendumConstant closed = addendum_constants(F, G);
  const AsymptoticEstimate generic = tauberian_constant(F, G, 20, poles.progression);
  PrecisionScope scope(kDefaultPrecisionBits);
  std::cout << "constant: closed form " << to_decimal(closed.estimate.constant, 15) << ", Tauberian "
            << to_decimal(generic.constant, 15) << '\n';
  std::cout << "C(3^12) ~ " << to_decimal(generic.evaluate(12), 10) << ", exact "
            << counting_function(F, G, 12).back() << '\n';

  const FieldModel E = make_field_model(2, 2, 1, {1, -1, 2}, 2);
  std::cout << "elliptic curve over F_2, Phi = " << phi_series(E, subgroup_count_poly(2, 1), 8) << '\n';
}
