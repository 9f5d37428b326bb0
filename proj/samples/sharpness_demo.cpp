// Builds the union of the top r levels for L = {0..s-1}, evaluates the
// multilevel bound on it, and certifies the polynomial witness by exact rank.

#include <iostream>

#include "lintersect/lintersect.hpp"

int main() {
  using namespace lintersect;
  const unsigned n = 5, s = 2, r = 2;
  const ResidueSet meets{0, 1};
  const ResidueSet sizes{1, 2};
  const auto family = union_of_levels(n, {1, 2});

  const auto report = check_multilevel(family, sizes, meets);
  std::cout << "N(" << n << "," << s << "," << r << ") = " << abs_bound(n, s, r) << "\n"
            << "|F| + non-shadows = " << report.lhs << ", slack = " << report.slack << "\n";

  const auto witness = build_witness(family, sizes, meets, IntegerDomain{});
  const auto cert = verify_independence(witness);
  std::cout << "witness: " << cert.rows << " polynomials, rank " << cert.rank << " of " << cert.cols
            << (cert.independent ? " (independent)" : " (dependent)") << "\n";
  return report.slack == 0 && cert.independent ? 0 : 1;
}
