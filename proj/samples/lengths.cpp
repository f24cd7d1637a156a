// Sets of lengths over S3 and the atoms of a three-reflection ground.

#include <iostream>

#include "prodone/prodone.hpp"

using namespace prodone;

int main() {
  auto s3 = std::make_shared<const Group>(Group::finite_dihedral(3));
  auto g = make_ground(s3, s3->elements());
  std::cout << "D(S3) = " << davenport(g).value << "\n";

  SequenceScan scan(g, 10);
  auto rep = length_invariants(scan, 3, 6);
  for (std::uint32_t k = 1; k <= 3; ++k) {
    std::cout << "U_" << k << " =";
    for (auto l : rep.U[k]) std::cout << " " << l;
    std::cout << "\n";
  }
  std::cout << "catenary (|S| <= 6) = " << rep.catenary_max << "\n";

  auto inv = dihedral::three_reflection_atoms(1, 2, 4);
  for (auto& a : inv.atoms) std::cout << "atom " << a.to_string() << "\n";
}
