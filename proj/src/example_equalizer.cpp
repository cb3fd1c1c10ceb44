// Equalizer of the identity of T^[1,2]<x> and the homomorphism that sends
// x⊗x to x⊗x + x. Prints the equalizer, spanned by x, and its certificate.

#include <iostream>

#include "cocat/constructions.hpp"
#include "cocat/document.hpp"
#include "cocat/equalizer.hpp"

int main() {
  using namespace cocat;
  Field q = Field::rationals();
  Quiver loop(q, {"O"}, {HomSpace{{"x"}, std::nullopt}});
  auto c = share(tensor_cocategory(loop, 2));

  CocatHom f = identity_hom(c);
  CocatHom g{c, c, QuiverMorphism{{0}, {Matrix::from_rows(q, {{1, 1}, {0, 1}})}}};

  EqualizerResult r = equalize(f, g);
  std::cout << doc::serialize(doc::to_json(*r.eq));
  std::cout << "checks: " << r.certificate.checks.size() << ", failures: " << r.certificate.failures() << "\n";
  return 0;
}
