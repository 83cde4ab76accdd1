// Minimal library walkthrough: build a group from a spec string, compute its
// invariants, and confirm the multiplier against the homology oracle when
// the group is small enough.

#include <iostream>

#include "schur/bounds.hpp"
#include "schur/catalog.hpp"
#include "schur/multiplier.hpp"

int main(int argc, char** argv) {
  using namespace schur;
  std::string spec = argc > 1 ? argv[1] : "es@3";

  PcPresentation g = build_group(spec);
  std::cout << spec << " has order " << g.p() << "^" << g.n() << "\n";

  GroupReport r = analyze(g);
  std::cout << "class " << r.c << ", |G'| = " << g.p() << "^" << r.k << ", d = " << r.d << "\n";
  std::cout << "M(G) = " << r.multiplier.str() << ", t(G) = " << r.t << "\n";
  if (!r.abelian)
    std::cout << "attains the (n+k-2)(n-k-1)/2+1 bound: " << (r.attains_niroomand ? "yes" : "no")
              << "\n";

  if (g.order() <= 32) {
    AbelianInvariants h2 = h2_bar_oracle(multiplication_table(g));
    std::cout << "bar-resolution H2 = " << h2.str()
              << (h2 == r.multiplier ? " (matches)" : " (MISMATCH)") << "\n";
  }
  return 0;
}
