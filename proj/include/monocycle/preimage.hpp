#pragma once
#include "monocycle/complex.hpp"
#include "monocycle/solver.hpp"

namespace monocycle {

// A constructible object G together with an equivalence Mon(G) -> F.
struct MonPreimage {
  Object con;
  Equivalence equiv;
  int step2 = 0, step3 = 0;
};

// essential surjectivity of Mon over R-free presentations, stratum by stratum
MonPreimage mon_preimage(const Object& F);
MonPreimage mon_preimage_single(const Object& F);
// T = [[B, X], [0, A]] with B the first nB cells; B and A come with preimages
MonPreimage glue(const Object& T, int nB, const MonPreimage& B, const MonPreimage& A);

// fullness: f with Mon(f) homotopic to g : Mon(G1) -> Mon(G2), else FaithfulnessError
Morphism mon_preimage_map(const Object& G1, const Object& G2, const Morphism& g);

}  // namespace monocycle
