#pragma once
#include <random>
#include <string>

#include "monocycle/complex.hpp"

namespace monocycle::fixtures {

// golden displays, typed in from the drawn pictures
Object gm_der(const PresPtr& P, Flavor fl);   // E1 -eps-> E0<-1>
Object con_der(const PresPtr& P);             // E0<1> -eta-> E1 -eps-> E0<-1>, -xibar id
Object mon_der1(const PresPtr& P);            // E1 <-> E0<-1> via eps and r eta
Object mon_der2(const PresPtr& P);            // the six-cell monodromic display
Object a2_psi_display(const PresPtr& P);      // pt -> (X1 + X2)<-1> -> pt<-2>
Object point_pair(const PresPtr& P, int c, int t);  // contractible a1 <-> a2 with r xi and id

// term helpers
TermKey key(const Presentation& P, const std::string& basis, int r = 0, int xibar = 0);
void add_xi(const Presentation& P, EntryMatrix& m, int k, int l, int s, const Scalar& c = 1);

// same cells up to order and the same differential up to cell units
bool same_display(const Object& A, const Object& B);

// random objects built as iterated cones of random chain maps between shifted generators
Object random_object(const PresPtr& P, Flavor fl, std::mt19937& rng, int max_cells);
// random monodromic single-stratum object on the point presentation:
// Mon pairs and contractible pairs, mixed by a random change of basis
Object random_point_module(const PresPtr& P, std::mt19937& rng, int max_cells, bool with_contractible);
// random Mon-pair object on a one-stratum R-trivial presentation
Object random_trivial_module(const PresPtr& P, std::mt19937& rng, int max_cells);

}  // namespace monocycle::fixtures
