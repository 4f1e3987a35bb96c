#pragma once
#include <functional>

#include "monocycle/complex.hpp"

namespace monocycle {

// Rewrites every term of f through `term_map`, landing in presentation Q with cell lists src/dst.
// The term map may return several terms (or none).
using TermMap = std::function<std::vector<std::pair<TermKey, Scalar>>(const TermKey&)>;
Morphism transport(const Morphism& f, const PresPtr& Q, const std::vector<Cell>& src, const std::vector<Cell>& dst,
                   const TermMap& term_map, Flavor fl);

// For: equivariant -> constructible
Object forget(const Object& F);
Morphism forget_map(const Morphism& f);

// Mon: constructible -> monodromic, cells F ++ F<-2>[1]
std::vector<Cell> mon_cells(const std::vector<Cell>& c);
Object mon(const Object& F);
Morphism mon_map(const Morphism& f);

// Coi sets r to 0; Inv = D Coi D
Object coi(const Object& F);
Morphism coi_map(const Morphism& f);
Object inv(const Object& F);
// chain isomorphism Inv(F) -> Coi(F)<2>[-1]
Morphism inv_coi_witness(const Object& F);

// Verdier duality (contravariant on morphisms: f: F -> G gives D f: DG -> DF)
std::vector<Cell> dual_cells(const Presentation& P, Flavor fl, const std::vector<Cell>& c);
Object verdier(const Object& F);
Morphism verdier_map(const Morphism& f);
// the comparison Mon(D F) -> D Mon(F)
Morphism mon_dual_witness(const Object& F);

// Jordan blocks over an R-trivial presentation
Object jordan(const Object& F);
Morphism jordan_map(const Morphism& f);
Object jordan_n(const Object& F, int n);
struct JordanTriangle {
  Object A, B, C;  // J_n<-2m> -> J_{n+m} -> J_m
  Morphism f, g;
};
JordanTriangle jordan_triangle(const Object& F, int n, int m);

// monodromy N: F -> F<2>
Morphism monodromy(const Object& F);

// unit and counit of Coi -| Mon For
struct CoiAdjunction {
  Morphism unit;    // G -> Mon For Coi G  (G monodromic)
  Morphism counit;  // Coi Mon For F -> F  (F equivariant)
};
Morphism coi_unit(const Object& G);
Morphism coi_counit(const Object& F);

// k (x)_R: drops xibar and kills xi; the target presentation is collapse_presentation(P)
Object collapse_nonequivariant(const Object& F, const PresPtr& target = nullptr);

}  // namespace monocycle
