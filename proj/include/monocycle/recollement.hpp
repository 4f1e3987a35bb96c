#pragma once
#include <optional>
#include <string>
#include <vector>

#include "monocycle/complex.hpp"
#include "monocycle/reduction.hpp"
#include "monocycle/solver.hpp"

namespace monocycle {

// the presentation of a declared open union (cached, so repeated calls share one pointer)
PresPtr open_part(const PresPtr& P, const std::vector<std::string>& open);
// the final segments of the total order that are declared open, largest first
std::vector<std::vector<std::string>> open_chain(const Presentation& P);
std::vector<std::string> complement(const Presentation& P, const std::vector<std::string>& open);

// j^*: restriction of objects and morphisms to an open union
Object j_restrict(const Object& F, const PresPtr& PU);
Morphism j_restrict_map(const Morphism& f, const PresPtr& PU);
// i_*: objects on a closed union are X-objects whose cells lie on it; this checks support
Object i_push(const Object& F, const std::vector<std::string>& closed);

// parity lift of an object on U = X minus one closed stratum to X, glued with i^! of the lift
Object extend_over_closed_stratum(const Object& F, const PresPtr& PX);

struct Extension {
  Object obj;         // object on X
  Equivalence unit;   // F -> j^* obj
};
// j_! and j_* from an open union U (F lives over open_part(PX, U))
Extension j_shriek(const Object& F, const PresPtr& PX);
Extension j_star(const Object& F, const PresPtr& PX);

// phi: A -> B with d phi = 0 and j^* phi homotopic to target (a map j^*A -> j^*B over PU);
// unique up to homotopy when A is a j_! or B a j_*
Morphism extend_map(const Object& A, const Object& B, const PresPtr& PU, const Morphism& target);
// the canonical map j_! F -> j_* F for the two extensions of one F
Morphism canonical_map(const Extension& shriek, const Extension& star, const PresPtr& PU);

// Z-supported object with its contracting homotopy on the open complement
struct SupportedObject {
  Object obj;
  std::vector<std::string> closed;
  Morphism certificate;  // h with d(h) = id on j^* obj
  std::optional<Triangle> gluing;
};
// the counit j_! j^* F -> F (and its dual unit F -> j_* j^* F)
Morphism shriek_counit(const Object& F, const std::vector<std::string>& open, Extension* ext = nullptr);
Morphism star_unit(const Object& F, const std::vector<std::string>& open, Extension* ext = nullptr);
SupportedObject i_upper_star(const Object& F, const std::vector<std::string>& closed);
SupportedObject i_upper_shriek(const Object& F, const std::vector<std::string>& closed);
bool verify_support(const SupportedObject& S);

struct Purified {
  bool pure = false;
  Object obj;  // minimized; cells on the closed union when pure
  ReductionTrace trace;
  std::string diagnostic;
};
Purified support_purify(const SupportedObject& S);

}  // namespace monocycle
