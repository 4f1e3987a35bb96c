#pragma once
#include <optional>
#include <string>
#include <vector>

#include "monocycle/complex.hpp"
#include "monocycle/linalg.hpp"
#include "monocycle/perverse.hpp"
#include "monocycle/recollement.hpp"
#include "monocycle/solver.hpp"

namespace monocycle {

// generic and special parts of an f-datum
PresPtr generic_part(const PresPtr& P);
std::vector<std::string> special_strata(const Presentation& P);

// the outcome of one witnessed check
struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};
std::string checks_str(const std::vector<Check>& cs);

struct NearbyOutput {
  Object psi;             // constructible, cells on the special fiber
  Morphism N;             // psi -> psi<2>
  std::optional<Morphism> N_homotopy;  // d(h) = N when N is null-homotopic
  SparseRow N_refutation;              // cokernel witness otherwise
  Object route_shriek;    // Mon^-1 i^! j_! J(F) <-2>[1], minimized
  Object star_for, shriek_for;  // i^* j_* For F and i^! j_! For F, purified
  ExactnessReport exactness;
  std::vector<Check> checks;
};
NearbyOutput psi(const Object& F, const PresPtr& P);

struct MaxExtOutput {
  Object xi;              // constructible on X
  Object psi, psi2;       // Psi and Psi<2> as they enter the triangles
  Extension shriek, star;  // j_! For F, j_* For F
  Morphism alpha_minus, alpha_plus, beta_minus, beta_plus, canonical, N;
  bool alpha_exact = false;  // alpha_+ alpha_- equals the canonical map on the nose
  std::vector<Check> checks;
};
MaxExtOutput xi(const Object& F, const PresPtr& P);

// cone(f) -> C assembled from g and a null-homotopy of g f, checked to be an equivalence
bool triangle_verifies(const Object& A, const Object& B, const Object& C, const Morphism& f, const Morphism& g);

// the realization of C-1 -a-> C0 -b-> C1 with d(h) = b a, as an object filtered by Ci[-i]
Object totalize_three_term(const Object& Cm, const Object& C0, const Object& C1, const Morphism& a, const Morphism& b,
                           const Morphism& h);

struct VanCycOutput {
  Object phi;             // on the special fiber, minimized
  Object psi, psi2;
  Morphism can, var, N;
  Object total;           // the totalized three-term complex
  std::vector<Check> checks;
};
VanCycOutput phi(const Object& F);

}  // namespace monocycle
