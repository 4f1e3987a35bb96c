#pragma once
#include <functional>
#include <optional>
#include <vector>

#include "monocycle/complex.hpp"

namespace monocycle {

using LinearMap = std::function<Morphism(const Morphism&)>;

// A finite linear system whose unknowns are morphisms of fixed shape and bidegree.
// Equations have the form  sum_i L_i(x_i) = target  with L_i linear.
class LinearProblem {
 public:
  explicit LinearProblem(PresPtr P) : P_(std::move(P)) {}

  // unknowns may live over a different presentation (e.g. an open part) than the problem
  int add_unknown(const std::vector<Cell>& src, const std::vector<Cell>& dst, Bidegree deg, Flavor fl,
                  PresPtr over = nullptr);
  void add_equation(std::vector<std::pair<int, LinearMap>> terms, const Morphism& target);

  // a particular solution, or nullopt (with a cokernel witness when asked for)
  std::optional<std::vector<Morphism>> solve(SparseRow* certificate = nullptr) const;
  // a basis of solutions of the homogeneous system
  std::vector<std::vector<Morphism>> homogeneous_basis() const;
  std::vector<Morphism> assemble(const std::vector<Scalar>& x) const;
  int num_variables() const;

 private:
  struct Unknown {
    std::vector<Cell> src, dst;
    Bidegree deg;
    Flavor fl;
    PresPtr P;
    std::vector<Atom> atoms;
    int offset;
  };
  struct Equation {
    std::vector<std::pair<int, LinearMap>> terms;
    Morphism target;
  };
  void build(SparseMatrix& A, std::vector<Scalar>& b) const;

  PresPtr P_;
  std::vector<Unknown> unknowns_;
  std::vector<Equation> equations_;
};

// h with d(h) = f, where f: F -> G
std::optional<Morphism> find_homotopy(const Object& F, const Object& G, const Morphism& f,
                                      SparseRow* certificate = nullptr);
// f - g = d(h)
std::optional<Morphism> find_homotopy_between(const Object& F, const Object& G, const Morphism& f, const Morphism& g,
                                              SparseRow* certificate = nullptr);
bool null_homotopic(const Object& F, const Object& G, const Morphism& f);

// A homotopy equivalence phi: F -> G with inverse psi and
// psi phi - id = d(h_src), phi psi - id = d(h_dst).
struct Equivalence {
  Morphism phi, psi, h_src, h_dst;
};

std::optional<Equivalence> verify_equivalence(const Object& F, const Object& G, const Morphism& phi);
// throws WitnessError when any of the four identities fails
void check_equivalence(const Object& F, const Object& G, const Equivalence& e);

// basis of chain maps F -> G of the given bidegree
std::vector<Morphism> cycle_basis(const Object& F, const Object& G, Bidegree deg);

// looks for a homotopy equivalence among generic combinations of degree-0 cycles
std::optional<Equivalence> find_isomorphism(const Object& F, const Object& G, unsigned seed = 1, int attempts = 12);

// the zero object test: id_F = d(h)
std::optional<Morphism> contracting_homotopy(const Object& F);

}  // namespace monocycle

namespace monocycle {
// e2 o e1 for e1: A -> B, e2: B -> C
Equivalence compose_equivalence(const Equivalence& e1, const Equivalence& e2);
Equivalence identity_equivalence(const Object& F);
Equivalence inverse_equivalence(const Equivalence& e);
}  // namespace monocycle
