#pragma once
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "monocycle/scalar.hpp"

namespace monocycle {

// Exponent vector of a monomial in the base polynomial ring Q = k[vars].
// Every generator of Q sits in bidegree (2,2); R = k[xi] maps in through a linear form.
using Mono = std::vector<int>;

int mono_degree(const Mono& m);
Mono mono_mul(const Mono& a, const Mono& b);
bool mono_divides(const Mono& a, const Mono& b);  // a | b
std::string mono_str(const Mono& m, const std::vector<std::string>& vars);
Mono parse_mono(const std::string& s, const std::vector<std::string>& vars);
// all monomials of total degree d in n variables (lexicographic)
std::vector<Mono> monomials_of_degree(int n, int d);

struct Stratum {
  std::string id;
  int dim = 0;
  std::vector<std::string> closure_leq;  // strata lying in the closure of this one (excluding itself)
};

// One basis element b of uHom(E_src, E_dst), generating a cyclic Q-module Q/(kills).
struct HomBasis {
  std::string name;
  int src = 0, dst = 0;
  int deg = 0;  // bidegree (deg, deg)
  std::vector<Mono> kills;
};

struct CompTerm {
  Mono q;
  Scalar c;
  int b;
};

struct OpenSet {
  std::vector<std::string> strata;
  // kill ideals of the restricted Hom modules, keyed by basis name; basis elements not listed
  // keep their ambient kills; a kill equal to the unit monomial means the element dies
  std::map<std::string, std::vector<Mono>> kills;
};

struct FDatum {
  std::vector<std::string> x0, xeta;
  Scalar c = 1;
};

struct ValidationReport {
  struct Check {
    std::string name;
    bool ok = true;
    std::string detail;
  };
  std::vector<Check> checks;
  bool r_free = false;
  bool r_trivial = false;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
};

class Presentation;
using PresPtr = std::shared_ptr<const Presentation>;

class Presentation {
 public:
  std::string name;
  CoeffRing coeff;
  std::vector<std::string> vars;
  std::vector<Scalar> xi;          // image of xi in Q (linear form)
  std::vector<Stratum> strata;     // listed in the total order
  std::vector<HomBasis> basis;
  std::vector<int> identity;       // per stratum
  std::vector<std::vector<CompTerm>> comp;  // index g*nb+f -> g o f
  bool has_duality = false;
  std::vector<int> dual_object;
  std::vector<std::pair<int, Scalar>> dual_basis;  // (basis, sign)
  std::vector<OpenSet> filtration;
  std::optional<FDatum> fdatum;
  // for restricted presentations: the ambient it came from (used for term transport)
  std::vector<std::string> parent_strata;

  int nvars() const { return static_cast<int>(vars.size()); }
  int nbasis() const { return static_cast<int>(basis.size()); }
  int nstrata() const { return static_cast<int>(strata.size()); }
  int stratum_index(const std::string& id) const;  // throws NameError
  int basis_index(const std::string& name) const;  // throws NameError
  const std::vector<int>& homs(int s, int t) const { return hom_index_[s * nstrata() + t]; }
  const std::vector<CompTerm>& compose(int g, int f) const { return comp[g * nbasis() + f]; }
  bool killed(int b, const Mono& q) const;
  bool leq(int s, int t) const;  // s in the closure of t (or equal)
  Mono zero_mono() const { return Mono(vars.size(), 0); }

  bool r_free() const;
  bool basis_r_free(int b) const;  // uHom summand on b free over R
  bool r_trivial() const;
  // k-basis of uEnd(E_s) = Q/I_s in polynomial degree d
  std::vector<Mono> h_basis(int s, int d) const;

  void finalize();  // builds indices; call after filling fields
  ValidationReport validate() const;

 private:
  std::vector<std::vector<int>> hom_index_;
  std::map<std::string, int> strata_by_id_, basis_by_name_;
};

// restriction to a declared open union
PresPtr restrict_to(const PresPtr& P, const std::vector<std::string>& open);
bool is_declared_open(const Presentation& P, const std::vector<std::string>& open);

PresPtr builtin(const std::string& name, const CoeffRing& k = CoeffRing::rationals());
std::vector<std::string> builtin_names();

// k (x)_R P: kill the image of xi by eliminating one variable with unit coefficient.
PresPtr collapse_presentation(const PresPtr& P);
int collapse_pivot(const Presentation& P);
// image of a monomial under the substitution that kills xi
std::map<Mono, Scalar> collapse_mono(const Presentation& P, const Mono& m);

}  // namespace monocycle
