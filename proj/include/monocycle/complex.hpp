#pragma once
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "monocycle/algebra.hpp"
#include "monocycle/linalg.hpp"
#include "monocycle/presentation.hpp"

namespace monocycle {

enum class Flavor { Eq, Con, Mon };
const char* flavor_name(Flavor f);
Flavor parse_flavor(const std::string& s);

// A summand E_s<t>[-c] of a graded parity object.
struct Cell {
  int s = 0;
  int c = 0;
  int t = 0;
  auto operator<=>(const Cell&) const = default;
};

// One term of a matrix entry: xibar^e r^a q b, with b a Hom basis element and q a monomial of Q.
struct TermKey {
  int b = 0;
  Mono q;
  int a = 0;
  int e = 0;
  auto operator<=>(const TermKey&) const = default;
};

using Entry = std::map<TermKey, Scalar>;
using EntryMatrix = std::map<std::pair<int, int>, Entry>;  // (row = target cell, col = source cell)

struct Morphism {
  PresPtr P;
  Flavor fl = Flavor::Eq;
  std::vector<Cell> src, dst;
  Bidegree deg;
  EntryMatrix m;

  bool is_zero() const { return m.empty(); }
  const Entry* at(int k, int l) const {
    auto it = m.find({k, l});
    return it == m.end() ? nullptr : &it->second;
  }
  void add_term(int k, int l, const TermKey& key, const Scalar& c);
  bool operator==(const Morphism& o) const { return src == o.src && dst == o.dst && m == o.m; }
};

struct Object {
  Morphism d;  // the differential, cells -> cells, bidegree (1,0)

  const PresPtr& P() const { return d.P; }
  Flavor fl() const { return d.fl; }
  const std::vector<Cell>& cells() const { return d.src; }
  int size() const { return static_cast<int>(d.src.size()); }
  bool operator==(const Object& o) const { return d == o.d && d.fl == o.d.fl; }
};

// bookkeeping
Bidegree term_bidegree(const Presentation& P, const Cell& from, const Cell& to, const TermKey& k);
int hom_part_degree(const Presentation& P, const Cell& from, const Cell& to, const TermKey& k);
bool flavor_allows(Flavor fl, const TermKey& k);

// construction
Object make_object(const PresPtr& P, Flavor fl, const std::vector<Cell>& cells, const EntryMatrix& delta);
Object zero_object(const PresPtr& P, Flavor fl);
Object parity_object(const PresPtr& P, Flavor fl, int s, int c = 0, int t = 0);  // needs fl != Mon unless curvature vanishes
Morphism zero_morphism(const PresPtr& P, Flavor fl, const std::vector<Cell>& src, const std::vector<Cell>& dst, Bidegree deg);
Morphism identity(const Object& F);
Morphism scalar_identity(const Object& F, const Scalar& c);
Morphism naive_identity(const PresPtr& P, Flavor fl, const std::vector<Cell>& src, const std::vector<Cell>& dst, Bidegree deg);
Morphism theta_identity(const Object& F);  // r xi id
TermKey identity_key(const Presentation& P, int s);
// the image of xi in Q as terms on basis b (used for xi * id and kappa)
std::vector<std::pair<Mono, Scalar>> xi_terms(const Presentation& P);

// arithmetic
Morphism add(const Morphism& f, const Morphism& g);
Morphism sub(const Morphism& f, const Morphism& g);
Morphism scale(const Morphism& f, const Scalar& c);
Morphism neg(const Morphism& f);
Morphism compose(const Morphism& g, const Morphism& f);  // g o f with Koszul signs
Morphism kappa(const Morphism& f);                        // xibar -> xi
Morphism s_sign(const Morphism& f);                       // negate xibar terms
Morphism r_multiple(const Morphism& f, int n);            // r^n f
Morphism with_flavor(const Morphism& f, Flavor fl);

// the differential on Hom(F, G): d(f) = dG f + (-1)^(|f|+1) f dF (+ kappa(f) for Con)
Morphism d_hom(const Object& F, const Object& G, const Morphism& f);
Morphism curvature_defect(const Object& F);  // d^2 - Theta, d^2 + kappa(d), or d^2
void check_object(const Object& F);           // throws CurvatureError
bool is_chain_map(const Object& F, const Object& G, const Morphism& f);
void require_chain_map(const Object& F, const Object& G, const Morphism& f, const std::string& what);

// shifts, twists, sums, cones
std::vector<Cell> shift_cells(const std::vector<Cell>& c, int n);
std::vector<Cell> twist_cells(const std::vector<Cell>& c, int n);
Object shift(const Object& F, int n);
Object twist(const Object& F, int n);
Morphism shift_map(const Morphism& f, int n);
Morphism twist_map(const Morphism& f, int n);
Object direct_sum(const Object& F, const Object& G);
Morphism block(const std::vector<std::vector<const Morphism*>>& blocks, const std::vector<std::vector<Cell>>& rows,
               const std::vector<std::vector<Cell>>& cols, const PresPtr& P, Flavor fl, Bidegree deg);
// restrict rows/cols of a morphism to index ranges
Morphism sub_block(const Morphism& f, int r0, int r1, int c0, int c1);
// place f as a block inside a larger morphism (row offset, col offset)
void place(Morphism& into, const Morphism& f, int roff, int coff);
Object sub_object(const Object& F, const std::vector<int>& keep);  // caller guarantees a subquotient

struct Triangle {
  Object A, B, C;
  Morphism f, g, h;  // A -> B -> C -> A[1]
};
Triangle cone_triangle(const Object& F, const Object& G, const Morphism& f);
Object cone(const Object& F, const Object& G, const Morphism& f);
Object cocone(const Object& F, const Object& G, const Morphism& f);  // cone(f)[-1]

// the Hom complex in a fixed bidegree
struct Atom {
  int k, l;
  TermKey key;
};
std::vector<Atom> hom_atoms(const PresPtr& P, Flavor fl, const std::vector<Cell>& src, const std::vector<Cell>& dst,
                            Bidegree deg);
Morphism atom_morphism(const PresPtr& P, Flavor fl, const std::vector<Cell>& src, const std::vector<Cell>& dst,
                       Bidegree deg, const Atom& a, const Scalar& c = 1);

struct HomWindow {
  int mmin = -8, mmax = 8, nmin = -12, nmax = 12;
};
HomWindow default_hom_window();  // honors MONOCYCLE_WINDOW

// maps F -> G<n>[m] up to homotopy
ModuleRank hom_space(const Object& F, const Object& G, int m, int n);
std::map<std::pair<int, int>, ModuleRank> hom_table(const Object& F, const Object& G, const HomWindow& w);

// object equality up to rescaling each cell by a unit; returns the scalars when found
bool equal_up_to_cell_units(const Object& A, const Object& B, std::vector<Scalar>* units = nullptr);

std::string cell_str(const Presentation& P, const Cell& c);
std::string entry_str(const Presentation& P, const Entry& e);
std::string object_str(const Object& F);
std::string morphism_str(const Morphism& f);

}  // namespace monocycle
