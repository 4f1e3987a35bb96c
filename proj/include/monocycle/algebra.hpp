#pragma once
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "monocycle/linalg.hpp"
#include "monocycle/scalar.hpp"

namespace monocycle {

struct Bidegree {
  int i = 0;  // cohomological
  int j = 0;  // internal
  int tot() const { return i - j; }
  Bidegree operator+(const Bidegree& o) const { return {i + o.i, j + o.j}; }
  Bidegree operator-(const Bidegree& o) const { return {i - o.i, j - o.j}; }
  auto operator<=>(const Bidegree&) const = default;
  Bidegree shifted(int n) const { return {i + n, j}; }   // [n]
  Bidegree twisted(int n) const { return {i, j + n}; }   // <n>
  Bidegree braced(int n) const { return {i + n, j - n}; } // {n} = <-n>[n]
};

// The nine algebras built from xi (2,2), xibar (1,2), r (0,-2), rbar (-1,-2).
enum class AlgTag { R, Lambda, Rdual, Lambdadual, A, Adual, S, E, B };

const char* tag_name(AlgTag t);
AlgTag parse_tag(const std::string& s);

// Normal monomial r^r xi^xi rbar^rb xibar^xb (rbar before xibar; r, xi central and even).
struct BMono {
  int r = 0, xi = 0, rb = 0, xb = 0;
  auto operator<=>(const BMono&) const = default;
  Bidegree degree() const { return {2 * xi - rb + xb, -2 * r + 2 * xi - 2 * rb + 2 * xb}; }
  int parity() const { return (rb + xb) & 1; }
};

struct BigradedModule {
  std::vector<std::pair<std::string, Bidegree>> basis;
  CoeffRing scalars;
};

struct RingElem {
  AlgTag tag = AlgTag::B;
  std::map<BMono, Scalar> terms;

  static RingElem zero(AlgTag t) { return {t, {}}; }
  static RingElem one(AlgTag t);
  static RingElem gen(AlgTag t, const std::string& name);  // "xi", "xibar", "r", "rbar"
  static RingElem mono(AlgTag t, const BMono& m, const Scalar& c = 1);

  bool is_zero() const { return terms.empty(); }
  bool operator==(const RingElem& o) const { return terms == o.terms; }
  std::string str() const;
};

bool tag_allows(AlgTag t, const BMono& m);
AlgTag join_tags(AlgTag a, AlgTag b);

RingElem ring_add(const RingElem& a, const RingElem& b, const CoeffRing& k);
RingElem ring_scale(const RingElem& a, const Scalar& c, const CoeffRing& k);
RingElem ring_mul(const RingElem& a, const RingElem& b, const CoeffRing& k);
RingElem apply_kappa(const RingElem& a, const CoeffRing& k);

RingElem omega(const CoeffRing& k);  // r xibar + rbar xi in B
RingElem theta(AlgTag t);            // r xi

// all legal normal monomials of a tag in a bidegree
std::vector<BMono> monomials_in(AlgTag t, Bidegree d);

struct Window {
  int imin = -8, imax = 8, jmin = -16, jmax = 16;
};

std::map<Bidegree, ModuleRank> dg_ring_cohomology(AlgTag t, const Window& w, const CoeffRing& k);

// The action of E on the exterior algebra on rbar: rbar multiplies, xibar contracts.
// Returns the 2x2 matrix (basis 1, rbar) of an element of E.
std::vector<std::vector<Scalar>> e_action_matrix(const RingElem& a, const CoeffRing& k);

}  // namespace monocycle
