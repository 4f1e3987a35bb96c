#pragma once
#include <string>
#include <vector>

#include "monocycle/complex.hpp"
#include "monocycle/solver.hpp"

namespace monocycle {

// A homotopy equivalence F -> F_min built from elementary moves.
// to_min: F -> F_min, from_min: F_min -> F, to_min o from_min = id exactly and
// from_min o to_min - id = d(homotopy).
struct ReductionTrace {
  std::vector<std::string> moves;
  Morphism to_min, from_min, homotopy;
};

struct Minimized {
  Object obj;
  ReductionTrace trace;
};

// identity trace on F
ReductionTrace trivial_trace(const Object& F);
// composes a trace F -> F1 with a trace F1 -> F2
ReductionTrace chain_traces(const ReductionTrace& a, const ReductionTrace& b);
// checks the three identities of a trace, throwing WitnessError
void check_trace(const Object& F, const Object& Fmin, const ReductionTrace& t);
Equivalence trace_equivalence(const ReductionTrace& t);

// cancels the unit entry d(k,l) = u id (cell l -> cell k)
Minimized cancel_pair(const Object& F, int k, int l);
// cell k is replaced by sum_i column_i * cell_i; column must be a degree-0 map from cell k
// whose k-th entry is a unit multiple of the identity
Minimized change_basis(const Object& F, int k, const Morphism& column);
// reorders cells: new cell i is old cell perm[i]
Minimized permute_cells(const Object& F, const std::vector<int>& perm);

Minimized minimize(const Object& F);
bool is_minimal(const Object& F);

// layer degree c - t; the top layer has zero internal differential
int layer_degree(const Cell& c);
struct Peel {
  Object top, rest;  // F = cone(connecting: rest[-1] -> top), cells top ++ rest
  Morphism connecting;
  std::vector<int> order;  // the cells of F listed as top ++ rest
};
Peel peel_top(const Object& F);

// Single-stratum decomposition of a monodromic object into Mon(E_s)-pairs.
struct Decomposition {
  Object normal;  // cells grouped as (base, partner) pairs, block upper triangular
  std::vector<Cell> bases;
  int step2 = 0, step3 = 0;
  ReductionTrace trace;  // F -> normal
};
Decomposition decompose_single_stratum(const Object& F);

}  // namespace monocycle
