#pragma once
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "monocycle/scalar.hpp"

namespace monocycle {

// sorted by column index, no explicit zeros
using SparseRow = std::vector<std::pair<int, Scalar>>;

struct SparseMatrix {
  int ncols = 0;
  std::vector<SparseRow> rows;

  int nrows() const { return static_cast<int>(rows.size()); }
  // builds from (row, col) -> value triples, merging duplicates
  static SparseMatrix from_entries(int nrows, int ncols, const std::map<std::pair<int, int>, Scalar>& e);
};

// Invariant-factor data of a matrix over the coefficient ring: rank and,
// over Z(p), the p-adic valuations of the nonzero invariant factors.
struct Elimination {
  int rank = 0;
  std::vector<int> valuations;  // one per pivot, sorted
};

Elimination eliminate(const SparseMatrix& a, const CoeffRing& ring);

struct SolveResult {
  bool ok = false;
  std::vector<Scalar> x;   // size ncols when ok
  SparseRow certificate;   // when !ok: y with y*A = 0 (over the fraction field) and y*b not in the ring
};

// Solve A x = b with x over the coefficient ring (integral over Z(p)).
SolveResult solve(const SparseMatrix& a, const std::vector<Scalar>& b, const CoeffRing& ring,
                  bool want_certificate = false);

// A basis of the kernel of A over the fraction field, scaled to be ring-integral.
std::vector<std::vector<Scalar>> kernel_basis(const SparseMatrix& a, const CoeffRing& ring);

struct ModuleRank {
  int free_rank = 0;
  std::vector<int> torsion;  // exponents k of summands k/(p^k)
  bool operator==(const ModuleRank& o) const { return free_rank == o.free_rank && torsion == o.torsion; }
  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
};

// H = ker(d_out) / im(d_in) for a free module of rank n
ModuleRank homology(int n, const SparseMatrix& d_in, const SparseMatrix& d_out, const CoeffRing& ring);

}  // namespace monocycle
