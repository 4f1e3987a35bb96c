#include "fixtures.hpp"

#include <algorithm>

#include "monocycle/functors.hpp"
#include "monocycle/reduction.hpp"
#include "monocycle/solver.hpp"

namespace monocycle::fixtures {

TermKey key(const Presentation& P, const std::string& basis, int r, int xibar) {
  return {P.basis_index(basis), P.zero_mono(), r, xibar};
}

void add_xi(const Presentation& P, EntryMatrix& m, int k, int l, int s, const Scalar& c) {
  for (const auto& [q, x] : xi_terms(P)) m[{k, l}][{P.identity[s], q, 0, 0}] += c * x;
}

Object gm_der(const PresPtr& P, Flavor fl) {
  EntryMatrix d;
  d[{1, 0}][key(*P, "eps")] = 1;
  return make_object(P, fl, {{1, 0, 0}, {0, 0, -1}}, d);
}

Object con_der(const PresPtr& P) {
  EntryMatrix d;
  d[{1, 0}][key(*P, "eta")] = 1;
  d[{2, 1}][key(*P, "eps")] = 1;
  d[{2, 0}][key(*P, "id_pt", 0, 1)] = -1;
  return make_object(P, Flavor::Con, {{0, 0, 1}, {1, 0, 0}, {0, 0, -1}}, d);
}

Object mon_der1(const PresPtr& P) {
  EntryMatrix d;
  d[{1, 0}][key(*P, "eps")] = 1;
  d[{0, 1}][key(*P, "eta", 1)] = 1;
  return make_object(P, Flavor::Mon, {{1, 0, 0}, {0, 0, -1}}, d);
}

Object mon_der2(const PresPtr& P) {
  EntryMatrix d;
  d[{1, 0}][key(*P, "eta")] = 1;
  d[{2, 1}][key(*P, "eps")] = 1;
  d[{4, 3}][key(*P, "eta")] = -1;
  d[{5, 4}][key(*P, "eps")] = -1;
  d[{2, 3}][key(*P, "id_pt")] = -1;
  const int st[3] = {0, 1, 0};
  for (int i = 0; i < 3; ++i) {
    add_xi(*P, d, 3 + i, i, st[i]);
    d[{i, 3 + i}][{P->identity[st[i]], P->zero_mono(), 1, 0}] = 1;
  }
  return make_object(P, Flavor::Mon, {{0, 0, 1}, {1, 0, 0}, {0, 0, -1}, {0, -1, -1}, {1, -1, -2}, {0, -1, -3}}, d);
}

Object a2_psi_display(const PresPtr& P) {
  int pt = P->stratum_index("pt"), x1 = P->stratum_index("X1"), x2 = P->stratum_index("X2");
  EntryMatrix d;
  d[{1, 0}][key(*P, "eta1")] = 1;
  d[{2, 0}][key(*P, "eta2")] = -1;
  d[{3, 1}][key(*P, "eps1")] = 1;
  d[{3, 2}][key(*P, "eps2")] = -1;
  d[{3, 0}][key(*P, "id_pt", 0, 1)] = -1;
  return make_object(P, Flavor::Con, {{pt, 0, 0}, {x1, 0, -1}, {x2, 0, -1}, {pt, 0, -2}}, d);
}

Object point_pair(const PresPtr& P, int c, int t) {
  EntryMatrix d;
  for (const auto& [q, x] : xi_terms(*P)) d[{1, 0}][{P->identity[0], q, 1, 0}] += x;
  d[{0, 1}][{P->identity[0], P->zero_mono(), 0, 0}] = 1;
  return make_object(P, Flavor::Mon, {{0, c, t}, {0, c - 1, t}}, d);
}

bool same_display(const Object& A, const Object& B) {
  if (A.size() != B.size() || A.fl() != B.fl()) return false;
  std::vector<int> perm;
  std::vector<bool> used(A.size(), false);
  for (const auto& cb : B.cells()) {
    int hit = -1;
    for (int i = 0; i < A.size() && hit < 0; ++i)
      if (!used[i] && A.cells()[i] == cb) hit = i;
    if (hit < 0) return false;
    used[hit] = true;
    perm.push_back(hit);
  }
  Object Ap = permute_cells(A, perm).obj;
  return equal_up_to_cell_units(Ap, B);
}

namespace {

int pick(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Morphism random_cycle(const Object& F, const Object& G, std::mt19937& rng) {
  auto Z = cycle_basis(F, G, {0, 0});
  Morphism f = zero_morphism(F.P(), F.fl(), F.cells(), G.cells(), {0, 0});
  for (const auto& z : Z) {
    int c = pick(rng, -2, 2);
    if (c) f = add(f, scale(z, c));
  }
  return f;
}

}  // namespace

Object random_object(const PresPtr& P, Flavor fl, std::mt19937& rng, int max_cells) {
  Flavor base = fl == Flavor::Mon ? Flavor::Con : fl;
  auto gen = [&] { return parity_object(P, base, pick(rng, 0, P->nstrata() - 1), pick(rng, -1, 1), pick(rng, -2, 2)); };
  Object F = gen();
  while (F.size() < (fl == Flavor::Mon ? std::max(1, max_cells / 2) : max_cells)) {
    Object X = gen();
    if (F.size() + X.size() > max_cells) break;
    if (pick(rng, 0, 1)) {
      Morphism f = random_cycle(X, F, rng);
      F = cone(X, F, f);
    } else {
      Object Xs = shift(X, -1);
      Morphism f = random_cycle(F, Xs, rng);
      F = cone(F, Xs, f);
    }
    if (pick(rng, 0, 3) == 0) break;
  }
  if (fl == Flavor::Mon) F = mon(F);
  return F;
}

Object random_point_module(const PresPtr& P, std::mt19937& rng, int max_cells, bool with_contractible) {
  Object F = zero_object(P, Flavor::Mon);
  bool forced = false;
  while (F.size() + 2 <= max_cells) {
    bool pair = with_contractible && (!forced || pick(rng, 0, 1));
    int c = pick(rng, -1, 1), t = pick(rng, -2, 2);
    Object X = pair ? point_pair(P, c, t) : mon(parity_object(P, Flavor::Con, 0, c, t));
    forced = forced || pair;
    F = direct_sum(F, X);
    if (pick(rng, 0, 2) == 0) break;
  }
  if (F.size() == 0) F = mon(parity_object(P, Flavor::Con, 0));
  // random automorphism: unipotent column operations with divisible coefficients over Z(p)
  Scalar u = P->coeff.kind == CoeffKind::Zp ? P->coeff.uniformizer() : Scalar(1);
  for (int round = 0; round < 3; ++round) {
    int k = pick(rng, 0, F.size() - 1);
    Morphism col = zero_morphism(P, Flavor::Mon, {F.cells()[k]}, F.cells(), {0, 0});
    for (const auto& a : hom_atoms(P, Flavor::Mon, {F.cells()[k]}, F.cells(), {0, 0})) {
      if (a.k == k) continue;
      int c = pick(rng, -1, 1);
      if (c) col.add_term(a.k, 0, a.key, u * c);
    }
    col.add_term(k, 0, identity_key(*P, F.cells()[k].s), 1);
    F = change_basis(F, k, col).obj;
  }
  return F;
}

Object random_trivial_module(const PresPtr& P, std::mt19937& rng, int max_cells) {
  Object F = zero_object(P, Flavor::Mon);
  while (F.size() + 2 <= max_cells) {
    F = direct_sum(F, mon(parity_object(P, Flavor::Con, 0, pick(rng, -1, 1), pick(rng, -2, 2))));
    if (pick(rng, 0, 1) == 0) break;
  }
  for (int round = 0; round < 2; ++round) {
    int k = pick(rng, 0, F.size() - 1);
    Morphism col = zero_morphism(P, Flavor::Mon, {F.cells()[k]}, F.cells(), {0, 0});
    for (const auto& a : hom_atoms(P, Flavor::Mon, {F.cells()[k]}, F.cells(), {0, 0}))
      if (a.k != k && pick(rng, 0, 1)) col.add_term(a.k, 0, a.key, pick(rng, 1, 3));
    col.add_term(k, 0, identity_key(*P, F.cells()[k].s), 1);
    F = change_basis(F, k, col).obj;
  }
  return F;
}

}  // namespace monocycle::fixtures
