#include "monocycle/reduction.hpp"

#include <algorithm>
#include <climits>

#include "monocycle/errors.hpp"

namespace monocycle {

namespace {

Morphism pick(const Morphism& f, const std::vector<int>& rows, const std::vector<int>& cols) {
  std::vector<Cell> src, dst;
  for (int c : cols) src.push_back(f.src[c]);
  for (int r : rows) dst.push_back(f.dst[r]);
  std::vector<int> rpos(f.dst.size(), -1), cpos(f.src.size(), -1);
  for (size_t i = 0; i < rows.size(); ++i) rpos[rows[i]] = static_cast<int>(i);
  for (size_t i = 0; i < cols.size(); ++i) cpos[cols[i]] = static_cast<int>(i);
  Morphism r = zero_morphism(f.P, f.fl, src, dst, f.deg);
  for (const auto& [kl, e] : f.m)
    if (rpos[kl.first] >= 0 && cpos[kl.second] >= 0)
      for (const auto& [key, c] : e) r.add_term(rpos[kl.first], cpos[kl.second], key, c);
  return r;
}

Object object_from(const Morphism& d) {
  Object F;
  F.d = d;
  F.d.deg = {1, 0};
  check_object(F);
  return F;
}

bool is_unit_identity(const Object& F, int k, int l, Scalar* u) {
  if (k == l) return false;
  const Entry* e = F.d.at(k, l);
  if (!e || e->size() != 1) return false;
  const auto& [key, c] = *e->begin();
  if (F.cells()[k].s != F.cells()[l].s) return false;
  if (!(key == identity_key(*F.P(), F.cells()[l].s))) return false;
  if (!F.P()->coeff.is_unit(c)) return false;
  if (u) *u = c;
  return true;
}

}  // namespace

ReductionTrace trivial_trace(const Object& F) {
  ReductionTrace t;
  t.to_min = identity(F);
  t.from_min = identity(F);
  t.homotopy = zero_morphism(F.P(), F.fl(), F.cells(), F.cells(), {-1, 0});
  return t;
}

ReductionTrace chain_traces(const ReductionTrace& a, const ReductionTrace& b) {
  ReductionTrace t;
  t.moves = a.moves;
  t.moves.insert(t.moves.end(), b.moves.begin(), b.moves.end());
  t.to_min = compose(b.to_min, a.to_min);
  t.from_min = compose(a.from_min, b.from_min);
  t.homotopy = add(compose(compose(a.from_min, b.homotopy), a.to_min), a.homotopy);
  return t;
}

void check_trace(const Object& F, const Object& Fmin, const ReductionTrace& t) {
  require_chain_map(F, Fmin, t.to_min, "trace to_min");
  require_chain_map(Fmin, F, t.from_min, "trace from_min");
  if (sub(compose(t.to_min, t.from_min), identity(Fmin)).m.size())
    throw WitnessError("trace: to_min o from_min is not the identity");
  if (sub(compose(t.from_min, t.to_min), identity(F)).m != d_hom(F, F, t.homotopy).m)
    throw WitnessError("trace: from_min o to_min - id differs from d(h)");
}

Equivalence trace_equivalence(const ReductionTrace& t) {
  Equivalence e;
  e.phi = t.to_min;
  e.psi = t.from_min;
  e.h_src = t.homotopy;
  e.h_dst = zero_morphism(t.to_min.P, t.to_min.fl, t.to_min.dst, t.to_min.dst, {-1, 0});
  return e;
}

Minimized cancel_pair(const Object& F, int k, int l) {
  Scalar u;
  if (!is_unit_identity(F, k, l, &u)) throw StructuralError("cancel_pair: entry is not a unit identity");
  const auto& P = *F.P();
  Morphism U = zero_morphism(F.P(), F.fl(), F.cells(), F.cells(), {-1, 0});
  U.add_term(l, k, identity_key(P, F.cells()[k].s), P.coeff.inverse(u));
  std::vector<int> W;
  for (int i = 0; i < F.size(); ++i)
    if (i != k && i != l) W.push_back(i);
  std::vector<int> all(F.size());
  for (int i = 0; i < F.size(); ++i) all[i] = i;
  Morphism dU = compose(F.d, U);
  Morphism Ud = compose(U, F.d);
  Morphism dn = pick(sub(F.d, compose(dU, F.d)), W, W);
  Minimized r;
  r.obj = object_from(dn);
  Morphism id = identity(F);
  r.trace.to_min = pick(sub(id, dU), W, all);
  r.trace.from_min = pick(sub(id, Ud), all, W);
  r.trace.homotopy = neg(U);
  r.trace.moves.push_back("cancel " + cell_str(P, F.cells()[l]) + " -> " + cell_str(P, F.cells()[k]));
  return r;
}

Minimized change_basis(const Object& F, int k, const Morphism& column) {
  const auto& P = *F.P();
  const Entry* ek = column.at(k, 0);
  if (!ek || ek->size() != 1 || !(ek->begin()->first == identity_key(P, F.cells()[k].s)) ||
      !P.coeff.is_unit(ek->begin()->second))
    throw StructuralError("change_basis: pivot coefficient is not a unit");
  Scalar uinv = P.coeff.inverse(ek->begin()->second);
  Morphism Phi = identity(F), Psi = identity(F);
  Phi.m.erase({k, k});
  Psi.m.erase({k, k});
  for (const auto& [kl, e] : column.m)
    for (const auto& [key, c] : e) {
      Phi.add_term(kl.first, k, key, c);
      if (kl.first != k) Psi.add_term(kl.first, k, key, -c * uinv);
    }
  Psi.add_term(k, k, identity_key(P, F.cells()[k].s), uinv);
  Minimized r;
  r.obj = object_from(compose(compose(Psi, F.d), Phi));
  r.trace.to_min = Psi;
  r.trace.from_min = Phi;
  r.trace.homotopy = zero_morphism(F.P(), F.fl(), F.cells(), F.cells(), {-1, 0});
  r.trace.moves.push_back("basis change at " + cell_str(P, F.cells()[k]));
  return r;
}

Minimized permute_cells(const Object& F, const std::vector<int>& perm) {
  std::vector<int> all(F.size());
  for (int i = 0; i < F.size(); ++i) all[i] = i;
  Minimized r;
  r.obj = object_from(pick(F.d, perm, perm));
  Morphism id = identity(F);
  r.trace.to_min = pick(id, perm, all);
  r.trace.from_min = pick(id, all, perm);
  r.trace.homotopy = zero_morphism(F.P(), F.fl(), F.cells(), F.cells(), {-1, 0});
  return r;
}

bool is_minimal(const Object& F) {
  for (const auto& [kl, e] : F.d.m)
    if (is_unit_identity(F, kl.first, kl.second, nullptr)) return false;
  return true;
}

Minimized minimize(const Object& F) {
  Minimized cur{F, trivial_trace(F)};
  while (true) {
    int k = -1, l = -1;
    for (const auto& [kl, e] : cur.obj.d.m)
      if (is_unit_identity(cur.obj, kl.first, kl.second, nullptr)) {
        k = kl.first;
        l = kl.second;
        break;
      }
    if (k < 0) break;
    Minimized step = cancel_pair(cur.obj, k, l);
    cur.trace = chain_traces(cur.trace, step.trace);
    cur.obj = step.obj;
  }
  return cur;
}

int layer_degree(const Cell& c) { return c.c - c.t; }

Peel peel_top(const Object& F) {
  if (F.size() == 0) throw EmptyError("peel_top on the zero object");
  if (F.fl() == Flavor::Mon) throw FlavorError("peel_top expects an equivariant or constructible object");
  int top = INT_MIN;
  for (const auto& c : F.cells()) top = std::max(top, layer_degree(c));
  Peel p;
  std::vector<int> t, r;
  for (int i = 0; i < F.size(); ++i) (layer_degree(F.cells()[i]) == top ? t : r).push_back(i);
  p.order = t;
  p.order.insert(p.order.end(), r.begin(), r.end());
  p.top = sub_object(F, t);
  if (!p.top.d.is_zero()) throw StructuralError("top layer carries a differential");
  p.rest = sub_object(F, r);
  p.connecting = pick(F.d, t, r);
  p.connecting.src = shift_cells(p.rest.cells(), -1);
  p.connecting.deg = {0, 0};
  require_chain_map(shift(p.rest, -1), p.top, p.connecting, "peel connecting map");
  return p;
}

namespace {

// index bookkeeping after removing cells k and l
int after_removal(int i, int k, int l) { return i - (i > k) - (i > l); }

// the xi-coordinate of a degree-one polynomial on the identity of s
Scalar xi_component(const Presentation& P, const Entry& e, const TermKey& idkey) {
  int piv = collapse_pivot(P);
  Scalar out = 0;
  for (const auto& [key, c] : e) {
    if (key.b != idkey.b || key.a != 1 || mono_degree(key.q) != 1) continue;
    if (key.q[piv] == 1) out += c;
  }
  return P.coeff.normalize(out / P.xi[piv]);
}

}  // namespace

Decomposition decompose_single_stratum(const Object& F0) {
  if (F0.fl() != Flavor::Mon) throw FlavorError("decompose_single_stratum expects a monodromic object");
  const Presentation& P = *F0.P();
  Decomposition D;
  if (F0.size() == 0) {
    D.normal = F0;
    D.trace = trivial_trace(F0);
    return D;
  }
  int s = F0.cells()[0].s;
  for (const auto& c : F0.cells())
    if (c.s != s) throw StructuralError("decompose_single_stratum: cells on more than one stratum");
  TermKey idk = identity_key(P, s);

  Minimized cur{F0, trivial_trace(F0)};
  std::vector<int> active(F0.size());
  for (int i = 0; i < F0.size(); ++i) active[i] = i;
  std::vector<std::pair<int, int>> pairs;  // (base, partner)
  auto apply = [&](Minimized step) {
    cur.trace = chain_traces(cur.trace, step.trace);
    cur.obj = step.obj;
  };

  while (!active.empty()) {
    const auto& cells = cur.obj.cells();
    int a1 = active[0];
    for (int i : active)
      if (layer_degree(cells[i]) > layer_degree(cells[a1]) ||
          (layer_degree(cells[i]) == layer_degree(cells[a1]) && i < a1))
        a1 = i;
    const Cell c1 = cells[a1];
    // the column of a1 divided by r, restricted to active rows
    Morphism V = zero_morphism(cur.obj.P(), Flavor::Mon, {{s, c1.c + 1, c1.t + 2}}, cells, {0, 0});
    int k0 = -1;
    for (int k : active) {
      const Entry* e = cur.obj.d.at(k, a1);
      if (!e) continue;
      for (const auto& [key, c] : *e) {
        if (key.a < 1) throw StructuralError("decompose: a1 is not of maximal total degree");
        V.add_term(k, 0, {key.b, key.q, key.a - 1, 0}, c);
        if (k0 < 0 && key.a == 1 && mono_degree(key.q) == 0 && cells[k].c == c1.c + 1 && cells[k].t == c1.t + 2 &&
            P.coeff.is_unit(c))
          k0 = k;
      }
    }
    if (k0 >= 0) {
      // Step 2: (a2', a1) spans a copy of Mon(E_s)
      apply(change_basis(cur.obj, k0, V));
      bool ok = true;
      for (int k : active)
        if (k != k0 && cur.obj.d.at(k, a1)) ok = false;
      for (int k : active)
        if (k != a1 && cur.obj.d.at(k, k0)) ok = false;
      if (!ok) throw StructuralError("decompose: Step 2 pair is not a Mon(E_s) block at " + cell_str(P, c1));
      pairs.push_back({k0, a1});
      active.erase(std::find(active.begin(), active.end(), k0));
      active.erase(std::find(active.begin(), active.end(), a1));
      ++D.step2;
      continue;
    }
    // Step 3: the xi-part of D_2 produces a contractible pair
    if (!P.basis_r_free(P.identity[s])) throw FreeError("stratum " + P.strata[s].id + " is not R-free");
    std::vector<std::pair<int, Scalar>> bprime;
    for (int k : active) {
      if (cells[k].c != c1.c - 1 || layer_degree(cells[k]) != layer_degree(c1) - 1) continue;
      const Entry* e = cur.obj.d.at(k, a1);
      if (!e) continue;
      Scalar b = xi_component(P, *e, idk);
      if (b != 0) bprime.push_back({k, b});
    }
    int istar = -1;
    for (auto& [k, b] : bprime)
      if (istar < 0 && P.coeff.is_unit(b)) istar = k;
    if (istar < 0)
      throw StructuralError("decompose: neither a unit D1 coefficient nor a unit xi-coefficient at " +
                            cell_str(P, c1));
    Morphism V2 = zero_morphism(cur.obj.P(), Flavor::Mon, {cells[istar]}, cells, {0, 0});
    for (auto& [k, b] : bprime) V2.add_term(k, 0, idk, b);
    apply(change_basis(cur.obj, istar, V2));
    Morphism V1 = zero_morphism(cur.obj.P(), Flavor::Mon, {c1}, cur.obj.cells(), {0, 0});
    for (int k : active)
      if (const Entry* e = cur.obj.d.at(k, istar))
        for (const auto& [key, c] : *e) V1.add_term(k, 0, key, c);
    apply(change_basis(cur.obj, a1, V1));
    apply(cancel_pair(cur.obj, a1, istar));
    std::vector<int> na;
    for (int i : active)
      if (i != a1 && i != istar) na.push_back(after_removal(i, a1, istar));
    for (auto& [b, p] : pairs) {
      b = after_removal(b, a1, istar);
      p = after_removal(p, a1, istar);
    }
    active = na;
    ++D.step3;
  }
  std::vector<int> perm;
  for (auto& [b, p] : pairs) {
    perm.push_back(b);
    perm.push_back(p);
    D.bases.push_back(cur.obj.cells()[b]);
  }
  apply(permute_cells(cur.obj, perm));
  D.normal = cur.obj;
  D.trace = cur.trace;
  return D;
}

}  // namespace monocycle
