#include "monocycle/preimage.hpp"

#include "monocycle/errors.hpp"
#include "monocycle/functors.hpp"
#include "monocycle/recollement.hpp"
#include "monocycle/reduction.hpp"

namespace monocycle {

namespace {

std::vector<int> range(int a, int b) {
  std::vector<int> v;
  for (int i = a; i < b; ++i) v.push_back(i);
  return v;
}

// naive projection of a cell list onto the block [r0, r0 + n)
Morphism projection(const PresPtr& P, Flavor fl, const std::vector<Cell>& cells, int r0, int n) {
  std::vector<Cell> dst(cells.begin() + r0, cells.begin() + r0 + n);
  Morphism p = zero_morphism(P, fl, cells, dst, {0, 0});
  place(p, naive_identity(P, fl, dst, dst, {0, 0}), 0, r0);
  return p;
}

MonPreimage leaf(const Object& pair) {
  const Cell& base = pair.cells()[0];
  MonPreimage pre;
  pre.con = parity_object(pair.P(), Flavor::Con, base.s, base.c, base.t);
  Object M = mon(pre.con);
  auto e = verify_equivalence(M, pair, naive_identity(M.P(), Flavor::Mon, M.cells(), pair.cells(), {0, 0}));
  if (!e) throw StructuralError("pair block is not Mon of its base cell");
  pre.equiv = *e;
  return pre;
}

}  // namespace

Morphism mon_preimage_map(const Object& G1, const Object& G2, const Morphism& g) {
  Object M1 = mon(G1), M2 = mon(G2);
  LinearProblem lp(G1.P());
  int f = lp.add_unknown(G1.cells(), G2.cells(), g.deg, Flavor::Con);
  int h = lp.add_unknown(M1.cells(), M2.cells(), {g.deg.i - 1, g.deg.j}, Flavor::Mon);
  lp.add_equation({{f, [&](const Morphism& m) { return d_hom(G1, G2, m); }}},
                  zero_morphism(G1.P(), Flavor::Con, G1.cells(), G2.cells(), {g.deg.i + 1, g.deg.j}));
  lp.add_equation({{f, [&](const Morphism& m) { return mon_map(m); }},
                   {h, [&](const Morphism& m) { return neg(d_hom(M1, M2, m)); }}},
                  g);
  auto sol = lp.solve();
  if (!sol) throw FaithfulnessError("map has no preimage under Mon");
  return (*sol)[0];
}

MonPreimage glue(const Object& T, int nB, const MonPreimage& B, const MonPreimage& A) {
  const int n = T.size();
  Object TB = sub_object(T, range(0, nB)), TA = sub_object(T, range(nB, n));
  Morphism X = sub_block(T.d, 0, nB, nB, n);
  Object MB = mon(B.con), MA = mon(A.con);
  Morphism Y = compose(compose(B.equiv.psi, X), A.equiv.phi);
  Morphism hat = mon_preimage_map(A.con, B.con, Y);
  // G = [[dB, hat], [0, dA]]
  const int gB = B.con.size(), gA = A.con.size();
  std::vector<Cell> gc = B.con.cells();
  gc.insert(gc.end(), A.con.cells().begin(), A.con.cells().end());
  Morphism gd = zero_morphism(T.P(), Flavor::Con, gc, gc, {1, 0});
  place(gd, B.con.d, 0, 0);
  place(gd, hat, 0, gB);
  place(gd, A.con.d, gB, gB);
  MonPreimage out;
  out.con.d = gd;
  check_object(out.con);
  Object MG = mon(out.con);
  // Mon(G) has cells (GB, GA, GB', GA'); regroup as Mon(GB) ++ Mon(GA)
  std::vector<int> perm = range(0, gB);
  for (int i = 0; i < gB; ++i) perm.push_back(gB + gA + i);
  for (int i = 0; i < gA; ++i) perm.push_back(gB + i);
  for (int i = 0; i < gA; ++i) perm.push_back(2 * gB + gA + i);
  Minimized pm = permute_cells(MG, perm);
  const int mB = MB.size();
  Morphism M = sub_block(pm.obj.d, 0, mB, mB, pm.obj.size());
  // K with d(K) = phi_B M - X phi_A closes the square
  Morphism rhs = sub(compose(B.equiv.phi, M), compose(X, A.equiv.phi));
  auto K = find_homotopy(MA, TB, rhs);
  if (!K) throw WitnessError("glue: off-diagonal correction not found");
  Morphism Phi = zero_morphism(T.P(), Flavor::Mon, pm.obj.cells(), T.cells(), {0, 0});
  place(Phi, B.equiv.phi, 0, 0);
  place(Phi, *K, 0, mB);
  place(Phi, A.equiv.phi, nB, mB);
  if (!is_chain_map(pm.obj, T, Phi)) throw WitnessError("glue: assembled map is not a chain map");
  auto e = verify_equivalence(MG, T, compose(Phi, pm.trace.to_min));
  if (!e) throw WitnessError("glue: assembled map is not an equivalence");
  out.equiv = *e;
  out.step2 = B.step2 + A.step2;
  out.step3 = B.step3 + A.step3;
  return out;
}

MonPreimage mon_preimage_single(const Object& F) {
  Decomposition D = decompose_single_stratum(F);
  const int np = static_cast<int>(D.bases.size());
  MonPreimage pre;
  if (np == 0) {
    pre.con = zero_object(F.P(), Flavor::Con);
    Object M = mon(pre.con);
    pre.equiv = identity_equivalence(M);
  } else {
    const Object& N = D.normal;
    pre = leaf(sub_object(N, range(2 * np - 2, 2 * np)));
    for (int i = np - 2; i >= 0; --i) {
      Object T = sub_object(N, range(2 * i, 2 * np));
      pre = glue(T, 2, leaf(sub_object(N, {2 * i, 2 * i + 1})), pre);
    }
  }
  // Mon(G) -> normal -> F
  Equivalence back = inverse_equivalence(trace_equivalence(D.trace));
  pre.equiv = compose_equivalence(pre.equiv, back);
  pre.step2 = D.step2;
  pre.step3 = D.step3;
  return pre;
}

namespace {

// stratum freeness is only needed where Step 3 of the decomposition fires
MonPreimage preimage_rec(const Object& F) {
  const PresPtr& P = F.P();
  bool single = true;
  for (const auto& c : F.cells()) single = single && c.s == F.cells()[0].s;
  if (single) return mon_preimage_single(F);
  std::vector<std::string> U;
  for (int s = 1; s < P->nstrata(); ++s) U.push_back(P->strata[s].id);
  PresPtr PU = open_part(P, U);
  MonPreimage pu = preimage_rec(j_restrict(F, PU));
  Extension ext = j_shriek(pu.con, P);
  Object MP = mon(ext.obj);
  Object jMP = j_restrict(MP, PU);
  Object jF = j_restrict(F, PU);
  // psi: Mon(j_! G_U) -> F restricting to e_U o Mon(unit^-1)
  Morphism target = compose(pu.equiv.phi, mon_map(ext.unit.psi));
  target.src = jMP.cells();
  LinearProblem lp(P);
  int p = lp.add_unknown(MP.cells(), F.cells(), {0, 0}, Flavor::Mon);
  int k = lp.add_unknown(jMP.cells(), jF.cells(), {-1, 0}, Flavor::Mon, PU);
  lp.add_equation({{p, [&](const Morphism& m) { return d_hom(MP, F, m); }}},
                  zero_morphism(P, Flavor::Mon, MP.cells(), F.cells(), {1, 0}));
  lp.add_equation({{p, [&](const Morphism& m) { return j_restrict_map(m, PU); }},
                   {k, [&](const Morphism& m) { return neg(d_hom(jMP, jF, m)); }}},
                  target);
  auto sol = lp.solve();
  if (!sol) throw FaithfulnessError("no map from the extension by zero restricts to the open preimage");
  Morphism psi = (*sol)[0];
  Object Cn = cone(MP, F, psi);  // F ++ MP[1]
  Minimized cm = minimize(Cn);
  const Object& C = cm.obj;
  for (const auto& c : C.cells())
    if (c.s != 0) throw StructuralError("cone of the open comparison is not supported on " + P->strata[0].id);
  Object MP1 = shift(MP, 1);
  Morphism proj = compose(projection(P, Flavor::Mon, Cn.cells(), F.size(), MP.size()), cm.trace.from_min);
  proj.dst = MP1.cells();
  Object T = cocone(C, MP1, proj);  // cells MP ++ C
  MonPreimage pb{ext.obj, identity_equivalence(MP), 0, 0};
  MonPreimage pc = mon_preimage_single(C);
  MonPreimage g = glue(T, MP.size(), pb, pc);
  // T -> F
  Morphism pF = compose(projection(P, Flavor::Mon, Cn.cells(), 0, F.size()), cm.trace.from_min);
  std::optional<Equivalence> eTF;
  for (int sg : {1, -1}) {
    Morphism phi = zero_morphism(P, Flavor::Mon, T.cells(), F.cells(), {0, 0});
    place(phi, psi, 0, 0);
    place(phi, scale(pF, sg), 0, MP.size());
    if (!is_chain_map(T, F, phi)) continue;
    eTF = verify_equivalence(T, F, phi);
    if (eTF) break;
  }
  if (!eTF) throw WitnessError("recollement comparison T -> F is not an equivalence");
  g.equiv = compose_equivalence(g.equiv, *eTF);
  g.step2 = pu.step2 + pc.step2;
  g.step3 = pu.step3 + pc.step3;
  return g;
}

}  // namespace

MonPreimage mon_preimage(const Object& F) {
  if (F.fl() != Flavor::Mon) throw FlavorError("mon_preimage expects a monodromic object");
  if (!F.P()->r_free()) throw FreeError(F.P()->name + " is not R-free");
  // contractible pieces off the closed part would otherwise reach the single-stratum step
  Minimized m = minimize(F);
  if (m.obj.size() == F.size()) return preimage_rec(F);
  MonPreimage r = preimage_rec(m.obj);
  r.equiv = compose_equivalence(r.equiv, inverse_equivalence(trace_equivalence(m.trace)));
  return r;
}

}  // namespace monocycle
