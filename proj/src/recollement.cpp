#include "monocycle/recollement.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "monocycle/errors.hpp"
#include "monocycle/functors.hpp"

namespace monocycle {

PresPtr open_part(const PresPtr& P, const std::vector<std::string>& open) {
  static std::mutex mu;
  static std::map<std::pair<const Presentation*, std::string>, std::pair<PresPtr, PresPtr>> cache;
  std::set<std::string> want(open.begin(), open.end());
  std::string key;
  for (auto& s : want) key += s + ",";
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({P.get(), key});
  if (it != cache.end()) return it->second.second;
  PresPtr R = restrict_to(P, open);
  cache[{P.get(), key}] = {P, R};
  return R;
}

std::vector<std::vector<std::string>> open_chain(const Presentation& P) {
  std::vector<std::vector<std::string>> out;
  for (int k = 0; k <= P.nstrata(); ++k) {
    std::vector<std::string> seg;
    for (int s = k; s < P.nstrata(); ++s) seg.push_back(P.strata[s].id);
    if (k == 0 || k == P.nstrata() || is_declared_open(P, seg)) out.push_back(seg);
  }
  return out;
}

std::vector<std::string> complement(const Presentation& P, const std::vector<std::string>& open) {
  std::set<std::string> in(open.begin(), open.end());
  std::vector<std::string> out;
  for (auto& s : P.strata)
    if (!in.count(s.id)) out.push_back(s.id);
  return out;
}

namespace {

int find_stratum(const Presentation& P, const std::string& id) {
  for (int s = 0; s < P.nstrata(); ++s)
    if (P.strata[s].id == id) return s;
  return -1;
}

int find_basis(const Presentation& P, const std::string& name) {
  for (int b = 0; b < P.nbasis(); ++b)
    if (P.basis[b].name == name) return b;
  return -1;
}

// cells of F kept on Q, with their indices in F
std::pair<std::vector<Cell>, std::vector<int>> map_cells(const Presentation& P, const Presentation& Q,
                                                         const std::vector<Cell>& cells) {
  std::vector<Cell> out;
  std::vector<int> pos(cells.size(), -1);
  for (size_t i = 0; i < cells.size(); ++i) {
    int s = find_stratum(Q, P.strata[cells[i].s].id);
    if (s < 0) continue;
    pos[i] = static_cast<int>(out.size());
    out.push_back({s, cells[i].c, cells[i].t});
  }
  return {out, pos};
}

// rewrites f from presentation P to Q by basis names; terms on vanished cells or basis elements drop
Morphism rename_map(const Morphism& f, const PresPtr& Q) {
  const Presentation& P = *f.P;
  auto [src, spos] = map_cells(P, *Q, f.src);
  auto [dst, dpos] = map_cells(P, *Q, f.dst);
  std::vector<int> bmap(P.nbasis());
  for (int b = 0; b < P.nbasis(); ++b) bmap[b] = find_basis(*Q, P.basis[b].name);
  Morphism r = zero_morphism(Q, f.fl, src, dst, f.deg);
  for (const auto& [kl, e] : f.m) {
    if (dpos[kl.first] < 0 || spos[kl.second] < 0) continue;
    for (const auto& [key, c] : e) {
      if (bmap[key.b] < 0 || Q->killed(bmap[key.b], key.q)) continue;
      r.add_term(dpos[kl.first], spos[kl.second], {bmap[key.b], key.q, key.a, key.e}, c);
    }
  }
  return r;
}

Equivalence rename_equivalence(const Equivalence& e, const PresPtr& Q) {
  return {rename_map(e.phi, Q), rename_map(e.psi, Q), rename_map(e.h_src, Q), rename_map(e.h_dst, Q)};
}

int single_new_stratum(const Presentation& PX, const Presentation& PU) {
  int s = -1;
  for (int t = 0; t < PX.nstrata(); ++t)
    if (find_stratum(PU, PX.strata[t].id) < 0) {
      if (s >= 0) throw ScopeError("extension must add exactly one stratum");
      s = t;
    }
  if (s < 0) throw ScopeError("extension must add exactly one stratum");
  return s;
}

Extension shriek_step(const Object& F, const PresPtr& PX) {
  const Presentation& X = *PX;
  int s = single_new_stratum(X, *F.P());
  Object G = extend_over_closed_stratum(F, PX);
  // i^* of the parity object underlying G, with its unit map
  std::vector<Cell> icells;
  Morphism u = zero_morphism(PX, G.fl(), G.cells(), {}, {0, 0});
  std::vector<std::tuple<int, int, int>> uent;  // (icell, gcell, basis)
  for (int l = 0; l < G.size(); ++l) {
    const Cell& c = G.cells()[l];
    if (c.s == s) {
      uent.push_back({static_cast<int>(icells.size()), l, X.identity[s]});
      icells.push_back(c);
      continue;
    }
    for (int a : X.homs(c.s, s)) {
      int d = X.basis[a].deg;
      uent.push_back({static_cast<int>(icells.size()), l, a});
      icells.push_back({s, c.c - d, c.t - d});
    }
  }
  u.dst = icells;
  for (auto& [k, l, a] : uent) u.add_term(k, l, {a, X.zero_mono(), 0, 0}, 1);
  LinearProblem lp(PX);
  int x = lp.add_unknown(icells, icells, {1, 0}, G.fl());
  lp.add_equation({{x, [&](const Morphism& m) { return compose(m, u); }}}, compose(u, G.d));
  auto sol = lp.solve();
  if (!sol) throw LiftError("no differential on i^* makes the unit a chain map");
  Object I;
  I.d = (*sol)[0];
  check_object(I);
  require_chain_map(G, I, u, "unit G -> i_* i^* G");
  Object C = cocone(G, I, u);
  Minimized m = minimize(C);
  Extension ext;
  ext.obj = m.obj;
  PresPtr PU = F.P();
  Object jC = j_restrict(C, PU);
  if (!(jC.cells() == F.cells()) || jC.d.m != F.d.m) throw StructuralError("j^* of the cocone differs from the input");
  ext.unit.phi = j_restrict_map(m.trace.to_min, PU);
  ext.unit.psi = j_restrict_map(m.trace.from_min, PU);
  ext.unit.h_src = j_restrict_map(m.trace.homotopy, PU);
  ext.unit.h_dst = zero_morphism(PU, F.fl(), ext.unit.phi.dst, ext.unit.phi.dst, {-1, 0});
  return ext;
}

}  // namespace

Object j_restrict(const Object& F, const PresPtr& PU) {
  Object G;
  G.d = rename_map(F.d, PU);
  return G;
}

Morphism j_restrict_map(const Morphism& f, const PresPtr& PU) { return rename_map(f, PU); }

Object i_push(const Object& F, const std::vector<std::string>& closed) {
  std::set<std::string> Z(closed.begin(), closed.end());
  for (const auto& c : F.cells())
    if (!Z.count(F.P()->strata[c.s].id)) throw ScopeError("object is not supported on the closed union");
  return F;
}

Object extend_over_closed_stratum(const Object& F, const PresPtr& PX) {
  const Presentation& X = *PX;
  int s = single_new_stratum(X, *F.P());
  Object Ft;
  Ft.d = rename_map(F.d, PX);
  Morphism D = curvature_defect(Ft);
  const Flavor fl = F.fl();
  std::vector<Cell> icells;
  Morphism eps = zero_morphism(PX, fl, {}, Ft.cells(), {1, 0});
  std::vector<std::tuple<int, int, int>> ent;
  for (int k = 0; k < Ft.size(); ++k) {
    const Cell& c = Ft.cells()[k];
    for (int b : X.homs(s, c.s)) {
      int d = X.basis[b].deg;
      ent.push_back({k, static_cast<int>(icells.size()), b});
      icells.push_back({s, c.c + d - 1, c.t + d});
    }
  }
  if (icells.empty()) {
    if (!D.is_zero()) throw LiftError("lift has curvature but nothing to absorb it");
    check_object(Ft);
    return Ft;
  }
  eps.src = icells;
  for (auto& [k, l, b] : ent) eps.add_term(k, l, {b, X.zero_mono(), 0, 0}, 1);
  LinearProblem lp(PX);
  int x = lp.add_unknown(Ft.cells(), icells, {1, 0}, fl);
  int y = lp.add_unknown(icells, icells, {1, 0}, fl);
  lp.add_equation({{x, [&](const Morphism& m) { return compose(eps, m); }}}, neg(D));
  lp.add_equation({{y, [&](const Morphism& m) { return compose(eps, m); }}}, neg(compose(Ft.d, eps)));
  auto sol = lp.solve();
  if (!sol) throw LiftError("cannot lift over stratum " + X.strata[s].id);
  std::vector<Cell> all = Ft.cells();
  all.insert(all.end(), icells.begin(), icells.end());
  Morphism d = zero_morphism(PX, fl, all, all, {1, 0});
  place(d, Ft.d, 0, 0);
  place(d, eps, 0, Ft.size());
  place(d, (*sol)[0], Ft.size(), 0);
  place(d, (*sol)[1], Ft.size(), Ft.size());
  Object G;
  G.d = d;
  if (!curvature_defect(G).is_zero()) throw LiftError("lift over stratum " + X.strata[s].id + " stays curved");
  return G;
}

Extension j_shriek(const Object& F, const PresPtr& PX) {
  std::vector<std::string> U;
  for (const auto& s : F.P()->strata) U.push_back(s.id);
  std::set<std::string> want(U.begin(), U.end());
  auto chain = open_chain(*PX);
  int at = -1;
  for (int i = 0; i < static_cast<int>(chain.size()); ++i)
    if (std::set<std::string>(chain[i].begin(), chain[i].end()) == want) at = i;
  if (at < 0) throw ScopeError("open union is not a final segment of the declared filtration");
  Extension ext{F, identity_equivalence(F)};
  for (int i = at - 1; i >= 0; --i) {
    PresPtr PV = open_part(PX, chain[i]);
    Extension step = shriek_step(ext.obj, PV);
    Equivalence onU = rename_equivalence(step.unit, F.P());
    ext.unit = compose_equivalence(ext.unit, onU);
    ext.obj = step.obj;
  }
  return ext;
}

Extension j_star(const Object& F, const PresPtr& PX) {
  Extension e = j_shriek(verdier(F), PX);
  Extension out;
  out.obj = verdier(e.obj);
  Object jobj = j_restrict(out.obj, F.P());
  Morphism back = rename_map(verdier_map(e.unit.phi), F.P());
  back.src = jobj.cells();
  auto eq = verify_equivalence(jobj, F, back);
  if (!eq) throw WitnessError("dual unit of j_* is not an equivalence");
  out.unit = inverse_equivalence(*eq);
  return out;
}

Morphism extend_map(const Object& A, const Object& F, const PresPtr& PU, const Morphism& target) {
  Object jA = j_restrict(A, PU), jF = j_restrict(F, PU);
  LinearProblem lp(F.P());
  int p = lp.add_unknown(A.cells(), F.cells(), {0, 0}, F.fl());
  int k = lp.add_unknown(jA.cells(), jF.cells(), {-1, 0}, F.fl(), PU);
  lp.add_equation({{p, [&](const Morphism& m) { return d_hom(A, F, m); }}},
                  zero_morphism(F.P(), F.fl(), A.cells(), F.cells(), {1, 0}));
  lp.add_equation({{p, [&](const Morphism& m) { return j_restrict_map(m, PU); }},
                   {k, [&](const Morphism& m) { return neg(d_hom(jA, jF, m)); }}},
                  target);
  auto sol = lp.solve();
  if (!sol) throw LiftError("no map extends the adjunction on the open part");
  return (*sol)[0];
}

Morphism canonical_map(const Extension& shriek, const Extension& star, const PresPtr& PU) {
  Morphism t = compose(star.unit.phi, shriek.unit.psi);
  return extend_map(shriek.obj, star.obj, PU, t);
}

namespace {

PresPtr open_of(const Object& F, const std::vector<std::string>& open) { return open_part(F.P(), open); }

}  // namespace

Morphism shriek_counit(const Object& F, const std::vector<std::string>& open, Extension* out) {
  PresPtr PU = open_of(F, open);
  Extension ext = j_shriek(j_restrict(F, PU), F.P());
  Morphism c = extend_map(ext.obj, F, PU, ext.unit.psi);
  if (out) *out = ext;
  return c;
}

Morphism star_unit(const Object& F, const std::vector<std::string>& open, Extension* out) {
  PresPtr PU = open_of(F, open);
  Extension ext = j_star(j_restrict(F, PU), F.P());
  Morphism u = extend_map(F, ext.obj, PU, ext.unit.phi);
  if (out) *out = ext;
  return u;
}

namespace {

SupportedObject certify(const Object& C, const std::vector<std::string>& closed, const Triangle& tr) {
  SupportedObject S;
  S.obj = C;
  S.closed = closed;
  S.gluing = tr;
  PresPtr PU = open_part(C.P(), complement(*C.P(), closed));
  Object jC = j_restrict(C, PU);
  auto h = contracting_homotopy(jC);
  if (!h) throw WitnessError("restriction to the open part is not contractible");
  S.certificate = *h;
  return S;
}

}  // namespace

SupportedObject i_upper_star(const Object& F, const std::vector<std::string>& closed) {
  auto open = complement(*F.P(), closed);
  Extension ext;
  Morphism c = shriek_counit(F, open, &ext);
  Triangle tr = cone_triangle(ext.obj, F, c);
  return certify(tr.C, closed, tr);
}

SupportedObject i_upper_shriek(const Object& F, const std::vector<std::string>& closed) {
  auto open = complement(*F.P(), closed);
  Extension ext;
  Morphism u = star_unit(F, open, &ext);
  Object C = cocone(F, ext.obj, u);
  Triangle tr = cone_triangle(F, ext.obj, u);
  return certify(C, closed, tr);
}

bool verify_support(const SupportedObject& S) {
  PresPtr PU = open_part(S.obj.P(), complement(*S.obj.P(), S.closed));
  Object jC = j_restrict(S.obj, PU);
  if (jC.size() == 0) return true;
  return d_hom(jC, jC, S.certificate) == identity(jC);
}

Purified support_purify(const SupportedObject& S) {
  Purified p;
  Minimized m = minimize(S.obj);
  p.obj = m.obj;
  p.trace = m.trace;
  std::set<std::string> Z(S.closed.begin(), S.closed.end());
  p.pure = true;
  for (const auto& c : m.obj.cells())
    if (!Z.count(m.obj.P()->strata[c.s].id)) {
      p.pure = false;
      p.diagnostic = "minimal model keeps a cell " + cell_str(*m.obj.P(), c) + " off the closed union";
      break;
    }
  return p;
}

}  // namespace monocycle
