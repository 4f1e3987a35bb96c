#include "monocycle/nearby.hpp"

#include <algorithm>
#include <climits>
#include <set>

#include "monocycle/errors.hpp"
#include "monocycle/functors.hpp"
#include "monocycle/preimage.hpp"
#include "monocycle/recollement.hpp"
#include "monocycle/reduction.hpp"

namespace monocycle {

PresPtr generic_part(const PresPtr& P) {
  if (!P->fdatum) throw ScopeError(P->name + " has no f-datum");
  return open_part(P, P->fdatum->xeta);
}

std::vector<std::string> special_strata(const Presentation& P) {
  if (!P.fdatum) throw ScopeError(P.name + " has no f-datum");
  return P.fdatum->x0;
}

std::string checks_str(const std::vector<Check>& cs) {
  std::string out;
  for (const auto& c : cs) {
    out += (c.ok ? "PASS " : "FAIL ") + c.name;
    if (!c.detail.empty()) out += " (" + c.detail + ")";
    out += "\n";
  }
  return out;
}

namespace {

// r * id : F<-2> -> F (or F -> F<2>), as a map between the given cell lists
Morphism r_identity(const PresPtr& P, const std::vector<Cell>& src, const std::vector<Cell>& dst) {
  Morphism r = r_multiple(naive_identity(P, Flavor::Mon, src, dst, {0, 2}), 1);
  r.deg = {0, 0};
  return r;
}

Object purified(const SupportedObject& S) {
  Purified p = support_purify(S);
  if (!p.pure) throw PurificationError(p.diagnostic + "\n" + object_str(p.obj));
  return p.obj;
}

Check iso_check(const std::string& name, const Object& A, const Object& B) {
  Check c{name, false, ""};
  Object a = minimize(A).obj, b = minimize(B).obj;
  if (a.size() != b.size()) {
    c.detail = "minimal models have " + std::to_string(a.size()) + " and " + std::to_string(b.size()) + " cells";
    return c;
  }
  c.ok = find_isomorphism(a, b).has_value();
  if (!c.ok) c.detail = "no isomorphism found";
  return c;
}

Check homotopic_check(const std::string& name, const Object& F, const Object& G, const Morphism& f, const Morphism& g) {
  Check c{name, false, ""};
  c.ok = find_homotopy_between(F, G, f, g).has_value();
  if (!c.ok) c.detail = "difference is not null-homotopic";
  return c;
}

Morphism power(const Object& F, const Morphism& N, int k) {
  Morphism out = identity(F);
  for (int i = 0; i < k; ++i) out = compose(twist_map(N, 2 * i), out);
  return out;
}

int twist_spread(const Object& F) {
  if (F.size() == 0) return 0;
  int lo = INT_MAX, hi = INT_MIN;
  for (const auto& c : F.cells()) {
    lo = std::min(lo, c.t);
    hi = std::max(hi, c.t);
  }
  return hi - lo;
}

void require_generic(const Object& F, const PresPtr& P) {
  PresPtr PU = generic_part(P);
  std::set<std::string> a, b(P->fdatum->xeta.begin(), P->fdatum->xeta.end());
  for (const auto& s : F.P()->strata) a.insert(s.id);
  if (a != b) throw ScopeError("input must live on the generic part of " + P->name);
}

}  // namespace

bool triangle_verifies(const Object& A, const Object& B, const Object& C, const Morphism& f, const Morphism& g) {
  Triangle T = cone_triangle(A, B, f);
  LinearProblem lp(C.P());
  int x = lp.add_unknown(T.C.cells(), C.cells(), {0, 0}, C.fl());
  lp.add_equation({{x, [&](const Morphism& m) { return d_hom(T.C, C, m); }}},
                  zero_morphism(C.P(), C.fl(), T.C.cells(), C.cells(), {1, 0}));
  lp.add_equation({{x, [&](const Morphism& m) { return compose(m, T.g); }}}, g);
  auto sol = lp.solve();
  if (!sol) return false;
  return verify_equivalence(T.C, C, (*sol)[0]).has_value();
}

NearbyOutput psi(const Object& F, const PresPtr& P) {
  require_generic(F, P);
  const auto x0 = special_strata(*P);
  const PresPtr& PU = F.P();
  NearbyOutput out;
  out.exactness = check_j_exactness(P, {{"input", F}});
  Object J = jordan(F);
  // i^* j_* J(F), then Mon^-1 and <-2>
  Extension Es = j_star(J, P);
  Object S = purified(i_upper_star(Es.obj, x0));
  MonPreimage G = mon_preimage(S);
  Morphism Nr = r_identity(P, S.cells(), twist(S, 2).cells());
  Object G2 = twist(G.con, 2);
  Morphism NG = mon_preimage_map(G.con, G2, compose(twist_map(G.equiv.psi, 2), compose(Nr, G.equiv.phi)));
  Object Psi0 = twist(G.con, -2);
  Morphism N0 = twist_map(NG, -2);
  Minimized m = minimize(Psi0);
  out.psi = m.obj;
  out.N = compose(twist_map(m.trace.to_min, 2), compose(N0, m.trace.from_min));
  Object psi2 = twist(out.psi, 2);
  out.N_homotopy = find_homotopy(out.psi, psi2, out.N, &out.N_refutation);
  // the i^! j_! route
  Extension Esh = j_shriek(J, P);
  Object S2 = purified(i_upper_shriek(Esh.obj, x0));
  MonPreimage G2r = mon_preimage(S2);
  out.route_shriek = minimize(shift(twist(G2r.con, -2), 1)).obj;
  out.checks.push_back(iso_check("psi_formula_routes_agree", out.psi, out.route_shriek));
  // the triangles with i^* j_* For and i^! j_! For
  Object Fc = forget(F);
  out.star_for = purified(i_upper_star(j_star(Fc, P).obj, x0));
  out.shriek_for = purified(i_upper_shriek(j_shriek(Fc, P).obj, x0));
  out.checks.push_back(iso_check("cone_N_is_istar_jstar_for", cone(out.psi, psi2, out.N), out.star_for));
  out.checks.push_back(iso_check("cocone_N_is_ishriek_jshriek_for", cocone(out.psi, psi2, out.N), out.shriek_for));
  int k = twist_spread(out.psi) / 2 + 1;
  out.checks.push_back({"N_nilpotent", null_homotopic(out.psi, twist(out.psi, 2 * k), power(out.psi, out.N, k)),
                        "k=" + std::to_string(k)});
  (void)PU;
  return out;
}

MaxExtOutput xi(const Object& F, const PresPtr& P) {
  require_generic(F, P);
  if (!is_perverse(F)) throw PerversityError("input is not perverse");
  const PresPtr& PU = F.P();
  MaxExtOutput out;
  Object J = jordan(F);
  Extension Esh = j_shriek(J, P), Est = j_star(J, P);
  Morphism can = canonical_map(Esh, Est, PU);
  Object A = twist(Esh.obj, -2);
  const Object& B = Est.obj;
  Morphism n = r_multiple(can, 1);
  n.src = A.cells();
  n.deg = {0, 0};
  Object Xt = cone(A, B, n);        // B ++ A[1]
  Object K = cone(Esh.obj, B, can);  // B ++ j_!J[1]
  Object Km = twist(K, -2);          // B<-2> ++ A[1]
  const int nb = B.size();
  Object A1 = shift(A, 1), E1 = shift(Esh.obj, 1);
  Morphism bm = zero_morphism(P, Flavor::Mon, Xt.cells(), K.cells(), {0, 0});
  place(bm, identity(B), 0, 0);
  place(bm, r_identity(P, A1.cells(), E1.cells()), nb, nb);
  Morphism bp = zero_morphism(P, Flavor::Mon, Km.cells(), Xt.cells(), {0, 0});
  place(bp, r_identity(P, twist(B, -2).cells(), B.cells()), 0, 0);
  place(bp, identity(A1), nb, nb);
  require_chain_map(Xt, K, bm, "beta_minus on the monodromic side");
  require_chain_map(Km, Xt, bp, "beta_plus on the monodromic side");
  MonPreimage GX = mon_preimage(Xt), GK = mon_preimage(K);
  Object psi2 = GK.con, psi0 = twist(GK.con, -2);
  Morphism Kphi = twist_map(GK.equiv.phi, -2);
  Morphism bmin = mon_preimage_map(GX.con, psi2, compose(GK.equiv.psi, compose(bm, GX.equiv.phi)));
  Morphism bplus = mon_preimage_map(psi0, GX.con, compose(GX.equiv.psi, compose(bp, Kphi)));
  Morphism Nmon = r_identity(P, Km.cells(), K.cells());
  Morphism N = mon_preimage_map(psi0, psi2, compose(GK.equiv.psi, compose(Nmon, Kphi)));
  // minimal models
  Minimized mX = minimize(GX.con), mK = minimize(psi2);
  out.xi = mX.obj;
  out.psi2 = mK.obj;
  out.psi = twist(mK.obj, -2);
  Morphism fromK = twist_map(mK.trace.from_min, -2);
  out.beta_minus = compose(mK.trace.to_min, compose(bmin, mX.trace.from_min));
  out.beta_plus = compose(mX.trace.to_min, compose(bplus, fromK));
  out.N = compose(mK.trace.to_min, compose(N, fromK));
  out.checks.push_back(homotopic_check("beta_minus_beta_plus_is_N", out.psi, out.psi2,
                                       compose(out.beta_minus, out.beta_plus), out.N));
  // alpha maps through the adjunctions
  Object Fc = forget(F);
  out.shriek = j_shriek(Fc, P);
  out.star = j_star(Fc, P);
  Object jX = j_restrict(out.xi, PU);
  auto e = find_isomorphism(Fc, jX);
  out.checks.push_back({"generic_restriction_is_for", e.has_value(), ""});
  if (!e) throw WitnessError("j^* of the maximal extension is not For(F)");
  out.alpha_minus = extend_map(out.shriek.obj, out.xi, PU, compose(e->phi, out.shriek.unit.psi));
  out.alpha_plus = extend_map(out.xi, out.star.obj, PU, compose(out.star.unit.phi, e->psi));
  out.canonical = canonical_map(out.shriek, out.star, PU);
  Morphism aa = compose(out.alpha_plus, out.alpha_minus);
  out.alpha_exact = aa == out.canonical;
  out.checks.push_back(homotopic_check("alpha_plus_alpha_minus_is_canonical", out.shriek.obj, out.star.obj, aa,
                                       out.canonical));
  out.checks.push_back({"triangle_shriek", triangle_verifies(out.shriek.obj, out.xi, out.psi2, out.alpha_minus,
                                                             out.beta_minus), ""});
  out.checks.push_back({"triangle_star", triangle_verifies(out.psi, out.xi, out.star.obj, out.beta_plus,
                                                           out.alpha_plus), ""});
  return out;
}

Object totalize_three_term(const Object& Cm, const Object& C0, const Object& C1, const Morphism& a, const Morphism& b,
                           const Morphism& h) {
  require_chain_map(Cm, C0, a, "first map of the three-term complex");
  require_chain_map(C0, C1, b, "second map of the three-term complex");
  if (!(d_hom(Cm, C1, h) == compose(b, a))) throw WitnessError("homotopy does not witness the zero composite");
  Object X = cone(Cm, C0, a);  // C0 ++ Cm[1]
  Object Cm1 = shift(Cm, 1);
  for (int sg : {1, -1})
    for (bool flip : {false, true}) {
      Morphism hp = flip ? s_sign(h) : h;
      hp = scale(hp, sg);
      hp.src = Cm1.cells();
      hp.deg = {0, 0};
      Morphism g = zero_morphism(X.P(), X.fl(), X.cells(), C1.cells(), {0, 0});
      place(g, b, 0, 0);
      place(g, hp, 0, C0.size());
      if (is_chain_map(X, C1, g)) return cocone(X, C1, g);  // C1[-1] ++ C0 ++ Cm[1]
    }
  throw WitnessError("no sign makes the totalization a chain complex");
}

VanCycOutput phi(const Object& F) {
  const PresPtr& P = F.P();
  PresPtr PU = generic_part(P);
  const auto x0 = special_strata(*P);
  if (F.fl() != Flavor::Con) throw FlavorError("phi expects a constructible object");
  Object jF = j_restrict(F, PU);
  Object Fe;
  try {
    Fe.d = with_flavor(jF.d, Flavor::Eq);
    check_object(Fe);
  } catch (const Error&) {
    throw PerversityError("generic restriction is not equivariant");
  }
  if (!is_perverse(Fe) || !is_perverse(F)) throw PerversityError("input is not perverse");
  MaxExtOutput X = xi(Fe, P);
  VanCycOutput out;
  out.psi = X.psi;
  out.psi2 = X.psi2;
  out.N = X.N;
  Morphism gm = extend_map(X.shriek.obj, F, PU, X.shriek.unit.psi);
  Morphism gp = extend_map(F, X.star.obj, PU, X.star.unit.phi);
  Object C0 = direct_sum(X.xi, F);
  const Object& Cm = X.shriek.obj;
  const Object& C1 = X.star.obj;
  Morphism a = zero_morphism(P, Flavor::Con, Cm.cells(), C0.cells(), {0, 0});
  place(a, X.alpha_minus, 0, 0);
  place(a, gm, X.xi.size(), 0);
  Morphism b = zero_morphism(P, Flavor::Con, C0.cells(), C1.cells(), {0, 0});
  place(b, X.alpha_plus, 0, 0);
  place(b, neg(gp), 0, X.xi.size());
  auto h = find_homotopy(Cm, C1, compose(b, a));
  if (!h) throw WitnessError("the three-term composite is not null-homotopic");
  out.total = totalize_three_term(Cm, C0, C1, a, b, *h);
  Minimized mT = minimize(out.total);
  for (const auto& c : mT.obj.cells())
    if (!std::count(x0.begin(), x0.end(), P->strata[c.s].id))
      throw PurificationError("vanishing cycles keep a cell off the special fiber\n" + object_str(mT.obj));
  out.phi = mT.obj;
  const int n1 = C1.size(), n0 = C0.size(), nT = out.total.size();
  // can: Psi -> Tot with C0-part [beta_+; 0]
  Morphism bp0 = zero_morphism(P, Flavor::Con, X.psi.cells(), C0.cells(), {0, 0});
  place(bp0, X.beta_plus, 0, 0);
  {
    LinearProblem lp(P);
    int x = lp.add_unknown(X.psi.cells(), out.total.cells(), {0, 0}, Flavor::Con);
    lp.add_equation({{x, [&](const Morphism& m) { return d_hom(X.psi, out.total, m); }}},
                    zero_morphism(P, Flavor::Con, X.psi.cells(), out.total.cells(), {1, 0}));
    lp.add_equation({{x, [&](const Morphism& m) { return sub_block(m, n1, n1 + n0, 0, X.psi.size()); }}}, bp0);
    lp.add_equation({{x, [&](const Morphism& m) { return sub_block(m, n1 + n0, nT, 0, X.psi.size()); }}},
                    zero_morphism(P, Flavor::Con, X.psi.cells(), shift(Cm, 1).cells(), {0, 0}));
    auto sol = lp.solve();
    if (!sol) throw WitnessError("can does not extend to the totalization");
    out.can = compose(mT.trace.to_min, (*sol)[0]);
  }
  // var: Tot -> Psi<2> with C0-part [beta_-, 0]
  Morphism bm0 = zero_morphism(P, Flavor::Con, C0.cells(), X.psi2.cells(), {0, 0});
  place(bm0, X.beta_minus, 0, 0);
  {
    LinearProblem lp(P);
    int x = lp.add_unknown(out.total.cells(), X.psi2.cells(), {0, 0}, Flavor::Con);
    lp.add_equation({{x, [&](const Morphism& m) { return d_hom(out.total, X.psi2, m); }}},
                    zero_morphism(P, Flavor::Con, out.total.cells(), X.psi2.cells(), {1, 0}));
    lp.add_equation({{x, [&](const Morphism& m) { return sub_block(m, 0, X.psi2.size(), n1, n1 + n0); }}}, bm0);
    lp.add_equation({{x, [&](const Morphism& m) { return sub_block(m, 0, X.psi2.size(), 0, n1); }}},
                    zero_morphism(P, Flavor::Con, shift(C1, -1).cells(), X.psi2.cells(), {0, 0}));
    auto sol = lp.solve();
    if (!sol) throw WitnessError("var does not extend to the totalization");
    out.var = compose((*sol)[0], mT.trace.from_min);
  }
  out.checks.push_back(homotopic_check("var_can_is_N", out.psi, out.psi2, compose(out.var, out.can), out.N));
  Object iF = purified(i_upper_star(F, x0));
  Object iFs = purified(i_upper_shriek(F, x0));
  out.checks.push_back(iso_check("cone_can_is_istar", cone(out.psi, out.phi, out.can), iF));
  out.checks.push_back(iso_check("cocone_var_is_ishriek", cocone(out.phi, out.psi2, out.var), iFs));
  out.checks.push_back({"phi_perverse", is_perverse(out.phi), interval_str(perverse_degrees(out.phi))});
  return out;
}

}  // namespace monocycle
