#include "monocycle/functors.hpp"

#include "monocycle/errors.hpp"

namespace monocycle {

Morphism transport(const Morphism& f, const PresPtr& Q, const std::vector<Cell>& src, const std::vector<Cell>& dst,
                   const TermMap& term_map, Flavor fl) {
  Morphism r = zero_morphism(Q, fl, src, dst, f.deg);
  for (const auto& [kl, e] : f.m)
    for (const auto& [key, c] : e)
      for (const auto& [nk, nc] : term_map(key)) r.add_term(kl.first, kl.second, nk, c * nc);
  return r;
}

Object forget(const Object& F) {
  if (F.fl() != Flavor::Eq) throw FlavorError("forget expects an equivariant object");
  Object G = F;
  G.d.fl = Flavor::Con;
  return G;
}

Morphism forget_map(const Morphism& f) {
  if (f.fl != Flavor::Eq) throw FlavorError("forget expects an equivariant morphism");
  Morphism g = f;
  g.fl = Flavor::Con;
  return g;
}

std::vector<Cell> mon_cells(const std::vector<Cell>& c) {
  std::vector<Cell> r = c;
  for (const auto& x : c) r.push_back({x.s, x.c - 1, x.t - 2});
  return r;
}

namespace {
// splits f = f0 + xibar f1 into its two parts, f1 keeping keys with e = 0
std::pair<Morphism, Morphism> split_xibar(const Morphism& f) {
  Morphism f0 = zero_morphism(f.P, Flavor::Mon, f.src, f.dst, f.deg);
  Morphism f1 = f0;
  for (const auto& [kl, e] : f.m)
    for (const auto& [key, c] : e) {
      TermKey k = key;
      k.e = 0;
      (key.e ? f1 : f0).add_term(kl.first, kl.second, k, c);
    }
  return {f0, f1};
}
}  // namespace

Morphism mon_map(const Morphism& f) {
  if (f.fl == Flavor::Mon) throw FlavorError("mon expects a constructible morphism");
  auto [f0, f1] = split_xibar(f);
  int p = f.deg.i;
  Morphism r = zero_morphism(f.P, Flavor::Mon, mon_cells(f.src), mon_cells(f.dst), f.deg);
  int ns = static_cast<int>(f.src.size()), nd = static_cast<int>(f.dst.size());
  place(r, f0, 0, 0);
  place(r, (p % 2 == 0) ? neg(f1) : f1, 0, ns);
  place(r, (p % 2 == 0) ? f0 : neg(f0), nd, ns);
  return r;
}

Object mon(const Object& F) {
  if (F.fl() == Flavor::Mon) throw FlavorError("mon expects a constructible object");
  Object M;
  M.d = mon_map(F.d);
  const Presentation& P = *F.P();
  auto xt = xi_terms(P);
  int n = F.size();
  for (int i = 0; i < n; ++i) {
    int s = F.cells()[i].s;
    M.d.add_term(i, n + i, {P.identity[s], P.zero_mono(), 1, 0}, 1);
    for (auto& [m, x] : xt) M.d.add_term(n + i, i, {P.identity[s], m, 0, 0}, x);
  }
  check_object(M);
  return M;
}

Object coi(const Object& F) {
  if (F.fl() != Flavor::Mon) throw FlavorError("coi expects a monodromic object");
  Object G;
  G.d = coi_map(F.d);
  check_object(G);
  return G;
}

Morphism coi_map(const Morphism& f) {
  Morphism r = zero_morphism(f.P, Flavor::Eq, f.src, f.dst, f.deg);
  for (const auto& [kl, e] : f.m)
    for (const auto& [key, c] : e)
      if (key.a == 0) r.add_term(kl.first, kl.second, key, c);
  return r;
}

std::vector<Cell> dual_cells(const Presentation& P, Flavor fl, const std::vector<Cell>& c) {
  if (!P.has_duality) throw DualityError(P.name + " carries no duality data");
  std::vector<Cell> r;
  for (const auto& x : c) {
    int s = P.dual_object[x.s];
    if (fl == Flavor::Mon) r.push_back({s, -x.c - 1, -x.t - 2});
    else r.push_back({s, -x.c, -x.t});
  }
  return r;
}

Morphism verdier_map(const Morphism& f) {
  const Presentation& P = *f.P;
  auto src = dual_cells(P, f.fl, f.dst), dst = dual_cells(P, f.fl, f.src);
  Morphism r = zero_morphism(f.P, f.fl, src, dst, f.deg);
  for (const auto& [kl, e] : f.m)
    for (const auto& [key, c] : e) {
      auto [b, sg] = P.dual_basis[key.b];
      Scalar v = c * sg;
      if (key.e && (hom_part_degree(P, f.src[kl.second], f.dst[kl.first], key) & 1)) v = -v;
      r.add_term(kl.second, kl.first, {b, key.q, key.a, key.e}, v);
    }
  return r;
}

Object verdier(const Object& F) {
  Object D;
  D.d = verdier_map(F.d);
  check_object(D);
  return D;
}

namespace {
// a diagonal map between objects with equal strata, signed by a per-cell rule
Morphism signed_diagonal(const Object& A, const Object& B, const std::function<int(int)>& sign) {
  Morphism f = zero_morphism(A.P(), A.fl(), A.cells(), B.cells(), {0, 0});
  for (int i = 0; i < A.size(); ++i) f.add_term(i, i, identity_key(*A.P(), A.cells()[i].s), sign(i));
  return f;
}
}  // namespace

Object inv(const Object& F) { return verdier(coi(verdier(F))); }

Morphism inv_coi_witness(const Object& F) {
  Object I = inv(F);
  Object C = shift(twist(coi(F), 2), -1);
  const Presentation& P = *F.P();
  std::vector<std::function<int(int)>> rules = {
      [&](int k) { return ((F.cells()[k].c + P.strata[F.cells()[k].s].dim) % 2) ? -1 : 1; },
      [&](int k) { return (F.cells()[k].c % 2) ? -1 : 1; },
      [&](int k) { return (P.strata[F.cells()[k].s].dim % 2) ? -1 : 1; },
      [&](int) { return 1; },
  };
  for (auto& rule : rules) {
    for (int flip : {1, -1}) {
      Morphism w = signed_diagonal(I, C, [&](int k) { return flip * rule(k); });
      if (is_chain_map(I, C, w)) return w;
    }
  }
  throw WitnessError("no signed identity realizes Inv(F) = Coi(F)<2>[-1]");
}

Morphism mon_dual_witness(const Object& F) {
  Object A = mon(verdier(F));
  Object B = verdier(mon(F));
  int n = F.size();
  const Presentation& P = *F.P();
  // blocks are swapped: the first half of A matches the second half of B
  std::vector<std::function<int(int)>> rules = {
      [&](int) { return 1; },
      [&](int k) { return (F.cells()[k].c % 2) ? -1 : 1; },
      [&](int k) { return ((F.cells()[k].c + P.strata[F.cells()[k].s].dim) % 2) ? -1 : 1; },
      [&](int k) { return (P.strata[F.cells()[k].s].dim % 2) ? -1 : 1; },
  };
  for (auto& r0 : rules)
    for (auto& r1 : rules)
      for (int s1 : {1, -1}) {
        Morphism w = zero_morphism(A.P(), Flavor::Mon, A.cells(), B.cells(), {0, 0});
        for (int k = 0; k < n; ++k) {
          w.add_term(n + k, k, identity_key(P, A.cells()[k].s), r0(k));
          w.add_term(k, n + k, identity_key(P, A.cells()[n + k].s), s1 * r1(k));
        }
        if (is_chain_map(A, B, w)) return w;
      }
  throw WitnessError("no signed block swap realizes Mon D = D Mon");
}

Object jordan(const Object& F) {
  if (F.fl() != Flavor::Eq) throw FlavorError("jordan expects an equivariant object");
  if (!F.P()->r_trivial()) throw TrivialityError(F.P()->name + " is not R-trivial");
  Object J = F;
  J.d.fl = Flavor::Mon;
  check_object(J);
  return J;
}

Morphism jordan_map(const Morphism& f) {
  if (!f.P->r_trivial()) throw TrivialityError(f.P->name + " is not R-trivial");
  Morphism g = f;
  g.fl = Flavor::Mon;
  return g;
}

Object jordan_n(const Object& F, int n) {
  Object J = jordan(F);
  Object Jt = twist(J, -2 * n);
  Morphism rn = r_multiple(naive_identity(J.P(), Flavor::Mon, Jt.cells(), J.cells(), {0, 2 * n}), n);
  rn.deg = {0, 0};
  return cone(Jt, J, rn);
}

JordanTriangle jordan_triangle(const Object& F, int n, int m) {
  JordanTriangle T;
  T.A = twist(jordan_n(F, n), -2 * m);
  T.B = jordan_n(F, n + m);
  T.C = jordan_n(F, m);
  int k = F.size();
  auto P = F.P();
  T.f = zero_morphism(P, Flavor::Mon, T.A.cells(), T.B.cells(), {0, 0});
  T.g = zero_morphism(P, Flavor::Mon, T.B.cells(), T.C.cells(), {0, 0});
  for (int i = 0; i < k; ++i) {
    int s = F.cells()[i].s;
    TermKey id = identity_key(*P, s);
    TermKey rm = id, rn = id;
    rm.a = m;
    rn.a = n;
    T.f.add_term(i, i, rm, 1);
    T.f.add_term(k + i, k + i, id, 1);
    T.g.add_term(i, i, id, 1);
    T.g.add_term(k + i, k + i, rn, 1);
  }
  return T;
}

Morphism monodromy(const Object& F) {
  Object T = twist(F, 2);
  if (F.fl() == Flavor::Mon) {
    Morphism r = r_multiple(naive_identity(F.P(), Flavor::Mon, F.cells(), T.cells(), {0, 2}), 1);
    r.deg = {0, 0};
    return r;
  }
  if (F.fl() == Flavor::Con) {
    auto [d0, d1] = split_xibar(F.d);
    Morphism N = neg(d1);
    N.fl = Flavor::Con;
    N.src = F.cells();
    N.dst = T.cells();
    N.deg = {0, 0};
    return N;
  }
  return zero_morphism(F.P(), F.fl(), F.cells(), T.cells(), {0, 0});
}

Morphism coi_unit(const Object& G) {
  if (G.fl() != Flavor::Mon) throw FlavorError("the unit is defined on monodromic objects");
  Object C = coi(G);
  Object T = mon(forget(C));
  // delta_1 = (delta - delta_0) / r
  int n = G.size();
  Morphism u = zero_morphism(G.P(), Flavor::Mon, G.cells(), T.cells(), {0, 0});
  for (int i = 0; i < n; ++i) u.add_term(i, i, identity_key(*G.P(), G.cells()[i].s), 1);
  for (const auto& [kl, e] : G.d.m)
    for (const auto& [key, c] : e)
      if (key.a > 0) u.add_term(n + kl.first, kl.second, {key.b, key.q, key.a - 1, 0}, c);
  return u;
}

Morphism coi_counit(const Object& F) {
  if (F.fl() != Flavor::Eq) throw FlavorError("the counit is defined on equivariant objects");
  Object C = coi(mon(forget(F)));
  Morphism e = zero_morphism(F.P(), Flavor::Eq, C.cells(), F.cells(), {0, 0});
  for (int i = 0; i < F.size(); ++i) e.add_term(i, i, identity_key(*F.P(), F.cells()[i].s), 1);
  return e;
}

Object collapse_nonequivariant(const Object& F, const PresPtr& target) {
  if (F.fl() == Flavor::Mon) throw FlavorError("collapse expects an equivariant or constructible object");
  const Presentation& P = *F.P();
  if (!P.r_free()) throw FreeError(P.name + " is not R-free");
  PresPtr C = target ? target : collapse_presentation(F.P());
  TermMap tm = [&](const TermKey& k) {
    std::vector<std::pair<TermKey, Scalar>> out;
    if (k.e) return out;
    for (auto& [m, c] : collapse_mono(P, k.q)) out.push_back({{k.b, m, 0, 0}, c});
    return out;
  };
  Object G;
  G.d = transport(F.d, C, F.cells(), F.cells(), tm, Flavor::Eq);
  check_object(G);
  return G;
}

}  // namespace monocycle
