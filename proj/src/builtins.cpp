#include <algorithm>
#include <set>

#include "monocycle/errors.hpp"
#include "monocycle/presentation.hpp"

namespace monocycle {

namespace {

struct CoordStratum {
  std::string id;
  unsigned mask;  // coordinates that are nonzero on the stratum
};

std::vector<Mono> minimal_generators(std::vector<Mono> gens) {
  std::sort(gens.begin(), gens.end(), [](const Mono& a, const Mono& b) {
    int da = mono_degree(a), db = mono_degree(b);
    return da != db ? da < db : a < b;
  });
  std::vector<Mono> out;
  for (const auto& g : gens) {
    bool red = false;
    for (const auto& h : out) red = red || mono_divides(h, g);
    if (!red) out.push_back(g);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Torus-stable coordinate strata of affine n-space. E_S is the constant sheaf on the closure
// of the stratum, shifted by its dimension; uHom(E_S, E_T) is free of rank one over Q = k[e_1..e_n]
// on a generator of degree |S| + |T| - 2|S n T|; generators compose to the product of the weights
// e_i over coordinates on which the middle stratum differs from both ends.
PresPtr coordinate_presentation(const std::string& name, int n, const std::vector<CoordStratum>& st,
                                const std::vector<Scalar>& xi, const std::vector<std::vector<std::string>>& opens,
                                const std::map<std::pair<std::string, std::string>, std::string>& names,
                                const CoeffRing& k) {
  auto P = std::make_shared<Presentation>();
  P->name = name;
  P->coeff = k;
  for (int i = 1; i <= n; ++i) P->vars.push_back("e" + std::to_string(i));
  P->xi = xi;
  const int ns = static_cast<int>(st.size());
  for (const auto& s : st) {
    Stratum x;
    x.id = s.id;
    x.dim = __builtin_popcount(s.mask);
    for (const auto& t : st)
      if (t.mask != s.mask && (t.mask & ~s.mask) == 0) x.closure_leq.push_back(t.id);
    P->strata.push_back(x);
  }
  std::vector<std::vector<int>> gidx(ns, std::vector<int>(ns));
  for (int a = 0; a < ns; ++a)
    for (int b = 0; b < ns; ++b) {
      HomBasis hb;
      auto it = names.find({st[a].id, st[b].id});
      hb.name = a == b ? "id_" + st[a].id : (it != names.end() ? it->second : "g_" + st[a].id + "_" + st[b].id);
      hb.src = a;
      hb.dst = b;
      unsigned S = st[a].mask, T = st[b].mask;
      hb.deg = __builtin_popcount(S) + __builtin_popcount(T) - 2 * __builtin_popcount(S & T);
      gidx[a][b] = P->nbasis();
      P->basis.push_back(hb);
    }
  for (int a = 0; a < ns; ++a) P->identity.push_back(gidx[a][a]);
  P->finalize();
  const int nb = P->nbasis();
  P->comp.assign(nb * nb, {});
  for (int a = 0; a < ns; ++a)
    for (int b = 0; b < ns; ++b)
      for (int c = 0; c < ns; ++c) {
        Mono q(n, 0);
        for (int i = 0; i < n; ++i) {
          bool s = st[a].mask >> i & 1, t = st[b].mask >> i & 1, v = st[c].mask >> i & 1;
          if (t != s && t != v) q[i] = 1;
        }
        P->comp[gidx[b][c] * nb + gidx[a][b]].push_back({q, Scalar(1), gidx[a][c]});
      }
  P->has_duality = true;
  for (int a = 0; a < ns; ++a) P->dual_object.push_back(a);
  for (int a = 0; a < ns; ++a)
    for (int b = 0; b < ns; ++b) (void)b;
  P->dual_basis.resize(nb);
  for (int a = 0; a < ns; ++a)
    for (int b = 0; b < ns; ++b) P->dual_basis[gidx[a][b]] = {gidx[b][a], Scalar(1)};
  for (const auto& U : opens) {
    std::set<std::string> in(U.begin(), U.end());
    OpenSet o;
    o.strata = U;
    for (int a = 0; a < ns; ++a)
      for (int b = 0; b < ns; ++b) {
        if (!in.count(st[a].id) || !in.count(st[b].id)) continue;
        unsigned W = st[a].mask & st[b].mask;
        std::vector<Mono> gens;
        for (const auto& z : st) {
          if (in.count(z.id) || (z.mask & ~W) != 0) continue;
          Mono m(n, 0);
          for (int i = 0; i < n; ++i)
            if ((W >> i & 1) && !(z.mask >> i & 1)) m[i] = 1;
          gens.push_back(m);
        }
        if (!gens.empty()) o.kills[P->basis[gidx[a][b]].name] = minimal_generators(gens);
      }
    P->filtration.push_back(o);
  }
  P->finalize();
  return P;
}

}  // namespace

std::vector<std::string> builtin_names() { return {"point", "A1_Gm", "A1_minus_0", "A2_product"}; }

PresPtr builtin(const std::string& name, const CoeffRing& k) {
  if (name == "point") {
    auto P = std::make_shared<Presentation>();
    P->name = "point";
    P->coeff = k;
    P->vars = {"xi"};
    P->xi = {Scalar(1)};
    P->strata = {{"pt", 0, {}}};
    P->basis = {{"id_pt", 0, 0, 0, {}}};
    P->identity = {0};
    P->comp = {{{Mono{0}, Scalar(1), 0}}};
    P->has_duality = true;
    P->dual_object = {0};
    P->dual_basis = {{0, Scalar(1)}};
    P->finalize();
    return P;
  }
  if (name == "A1_minus_0") {
    auto P = std::make_shared<Presentation>();
    P->name = "A1_minus_0";
    P->coeff = k;
    P->strata = {{"X1", 1, {}}};
    P->basis = {{"id_X1", 0, 0, 0, {}}};
    P->identity = {0};
    P->comp = {{{Mono{}, Scalar(1), 0}}};
    P->has_duality = true;
    P->dual_object = {0};
    P->dual_basis = {{0, Scalar(1)}};
    P->finalize();
    return P;
  }
  if (name == "A1_Gm") {
    auto P = coordinate_presentation("A1_Gm", 1, {{"pt", 0u}, {"X1", 1u}}, {Scalar(1)}, {{"X1"}},
                                     {{{"X1", "pt"}, "eps"}, {{"pt", "X1"}, "eta"}}, k);
    auto Q = std::make_shared<Presentation>(*P);
    Q->fdatum = FDatum{{"pt"}, {"X1"}, Scalar(1)};
    return Q;
  }
  if (name == "A2_product") {
    auto P = coordinate_presentation(
        "A2_product", 2, {{"pt", 0u}, {"X1", 1u}, {"X2", 2u}, {"U", 3u}}, {Scalar(1), Scalar(1)},
        {{"X1", "X2", "U"}, {"X2", "U"}, {"U"}},
        {{{"X1", "pt"}, "eps1"}, {{"pt", "X1"}, "eta1"}, {{"X2", "pt"}, "eps2"}, {{"pt", "X2"}, "eta2"}}, k);
    auto Q = std::make_shared<Presentation>(*P);
    Q->fdatum = FDatum{{"pt", "X1", "X2"}, {"U"}, Scalar(1)};
    return Q;
  }
  throw NameError("unknown builtin presentation '" + name + "'");
}

int collapse_pivot(const Presentation& P) {
  for (int v = 0; v < P.nvars(); ++v)
    if (P.coeff.is_unit(P.xi[v])) return v;
  throw FreeError("xi has no unit coefficient in " + P.name);
}

std::map<Mono, Scalar> collapse_mono(const Presentation& Pr, const Mono& m) {
  const Presentation* P = &Pr;
  int piv = collapse_pivot(Pr);
  int nc = P->nvars() - 1;
  std::map<Mono, Scalar> poly{{Mono(nc, 0), Scalar(1)}};
  Scalar inv = P->coeff.inverse(P->xi[piv]);
  for (int v = 0, w = 0; v < P->nvars(); ++v) {
    if (v == piv) continue;
    for (int e = 0; e < m[v]; ++e) {
      std::map<Mono, Scalar> next;
      for (auto& [mm, c] : poly) {
        Mono x = mm;
        x[w]++;
        next[x] += c;
      }
      poly = next;
    }
    ++w;
  }
  for (int e = 0; e < m[piv]; ++e) {
    std::map<Mono, Scalar> next;
    for (auto& [mm, c] : poly)
      for (int v = 0, w = 0; v < P->nvars(); ++v) {
        if (v == piv) continue;
        if (P->xi[v] != 0) {
          Mono x = mm;
          x[w]++;
          next[x] = P->coeff.normalize(next[x] - c * P->xi[v] * inv);
        }
        ++w;
      }
    poly = next;
  }
  std::map<Mono, Scalar> out;
  for (auto& [mm, c] : poly)
    if (c != 0) out[mm] = P->coeff.normalize(c);
  return out;
}

PresPtr collapse_presentation(const PresPtr& P) {
  if (!P->r_free()) throw FreeError(P->name + " is not R-free");
  int piv = collapse_pivot(*P);
  auto C = std::make_shared<Presentation>();
  C->name = P->name + "/xi";
  C->coeff = P->coeff;
  for (int v = 0; v < P->nvars(); ++v)
    if (v != piv) C->vars.push_back(P->vars[v]);
  C->xi.assign(C->vars.size(), Scalar(0));
  C->strata = P->strata;
  C->identity = P->identity;
  C->has_duality = P->has_duality;
  C->dual_object = P->dual_object;
  C->dual_basis = P->dual_basis;
  auto subst = [&](const Mono& m) { return collapse_mono(*P, m); };
  auto subst_kills = [&](const std::vector<Mono>& ks) {
    std::vector<Mono> out;
    for (const auto& k : ks) {
      auto p = subst(k);
      if (p.empty()) continue;
      if (p.size() != 1) throw FreeError("collapse of " + P->name + " leaves a non-monomial relation");
      out.push_back(p.begin()->first);
    }
    return minimal_generators(out);
  };
  for (const auto& b : P->basis) {
    HomBasis nb = b;
    nb.kills = subst_kills(b.kills);
    C->basis.push_back(nb);
  }
  C->finalize();
  const int nb = C->nbasis();
  C->comp.assign(nb * nb, {});
  for (int g = 0; g < nb; ++g)
    for (int f = 0; f < nb; ++f) {
      std::map<std::pair<int, Mono>, Scalar> acc;
      for (const auto& t : P->compose(g, f))
        for (auto& [m, c] : subst(t.q))
          if (!C->killed(t.b, m)) acc[{t.b, m}] = C->coeff.normalize(acc[{t.b, m}] + c * t.c);
      for (auto& [k, c] : acc)
        if (c != 0) C->comp[g * nb + f].push_back({k.second, c, k.first});
    }
  for (const auto& U : P->filtration) {
    OpenSet V = U;
    for (auto& [n, ks] : V.kills) ks = subst_kills(ks);
    C->filtration.push_back(V);
  }
  C->finalize();
  return C;
}

}  // namespace monocycle
