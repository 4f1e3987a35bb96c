#include "monocycle/complex.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

#include "monocycle/errors.hpp"

namespace monocycle {

const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::Eq: return "equivariant";
    case Flavor::Con: return "constructible";
    case Flavor::Mon: return "monodromic";
  }
  return "?";
}

Flavor parse_flavor(const std::string& s) {
  if (s == "equivariant" || s == "eq" || s == "Eq") return Flavor::Eq;
  if (s == "constructible" || s == "con" || s == "Con") return Flavor::Con;
  if (s == "monodromic" || s == "mon" || s == "Mon") return Flavor::Mon;
  throw ParseError("unknown flavor '" + s + "'");
}

Bidegree term_bidegree(const Presentation& P, const Cell& from, const Cell& to, const TermKey& k) {
  int d = P.basis[k.b].deg + 2 * mono_degree(k.q);
  return {d + k.e + to.c - from.c, d + 2 * k.e - 2 * k.a + to.t - from.t};
}

int hom_part_degree(const Presentation& P, const Cell& from, const Cell& to, const TermKey& k) {
  return P.basis[k.b].deg + 2 * mono_degree(k.q) + to.c - from.c;
}

bool flavor_allows(Flavor fl, const TermKey& k) {
  switch (fl) {
    case Flavor::Eq: return k.a == 0 && k.e == 0;
    case Flavor::Con: return k.a == 0 && k.e <= 1;
    case Flavor::Mon: return k.e == 0;
  }
  return false;
}

void Morphism::add_term(int k, int l, const TermKey& key, const Scalar& c) {
  if (c == 0 || key.e > 1) return;
  if (P->killed(key.b, key.q)) return;
  auto& e = m[{k, l}];
  auto it = e.find(key);
  if (it == e.end()) {
    Scalar v = P->coeff.normalize(c);
    if (v != 0) e.emplace(key, v);
  } else {
    it->second = P->coeff.normalize(it->second + c);
    if (it->second == 0) e.erase(it);
  }
  if (e.empty()) m.erase({k, l});
}

TermKey identity_key(const Presentation& P, int s) { return {P.identity[s], P.zero_mono(), 0, 0}; }

std::vector<std::pair<Mono, Scalar>> xi_terms(const Presentation& P) {
  std::vector<std::pair<Mono, Scalar>> out;
  for (int v = 0; v < P.nvars(); ++v)
    if (P.xi[v] != 0) {
      Mono m = P.zero_mono();
      m[v] = 1;
      out.push_back({m, P.xi[v]});
    }
  return out;
}

Morphism zero_morphism(const PresPtr& P, Flavor fl, const std::vector<Cell>& src, const std::vector<Cell>& dst,
                       Bidegree deg) {
  Morphism f;
  f.P = P;
  f.fl = fl;
  f.src = src;
  f.dst = dst;
  f.deg = deg;
  return f;
}

Morphism naive_identity(const PresPtr& P, Flavor fl, const std::vector<Cell>& src, const std::vector<Cell>& dst,
                        Bidegree deg) {
  if (src.size() != dst.size()) throw StructuralError("naive identity between cell lists of different length");
  Morphism f = zero_morphism(P, fl, src, dst, deg);
  for (size_t i = 0; i < src.size(); ++i) {
    if (src[i].s != dst[i].s) throw StructuralError("naive identity across strata");
    f.add_term(static_cast<int>(i), static_cast<int>(i), identity_key(*P, src[i].s), 1);
  }
  return f;
}

Morphism identity(const Object& F) { return naive_identity(F.P(), F.fl(), F.cells(), F.cells(), {0, 0}); }

Morphism scalar_identity(const Object& F, const Scalar& c) { return scale(identity(F), c); }

Morphism theta_identity(const Object& F) {
  Morphism f = zero_morphism(F.P(), F.fl(), F.cells(), F.cells(), {2, 0});
  auto xt = xi_terms(*F.P());
  for (int i = 0; i < F.size(); ++i)
    for (auto& [m, c] : xt) f.add_term(i, i, {F.P()->identity[F.cells()[i].s], m, 1, 0}, c);
  return f;
}

Object make_object(const PresPtr& P, Flavor fl, const std::vector<Cell>& cells, const EntryMatrix& delta) {
  Object F;
  F.d = zero_morphism(P, fl, cells, cells, {1, 0});
  for (const auto& [kl, e] : delta) {
    auto [k, l] = kl;
    if (k < 0 || l < 0 || k >= static_cast<int>(cells.size()) || l >= static_cast<int>(cells.size()))
      throw StructuralError("differential entry outside the cell list");
    for (const auto& [key, c] : e) {
      if (!flavor_allows(fl, key))
        throw FlavorError(std::string("term not allowed in ") + flavor_name(fl) + " flavor at entry (" +
                          std::to_string(k) + "," + std::to_string(l) + ")");
      const auto& hb = P->basis[key.b];
      if (hb.src != cells[l].s || hb.dst != cells[k].s)
        throw StructuralError("basis element " + hb.name + " does not connect the cells of entry (" +
                              std::to_string(k) + "," + std::to_string(l) + ")");
      if (term_bidegree(*P, cells[l], cells[k], key) != Bidegree{1, 0})
        throw StructuralError("entry (" + std::to_string(k) + "," + std::to_string(l) + ") is not of bidegree (1,0)");
      F.d.add_term(k, l, key, c);
    }
  }
  check_object(F);
  return F;
}

Object zero_object(const PresPtr& P, Flavor fl) { return make_object(P, fl, {}, {}); }

Object parity_object(const PresPtr& P, Flavor fl, int s, int c, int t) { return make_object(P, fl, {{s, c, t}}, {}); }

Morphism add(const Morphism& f, const Morphism& g) {
  if (f.src != g.src || f.dst != g.dst) throw StructuralError("adding morphisms with different endpoints");
  Morphism r = f;
  if (f.is_zero()) r.deg = g.deg;
  for (const auto& [kl, e] : g.m)
    for (const auto& [key, c] : e) r.add_term(kl.first, kl.second, key, c);
  return r;
}

Morphism scale(const Morphism& f, const Scalar& c) {
  Morphism r = f;
  r.m.clear();
  for (const auto& [kl, e] : f.m)
    for (const auto& [key, v] : e) r.add_term(kl.first, kl.second, key, v * c);
  return r;
}

Morphism neg(const Morphism& f) { return scale(f, -1); }
Morphism sub(const Morphism& f, const Morphism& g) { return add(f, neg(g)); }

Morphism compose(const Morphism& g, const Morphism& f) {
  if (g.src != f.dst) throw StructuralError("composing morphisms with mismatched cells");
  const Presentation& P = *g.P;
  Flavor fl = g.fl;
  if (f.fl != g.fl) {
    // Eq sits inside both other flavors
    if (g.fl == Flavor::Eq) fl = f.fl;
    else if (f.fl != Flavor::Eq) throw FlavorError("composing morphisms of different flavors");
  }
  Morphism r = zero_morphism(g.P, fl, f.src, g.dst, g.deg + f.deg);
  std::vector<std::vector<std::pair<int, const Entry*>>> gcol(g.src.size());
  for (const auto& [kl, e] : g.m) gcol[kl.second].push_back({kl.first, &e});
  for (const auto& [ml, fe] : f.m) {
    auto [mid, l] = ml;
    for (const auto& [k, ge] : gcol[mid]) {
      for (const auto& [gk, gc] : *ge) {
        int hp = hom_part_degree(P, g.src[mid], g.dst[k], gk);
        for (const auto& [fk, fc] : fe) {
          if (gk.e + fk.e > 1) continue;
          Scalar sign = (fk.e && (hp & 1)) ? -1 : 1;
          Mono qq = mono_mul(gk.q, fk.q);
          for (const auto& t : P.compose(gk.b, fk.b))
            r.add_term(k, l, {t.b, mono_mul(qq, t.q), gk.a + fk.a, gk.e + fk.e}, gc * fc * t.c * sign);
        }
      }
    }
  }
  return r;
}

Morphism kappa(const Morphism& f) {
  Morphism r = zero_morphism(f.P, f.fl, f.src, f.dst, f.deg.shifted(1));
  auto xt = xi_terms(*f.P);
  for (const auto& [kl, e] : f.m)
    for (const auto& [key, c] : e) {
      if (!key.e) continue;
      for (auto& [m, x] : xt) r.add_term(kl.first, kl.second, {key.b, mono_mul(key.q, m), key.a, 0}, c * x);
    }
  return r;
}

Morphism s_sign(const Morphism& f) {
  Morphism r = f;
  for (auto& [kl, e] : r.m)
    for (auto& [key, c] : e)
      if (key.e) c = f.P->coeff.normalize(-c);
  return r;
}

Morphism r_multiple(const Morphism& f, int n) {
  Morphism r = zero_morphism(f.P, Flavor::Mon, f.src, f.dst, f.deg + Bidegree{0, -2 * n});
  for (const auto& [kl, e] : f.m)
    for (const auto& [key, c] : e) r.add_term(kl.first, kl.second, {key.b, key.q, key.a + n, key.e}, c);
  return r;
}

Morphism with_flavor(const Morphism& f, Flavor fl) {
  Morphism r = f;
  r.fl = fl;
  for (const auto& [kl, e] : f.m)
    for (const auto& [key, c] : e)
      if (!flavor_allows(fl, key)) throw FlavorError(std::string("term not expressible in ") + flavor_name(fl));
  return r;
}

Morphism d_hom(const Object& F, const Object& G, const Morphism& f) {
  Morphism a = compose(G.d, f);
  Morphism b = compose(f, F.d);
  Morphism r = (f.deg.i % 2 == 0) ? sub(a, b) : add(a, b);
  r.deg = f.deg.shifted(1);
  if (F.fl() == Flavor::Con || f.fl == Flavor::Con) r = add(r, kappa(f));
  return r;
}

Morphism curvature_defect(const Object& F) {
  Morphism sq = compose(F.d, F.d);
  switch (F.fl()) {
    case Flavor::Eq: return sq;
    case Flavor::Con: return add(sq, kappa(F.d));
    case Flavor::Mon: return sub(sq, theta_identity(F));
  }
  return sq;
}

void check_object(const Object& F) {
  Morphism def = curvature_defect(F);
  if (!def.is_zero()) {
    auto [kl, e] = *def.m.begin();
    throw CurvatureError("curvature identity fails at entry (" + std::to_string(kl.first) + "," +
                         std::to_string(kl.second) + "): " + entry_str(*F.P(), e));
  }
}

bool is_chain_map(const Object& F, const Object& G, const Morphism& f) { return d_hom(F, G, f).is_zero(); }

void require_chain_map(const Object& F, const Object& G, const Morphism& f, const std::string& what) {
  Morphism df = d_hom(F, G, f);
  if (!df.is_zero()) {
    auto [kl, e] = *df.m.begin();
    throw NotChainMap(what + " is not a chain map; d(f) has entry (" + std::to_string(kl.first) + "," +
                      std::to_string(kl.second) + ") = " + entry_str(*F.P(), e));
  }
}

std::vector<Cell> shift_cells(const std::vector<Cell>& c, int n) {
  std::vector<Cell> r = c;
  for (auto& x : r) x.c -= n;
  return r;
}

std::vector<Cell> twist_cells(const std::vector<Cell>& c, int n) {
  std::vector<Cell> r = c;
  for (auto& x : r) x.t += n;
  return r;
}

Morphism shift_map(const Morphism& f, int n) {
  Morphism r = (n % 2) ? s_sign(f) : f;
  r.src = shift_cells(f.src, n);
  r.dst = shift_cells(f.dst, n);
  return r;
}

Morphism twist_map(const Morphism& f, int n) {
  Morphism r = f;
  r.src = twist_cells(f.src, n);
  r.dst = twist_cells(f.dst, n);
  return r;
}

Object shift(const Object& F, int n) {
  Object r;
  r.d = shift_map(F.d, n);
  if (n % 2) r.d = neg(r.d);
  return r;
}

Object twist(const Object& F, int n) {
  Object r;
  r.d = twist_map(F.d, n);
  return r;
}

void place(Morphism& into, const Morphism& f, int roff, int coff) {
  for (const auto& [kl, e] : f.m)
    for (const auto& [key, c] : e) into.add_term(kl.first + roff, kl.second + coff, key, c);
}

Morphism sub_block(const Morphism& f, int r0, int r1, int c0, int c1) {
  std::vector<Cell> src(f.src.begin() + c0, f.src.begin() + c1), dst(f.dst.begin() + r0, f.dst.begin() + r1);
  Morphism r = zero_morphism(f.P, f.fl, src, dst, f.deg);
  for (const auto& [kl, e] : f.m)
    if (kl.first >= r0 && kl.first < r1 && kl.second >= c0 && kl.second < c1)
      for (const auto& [key, c] : e) r.add_term(kl.first - r0, kl.second - c0, key, c);
  return r;
}

Morphism block(const std::vector<std::vector<const Morphism*>>& blocks, const std::vector<std::vector<Cell>>& rows,
               const std::vector<std::vector<Cell>>& cols, const PresPtr& P, Flavor fl, Bidegree deg) {
  std::vector<Cell> src, dst;
  std::vector<int> roff, coff;
  for (const auto& r : rows) {
    roff.push_back(static_cast<int>(dst.size()));
    dst.insert(dst.end(), r.begin(), r.end());
  }
  for (const auto& c : cols) {
    coff.push_back(static_cast<int>(src.size()));
    src.insert(src.end(), c.begin(), c.end());
  }
  Morphism r = zero_morphism(P, fl, src, dst, deg);
  for (size_t i = 0; i < blocks.size(); ++i)
    for (size_t j = 0; j < blocks[i].size(); ++j)
      if (blocks[i][j]) {
        if (blocks[i][j]->src != cols[j] || blocks[i][j]->dst != rows[i])
          throw StructuralError("block does not match its row/column cells");
        place(r, *blocks[i][j], roff[i], coff[j]);
      }
  return r;
}

Object direct_sum(const Object& F, const Object& G) {
  Object r;
  r.d = block({{&F.d, nullptr}, {nullptr, &G.d}}, {F.cells(), G.cells()}, {F.cells(), G.cells()}, F.P(), F.fl(),
              {1, 0});
  return r;
}

Object sub_object(const Object& F, const std::vector<int>& keep) {
  std::vector<Cell> cells;
  std::vector<int> pos(F.size(), -1);
  for (size_t i = 0; i < keep.size(); ++i) {
    pos[keep[i]] = static_cast<int>(i);
    cells.push_back(F.cells()[keep[i]]);
  }
  EntryMatrix em;
  for (const auto& [kl, e] : F.d.m)
    if (pos[kl.first] >= 0 && pos[kl.second] >= 0) em[{pos[kl.first], pos[kl.second]}] = e;
  return make_object(F.P(), F.fl(), cells, em);
}

Triangle cone_triangle(const Object& F, const Object& G, const Morphism& f) {
  if (f.deg != Bidegree{0, 0}) throw NotChainMap("cone needs a map of bidegree (0,0)");
  require_chain_map(F, G, f, "cone input");
  Object F1 = shift(F, 1);
  Morphism fs = f;
  fs.src = F1.cells();
  Morphism dC = block({{&G.d, &fs}, {nullptr, &F1.d}}, {G.cells(), F1.cells()}, {G.cells(), F1.cells()}, F.P(),
                      F.fl(), {1, 0});
  Object C;
  C.d = dC;
  check_object(C);
  Triangle T;
  T.A = F;
  T.B = G;
  T.C = C;
  T.f = f;
  Morphism idG = identity(G), idF1 = identity(F1);
  T.g = block({{&idG}, {nullptr}}, {G.cells(), F1.cells()}, {G.cells()}, F.P(), F.fl(), {0, 0});
  T.h = block({{nullptr, &idF1}}, {F1.cells()}, {G.cells(), F1.cells()}, F.P(), F.fl(), {0, 0});
  return T;
}

Object cone(const Object& F, const Object& G, const Morphism& f) { return cone_triangle(F, G, f).C; }

Object cocone(const Object& F, const Object& G, const Morphism& f) { return shift(cone(F, G, f), -1); }

std::vector<Atom> hom_atoms(const PresPtr& Pp, Flavor fl, const std::vector<Cell>& src, const std::vector<Cell>& dst,
                            Bidegree deg) {
  const Presentation& P = *Pp;
  std::vector<Atom> out;
  for (int l = 0; l < static_cast<int>(src.size()); ++l)
    for (int k = 0; k < static_cast<int>(dst.size()); ++k)
      for (int b : P.homs(src[l].s, dst[k].s))
        for (int e = 0; e <= (fl == Flavor::Con ? 1 : 0); ++e) {
          int twoq = deg.i - e - P.basis[b].deg - dst[k].c + src[l].c;
          if (twoq < 0 || twoq % 2) continue;
          int qd = twoq / 2;
          int twoa = P.basis[b].deg + twoq + 2 * e + dst[k].t - src[l].t - deg.j;
          if (twoa < 0 || twoa % 2) continue;
          int a = twoa / 2;
          if (a > 0 && fl != Flavor::Mon) continue;
          for (auto& q : monomials_of_degree(P.nvars(), qd))
            if (!P.killed(b, q)) out.push_back({k, l, {b, q, a, e}});
        }
  return out;
}

Morphism atom_morphism(const PresPtr& P, Flavor fl, const std::vector<Cell>& src, const std::vector<Cell>& dst,
                       Bidegree deg, const Atom& a, const Scalar& c) {
  Morphism f = zero_morphism(P, fl, src, dst, deg);
  f.add_term(a.k, a.l, a.key, c);
  return f;
}

HomWindow default_hom_window() {
  HomWindow w;
  if (const char* env = std::getenv("MONOCYCLE_WINDOW")) {
    // "M,N" sets |m| <= M and |n| <= N
    int M = 0, N = 0;
    if (std::sscanf(env, "%d,%d", &M, &N) == 2 && M >= 0 && N >= 0) {
      w.mmin = -M;
      w.mmax = M;
      w.nmin = -N;
      w.nmax = N;
    }
  }
  return w;
}

namespace {
SparseMatrix d_matrix(const Object& F, const Object& G, Bidegree from) {
  auto src = hom_atoms(F.P(), F.fl(), F.cells(), G.cells(), from);
  auto dst = hom_atoms(F.P(), F.fl(), F.cells(), G.cells(), from.shifted(1));
  std::map<std::tuple<int, int, TermKey>, int> idx;
  for (size_t i = 0; i < dst.size(); ++i) idx[{dst[i].k, dst[i].l, dst[i].key}] = static_cast<int>(i);
  std::map<std::pair<int, int>, Scalar> ent;
  for (size_t c = 0; c < src.size(); ++c) {
    Morphism x = atom_morphism(F.P(), F.fl(), F.cells(), G.cells(), from, src[c]);
    Morphism dx = d_hom(F, G, x);
    for (const auto& [kl, e] : dx.m)
      for (const auto& [key, v] : e) {
        auto it = idx.find({kl.first, kl.second, key});
        if (it == idx.end()) throw StructuralError("differential leaves the enumerated Hom basis");
        ent[{it->second, static_cast<int>(c)}] = v;
      }
  }
  return SparseMatrix::from_entries(static_cast<int>(dst.size()), static_cast<int>(src.size()), ent);
}
}  // namespace

ModuleRank hom_space(const Object& F, const Object& G, int m, int n) {
  if (F.fl() != G.fl()) throw FlavorError("hom_space between different flavors");
  if (F.P() != G.P() && F.P()->name != G.P()->name) throw StructuralError("hom_space across presentations");
  Bidegree B{m, -n};
  int dim = static_cast<int>(hom_atoms(F.P(), F.fl(), F.cells(), G.cells(), B).size());
  return homology(dim, d_matrix(F, G, B.shifted(-1)), d_matrix(F, G, B), F.P()->coeff);
}

std::map<std::pair<int, int>, ModuleRank> hom_table(const Object& F, const Object& G, const HomWindow& w) {
  std::map<std::pair<int, int>, ModuleRank> out;
  for (int m = w.mmin; m <= w.mmax; ++m)
    for (int n = w.nmin; n <= w.nmax; ++n) out[{m, n}] = hom_space(F, G, m, n);
  return out;
}

bool equal_up_to_cell_units(const Object& A, const Object& B, std::vector<Scalar>* units) {
  if (A.cells() != B.cells() || A.fl() != B.fl()) return false;
  const auto& k = A.P()->coeff;
  int n = A.size();
  std::vector<Scalar> u(n, 0);
  std::vector<std::vector<std::pair<int, bool>>> adj(n);
  std::set<std::pair<int, int>> keys;
  for (auto& [kl, e] : A.d.m) keys.insert(kl);
  for (auto& [kl, e] : B.d.m) keys.insert(kl);
  for (auto& kl : keys) {
    adj[kl.first].push_back({kl.second, true});
    adj[kl.second].push_back({kl.first, false});
  }
  // ratio B_kl / A_kl, which must be a single unit per entry
  auto ratio = [&](int r, int c, Scalar& out) {
    const Entry* a = A.d.at(r, c);
    const Entry* b = B.d.at(r, c);
    if (!a || !b) return false;
    if (a->size() != b->size()) return false;
    bool first = true;
    for (auto& [key, v] : *a) {
      auto it = b->find(key);
      if (it == b->end()) return false;
      Scalar q = k.normalize(it->second / v);
      if (first) out = q;
      else if (q != out) return false;
      first = false;
    }
    return k.is_unit(out);
  };
  for (int root = 0; root < n; ++root) {
    if (u[root] != 0) continue;
    u[root] = 1;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (auto [y, out] : adj[x]) {
        int r = out ? x : y, c = out ? y : x;
        Scalar q;
        if (!ratio(r, c, q)) return false;
        // B_rc = u_r A_rc / u_c
        Scalar want = out ? k.normalize(u[x] / q) : k.normalize(q * u[x]);
        if (u[y] == 0) {
          u[y] = want;
          stack.push_back(y);
        } else if (u[y] != want) {
          return false;
        }
      }
    }
  }
  if (units) *units = u;
  return true;
}

std::string cell_str(const Presentation& P, const Cell& c) {
  std::string s = "E_" + P.strata[c.s].id;
  if (c.t) s += "<" + std::to_string(c.t) + ">";
  if (c.c) s += "[" + std::to_string(-c.c) + "]";
  return s;
}

std::string entry_str(const Presentation& P, const Entry& e) {
  if (e.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : e) {
    std::string coef = c.get_str();
    if (!s.empty()) {
      if (c < 0) {
        s += " - ";
        coef = Scalar(-c).get_str();
      } else {
        s += " + ";
      }
    } else if (c < 0) {
      s += "-";
      coef = Scalar(-c).get_str();
    }
    std::string body;
    if (k.e) body += "xibar*";
    if (k.a) body += "r" + (k.a > 1 ? "^" + std::to_string(k.a) : std::string()) + "*";
    if (mono_degree(k.q)) body += mono_str(k.q, P.vars) + "*";
    body += P.basis[k.b].name;
    s += (coef == "1" ? "" : coef + "*") + body;
  }
  return s;
}

std::string object_str(const Object& F) {
  std::ostringstream os;
  const auto& P = *F.P();
  os << flavor_name(F.fl()) << " object over " << P.name << " with " << F.size() << " cell(s)\n";
  for (int i = 0; i < F.size(); ++i) os << "  [" << i << "] " << cell_str(P, F.cells()[i]) << "\n";
  for (const auto& [kl, e] : F.d.m) os << "  d(" << kl.first << "," << kl.second << ") = " << entry_str(P, e) << "\n";
  return os.str();
}

std::string morphism_str(const Morphism& f) {
  std::ostringstream os;
  os << "morphism of bidegree (" << f.deg.i << "," << f.deg.j << ")\n";
  for (const auto& [kl, e] : f.m) os << "  (" << kl.first << "," << kl.second << ") = " << entry_str(*f.P, e) << "\n";
  return os.str();
}

}  // namespace monocycle
