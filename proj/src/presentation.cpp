#include "monocycle/presentation.hpp"
#include "monocycle/linalg.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "monocycle/errors.hpp"

namespace monocycle {

int mono_degree(const Mono& m) {
  int d = 0;
  for (int x : m) d += x;
  return d;
}

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

bool mono_divides(const Mono& a, const Mono& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::string mono_str(const Mono& m, const std::vector<std::string>& vars) {
  std::string s;
  for (size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

Mono parse_mono(const std::string& str, const std::vector<std::string>& vars) {
  Mono m(vars.size(), 0);
  if (str == "1" || str.empty()) return m;
  std::stringstream ss(str);
  std::string factor;
  while (std::getline(ss, factor, '*')) {
    std::string v = factor;
    int e = 1;
    auto caret = factor.find('^');
    if (caret != std::string::npos) {
      v = factor.substr(0, caret);
      e = std::stoi(factor.substr(caret + 1));
    }
    auto it = std::find(vars.begin(), vars.end(), v);
    if (it == vars.end()) throw ParseError("unknown variable '" + v + "' in monomial " + str);
    m[it - vars.begin()] += e;
  }
  return m;
}

std::vector<Mono> monomials_of_degree(int n, int d) {
  std::vector<Mono> out;
  if (d < 0) return out;
  if (n == 0) {
    if (d == 0) out.push_back({});
    return out;
  }
  Mono m(n, 0);
  // recursive fill, lexicographically decreasing in the first variable
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      m[i] = left;
      out.push_back(m);
      return;
    }
    for (int e = left; e >= 0; --e) {
      m[i] = e;
      rec(i + 1, left - e);
    }
  };
  rec(0, d);
  return out;
}

int Presentation::stratum_index(const std::string& id) const {
  auto it = strata_by_id_.find(id);
  if (it == strata_by_id_.end()) throw NameError("unknown stratum '" + id + "' in " + name);
  return it->second;
}

int Presentation::basis_index(const std::string& n) const {
  auto it = basis_by_name_.find(n);
  if (it == basis_by_name_.end()) throw NameError("unknown Hom basis element '" + n + "' in " + name);
  return it->second;
}

bool Presentation::killed(int b, const Mono& q) const {
  for (const auto& k : basis[b].kills)
    if (mono_divides(k, q)) return true;
  return false;
}

bool Presentation::leq(int s, int t) const {
  if (s == t) return true;
  const auto& cl = strata[t].closure_leq;
  return std::find(cl.begin(), cl.end(), strata[s].id) != cl.end();
}

void Presentation::finalize() {
  strata_by_id_.clear();
  basis_by_name_.clear();
  for (int i = 0; i < nstrata(); ++i) strata_by_id_[strata[i].id] = i;
  for (int i = 0; i < nbasis(); ++i) basis_by_name_[basis[i].name] = i;
  hom_index_.assign(nstrata() * nstrata(), {});
  for (int i = 0; i < nbasis(); ++i) hom_index_[basis[i].src * nstrata() + basis[i].dst].push_back(i);
  if (comp.size() != static_cast<size_t>(nbasis() * nbasis())) comp.resize(nbasis() * nbasis());
}

std::vector<Mono> Presentation::h_basis(int s, int d) const {
  std::vector<Mono> out;
  int id = identity[s];
  for (auto& m : monomials_of_degree(nvars(), d))
    if (!killed(id, m)) out.push_back(m);
  return out;
}

namespace {

// is the linear form xi a nonzerodivisor on Q/(kills)? checked degree-wise up to a bound
bool xi_regular(const Presentation& P, int b, int maxdeg) {
  const auto& kills = P.basis[b].kills;
  int n = P.nvars();
  if (n == 0) return false;
  for (int d = 0; d <= maxdeg; ++d) {
    std::vector<Mono> src, dst;
    for (auto& m : monomials_of_degree(n, d))
      if (!P.killed(b, m)) src.push_back(m);
    for (auto& m : monomials_of_degree(n, d + 1))
      if (!P.killed(b, m)) dst.push_back(m);
    std::map<Mono, int> idx;
    for (size_t i = 0; i < dst.size(); ++i) idx[dst[i]] = static_cast<int>(i);
    std::map<std::pair<int, int>, Scalar> e;
    for (size_t c = 0; c < src.size(); ++c)
      for (int v = 0; v < n; ++v) {
        if (P.xi[v] == 0) continue;
        Mono m = src[c];
        m[v]++;
        auto it = idx.find(m);
        if (it != idx.end()) e[{it->second, static_cast<int>(c)}] += P.xi[v];
      }
    auto M = SparseMatrix::from_entries(static_cast<int>(dst.size()), static_cast<int>(src.size()), e);
    if (eliminate(M, P.coeff.is_field() ? P.coeff : CoeffRing::rationals()).rank != static_cast<int>(src.size()))
      return false;
    // over Z(p) regularity must also hold mod p
    if (!P.coeff.is_field() &&
        eliminate(M, CoeffRing::prime_field(P.coeff.p)).rank != static_cast<int>(src.size()))
      return false;
  }
  (void)kills;
  return true;
}

int max_kill_degree(const Presentation& P) {
  int d = 0;
  for (const auto& b : P.basis)
    for (const auto& k : b.kills) d = std::max(d, mono_degree(k));
  return d;
}

using BasisPoly = std::map<std::pair<int, Mono>, Scalar>;

void add_reduced(const Presentation& P, BasisPoly& out, int b, const Mono& q, const Scalar& c) {
  if (c == 0 || P.killed(b, q)) return;
  auto key = std::make_pair(b, q);
  auto it = out.find(key);
  if (it == out.end()) {
    Scalar v = P.coeff.normalize(c);
    if (v != 0) out.emplace(key, v);
  } else {
    it->second = P.coeff.normalize(it->second + c);
    if (it->second == 0) out.erase(it);
  }
}

BasisPoly compose_poly(const Presentation& P, const BasisPoly& g, const BasisPoly& f) {
  BasisPoly out;
  for (const auto& [gk, gc] : g)
    for (const auto& [fk, fc] : f)
      for (const auto& t : P.compose(gk.first, fk.first))
        add_reduced(P, out, t.b, mono_mul(mono_mul(gk.second, fk.second), t.q), gc * fc * t.c);
  return out;
}

std::string poly_str(const Presentation& P, const BasisPoly& p) {
  if (p.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : p) {
    if (!s.empty()) s += " + ";
    s += c.get_str() + "*" + mono_str(k.second, P.vars) + "*" + P.basis[k.first].name;
  }
  return s;
}

}  // namespace

bool Presentation::r_free() const {
  int bound = max_kill_degree(*this) + 2;
  for (int b = 0; b < nbasis(); ++b)
    if (!xi_regular(*this, b, bound)) return false;
  return true;
}

bool Presentation::basis_r_free(int b) const { return xi_regular(*this, b, max_kill_degree(*this) + 2); }

bool Presentation::r_trivial() const {
  // xi in I_b for every b: each monomial of xi must be killed
  for (int b = 0; b < nbasis(); ++b)
    for (int v = 0; v < nvars(); ++v) {
      if (xi[v] == 0) continue;
      Mono m = zero_mono();
      m[v] = 1;
      if (!killed(b, m)) return false;
    }
  return true;
}

ValidationReport Presentation::validate() const {
  ValidationReport rep;
  auto add = [&](const std::string& n, bool ok, const std::string& d) { rep.checks.push_back({n, ok, d}); };
  const int nb = nbasis();

  {  // diagonal bidegrees, evenness of endomorphisms, parity of degrees
    bool ok = true;
    std::string d;
    for (const auto& b : basis) {
      int par = (strata[b.src].dim + strata[b.dst].dim) & 1;
      if (b.deg < 0 || (b.deg & 1) != par) {
        ok = false;
        d = b.name + " has degree " + std::to_string(b.deg) + " against the parity of its strata";
        break;
      }
    }
    add("parity_degrees", ok, d);
  }
  {  // identities
    bool ok = static_cast<int>(identity.size()) == nstrata();
    std::string d;
    for (int s = 0; ok && s < nstrata(); ++s) {
      const auto& b = basis[identity[s]];
      int deg0 = 0;
      for (int x : homs(s, s))
        if (basis[x].deg == 0) ++deg0;
      if (b.src != s || b.dst != s || b.deg != 0 || deg0 != 1) {
        ok = false;
        d = "stratum " + strata[s].id + " lacks a unique degree-0 identity";
      }
    }
    add("identities", ok, d);
  }
  {  // composition: bidegree additivity and endpoints
    bool ok = true;
    std::string d;
    for (int g = 0; g < nb && ok; ++g)
      for (int f = 0; f < nb && ok; ++f) {
        const auto& terms = compose(g, f);
        if (basis[g].src != basis[f].dst) {
          if (!terms.empty()) {
            ok = false;
            d = "non-composable pair (" + basis[g].name + "," + basis[f].name + ") has a product";
          }
          continue;
        }
        for (const auto& t : terms) {
          if (basis[t.b].src != basis[f].src || basis[t.b].dst != basis[g].dst ||
              basis[t.b].deg + 2 * mono_degree(t.q) != basis[g].deg + basis[f].deg) {
            ok = false;
            d = "triple (" + basis[g].name + "," + basis[f].name + "," + basis[t.b].name + ") breaks bidegree additivity";
            break;
          }
        }
      }
    add("composition_bidegree", ok, d);
  }
  {  // unitality
    bool ok = true;
    std::string d;
    for (int f = 0; f < nb && ok; ++f) {
      BasisPoly fp{{{f, zero_mono()}, 1}};
      BasisPoly l = compose_poly(*this, {{{identity[basis[f].dst], zero_mono()}, 1}}, fp);
      BasisPoly r = compose_poly(*this, fp, {{{identity[basis[f].src], zero_mono()}, 1}});
      if (l != fp || r != fp) {
        ok = false;
        d = "identity fails on " + basis[f].name;
      }
    }
    add("unital", ok, d);
  }
  {  // associativity
    bool ok = true;
    std::string d;
    for (int h = 0; h < nb && ok; ++h)
      for (int g = 0; g < nb && ok; ++g) {
        if (basis[h].src != basis[g].dst) continue;
        for (int f = 0; f < nb && ok; ++f) {
          if (basis[g].src != basis[f].dst) continue;
          BasisPoly hp{{{h, zero_mono()}, 1}}, gp{{{g, zero_mono()}, 1}}, fp{{{f, zero_mono()}, 1}};
          auto a = compose_poly(*this, compose_poly(*this, hp, gp), fp);
          auto b = compose_poly(*this, hp, compose_poly(*this, gp, fp));
          if (a != b) {
            ok = false;
            d = "(" + basis[h].name + "," + basis[g].name + "," + basis[f].name + "): " + poly_str(*this, a) +
                " vs " + poly_str(*this, b);
          }
        }
      }
    add("associative", ok, d);
  }
  {  // module structure: kills of a factor annihilate the product
    bool ok = true;
    std::string d;
    for (int g = 0; g < nb && ok; ++g)
      for (int f = 0; f < nb && ok; ++f) {
        if (basis[g].src != basis[f].dst) continue;
        std::vector<Mono> ks = basis[g].kills;
        ks.insert(ks.end(), basis[f].kills.begin(), basis[f].kills.end());
        for (const auto& k : ks) {
          BasisPoly direct;
          for (const auto& t : compose(g, f)) add_reduced(*this, direct, t.b, mono_mul(t.q, k), t.c);
          if (!direct.empty()) {
            ok = false;
            d = "kill " + mono_str(k, vars) + " of (" + basis[g].name + "," + basis[f].name + ") survives composition";
            break;
          }
        }
      }
    add("module_structure", ok, d);
  }
  if (has_duality) {
    bool ok = true;
    std::string d;
    for (int s = 0; s < nstrata() && ok; ++s)
      if (dual_object[dual_object[s]] != s) {
        ok = false;
        d = "object duality is not an involution at " + strata[s].id;
      }
    for (int b = 0; b < nb && ok; ++b) {
      auto [b2, sg] = dual_basis[b];
      auto [b3, sg2] = dual_basis[b2];
      if (b3 != b || sg * sg2 != 1 || basis[b2].src != dual_object[basis[b].dst] ||
          basis[b2].dst != dual_object[basis[b].src] || basis[b2].deg != basis[b].deg ||
          basis[b2].kills != basis[b].kills) {
        ok = false;
        d = "duality fails on " + basis[b].name;
      }
    }
    for (int g = 0; g < nb && ok; ++g)
      for (int f = 0; f < nb && ok; ++f) {
        if (basis[g].src != basis[f].dst) continue;
        BasisPoly lhs;
        for (const auto& t : compose(g, f)) add_reduced(*this, lhs, dual_basis[t.b].first, t.q, t.c * dual_basis[t.b].second);
        BasisPoly rhs = compose_poly(*this, {{{dual_basis[f].first, zero_mono()}, dual_basis[f].second}},
                                     {{{dual_basis[g].first, zero_mono()}, dual_basis[g].second}});
        if (lhs != rhs) {
          ok = false;
          d = "dual(" + basis[g].name + " o " + basis[f].name + ") differs from dual(f) o dual(g)";
        }
      }
    add("duality", ok, d);
  }
  {  // filtration
    bool ok = true;
    std::string d;
    for (const auto& U : filtration) {
      std::set<int> in;
      for (const auto& id : U.strata) {
        auto it = strata_by_id_.find(id);
        if (it == strata_by_id_.end()) {
          ok = false;
          d = "open set names unknown stratum " + id;
          break;
        }
        in.insert(it->second);
      }
      if (!ok) break;
      // upward closed and a final segment of the total order
      for (int s : in)
        for (int t = 0; t < nstrata(); ++t)
          if (leq(s, t) && !in.count(t)) {
            ok = false;
            d = "open set not closed upward at " + strata[t].id;
          }
      if (!in.empty() && *in.rbegin() - *in.begin() + 1 != static_cast<int>(in.size())) {
        ok = false;
        d = "open set is not a final segment of the total order";
      }
      if (!in.empty() && *in.rbegin() != nstrata() - 1) {
        ok = false;
        d = "open set is not a final segment of the total order";
      }
      for (const auto& [bn, ks] : U.kills) {
        auto it = basis_by_name_.find(bn);
        if (it == basis_by_name_.end()) {
          ok = false;
          d = "restriction names unknown basis element " + bn;
          continue;
        }
        // ambient kills must stay killed
        for (const auto& k : basis[it->second].kills) {
          bool cov = false;
          for (const auto& k2 : ks) cov = cov || mono_divides(k2, k);
          if (!cov) {
            ok = false;
            d = "restriction of " + bn + " is not a quotient";
          }
        }
      }
      if (ok) {
        try {
          auto R = restrict_to(std::make_shared<Presentation>(*this), U.strata);
          auto sub = R->validate();
          for (const auto& c : sub.checks)
            if (!c.ok && c.name != "filtration") {
              ok = false;
              d = "restriction to open set breaks " + c.name + ": " + c.detail;
            }
        } catch (const Error& e) {
          ok = false;
          d = e.what();
        }
      }
    }
    add("filtration", ok, d);
  }
  if (fdatum) {
    bool ok = coeff.is_unit(fdatum->c);
    std::string d = ok ? "" : "weight c is not invertible";
    std::set<std::string> all;
    for (auto& s : fdatum->x0) all.insert(s);
    for (auto& s : fdatum->xeta) {
      if (all.count(s)) {
        ok = false;
        d = "stratum " + s + " in both parts";
      }
      all.insert(s);
    }
    if (static_cast<int>(all.size()) != nstrata()) {
      ok = false;
      d = "f-datum does not partition the strata";
    }
    if (ok && !is_declared_open(*this, fdatum->xeta)) {
      ok = false;
      d = "generic part is not a declared open set";
    }
    if (ok) {
      // homs among special-fiber strata must be R-free
      int bound = max_kill_degree(*this) + 2;
      for (int b = 0; b < nb; ++b) {
        bool sp = std::count(fdatum->x0.begin(), fdatum->x0.end(), strata[basis[b].src].id) &&
                  std::count(fdatum->x0.begin(), fdatum->x0.end(), strata[basis[b].dst].id);
        if (sp && !xi_regular(*this, b, bound)) {
          ok = false;
          d = "special fiber Hom " + basis[b].name + " is not R-free";
        }
      }
    }
    add("f_datum", ok, d);
  }
  rep.r_free = r_free();
  rep.r_trivial = r_trivial();
  return rep;
}

bool is_declared_open(const Presentation& P, const std::vector<std::string>& open) {
  std::set<std::string> want(open.begin(), open.end());
  if (static_cast<int>(want.size()) == P.nstrata()) return true;
  for (const auto& U : P.filtration)
    if (std::set<std::string>(U.strata.begin(), U.strata.end()) == want) return true;
  return false;
}

PresPtr restrict_to(const PresPtr& P, const std::vector<std::string>& open) {
  std::set<std::string> want(open.begin(), open.end());
  if (static_cast<int>(want.size()) == P->nstrata()) {
    bool all = true;
    for (auto& s : P->strata) all = all && want.count(s.id);
    if (all) return P;
  }
  const OpenSet* decl = nullptr;
  for (const auto& U : P->filtration)
    if (std::set<std::string>(U.strata.begin(), U.strata.end()) == want) decl = &U;
  if (!decl) throw ScopeError("open set not declared in the filtration of " + P->name);
  auto R = std::make_shared<Presentation>();
  R->name = P->name + "|{";
  {
    bool first = true;
    for (const auto& s : P->strata)
      if (want.count(s.id)) {
        R->name += (first ? "" : ",") + s.id;
        first = false;
      }
    R->name += "}";
  }
  R->coeff = P->coeff;
  R->vars = P->vars;
  R->xi = P->xi;
  std::vector<int> smap(P->nstrata(), -1);
  for (int s = 0; s < P->nstrata(); ++s)
    if (want.count(P->strata[s].id)) {
      smap[s] = R->nstrata();
      Stratum st = P->strata[s];
      std::vector<std::string> cl;
      for (auto& c : st.closure_leq)
        if (want.count(c)) cl.push_back(c);
      st.closure_leq = cl;
      R->strata.push_back(st);
      R->parent_strata.push_back(st.id);
    }
  std::vector<int> bmap(P->nbasis(), -1);
  for (int b = 0; b < P->nbasis(); ++b) {
    const auto& hb = P->basis[b];
    if (smap[hb.src] < 0 || smap[hb.dst] < 0) continue;
    HomBasis nb = hb;
    nb.src = smap[hb.src];
    nb.dst = smap[hb.dst];
    auto it = decl->kills.find(hb.name);
    if (it != decl->kills.end()) nb.kills = it->second;
    bool dead = false;
    for (const auto& k : nb.kills) dead = dead || mono_degree(k) == 0;
    if (dead) continue;
    bmap[b] = R->nbasis();
    R->basis.push_back(nb);
  }
  for (int s = 0; s < P->nstrata(); ++s)
    if (smap[s] >= 0) {
      if (bmap[P->identity[s]] < 0) throw ScopeError("identity of " + P->strata[s].id + " dies under restriction");
      R->identity.push_back(bmap[P->identity[s]]);
    }
  R->finalize();
  const int nb = R->nbasis();
  R->comp.assign(nb * nb, {});
  for (int g = 0; g < P->nbasis(); ++g) {
    if (bmap[g] < 0) continue;
    for (int f = 0; f < P->nbasis(); ++f) {
      if (bmap[f] < 0) continue;
      BasisPoly acc;
      for (const auto& t : P->compose(g, f))
        if (bmap[t.b] >= 0) add_reduced(*R, acc, bmap[t.b], t.q, t.c);
      auto& out = R->comp[bmap[g] * nb + bmap[f]];
      for (const auto& [k, c] : acc) out.push_back({k.second, c, k.first});
    }
  }
  if (P->has_duality) {
    R->has_duality = true;
    for (int s = 0; s < P->nstrata(); ++s)
      if (smap[s] >= 0) {
        int d = smap[P->dual_object[s]];
        if (d < 0) throw ScopeError("duality leaves the open set");
        R->dual_object.push_back(d);
      }
    for (int b = 0; b < P->nbasis(); ++b)
      if (bmap[b] >= 0) R->dual_basis.push_back({bmap[P->dual_basis[b].first], P->dual_basis[b].second});
  }
  for (const auto& U : P->filtration) {
    bool inside = true;
    for (auto& s : U.strata) inside = inside && want.count(s);
    if (!inside || U.strata.size() == want.size()) continue;
    OpenSet V = U;
    std::map<std::string, std::vector<Mono>> ks;
    for (auto& [n, k] : U.kills) {
      auto b = P->basis_index(n);
      if (bmap[b] >= 0) ks[n] = k;
    }
    V.kills = ks;
    R->filtration.push_back(V);
  }
  if (P->fdatum) {
    // the datum only survives when nothing is removed from the special fiber
    bool keep = true;
    for (auto& s : P->fdatum->x0) keep = keep && want.count(s);
    if (keep) R->fdatum = P->fdatum;
  }
  R->finalize();
  return R;
}

}  // namespace monocycle
