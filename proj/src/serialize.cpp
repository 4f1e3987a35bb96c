#include "monocycle/serialize.hpp"

#include <fstream>
#include <sstream>

#include "monocycle/errors.hpp"
#include "monocycle/recollement.hpp"

namespace monocycle {

namespace {

std::string q_str(const Scalar& x) { return x.get_str(); }

Scalar q_parse(const json& v) {
  if (v.is_number_integer()) return Scalar(v.get<long>());
  if (!v.is_string()) throw ParseError("expected a rational as string, got " + v.dump());
  Scalar x;
  if (x.set_str(v.get<std::string>(), 10) != 0) throw ParseError("bad rational '" + v.get<std::string>() + "'");
  x.canonicalize();
  return x;
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

json cells_json(const Presentation& P, const std::vector<Cell>& cs) {
  json out = json::array();
  for (const auto& c : cs) out.push_back({{"stratum", P.strata[c.s].id}, {"shift", c.c}, {"twist", c.t}});
  return out;
}

std::string base_name(const std::string& n) { return n.substr(0, n.find('|')); }

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json presentation_to_json(const Presentation& P) {
  json j;
  j["name"] = P.name;
  j["coeff"] = P.coeff.name();
  j["vars"] = P.vars;
  json xi = json::array();
  for (const auto& c : P.xi) xi.push_back(q_str(c));
  j["xi"] = xi;
  json st = json::array();
  for (const auto& s : P.strata) st.push_back({{"id", s.id}, {"dim", s.dim}, {"closure", s.closure_leq}});
  j["strata"] = st;
  json bs = json::array();
  for (const auto& b : P.basis) {
    json kills = json::array();
    for (const auto& m : b.kills) kills.push_back(mono_str(m, P.vars));
    bs.push_back({{"name", b.name}, {"src", P.strata[b.src].id}, {"dst", P.strata[b.dst].id}, {"deg", b.deg},
                  {"kills", kills}});
  }
  j["basis"] = bs;
  json ids = json::array();
  for (int b : P.identity) ids.push_back(P.basis[b].name);
  j["identity"] = ids;
  json comp = json::array();
  for (int g = 0; g < P.nbasis(); ++g)
    for (int f = 0; f < P.nbasis(); ++f) {
      const auto& ts = P.compose(g, f);
      if (ts.empty()) continue;
      json terms = json::array();
      for (const auto& t : ts)
        terms.push_back({{"q", mono_str(t.q, P.vars)}, {"c", q_str(t.c)}, {"b", P.basis[t.b].name}});
      comp.push_back({{"g", P.basis[g].name}, {"f", P.basis[f].name}, {"terms", terms}});
    }
  j["composition"] = comp;
  if (P.has_duality) {
    json dobj = json::array(), dbas = json::array();
    for (int s : P.dual_object) dobj.push_back(P.strata[s].id);
    for (const auto& [b, sg] : P.dual_basis) dbas.push_back({P.basis[b].name, q_str(sg)});
    j["duality"] = {{"objects", dobj}, {"basis", dbas}};
  }
  json filt = json::array();
  for (const auto& o : P.filtration) {
    json kills = json::object();
    for (const auto& [n, ms] : o.kills) {
      json a = json::array();
      for (const auto& m : ms) a.push_back(mono_str(m, P.vars));
      kills[n] = a;
    }
    filt.push_back({{"strata", o.strata}, {"kills", kills}});
  }
  j["filtration"] = filt;
  if (P.fdatum) j["fdatum"] = {{"x0", P.fdatum->x0}, {"xeta", P.fdatum->xeta}, {"c", q_str(P.fdatum->c)}};
  if (!P.parent_strata.empty()) j["parent_strata"] = P.parent_strata;
  return j;
}

PresPtr presentation_from_json(const json& j) {
  auto P = std::make_shared<Presentation>();
  P->name = field<std::string>(j, "name");
  P->coeff = CoeffRing::parse(field<std::string>(j, "coeff"));
  P->vars = field<std::vector<std::string>>(j, "vars");
  for (const auto& c : field<json>(j, "xi")) P->xi.push_back(P->coeff.normalize(q_parse(c)));
  for (const auto& s : field<json>(j, "strata"))
    P->strata.push_back({field<std::string>(s, "id"), field<int>(s, "dim"),
                         s.value("closure", std::vector<std::string>{})});
  std::map<std::string, int> sid;
  for (int i = 0; i < P->nstrata(); ++i) sid[P->strata[i].id] = i;
  auto stratum = [&](const std::string& id) {
    auto it = sid.find(id);
    if (it == sid.end()) throw ParseError("unknown stratum '" + id + "'");
    return it->second;
  };
  for (const auto& b : field<json>(j, "basis")) {
    HomBasis hb;
    hb.name = field<std::string>(b, "name");
    hb.src = stratum(field<std::string>(b, "src"));
    hb.dst = stratum(field<std::string>(b, "dst"));
    hb.deg = field<int>(b, "deg");
    for (const auto& m : b.value("kills", json::array())) hb.kills.push_back(parse_mono(m.get<std::string>(), P->vars));
    P->basis.push_back(hb);
  }
  std::map<std::string, int> bid;
  for (int i = 0; i < P->nbasis(); ++i) bid[P->basis[i].name] = i;
  auto basis = [&](const std::string& n) {
    auto it = bid.find(n);
    if (it == bid.end()) throw ParseError("unknown basis element '" + n + "'");
    return it->second;
  };
  auto ids = field<std::vector<std::string>>(j, "identity");
  if (static_cast<int>(ids.size()) != P->nstrata()) throw ParseError("need one identity per stratum");
  for (const auto& n : ids) P->identity.push_back(basis(n));
  P->comp.assign(P->nbasis() * P->nbasis(), {});
  for (const auto& c : j.value("composition", json::array())) {
    int g = basis(field<std::string>(c, "g")), f = basis(field<std::string>(c, "f"));
    for (const auto& t : field<json>(c, "terms"))
      P->comp[g * P->nbasis() + f].push_back(
          {parse_mono(field<std::string>(t, "q"), P->vars), P->coeff.normalize(q_parse(t.at("c"))),
           basis(field<std::string>(t, "b"))});
  }
  if (j.contains("duality")) {
    P->has_duality = true;
    for (const auto& s : field<json>(j["duality"], "objects")) P->dual_object.push_back(stratum(s.get<std::string>()));
    for (const auto& p : field<json>(j["duality"], "basis"))
      P->dual_basis.push_back({basis(p.at(0).get<std::string>()), q_parse(p.at(1))});
  }
  for (const auto& o : j.value("filtration", json::array())) {
    OpenSet os;
    os.strata = field<std::vector<std::string>>(o, "strata");
    const json kills = o.value("kills", json::object());
    for (const auto& [n, ms] : kills.items()) {
      basis(n);
      for (const auto& m : ms) os.kills[n].push_back(parse_mono(m.get<std::string>(), P->vars));
    }
    P->filtration.push_back(os);
  }
  if (j.contains("fdatum")) {
    const json& f = j["fdatum"];
    P->fdatum = FDatum{field<std::vector<std::string>>(f, "x0"), field<std::vector<std::string>>(f, "xeta"),
                       q_parse(f.value("c", json("1")))};
  }
  P->parent_strata = j.value("parent_strata", std::vector<std::string>{});
  P->finalize();
  return P;
}

json morphism_to_json(const Morphism& f) {
  const Presentation& P = *f.P;
  json entries = json::array();
  for (const auto& [kl, e] : f.m) {
    json terms = json::array();
    for (const auto& [key, c] : e) {
      json t = {{"basis", P.basis[key.b].name}, {"q", mono_str(key.q, P.vars)}, {"coeff", q_str(c)}};
      if (key.a) t["r"] = key.a;
      if (key.e) t["xibar"] = key.e;
      terms.push_back(t);
    }
    entries.push_back({{"row", kl.first}, {"col", kl.second}, {"terms", terms}});
  }
  return {{"flavor", flavor_name(f.fl)}, {"deg", {f.deg.i, f.deg.j}}, {"src", cells_json(P, f.src)},
          {"dst", cells_json(P, f.dst)}, {"entries", entries}};
}

namespace {

std::vector<Cell> cells_from(const json& j, const Presentation& P) {
  std::vector<Cell> out;
  for (const auto& c : j) out.push_back({P.stratum_index(field<std::string>(c, "stratum")), c.value("shift", 0), c.value("twist", 0)});
  return out;
}

EntryMatrix entries_from(const json& j, const Presentation& P, int nrow, int ncol) {
  EntryMatrix m;
  for (const auto& e : j) {
    int k = field<int>(e, "row"), l = field<int>(e, "col");
    if (k < 0 || k >= nrow || l < 0 || l >= ncol) throw ParseError("entry index out of range");
    for (const auto& t : field<json>(e, "terms")) {
      TermKey key{P.basis_index(field<std::string>(t, "basis")), parse_mono(t.value("q", std::string("1")), P.vars),
                  t.value("r", 0), t.value("xibar", 0)};
      Scalar c = P.coeff.normalize(q_parse(t.value("coeff", json("1"))));
      if (c != 0) m[{k, l}][key] += c;
    }
  }
  for (auto it = m.begin(); it != m.end();) {
    for (auto jt = it->second.begin(); jt != it->second.end();) jt = jt->second == 0 ? it->second.erase(jt) : std::next(jt);
    it = it->second.empty() ? m.erase(it) : std::next(it);
  }
  return m;
}

}  // namespace

json object_to_json(const Object& F) {
  const Presentation& P = *F.P();
  json j;
  j["presentation"] = base_name(P.name);
  j["coeff"] = P.coeff.name();
  if (!P.parent_strata.empty()) {
    std::vector<std::string> ids;
    for (const auto& s : P.strata) ids.push_back(s.id);
    j["open"] = ids;
  }
  j["flavor"] = flavor_name(F.fl());
  j["cells"] = cells_json(P, F.cells());
  j["differential"] = morphism_to_json(F.d)["entries"];
  return j;
}

Object object_from_json(const json& j, const PresResolver& resolve) {
  PresPtr P = resolve(field<std::string>(j, "presentation"), CoeffRing::parse(j.value("coeff", std::string("Q"))));
  if (j.contains("open")) P = open_part(P, field<std::vector<std::string>>(j, "open"));
  Flavor fl = parse_flavor(field<std::string>(j, "flavor"));
  auto cells = cells_from(field<json>(j, "cells"), *P);
  int n = static_cast<int>(cells.size());
  return make_object(P, fl, cells, entries_from(j.value("differential", json::array()), *P, n, n));
}

Morphism morphism_from_json(const json& j, const PresPtr& P) {
  Morphism f;
  f.P = P;
  f.fl = parse_flavor(field<std::string>(j, "flavor"));
  f.src = cells_from(field<json>(j, "src"), *P);
  f.dst = cells_from(field<json>(j, "dst"), *P);
  auto d = field<std::vector<int>>(j, "deg");
  if (d.size() != 2) throw ParseError("deg must have two entries");
  f.deg = {d[0], d[1]};
  f.m = entries_from(j.value("entries", json::array()), *P, static_cast<int>(f.dst.size()), static_cast<int>(f.src.size()));
  return f;
}

PresResolver builtin_resolver(const PresPtr& extra) {
  return [extra](const std::string& name, const CoeffRing& k) -> PresPtr {
    if (extra && base_name(extra->name) == name) {
      if (extra->coeff != k) throw ParseError("object coefficient ring " + k.name() + " differs from " + extra->coeff.name());
      return extra;
    }
    return builtin(name, k);
  };
}

std::string object_to_dot(const Object& F) {
  const Presentation& P = *F.P();
  std::ostringstream out;
  out << "digraph object {\n  rankdir=LR;\n  node [shape=box];\n";
  for (int i = 0; i < F.size(); ++i) out << "  c" << i << " [label=\"" << cell_str(P, F.cells()[i]) << "\"];\n";
  for (const auto& [kl, e] : F.d.m) {
    Morphism one = zero_morphism(F.P(), F.fl(), {F.cells()[kl.second]}, {F.cells()[kl.first]}, F.d.deg);
    for (const auto& [key, c] : e) one.add_term(0, 0, key, c);
    std::string lab = morphism_str(one);
    auto eq = lab.find("= ");
    lab = eq == std::string::npos ? lab : lab.substr(eq + 2);
    while (!lab.empty() && (lab.back() == '\n' || lab.back() == ' ')) lab.pop_back();
    // every differential entry is a [1]-arrow
    out << "  c" << kl.second << " -> c" << kl.first << " [label=\"" << lab << "\", style=dashed];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace monocycle
