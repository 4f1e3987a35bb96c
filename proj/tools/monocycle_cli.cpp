#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "acceptance_suite.hpp"
#include "monocycle/errors.hpp"
#include "monocycle/functors.hpp"
#include "monocycle/nearby.hpp"
#include "monocycle/perverse.hpp"
#include "monocycle/preimage.hpp"
#include "monocycle/recollement.hpp"
#include "monocycle/reduction.hpp"
#include "monocycle/serialize.hpp"

using namespace monocycle;

namespace {

struct Opts {
  std::string builtin_name, presentation_path, coeff = "Q", flavor = "constructible", src, dst, input, functor,
      format = "text", open, closed;
  int shift = 0, twist = 0;
  bool shift_set = false, twist_set = false;
};

// usage problems exit with 2, failed verifications with 1
struct UsageError : Error {
  using Error::Error;
};

PresPtr load_presentation(const Opts& o) {
  if (!o.presentation_path.empty()) return presentation_from_json(json::parse(read_file(o.presentation_path)));
  if (o.builtin_name.empty()) throw UsageError("need --builtin or --presentation");
  return builtin(o.builtin_name, CoeffRing::parse(o.coeff));
}

int top_stratum(const Presentation& P) { return P.nstrata() - 1; }

// a file path, or a name: const/constN (the dense stratum), E_<id> or <id>
Object resolve_object(const std::string& what, const PresPtr& P, Flavor fl) {
  if (what.empty()) throw UsageError("missing object");
  if (std::filesystem::exists(what)) {
    Object F = object_from_json(json::parse(read_file(what)), builtin_resolver(P));
    return F;
  }
  if (what.rfind("const", 0) == 0) return parity_object(P, fl, top_stratum(*P));
  std::string id = what.rfind("E_", 0) == 0 ? what.substr(2) : what;
  for (int s = 0; s < P->nstrata(); ++s)
    if (P->strata[s].id == id) return parity_object(P, fl, s);
  throw UsageError("unknown object '" + what + "' over " + P->name);
}

std::string rank_str(const ModuleRank& r) {
  std::string s = std::to_string(r.free_rank);
  for (int k : r.torsion) s += " + torsion(" + std::to_string(k) + ")";
  return s;
}

json rank_json(const ModuleRank& r) { return {{"rank", r.free_rank}, {"torsion", r.torsion}}; }

json checks_json(const std::vector<Check>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return a;
}

bool all_ok(const std::vector<Check>& cs) {
  for (const auto& c : cs)
    if (!c.ok) return false;
  return true;
}

std::vector<std::string> split_ids(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string x;
  while (std::getline(ss, x, ','))
    if (!x.empty()) out.push_back(x);
  return out;
}

void emit_object(const Object& F, const std::string& format) {
  if (format == "json")
    std::cout << object_to_json(F).dump(2) << "\n";
  else if (format == "dot")
    std::cout << object_to_dot(F);
  else
    std::cout << object_str(F);
}

int cmd_validate(const Opts& o) {
  PresPtr P = load_presentation(o);
  ValidationReport r = P->validate();
  if (o.format == "json") {
    json a = json::array();
    for (const auto& c : r.checks) a.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    std::cout << json{{"presentation", P->name}, {"ok", r.ok()}, {"r_free", r.r_free}, {"r_trivial", r.r_trivial},
                      {"checks", a}}
                     .dump(2)
              << "\n";
  } else {
    for (const auto& c : r.checks)
      std::cout << (c.ok ? "ok   " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    std::cout << P->name << ": " << (r.ok() ? "pass" : "fail") << " (R-free " << r.r_free << ", R-trivial "
              << r.r_trivial << ")\n";
  }
  return r.ok() ? 0 : 1;
}

int cmd_show(const Opts& o) {
  PresPtr P = load_presentation(o);
  if (!o.input.empty()) {
    emit_object(resolve_object(o.input, P, parse_flavor(o.flavor)), o.format);
    return 0;
  }
  if (o.format == "json") {
    std::cout << presentation_to_json(*P).dump(2) << "\n";
    return 0;
  }
  std::cout << P->name << " over " << P->coeff.name() << "\nstrata:";
  for (const auto& s : P->strata) std::cout << " " << s.id << "(dim " << s.dim << ")";
  std::cout << "\nbasis:\n";
  for (const auto& b : P->basis)
    std::cout << "  " << b.name << ": " << P->strata[b.src].id << " -> " << P->strata[b.dst].id << " deg " << b.deg
              << (b.kills.empty() ? "" : " kills " + std::to_string(b.kills.size())) << "\n";
  if (P->fdatum) {
    std::cout << "f-datum: special";
    for (const auto& s : P->fdatum->x0) std::cout << " " << s;
    std::cout << "; generic";
    for (const auto& s : P->fdatum->xeta) std::cout << " " << s;
    std::cout << "\n";
  }
  return 0;
}

int cmd_apply(const Opts& o) {
  PresPtr P = load_presentation(o);
  const std::string& f = o.functor;
  Flavor fl = parse_flavor(o.flavor);
  if (f == "j_shriek" || f == "j_star") {
    auto U = o.open.empty() ? (P->fdatum ? P->fdatum->xeta : std::vector<std::string>{}) : split_ids(o.open);
    if (U.empty()) throw UsageError("j_shriek/j_star need --open");
    Object F = resolve_object(o.input, open_part(P, U), fl);
    emit_object(f == "j_shriek" ? j_shriek(F, P).obj : j_star(F, P).obj, o.format);
    return 0;
  }
  Object F = resolve_object(o.input, P, fl);
  Object G;
  if (f == "forget") G = forget(F);
  else if (f == "mon") G = mon(F);
  else if (f == "coi") G = coi(F);
  else if (f == "inv") G = inv(F);
  else if (f == "verdier") G = verdier(F);
  else if (f == "jordan") G = jordan(F);
  else if (f == "shift") G = shift(F, o.shift);
  else if (f == "twist") G = twist(F, o.twist);
  else if (f == "mon_preimage") G = mon_preimage(F).con;
  else if (f == "i_upper_star" || f == "i_upper_shriek") {
    auto Z = o.closed.empty() ? (P->fdatum ? P->fdatum->x0 : std::vector<std::string>{}) : split_ids(o.closed);
    SupportedObject S = f == "i_upper_star" ? i_upper_star(F, Z) : i_upper_shriek(F, Z);
    Purified p = support_purify(S);
    if (!p.pure) throw PurificationError(p.diagnostic);
    G = p.obj;
  } else
    throw UsageError("unknown functor '" + f + "'");
  if (o.shift_set && f != "shift") G = shift(G, o.shift);
  if (o.twist_set && f != "twist") G = twist(G, o.twist);
  emit_object(G, o.format);
  return 0;
}

int cmd_hom(const Opts& o) {
  PresPtr P = load_presentation(o);
  Flavor fl = parse_flavor(o.flavor);
  Object F = resolve_object(o.src, P, fl), G = resolve_object(o.dst, P, fl);
  if (o.shift_set || o.twist_set) {
    ModuleRank r = hom_space(F, G, o.shift, o.twist);
    if (o.format == "json")
      std::cout << json{{"shift", o.shift}, {"twist", o.twist}, {"hom", rank_json(r)}}.dump(2) << "\n";
    else
      std::cout << "rank " << rank_str(r) << "\n";
    return 0;
  }
  auto table = hom_table(F, G, default_hom_window());
  if (o.format == "json") {
    json a = json::array();
    for (const auto& [mn, r] : table)
      if (!r.is_zero()) a.push_back({{"shift", mn.first}, {"twist", mn.second}, {"hom", rank_json(r)}});
    std::cout << a.dump(2) << "\n";
  } else {
    for (const auto& [mn, r] : table)
      if (!r.is_zero()) std::cout << "[" << mn.first << "]<" << mn.second << ">: " << rank_str(r) << "\n";
  }
  return 0;
}

int cmd_minimize(const Opts& o) {
  PresPtr P = load_presentation(o);
  Object F = resolve_object(o.input, P, parse_flavor(o.flavor));
  Minimized m = minimize(F);
  check_trace(F, m.obj, m.trace);
  emit_object(m.obj, o.format);
  return 0;
}

int cmd_perverse(const Opts& o) {
  PresPtr P = load_presentation(o);
  Object F = resolve_object(o.input, P, parse_flavor(o.flavor));
  DegreeInterval d = perverse_degrees(F);
  auto rows = perverse_degrees_by_stratum(F);
  if (o.format == "json") {
    json a = json::array();
    for (const auto& r : rows)
      a.push_back({{"stratum", r.stratum}, {"shriek", interval_str(r.shriek)}, {"star", interval_str(r.star)}});
    std::cout << json{{"degrees", interval_str(d)}, {"perverse", is_perverse(F)}, {"strata", a}}.dump(2) << "\n";
  } else {
    std::cout << "perverse degrees " << interval_str(d) << (is_perverse(F) ? " (perverse)" : "") << "\n";
    for (const auto& r : rows)
      std::cout << "  " << r.stratum << ": shriek " << interval_str(r.shriek) << ", star " << interval_str(r.star) << "\n";
  }
  return 0;
}

int cmd_nearby(const Opts& o) {
  PresPtr P = load_presentation(o);
  if (o.functor == "psi" || o.functor == "xi") {
    Object F = resolve_object(o.input, generic_part(P), Flavor::Eq);
    if (o.functor == "psi") {
      NearbyOutput n = psi(F, P);
      bool ok = all_ok(n.checks) && n.exactness.pass;
      if (o.format == "json") {
        std::cout << json{{"psi", object_to_json(n.psi)},
                          {"N", morphism_to_json(n.N)},
                          {"N_null_homotopic", n.N_homotopy.has_value()},
                          {"j_exact", n.exactness.pass},
                          {"checks", checks_json(n.checks)}}
                         .dump(2)
                  << "\n";
      } else if (o.format == "dot") {
        std::cout << object_to_dot(n.psi);
      } else {
        std::cout << object_str(n.psi) << "N: " << morphism_str(n.N)
                  << "N null-homotopic: " << (n.N_homotopy ? "yes" : "no") << "\n"
                  << "j-exactness: " << (n.exactness.pass ? "pass" : "fail") << "\n"
                  << checks_str(n.checks);
      }
      return ok ? 0 : 1;
    }
    MaxExtOutput x = xi(F, P);
    if (o.format == "json") {
      std::cout << json{{"xi", object_to_json(x.xi)},
                        {"alpha_minus", morphism_to_json(x.alpha_minus)},
                        {"alpha_plus", morphism_to_json(x.alpha_plus)},
                        {"beta_minus", morphism_to_json(x.beta_minus)},
                        {"beta_plus", morphism_to_json(x.beta_plus)},
                        {"alpha_exact", x.alpha_exact},
                        {"checks", checks_json(x.checks)}}
                       .dump(2)
                << "\n";
    } else if (o.format == "dot") {
      std::cout << object_to_dot(x.xi);
    } else {
      std::cout << object_str(x.xi) << "alpha_+ alpha_- equals the canonical map: " << (x.alpha_exact ? "yes" : "no")
                << "\n"
                << checks_str(x.checks);
    }
    return all_ok(x.checks) ? 0 : 1;
  }
  if (o.functor == "phi") {
    VanCycOutput v = phi(resolve_object(o.input, P, Flavor::Con));
    if (o.format == "json") {
      std::cout << json{{"phi", object_to_json(v.phi)},
                        {"can", morphism_to_json(v.can)},
                        {"var", morphism_to_json(v.var)},
                        {"N", morphism_to_json(v.N)},
                        {"checks", checks_json(v.checks)}}
                       .dump(2)
                << "\n";
    } else if (o.format == "dot") {
      std::cout << object_to_dot(v.phi);
    } else {
      std::cout << object_str(v.phi) << "can: " << morphism_str(v.can) << "var: " << morphism_str(v.var)
                << checks_str(v.checks);
    }
    return all_ok(v.checks) ? 0 : 1;
  }
  throw UsageError("--functor must be psi, xi or phi");
}

int cmd_selftest(const Opts& o) {
  bool ok = true;
  json a = json::array();
  run_acceptance([&](const CriterionResult& r) {
    ok = ok && r.pass;
    if (o.format == "json")
      a.push_back({{"criterion", r.id}, {"name", r.name}, {"pass", r.pass}, {"seconds", r.seconds}, {"detail", r.detail}});
    else
      std::cout << print_criterion(r) << std::flush;
  });
  if (o.format == "json") std::cout << a.dump(2) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monocycle: exact computations with graded parity objects"};
  app.require_subcommand(1);
  Opts o;
  auto common = [&](CLI::App* s) {
    s->add_option("--builtin", o.builtin_name, "builtin presentation")->check(CLI::IsMember(builtin_names()));
    s->add_option("--presentation", o.presentation_path, "presentation JSON file");
    s->add_option("--coeff", o.coeff, "coefficients: Q, Fp, Z(p)");
    s->add_option("--flavor", o.flavor, "equivariant, constructible or monodromic");
    s->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json", "dot"}));
  };
  std::map<std::string, std::function<int(const Opts&)>> run{
      {"validate", cmd_validate}, {"show", cmd_show},         {"apply", cmd_apply},   {"hom", cmd_hom},
      {"minimize", cmd_minimize}, {"perverse", cmd_perverse}, {"nearby", cmd_nearby}, {"selftest", cmd_selftest}};
  const std::map<std::string, std::string> about{
      {"validate", "check a presentation"},
      {"show", "print an object"},
      {"apply", "apply a functor to an object"},
      {"hom", "Hom ranks between two objects"},
      {"minimize", "cancel unit entries of the differential"},
      {"perverse", "perverse degrees, overall and by stratum"},
      {"nearby", "nearby, maximal extension or vanishing cycles"},
      {"selftest", "run the acceptance criteria"}};
  for (const auto& [name, fn] : run) {
    CLI::App* s = app.add_subcommand(name, about.at(name));
    common(s);
    if (name == "hom") {
      s->add_option("--src", o.src, "source object")->required();
      s->add_option("--dst", o.dst, "target object")->required();
    }
    if (name != "validate" && name != "selftest" && name != "hom") s->add_option("--input", o.input, "object name or JSON file");
    if (name == "apply" || name == "hom") {
      s->add_option_function<int>("--shift", [&](int v) { o.shift = v, o.shift_set = true; }, "cohomological shift [m]");
      s->add_option_function<int>("--twist", [&](int v) { o.twist = v, o.twist_set = true; }, "twist <n>");
    }
    if (name == "apply") {
      s->add_option("--functor", o.functor,
                    "forget, mon, coi, inv, verdier, jordan, shift, twist, mon_preimage, i_upper_star, "
                    "i_upper_shriek, j_shriek or j_star")
          ->required();
      s->add_option("--open", o.open, "comma separated open strata");
      s->add_option("--closed", o.closed, "comma separated closed strata");
    }
    if (name == "nearby") s->add_option("--functor", o.functor, "psi, xi or phi")->required()->check(CLI::IsMember({"psi", "xi", "phi"}));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  std::string which = app.get_subcommands().front()->get_name();
  try {
    return run.at(which)(o);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "ParseError: " << e.what() << "\n";
    return 2;
  } catch (const NameError& e) {
    std::cerr << "NameError: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.kind() << ": " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "ParseError: " << e.what() << "\n";
    return 2;
  }
}
