#include "acceptance_suite.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "monocycle/algebra.hpp"
#include "monocycle/errors.hpp"
#include "monocycle/functors.hpp"
#include "monocycle/nearby.hpp"
#include "monocycle/perverse.hpp"
#include "monocycle/preimage.hpp"
#include "monocycle/recollement.hpp"
#include "monocycle/reduction.hpp"
#include "monocycle/solver.hpp"

namespace monocycle {

namespace fx = fixtures;

namespace {

// accumulates failures; a criterion passes when nothing was recorded
struct Ledger {
  std::vector<std::string> fails;
  std::vector<std::string> notes;
  void expect(bool ok, const std::string& what) {
    if (!ok) fails.push_back(what);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

bool all_ok(const std::vector<Check>& cs, Ledger& L, const std::string& where) {
  bool ok = true;
  for (const auto& c : cs)
    if (!c.ok) {
      L.expect(false, where + ": " + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"));
      ok = false;
    }
  return ok;
}

bool isomorphic(const Object& A, const Object& B) {
  Object a = minimize(A).obj, b = minimize(B).obj;
  if (a.size() != b.size()) return false;
  return find_isomorphism(a, b).has_value();
}

// ---- 1
void ring_cohomology(Ledger& L) {
  for (auto k : {CoeffRing::prime_field(2), CoeffRing::prime_field(3), CoeffRing::rationals(), CoeffRing::local_integers(2)})
    for (auto t : {AlgTag::A, AlgTag::Adual, AlgTag::B}) {
      auto H = dg_ring_cohomology(t, Window{}, k);
      for (const auto& [b, r] : H) {
        bool origin = b.i == 0 && b.j == 0;
        bool ok = origin ? (r.free_rank == 1 && r.torsion.empty()) : r.is_zero();
        L.expect(ok, std::string(tag_name(t)) + " over " + k.name() + " at (" + std::to_string(b.i) + "," +
                         std::to_string(b.j) + ")");
      }
      L.expect(H.count({0, 0}) == 1, std::string(tag_name(t)) + " window misses the origin");
    }
}

// ---- 2
void hom_computations(Ledger& L) {
  auto A = builtin("A1_minus_0");
  Object k = parity_object(A, Flavor::Con, 0);
  L.expect(hom_space(k, k, 1, -2).free_rank == 1, "Hom(k, k<-2>[1]) over A1 minus 0");
  auto P = builtin("A1_Gm");
  Object G = fx::mon_der1(P);
  for (int n : {0, 2, 4, 6, 8, 10}) L.expect(hom_space(G, G, 0, n).free_rank == 1, "End window rank 1 at n=" + std::to_string(n));
  for (int n : {-2, -4, 1, 3}) L.expect(hom_space(G, G, 0, n).is_zero(), "End window zero at n=" + std::to_string(n));
}

// ---- 3
void mon_concreteness(Ledger& L) {
  auto P = builtin("A1_Gm");
  L.expect(mon(fx::con_der(P)) == fx::mon_der2(P), "Mon of the constructible display differs from the monodromic one");
  HomWindow w = default_hom_window();
  int nonzero = 0;
  for (int a = 0; a < P->nstrata(); ++a)
    for (int b = 0; b < P->nstrata(); ++b) {
      Object Ea = parity_object(P, Flavor::Con, a), Eb = parity_object(P, Flavor::Con, b);
      Object Ma = mon(Ea), Mb = mon(Eb);
      auto hc = hom_table(Ea, Eb, w), hm = hom_table(Ma, Mb, w);
      for (const auto& [mn, r] : hc) {
        nonzero += !r.is_zero();
        L.expect(r == hm.at(mn), "Mon rank mismatch for " + P->strata[a].id + "," + P->strata[b].id + " at [" +
                                     std::to_string(mn.first) + "]<" + std::to_string(mn.second) + ">");
      }
    }
  L.expect(nonzero > 0, "all windowed Hom spaces vanish");
  L.note(std::to_string(nonzero) + " nonzero Hom spaces compared");
}

// ---- 4
void coi_adjunction_identities(Ledger& L) {
  auto P = builtin("A1_Gm");
  std::vector<Object> Gs{fx::mon_der1(P)};
  std::mt19937 rng(4);
  while (Gs.size() < 5) Gs.push_back(fx::random_object(P, Flavor::Mon, rng, 4));
  for (size_t i = 0; i < Gs.size(); ++i) {
    const Object& G = Gs[i];
    Object C = coi(G);
    Morphism u = coi_unit(G);
    Morphism first = compose(coi_counit(C), coi_map(u));
    L.expect(first == identity(C), "counit o Coi(unit) is not the identity on object " + std::to_string(i));
    Object F = C;  // equivariant
    Object MF = mon(forget(F));
    Morphism second = compose(mon_map(forget_map(coi_counit(F))), coi_unit(MF));
    L.expect(second == identity(MF), "Mon For(counit) o unit is not the identity on object " + std::to_string(i));
    L.expect(is_chain_map(G, mon(forget(C)), u), "unit is not a chain map on object " + std::to_string(i));
  }
}

// ---- 5
void recollement_checks(Ledger& L) {
  auto P = builtin("A1_Gm");
  auto PU = open_part(P, {"X1"});
  Object jE = j_shriek(parity_object(PU, Flavor::Eq, 0), P).obj;
  L.expect(fx::same_display(jE, fx::gm_der(P, Flavor::Eq)), "j_! E_X1 is not the two-cell display");
  for (auto name : {"A1_Gm", "A2_product"}) {
    auto X = builtin(name);
    for (const auto& U : open_chain(*X)) {
      if (U.empty() || static_cast<int>(U.size()) == X->nstrata()) continue;
      auto XU = open_part(X, U);
      auto Z = complement(*X, U);
      std::string where = std::string(name) + " over open of size " + std::to_string(U.size());
      for (Flavor fl : {Flavor::Eq, Flavor::Con}) {
        for (int s = 0; s < XU->nstrata(); ++s) {
          Object F = parity_object(XU, fl, s);
          Extension a = j_shriek(F, X), b = j_star(F, X);
          try {
            check_equivalence(F, j_restrict(a.obj, XU), a.unit);
            check_equivalence(F, j_restrict(b.obj, XU), b.unit);
          } catch (const Error& e) {
            L.expect(false, where + ": restriction of an extension: " + e.what());
          }
          if (fl == Flavor::Eq) {
            L.expect(isomorphic(forget(a.obj), j_shriek(forget(F), X).obj), where + ": For j_! != j_! For");
            L.expect(isomorphic(forget(b.obj), j_star(forget(F), X).obj), where + ": For j_* != j_* For");
          } else {
            L.expect(isomorphic(mon(a.obj), j_shriek(mon(F), X).obj), where + ": Mon j_! != j_! Mon");
            L.expect(isomorphic(mon(b.obj), j_star(mon(F), X).obj), where + ": Mon j_* != j_* Mon");
          }
        }
        for (int s = 0; s < X->nstrata(); ++s) {
          Object F = parity_object(X, fl, s);
          L.expect(j_restrict(mon(F), XU) == mon(j_restrict(F, XU)), where + ": j^* Mon != Mon j^*");
          if (fl == Flavor::Eq) L.expect(j_restrict(forget(F), XU) == forget(j_restrict(F, XU)), where + ": j^* For != For j^*");
          if (std::count(Z.begin(), Z.end(), X->strata[s].id)) {
            Object iF = i_push(F, Z);
            L.expect(j_restrict(iF, XU).size() == 0, where + ": j^* i_* is not zero");
          }
          SupportedObject S1 = i_upper_star(F, Z), S2 = i_upper_shriek(F, Z);
          L.expect(verify_support(S1) && verify_support(S2), where + ": gluing triangle cone is not supported on Z");
          if (fl == Flavor::Eq) {
            Object a = support_purify(i_upper_star(forget(F), Z)).obj, b = forget(support_purify(S1).obj);
            L.expect(isomorphic(a, b), where + ": For i^* != i^* For");
            Object c = support_purify(i_upper_shriek(forget(F), Z)).obj, d = forget(support_purify(S2).obj);
            L.expect(isomorphic(c, d), where + ": For i^! != i^! For");
          }
        }
      }
    }
  }
}

// ---- 6
void constructibility(Ledger& L) {
  std::mt19937 rng(6);
  int step2 = 0, step3 = 0, count = 0;
  auto Q = builtin("point"), Z2 = builtin("point", CoeffRing::local_integers(2)), T = builtin("A1_minus_0");
  auto run = [&](const Object& F, bool preimage) {
    ++count;
    std::string where = "corpus object " + std::to_string(count) + " over " + F.P()->name + "/" + F.P()->coeff.name();
    try {
      Decomposition D = decompose_single_stratum(F);
      check_trace(F, D.normal, D.trace);
      L.expect(verify_equivalence(F, D.normal, D.trace.to_min).has_value(), where + ": decomposition is not an equivalence");
      step2 += D.step2;
      step3 += D.step3;
      if (!preimage) return;
      MonPreimage pre = mon_preimage(F);
      check_equivalence(mon(pre.con), F, pre.equiv);
      MonPreimage back = mon_preimage(mon(pre.con));
      L.expect(isomorphic(back.con, pre.con), where + ": preimage of Mon is not the original");
    } catch (const Error& e) {
      L.expect(false, where + ": " + e.kind() + ": " + e.what());
    }
  };
  for (int i = 0; i < 8; ++i) run(fx::random_point_module(Q, rng, 4, i % 2 == 1), true);
  for (int i = 0; i < 6; ++i) run(fx::random_point_module(Z2, rng, 4, true), true);
  for (int i = 0; i < 6; ++i) run(fx::random_trivial_module(T, rng, 4), false);
  L.expect(step2 > 0, "Step 2 never fired");
  L.expect(step3 > 0, "Step 3 never fired");
  L.note(std::to_string(count) + " modules, step2=" + std::to_string(step2) + " step3=" + std::to_string(step3));
}

// ---- 7
void nearby_a1(Ledger& L) {
  auto P = builtin("A1_Gm");
  Object F = parity_object(generic_part(P), Flavor::Eq, 0);
  NearbyOutput o = psi(F, P);
  L.expect(o.psi.size() == 1 && o.psi.cells()[0] == Cell{0, 0, -1} && o.psi.d.is_zero(), "Psi(k) is not k_pt<-1>");
  L.expect(o.N_homotopy.has_value(), "N is not null-homotopic");
  all_ok(o.checks, L, "psi");
}

// ---- 8
void maxext_a1(Ledger& L) {
  auto P = builtin("A1_Gm");
  auto PU = generic_part(P);
  Object F = parity_object(PU, Flavor::Eq, 0);
  MaxExtOutput x = xi(F, P);
  L.expect(fx::same_display(x.xi, fx::con_der(P)), "Xi(k) is not the three-cell display");
  L.expect(x.alpha_exact, "alpha_+ alpha_- differs from the canonical map on the nose");
  all_ok(x.checks, L, "xi");
  MaxExtOutput y = xi(verdier(F), P);
  L.expect(isomorphic(verdier(x.xi), y.xi), "D Xi(F) is not Xi(D F)");
}

// ---- 9
void nearby_a2(Ledger& L) {
  auto P = builtin("A2_product");
  Object F = parity_object(generic_part(P), Flavor::Eq, 0);
  NearbyOutput o = psi(F, P);
  L.expect(fx::same_display(o.psi, fx::a2_psi_display(P)), "Psi(k) is not the four-cell display");
  L.expect(!o.N_homotopy.has_value() && !o.N_refutation.empty(), "N has no refutation certificate");
  Object p2 = twist(o.psi, 2), p4 = twist(o.psi, 4);
  Morphism N2 = compose(twist_map(o.N, 2), o.N);
  L.expect(null_homotopic(o.psi, p4, N2), "N^2 is not null-homotopic");
  L.note(std::string("N^2 ") + (N2.is_zero() ? "vanishes on the nose" : "vanishes up to homotopy"));
  all_ok(o.checks, L, "psi");
  (void)p2;
}

// ---- 10
void perversity(Ledger& L) {
  auto A = builtin("A1_Gm"), B = builtin("A2_product");
  for (auto P : {A, B}) {
    auto PU = generic_part(P);
    Object g = parity_object(PU, Flavor::Eq, 0);
    auto rep = check_j_exactness(P, {{"const", g}});
    L.expect(rep.pass, P->name + ": j-exactness");
    NearbyOutput o = psi(g, P);
    L.expect(interval_str(perverse_degrees(o.psi)) == "[0,0]", P->name + ": Psi is not perverse");
  }
  auto AU = generic_part(A);
  std::vector<Object> golden{parity_object(A, Flavor::Eq, 0), parity_object(A, Flavor::Eq, 1), fx::gm_der(A, Flavor::Eq),
                             j_star(parity_object(AU, Flavor::Eq, 0), A).obj};
  for (size_t i = 0; i < golden.size(); ++i) {
    const Object& F = golden[i];
    L.expect(is_perverse(F), "golden object " + std::to_string(i) + " is not perverse");
    L.expect(interval_str(perverse_degrees(F)) == interval_str(perverse_degrees(forget(F))),
             "forget changes perverse degrees of golden object " + std::to_string(i));
    Object Fs = shift(F, 1);
    L.expect(interval_str(perverse_degrees(Fs)) == interval_str(perverse_degrees(forget(Fs))),
             "forget changes perverse degrees of a shifted golden object " + std::to_string(i));
  }
  for (size_t i = 0; i < golden.size(); ++i)
    for (size_t j = 0; j < golden.size(); ++j)
      for (int n = -4; n <= 4; ++n) {
        ModuleRank e = hom_space(golden[i], golden[j], 0, n), c = hom_space(forget(golden[i]), forget(golden[j]), 0, n);
        L.expect(e == c, "For is not fully faithful on golden pair (" + std::to_string(i) + "," + std::to_string(j) +
                             ") at <" + std::to_string(n) + ">");
      }
}

// ---- 11
void vanishing_a1(Ledger& L) {
  auto P = builtin("A1_Gm");
  for (Object F : {parity_object(P, Flavor::Con, 1), fx::gm_der(P, Flavor::Con)}) {
    VanCycOutput v = phi(F);
    all_ok(v.checks, L, "phi");
    VanCycOutput w = phi(verdier(F));
    L.expect(isomorphic(verdier(v.phi), w.phi), "Phi(D F) is not D Phi(F)");
  }
}

// ---- 12
void property_suite(Ledger& L) {
  int cases = 0, nonzero = 0, cells = 0;
  std::mt19937 rng(12);
  auto k = CoeffRing::rationals();
  for (auto t : {AlgTag::A, AlgTag::Adual, AlgTag::B})
    for (int i = -3; i <= 3; ++i)
      for (int j = -6; j <= 6; j += 2) {
        auto ms = monomials_in(t, {i, j});
        if (ms.empty()) continue;
        RingElem a = RingElem::zero(t);
        for (const auto& m : ms) a = ring_add(a, RingElem::mono(t, m, std::uniform_int_distribution<int>(-3, 3)(rng)), k);
        L.expect(apply_kappa(apply_kappa(a, k), k).is_zero(), std::string("kappa^2 on ") + tag_name(t));
        ++cases;
      }
  for (auto kk : {CoeffRing::prime_field(2), CoeffRing::prime_field(3), CoeffRing::rationals(), CoeffRing::local_integers(2)}) {
    L.expect(ring_mul(omega(kk), omega(kk), kk) == theta(AlgTag::B), "omega^2 != Theta over " + kk.name());
    ++cases;
  }
  std::vector<PresPtr> Ps{builtin("A1_Gm"), builtin("A2_product"), builtin("A1_Gm", CoeffRing::local_integers(2))};
  for (int i = 0; i < 45; ++i) {
    const PresPtr& P = Ps[i % Ps.size()];
    Flavor fl = i % 3 == 0 ? Flavor::Eq : (i % 3 == 1 ? Flavor::Con : Flavor::Mon);
    Object F = fx::random_object(P, fl, rng, 4);
    L.expect(verdier(verdier(F)) == F, "D D != id on random object " + std::to_string(i));
    Minimized m = minimize(F);
    Minimized mm = minimize(m.obj);
    L.expect(mm.obj == m.obj && is_minimal(m.obj), "minimize is not idempotent on random object " + std::to_string(i));
    cases += 2;
  }
  for (int i = 0; i < 40; ++i) {
    const PresPtr& P = Ps[i % 2];
    Flavor fl = i % 2 ? Flavor::Con : Flavor::Eq;
    Object F = fx::random_object(P, fl, rng, 3), G = fx::random_object(P, fl, rng, 3);
    int m = std::uniform_int_distribution<int>(-2, 2)(rng), n = std::uniform_int_distribution<int>(-3, 3)(rng);
    int a = std::uniform_int_distribution<int>(-2, 2)(rng), b = std::uniform_int_distribution<int>(-2, 2)(rng);
    ModuleRank base = hom_space(F, G, m, n);
    nonzero += !base.is_zero();
    cells += F.size() + G.size();
    L.expect(hom_space(shift(F, a), shift(G, a), m, n) == base, "Hom not shift invariant");
    L.expect(hom_space(twist(F, b), twist(G, b), m, n) == base, "Hom not twist invariant");
    L.expect(hom_space(F, shift(G, a), m - a, n) == base, "Hom shift bookkeeping");
    L.expect(hom_space(F, twist(G, b), m, n - b) == base, "Hom twist bookkeeping");
    ++cases;
  }
  // long exact sequence of a cone, probed through Euler characteristics over the m-window
  for (int i = 0; i < 40; ++i) {
    const PresPtr& P = Ps[i % 2];
    Flavor fl = i % 2 ? Flavor::Con : Flavor::Eq;
    Object A = fx::random_object(P, fl, rng, 2), B = fx::random_object(P, fl, rng, 2), X = fx::random_object(P, fl, rng, 2);
    auto Z = cycle_basis(A, B, {0, 0});
    Morphism f = zero_morphism(P, fl, A.cells(), B.cells(), {0, 0});
    for (const auto& z : Z) f = add(f, scale(z, std::uniform_int_distribution<int>(-2, 2)(rng)));
    Object C = cone(A, B, f);
    for (int n = -3; n <= 3; ++n) {
      long chi = 0;
      for (int m = -8; m <= 8; ++m) {
        int sign = (m % 2 == 0) ? 1 : -1;
        nonzero += hom_space(X, C, m, n).free_rank > 0;
        chi += sign * (hom_space(X, B, m, n).free_rank - hom_space(X, A, m, n).free_rank - hom_space(X, C, m, n).free_rank);
      }
      L.expect(chi == 0, "triangle Euler characteristic probe at n=" + std::to_string(n));
    }
    ++cases;
  }
  L.expect(cases >= 200, "only " + std::to_string(cases) + " property cases");
  L.note(std::to_string(cases) + " cases, " + std::to_string(nonzero) + " nonzero Hom probes, " +
         std::to_string(cells) + " cells in the Hom equivariance corpus");
}

struct Criterion {
  int id;
  const char* name;
  double limit;
  void (*body)(Ledger&);
};

const Criterion kCriteria[] = {
    {1, "ring cohomology", 1, ring_cohomology},
    {2, "hom computations", 1, hom_computations},
    {3, "Mon concreteness and full faithfulness", 5, mon_concreteness},
    {4, "Coi adjunction identities", 5, coi_adjunction_identities},
    {5, "recollement", 30, recollement_checks},
    {6, "constructibility algorithm", 60, constructibility},
    {7, "nearby cycles on A1", 10, nearby_a1},
    {8, "maximal extension on A1", 10, maxext_a1},
    {9, "nearby cycles on A2", 60, nearby_a2},
    {10, "perversity", 60, perversity},
    {11, "vanishing cycles on A1", 30, vanishing_a1},
    {12, "property suite", 120, property_suite},
};

}  // namespace

std::string print_criterion(const CriterionResult& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2fs", r.seconds);
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name << ") " << buf << " [limit "
     << r.limit << "s]";
  if (!r.detail.empty()) os << ": " << r.detail;
  os << "\n";
  return os.str();
}

void run_acceptance(const std::function<void(const CriterionResult&)>& report) {
  for (const auto& c : kCriteria) {
    Ledger L;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(L);
    } catch (const Error& e) {
      L.expect(false, std::string(e.kind()) + ": " + e.what());
    } catch (const std::exception& e) {
      L.expect(false, e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CriterionResult r{c.id, c.name, L.fails.empty() && secs <= c.limit, secs, c.limit, ""};
    if (secs > c.limit) L.fails.push_back("over the time limit");
    std::string d;
    for (const auto& f : L.fails) d += (d.empty() ? "" : "; ") + f;
    if (L.fails.size() > 5) d = L.fails[0] + "; ... " + std::to_string(L.fails.size()) + " failures";
    for (const auto& n : L.notes) d += (d.empty() ? "" : "; ") + n;
    r.detail = d;
    report(r);
  }
}

}  // namespace monocycle
