#include <gtest/gtest.h>

#include <cstdlib>

#include "fixtures.hpp"
#include "monocycle/errors.hpp"
#include "monocycle/functors.hpp"
#include "monocycle/solver.hpp"

using namespace monocycle;
namespace fx = monocycle::fixtures;

namespace {

// the single-entry map eps: E_X1[-1] -> E_pt<-1>
Morphism eps_map(const PresPtr& P, Flavor fl) {
  Morphism f = zero_morphism(P, fl, {{1, 1, 0}}, {{0, 0, -1}}, {0, 0});
  f.add_term(0, 0, fx::key(*P, "eps"), 1);
  return f;
}

}  // namespace

TEST(Complex, GoldenObjectsAreValid) {
  auto P = builtin("A1_Gm");
  for (Flavor fl : {Flavor::Eq, Flavor::Con}) EXPECT_NO_THROW(check_object(fx::gm_der(P, fl)));
  EXPECT_NO_THROW(check_object(fx::con_der(P)));
  EXPECT_NO_THROW(check_object(fx::mon_der1(P)));
  EXPECT_NO_THROW(check_object(fx::mon_der2(P)));
  EXPECT_NO_THROW(check_object(fx::a2_psi_display(builtin("A2_product"))));
  EXPECT_NO_THROW(check_object(fx::point_pair(builtin("point"), 0, 0)));
}

TEST(Complex, CurvatureIsEnforced) {
  auto P = builtin("A1_Gm");
  // without the r eta return arrow, d^2 misses Theta
  EntryMatrix d;
  d[{1, 0}][fx::key(*P, "eps")] = 1;
  EXPECT_THROW(make_object(P, Flavor::Mon, {{1, 0, 0}, {0, 0, -1}}, d), CurvatureError);
  // without the -xibar id corner, kappa(d) is not cancelled
  EntryMatrix c;
  c[{1, 0}][fx::key(*P, "eta")] = 1;
  c[{2, 1}][fx::key(*P, "eps")] = 1;
  EXPECT_THROW(make_object(P, Flavor::Con, {{0, 0, 1}, {1, 0, 0}, {0, 0, -1}}, c), CurvatureError);
}

TEST(Complex, FlavorRestrictsTerms) {
  auto P = builtin("A1_Gm");
  EXPECT_FALSE(flavor_allows(Flavor::Eq, fx::key(*P, "id_pt", 0, 1)));
  EXPECT_TRUE(flavor_allows(Flavor::Con, fx::key(*P, "id_pt", 0, 1)));
  EXPECT_FALSE(flavor_allows(Flavor::Con, fx::key(*P, "id_pt", 1, 0)));
  EXPECT_TRUE(flavor_allows(Flavor::Mon, fx::key(*P, "id_pt", 1, 0)));
  EXPECT_EQ(parse_flavor("constructible"), Flavor::Con);
  EXPECT_THROW(parse_flavor("sheafy"), ParseError);
}

// [1] lowers c; xibar terms keep their sign so that d^2 + kappa(d) is preserved
TEST(Complex, ShiftNegatesTheDifferential) {
  auto P = builtin("A1_Gm");
  Object F = fx::con_der(P);
  Object G = shift(F, 1);
  for (int i = 0; i < F.size(); ++i) EXPECT_EQ(G.cells()[i].c, F.cells()[i].c - 1);
  EXPECT_EQ(G.d.m.size(), F.d.m.size());
  for (const auto& [kl, e] : F.d.m)
    for (const auto& [k, c] : e) EXPECT_EQ(G.d.at(kl.first, kl.second)->at(k), k.e ? c : -c);
  EXPECT_EQ(shift(G, -1), F);
  EXPECT_EQ(twist(twist(F, 3), -3), F);
}

TEST(Complex, ConeOfEpsIsTheTwoCellDisplay) {
  auto P = builtin("A1_Gm");
  for (Flavor fl : {Flavor::Eq, Flavor::Con}) {
    Object A = parity_object(P, fl, 1, 1), B = parity_object(P, fl, 0, 0, -1);
    Morphism f = eps_map(P, fl);
    ASSERT_TRUE(is_chain_map(A, B, f));
    EXPECT_TRUE(fx::same_display(cone(A, B, f), fx::gm_der(P, fl)));
    Triangle T = cone_triangle(A, B, f);
    EXPECT_TRUE(is_chain_map(T.B, T.C, T.g));
    EXPECT_TRUE(null_homotopic(T.A, T.C, compose(T.g, T.f)));
  }
}

TEST(Complex, ComposeAndIdentities) {
  auto P = builtin("A1_Gm");
  Object F = fx::mon_der2(P);
  Morphism id = identity(F);
  EXPECT_EQ(compose(id, id), id);
  EXPECT_TRUE(d_hom(F, F, id).is_zero());
  EXPECT_TRUE(sub(id, id).is_zero());
  EXPECT_EQ(scale(id, 2), add(id, id));
  EXPECT_TRUE(curvature_defect(F).is_zero());
}

TEST(Complex, HomRanksOverTheFreeOrbit) {
  auto A = builtin("A1_minus_0");
  Object k = parity_object(A, Flavor::Con, 0);
  EXPECT_EQ(hom_space(k, k, 0, 0).free_rank, 1);
  EXPECT_EQ(hom_space(k, k, 1, -2).free_rank, 1);
  EXPECT_TRUE(hom_space(k, k, 1, 0).is_zero());
  EXPECT_TRUE(hom_space(k, k, 2, -4).is_zero());
}

TEST(Complex, MonodromicEndomorphismsArePolynomial) {
  auto P = builtin("A1_Gm");
  Object G = fx::mon_der1(P);
  for (int n = 0; n <= 8; n += 2) EXPECT_EQ(hom_space(G, G, 0, n).free_rank, 1) << n;
  for (int n : {-2, 1, 3}) EXPECT_TRUE(hom_space(G, G, 0, n).is_zero()) << n;
}

TEST(Complex, HomotopyRefutation) {
  auto P = builtin("point");
  Object E = parity_object(P, Flavor::Con, 0);
  SparseRow cert;
  EXPECT_FALSE(find_homotopy(E, E, identity(E), &cert).has_value());
  EXPECT_FALSE(cert.empty());
  Object C = fx::point_pair(P, 0, 0);
  auto h = contracting_homotopy(C);
  ASSERT_TRUE(h.has_value());
  EXPECT_EQ(d_hom(C, C, *h), identity(C));
}

TEST(Complex, HomTableIsEquivariant) {
  auto P = builtin("A1_Gm");
  Object F = fx::gm_der(P, Flavor::Eq), G = parity_object(P, Flavor::Eq, 1);
  HomWindow w{-3, 3, -4, 4};
  auto base = hom_table(F, G, w);
  auto moved = hom_table(shift(twist(F, 2), 1), shift(twist(G, 2), 1), w);
  EXPECT_EQ(base, moved);
  int nonzero = 0;
  for (const auto& [mn, r] : base) nonzero += !r.is_zero();
  EXPECT_GT(nonzero, 0);
  // extension by zero sees nothing on the closed point
  for (const auto& [mn, r] : hom_table(F, parity_object(P, Flavor::Eq, 0), w)) EXPECT_TRUE(r.is_zero());
}

TEST(Complex, VerdierIsAnInvolution) {
  auto P = builtin("A1_Gm");
  for (const Object& F : {fx::gm_der(P, Flavor::Eq), fx::con_der(P), fx::mon_der1(P), fx::mon_der2(P)}) {
    Object D = verdier(F);
    EXPECT_NO_THROW(check_object(D));
    EXPECT_EQ(verdier(D), F);
  }
  auto Q = builtin("A1_minus_0");
  EXPECT_TRUE(verdier(parity_object(Q, Flavor::Con, 0)) == parity_object(Q, Flavor::Con, 0));
}

TEST(Complex, CellUnits) {
  auto P = builtin("A1_Gm");
  Object F = fx::con_der(P);
  EntryMatrix d = F.d.m;
  for (auto& [kl, e] : d)
    if (kl.second == 0)
      for (auto& [k, c] : e) c *= 3;
  Object G = make_object(P, Flavor::Con, F.cells(), d);
  std::vector<Scalar> u;
  EXPECT_TRUE(equal_up_to_cell_units(F, G, &u));
  EXPECT_EQ(u.size(), 3u);
  EXPECT_FALSE(equal_up_to_cell_units(F, shift(F, 2)));
}

TEST(Complex, WindowFromEnvironment) {
  setenv("MONOCYCLE_WINDOW", "2,5", 1);
  HomWindow w = default_hom_window();
  EXPECT_EQ(w.mmin, -2);
  EXPECT_EQ(w.nmax, 5);
  setenv("MONOCYCLE_WINDOW", "junk", 1);
  EXPECT_EQ(default_hom_window().mmax, HomWindow{}.mmax);
  unsetenv("MONOCYCLE_WINDOW");
}
