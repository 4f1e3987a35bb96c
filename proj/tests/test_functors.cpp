#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "monocycle/errors.hpp"
#include "monocycle/functors.hpp"
#include "monocycle/nearby.hpp"
#include "monocycle/reduction.hpp"
#include "monocycle/solver.hpp"

using namespace monocycle;
namespace fx = monocycle::fixtures;

namespace {

bool isomorphic(const Object& A, const Object& B) {
  Object a = minimize(A).obj, b = minimize(B).obj;
  return a.size() == b.size() && find_isomorphism(a, b).has_value();
}

Morphism power(const Object& F, const Morphism& N, int n) {
  Morphism acc = identity(F);
  for (int i = 0; i < n; ++i) acc = compose(twist_map(N, 2 * i), acc);
  return acc;
}

}  // namespace

TEST(Functors, ForgetDropsEquivariance) {
  auto P = builtin("A1_Gm");
  EXPECT_EQ(forget(fx::gm_der(P, Flavor::Eq)), fx::gm_der(P, Flavor::Con));
  EXPECT_THROW(forget(fx::con_der(P)), FlavorError);
  Object E = parity_object(P, Flavor::Eq, 1);
  EXPECT_EQ(forget_map(identity(E)), identity(forget(E)));
}

TEST(Functors, MonOfTheConstructibleDisplay) {
  auto P = builtin("A1_Gm");
  Object M = mon(fx::con_der(P));
  EXPECT_EQ(M, fx::mon_der2(P));
  EXPECT_EQ(M.cells(), mon_cells(fx::con_der(P).cells()));
  EXPECT_EQ(mon_map(identity(fx::con_der(P))), identity(M));
  EXPECT_THROW(mon(fx::mon_der1(P)), FlavorError);
}

TEST(Functors, MonDoublesAMinimalObject) {
  auto P = builtin("A1_Gm");
  Object M = minimize(mon(fx::gm_der(P, Flavor::Con))).obj;
  EXPECT_EQ(M.size(), 4);
  EXPECT_NO_THROW(check_object(M));
}

TEST(Functors, FirstJordanBlockIsMonFor) {
  auto A = builtin("A1_minus_0");
  Object k = parity_object(A, Flavor::Eq, 0);
  EXPECT_TRUE(isomorphic(jordan_n(k, 1), mon(forget(k))));
  // J_2 is not Mon For: its monodromy survives up to homotopy
  Object J2 = jordan_n(k, 2);
  EXPECT_FALSE(null_homotopic(J2, twist(J2, 2), monodromy(J2)));
  EXPECT_THROW(jordan(parity_object(builtin("A1_Gm"), Flavor::Eq, 0)), TrivialityError);
}

TEST(Functors, MonodromyOnJordanBlocksIsNilpotentOfExactOrder) {
  auto A = builtin("A1_minus_0");
  Object k = parity_object(A, Flavor::Eq, 0);
  for (int n = 1; n <= 3; ++n) {
    Object J = jordan_n(k, n);
    Morphism N = monodromy(J);
    EXPECT_TRUE(is_chain_map(J, twist(J, 2), N));
    EXPECT_TRUE(null_homotopic(J, twist(J, 2 * n), power(J, N, n))) << n;
    EXPECT_FALSE(null_homotopic(J, twist(J, 2 * (n - 1)), power(J, N, n - 1))) << n;
  }
}

TEST(Functors, JordanTrianglesAreDistinguished) {
  auto A = builtin("A1_minus_0");
  Object k = parity_object(A, Flavor::Eq, 0);
  for (auto [n, m] : {std::pair{1, 1}, {1, 2}, {2, 1}}) {
    JordanTriangle T = jordan_triangle(k, n, m);
    EXPECT_TRUE(triangle_verifies(T.A, T.B, T.C, T.f, T.g)) << n << "," << m;
  }
}

TEST(Functors, ConstructibleMonodromyIsTheXibarPart) {
  auto P = builtin("A1_Gm");
  Object C = fx::con_der(P);
  Morphism N = monodromy(C);
  EXPECT_FALSE(N.is_zero());
  EXPECT_TRUE(is_chain_map(C, twist(C, 2), N));
  EXPECT_TRUE(monodromy(forget(fx::gm_der(P, Flavor::Eq))).is_zero());
}

TEST(Functors, CoiTriangleIdentities) {
  auto P = builtin("A1_Gm");
  for (const Object& G : {fx::mon_der1(P), fx::mon_der2(P)}) {
    Object C = coi(G);
    EXPECT_EQ(compose(coi_counit(C), coi_map(coi_unit(G))), identity(C));
    Object MF = mon(forget(C));
    EXPECT_EQ(compose(mon_map(forget_map(coi_counit(C))), coi_unit(MF)), identity(MF));
  }
  EXPECT_THROW(coi(fx::con_der(P)), FlavorError);
}

TEST(Functors, InvIsCoiUpToShiftAndTwist) {
  auto P = builtin("A1_Gm");
  for (const Object& G : {fx::mon_der1(P), fx::mon_der2(P), mon(parity_object(P, Flavor::Con, 1))}) {
    Morphism w = inv_coi_witness(G);
    Object I = inv(G), C = shift(twist(coi(G), 2), -1);
    EXPECT_TRUE(is_chain_map(I, C, w));
    EXPECT_TRUE(verify_equivalence(I, C, w).has_value());
  }
}

TEST(Functors, VerdierCommutesWithMon) {
  auto P = builtin("A1_Gm");
  for (const Object& F : {fx::con_der(P), fx::gm_der(P, Flavor::Con), parity_object(P, Flavor::Con, 0, 1, 2)}) {
    Morphism w = mon_dual_witness(F);
    EXPECT_TRUE(verify_equivalence(mon(verdier(F)), verdier(mon(F)), w).has_value());
  }
  Object F = fx::con_der(P);
  EXPECT_EQ(verdier_map(identity(F)), identity(verdier(F)));
}

TEST(Functors, CollapseKillsXiAndXibar) {
  auto P = builtin("A1_Gm");
  Object G = collapse_nonequivariant(fx::gm_der(P, Flavor::Eq));
  EXPECT_EQ(G.size(), 2);
  EXPECT_NO_THROW(check_object(G));
  Object H = collapse_nonequivariant(fx::con_der(P));
  for (const auto& [kl, e] : H.d.m)
    for (const auto& [k, c] : e) EXPECT_EQ(k.e, 0);
  EXPECT_THROW(collapse_nonequivariant(parity_object(builtin("A1_minus_0"), Flavor::Eq, 0)), FreeError);
}
