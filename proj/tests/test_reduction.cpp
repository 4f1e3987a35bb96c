#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "monocycle/errors.hpp"
#include "monocycle/functors.hpp"
#include "monocycle/preimage.hpp"
#include "monocycle/reduction.hpp"
#include "monocycle/solver.hpp"

using namespace monocycle;
namespace fx = monocycle::fixtures;

namespace {

bool isomorphic(const Object& A, const Object& B) {
  Object a = minimize(A).obj, b = minimize(B).obj;
  return a.size() == b.size() && find_isomorphism(a, b).has_value();
}

}  // namespace

TEST(Reduction, ConeOfIdentityMinimizesToZero) {
  auto P = builtin("A1_Gm");
  for (const Object& F : {fx::con_der(P), parity_object(P, Flavor::Eq, 1)}) {
    Object C = cone(F, F, identity(F));
    Minimized m = minimize(C);
    EXPECT_EQ(m.obj.size(), 0);
    EXPECT_NO_THROW(check_trace(C, m.obj, m.trace));
    EXPECT_FALSE(m.trace.moves.empty());
  }
}

TEST(Reduction, TraceIdentities) {
  std::mt19937 rng(21);
  for (auto name : {"A1_Gm", "A2_product"})
    for (Flavor fl : {Flavor::Eq, Flavor::Con, Flavor::Mon})
      for (int i = 0; i < 3; ++i) {
        Object F = fx::random_object(builtin(name), fl, rng, 4);
        Minimized m = minimize(F);
        EXPECT_NO_THROW(check_trace(F, m.obj, m.trace));
        EXPECT_EQ(compose(m.trace.to_min, m.trace.from_min), identity(m.obj));
        EXPECT_TRUE(is_minimal(m.obj));
        EXPECT_EQ(minimize(m.obj).obj, m.obj);
        EXPECT_TRUE(verify_equivalence(F, m.obj, m.trace.to_min).has_value());
      }
}

TEST(Reduction, ElementaryMovesRefuseNonUnits) {
  auto Z = builtin("point", CoeffRing::local_integers(2));
  // differential 2 * id between two cells: not cancellable over Z(2)
  EntryMatrix d;
  d[{1, 0}][{Z->identity[0], Z->zero_mono(), 0, 0}] = 2;
  Object F = make_object(Z, Flavor::Eq, {{0, -1, 0}, {0, 0, 0}}, d);
  EXPECT_THROW(cancel_pair(F, 1, 0), StructuralError);
  EXPECT_TRUE(is_minimal(F));
  EXPECT_EQ(minimize(F).obj.size(), 2);
  auto Q = builtin("point");
  Object G = make_object(Q, Flavor::Eq, {{0, -1, 0}, {0, 0, 0}}, d);
  EXPECT_EQ(minimize(G).obj.size(), 0);
}

TEST(Reduction, PermuteCellsRoundTrip) {
  auto P = builtin("A1_Gm");
  Object F = fx::con_der(P);
  Minimized p = permute_cells(F, {2, 0, 1});
  EXPECT_EQ(p.obj.cells()[0], F.cells()[2]);
  EXPECT_NO_THROW(check_trace(F, p.obj, p.trace));
  EXPECT_TRUE(fx::same_display(p.obj, F));
}

TEST(Reduction, PeelTopOfTheConstructibleDisplay) {
  auto P = builtin("A1_Gm");
  Object F = fx::con_der(P);
  Peel pl = peel_top(F);
  ASSERT_EQ(pl.top.size(), 1);
  EXPECT_EQ(pl.top.cells()[0], (Cell{0, 0, -1}));
  EXPECT_EQ(layer_degree(pl.top.cells()[0]), 1);
  EXPECT_EQ(pl.rest.size(), 2);
  Object back = cone(shift(pl.rest, -1), pl.top, pl.connecting);
  EXPECT_TRUE(fx::same_display(back, F));
  EXPECT_THROW(peel_top(zero_object(P, Flavor::Con)), EmptyError);
  EXPECT_THROW(peel_top(fx::mon_der1(P)), FlavorError);
}

TEST(Reduction, DecompositionOfPointModules) {
  std::mt19937 rng(5);
  int step2 = 0, step3 = 0;
  for (auto k : {CoeffRing::rationals(), CoeffRing::local_integers(2)})
    for (int i = 0; i < 6; ++i) {
      auto P = builtin("point", k);
      Object F = fx::random_point_module(P, rng, 4, true);
      Decomposition D = decompose_single_stratum(F);
      EXPECT_NO_THROW(check_trace(F, D.normal, D.trace));
      EXPECT_EQ(D.normal.size(), 2 * static_cast<int>(D.bases.size()));
      EXPECT_TRUE(verify_equivalence(F, D.normal, D.trace.to_min).has_value());
      step2 += D.step2;
      step3 += D.step3;
    }
  EXPECT_GT(step2, 0);
  EXPECT_GT(step3, 0);
}

TEST(Reduction, DecompositionRejectsBadInput) {
  auto P = builtin("A1_Gm");
  EXPECT_THROW(decompose_single_stratum(fx::con_der(P)), FlavorError);
  EXPECT_THROW(decompose_single_stratum(fx::mon_der2(P)), StructuralError);
}

TEST(Preimage, RecoversTheConstructibleDisplay) {
  auto P = builtin("A1_Gm");
  for (const Object& G : {fx::con_der(P), fx::gm_der(P, Flavor::Con), parity_object(P, Flavor::Con, 1, 1, -1)}) {
    MonPreimage pre = mon_preimage(mon(G));
    EXPECT_NO_THROW(check_equivalence(mon(pre.con), mon(G), pre.equiv));
    EXPECT_TRUE(isomorphic(pre.con, G));
  }
}

TEST(Preimage, PointModules) {
  std::mt19937 rng(8);
  auto P = builtin("point", CoeffRing::local_integers(2));
  for (int i = 0; i < 5; ++i) {
    Object F = fx::random_point_module(P, rng, 4, true);
    MonPreimage pre = mon_preimage(F);
    EXPECT_NO_THROW(check_equivalence(mon(pre.con), F, pre.equiv));
  }
}

TEST(Preimage, TheMonodromicTwoCellDisplayIsNotInTheImage) {
  auto P = builtin("A1_Gm");
  EXPECT_THROW(mon_preimage(fx::mon_der1(P)), FreeError);
  EXPECT_THROW(mon_preimage(parity_object(builtin("A1_minus_0"), Flavor::Con, 0)), FlavorError);
}

TEST(Preimage, FullnessOnMaps) {
  auto P = builtin("A1_Gm");
  Object A = parity_object(P, Flavor::Con, 1, 1), B = parity_object(P, Flavor::Con, 0, 0, -1);
  Morphism f = zero_morphism(P, Flavor::Con, A.cells(), B.cells(), {0, 0});
  f.add_term(0, 0, fx::key(*P, "eps"), 1);
  Morphism g = mon_map(f);
  Morphism h = mon_preimage_map(A, B, g);
  EXPECT_TRUE(is_chain_map(A, B, h));
  EXPECT_TRUE(find_homotopy_between(mon(A), mon(B), mon_map(h), g).has_value());
  EXPECT_TRUE(find_homotopy_between(A, B, h, f).has_value());
}
