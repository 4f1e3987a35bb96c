#include <gtest/gtest.h>

#include "monocycle/complex.hpp"
#include "monocycle/errors.hpp"
#include "monocycle/recollement.hpp"
#include "monocycle/serialize.hpp"

using namespace monocycle;

namespace {

// g o f as a map monomial -> coefficient on a single basis element
std::map<Mono, Scalar> comp_on(const Presentation& P, const std::string& g, const std::string& f, const std::string& b) {
  std::map<Mono, Scalar> out;
  for (const auto& t : P.compose(P.basis_index(g), P.basis_index(f)))
    if (t.b == P.basis_index(b)) out[t.q] += t.c;
  return out;
}

std::map<Mono, Scalar> xi_on(const Presentation& P) {
  std::map<Mono, Scalar> out;
  for (const auto& [q, c] : xi_terms(P)) out[q] += c;
  return out;
}

}  // namespace

TEST(Presentation, BuiltinsValidate) {
  for (const auto& n : builtin_names())
    for (auto k : {CoeffRing::rationals(), CoeffRing::prime_field(2), CoeffRing::local_integers(2)}) {
      auto r = builtin(n, k)->validate();
      for (const auto& c : r.checks) EXPECT_TRUE(c.ok) << n << "/" << k.name() << ": " << c.name << " " << c.detail;
    }
}

TEST(Presentation, UnknownBuiltin) { EXPECT_THROW(builtin("A3"), NameError); }

TEST(Presentation, A1GmShape) {
  auto P = builtin("A1_Gm");
  EXPECT_EQ(P->nstrata(), 2);
  EXPECT_EQ(P->nbasis(), 4);
  EXPECT_EQ(P->basis[P->basis_index("eps")].deg, 1);
  EXPECT_EQ(P->basis[P->basis_index("eta")].deg, 1);
  EXPECT_EQ(P->strata[P->basis[P->basis_index("eps")].src].id, "X1");
  EXPECT_EQ(P->strata[P->basis[P->basis_index("eta")].dst].id, "X1");
  EXPECT_EQ(comp_on(*P, "eps", "eta", "id_pt"), xi_on(*P));
  EXPECT_EQ(comp_on(*P, "eta", "eps", "id_X1"), xi_on(*P));
  auto r = P->validate();
  EXPECT_TRUE(r.r_free);
  EXPECT_FALSE(r.r_trivial);
}

TEST(Presentation, A2PinnedRelation) {
  auto P = builtin("A2_product");
  EXPECT_EQ(P->nstrata(), 4);
  auto a = comp_on(*P, "eps1", "eta1", "id_pt"), b = comp_on(*P, "eps2", "eta2", "id_pt");
  for (const auto& [q, c] : b) a[q] += c;
  std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
  EXPECT_EQ(a, xi_on(*P));
}

TEST(Presentation, A1Minus0IsRTrivial) {
  auto P = builtin("A1_minus_0");
  auto r = P->validate();
  EXPECT_TRUE(r.r_trivial);
  EXPECT_FALSE(r.r_free);
}

TEST(Presentation, RestrictionToFreeOrbit) {
  auto P = builtin("A2_product");
  auto U = restrict_to(P, {"U"});
  EXPECT_EQ(U->nstrata(), 1);
  EXPECT_EQ(U->h_basis(0, 0).size(), 1u);
  for (int d = 1; d <= 4; ++d) EXPECT_TRUE(U->h_basis(0, d).empty());
  EXPECT_TRUE(U->validate().ok());
  EXPECT_TRUE(U->r_trivial());
}

TEST(Presentation, RestrictionKillsTheClosedMaps) {
  auto P = builtin("A1_Gm");
  auto U = restrict_to(P, {"X1"});
  EXPECT_EQ(U->nstrata(), 1);
  EXPECT_THROW(U->basis_index("eps"), NameError);
  EXPECT_THROW(restrict_to(P, {"pt"}), ScopeError);
  EXPECT_EQ(restrict_to(P, {"pt", "X1"}), P);
}

TEST(Presentation, OpenChainIsFinalSegments) {
  auto P = builtin("A2_product");
  auto ch = open_chain(*P);
  ASSERT_GE(ch.size(), 3u);
  EXPECT_EQ(ch.front().size(), 4u);
  for (size_t i = 1; i < ch.size(); ++i) EXPECT_LT(ch[i].size(), ch[i - 1].size());
}

TEST(Presentation, CollapseKillsXi) {
  auto P = builtin("A1_Gm");
  auto C = collapse_presentation(P);
  EXPECT_TRUE(C->validate().ok());
  EXPECT_TRUE(comp_on(*C, "eps", "eta", "id_pt").empty());
  EXPECT_THROW(collapse_presentation(builtin("A1_minus_0")), FreeError);
}

TEST(Presentation, MonomialText) {
  std::vector<std::string> v{"e1", "e2"};
  EXPECT_EQ(mono_str(Mono{2, 1}, v), "e1^2*e2");
  EXPECT_EQ(parse_mono("e1^2*e2", v), (Mono{2, 1}));
  EXPECT_EQ(parse_mono("1", v), (Mono{0, 0}));
  EXPECT_THROW(parse_mono("z", v), ParseError);
}

TEST(Presentation, JsonRoundTrip) {
  for (const auto& n : builtin_names()) {
    auto P = builtin(n, CoeffRing::local_integers(3));
    json j = presentation_to_json(*P);
    auto Q = presentation_from_json(json::parse(j.dump()));
    EXPECT_EQ(presentation_to_json(*Q), j) << n;
    EXPECT_TRUE(Q->validate().ok()) << n;
  }
}

TEST(Presentation, CorruptedTableFailsValidation) {
  json j = presentation_to_json(*builtin("A1_Gm"));
  for (auto& c : j["composition"])
    if (c["g"] == "eps" && c["f"] == "eta") c["terms"][0]["c"] = "2";
  auto Q = presentation_from_json(j);
  EXPECT_FALSE(Q->validate().ok());
}

TEST(Presentation, MalformedJson) {
  json j = presentation_to_json(*builtin("A1_Gm"));
  j["basis"][2]["src"] = "nowhere";
  EXPECT_THROW(presentation_from_json(j), ParseError);
  j.erase("basis");
  EXPECT_THROW(presentation_from_json(j), ParseError);
}
