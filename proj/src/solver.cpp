#include "monocycle/solver.hpp"

#include <random>
#include <tuple>

#include "monocycle/errors.hpp"

namespace monocycle {

int LinearProblem::add_unknown(const std::vector<Cell>& src, const std::vector<Cell>& dst, Bidegree deg,
                               Flavor fl, PresPtr over) {
  if (!over) over = P_;
  Unknown u{src, dst, deg, fl, over, hom_atoms(over, fl, src, dst, deg), num_variables()};
  unknowns_.push_back(std::move(u));
  return static_cast<int>(unknowns_.size()) - 1;
}

int LinearProblem::num_variables() const {
  if (unknowns_.empty()) return 0;
  return unknowns_.back().offset + static_cast<int>(unknowns_.back().atoms.size());
}

void LinearProblem::add_equation(std::vector<std::pair<int, LinearMap>> terms, const Morphism& target) {
  equations_.push_back({std::move(terms), target});
}

void LinearProblem::build(SparseMatrix& A, std::vector<Scalar>& b) const {
  std::map<std::tuple<int, int, int, TermKey>, int> rows;
  std::map<std::pair<int, int>, Scalar> ent;
  auto row_of = [&](int eq, int k, int l, const TermKey& key) {
    auto [it, fresh] = rows.try_emplace({eq, k, l, key}, static_cast<int>(rows.size()));
    if (fresh) b.push_back(0);
    return it->second;
  };
  for (size_t e = 0; e < equations_.size(); ++e) {
    const auto& eq = equations_[e];
    for (const auto& [kl, entry] : eq.target.m)
      for (const auto& [key, c] : entry) b[row_of(static_cast<int>(e), kl.first, kl.second, key)] = c;
    for (const auto& [ui, L] : eq.terms) {
      const Unknown& u = unknowns_[ui];
      for (size_t a = 0; a < u.atoms.size(); ++a) {
        Morphism img = L(atom_morphism(u.P, u.fl, u.src, u.dst, u.deg, u.atoms[a]));
        for (const auto& [kl, entry] : img.m)
          for (const auto& [key, c] : entry) {
            Scalar& slot = ent[{row_of(static_cast<int>(e), kl.first, kl.second, key), u.offset + static_cast<int>(a)}];
            slot += c;
          }
      }
    }
  }
  A = SparseMatrix::from_entries(static_cast<int>(rows.size()), num_variables(), ent);
}

std::vector<Morphism> LinearProblem::assemble(const std::vector<Scalar>& x) const {
  std::vector<Morphism> out;
  for (const auto& u : unknowns_) {
    Morphism f = zero_morphism(u.P, u.fl, u.src, u.dst, u.deg);
    for (size_t a = 0; a < u.atoms.size(); ++a) {
      const Scalar& c = x[u.offset + a];
      if (c != 0) f.add_term(u.atoms[a].k, u.atoms[a].l, u.atoms[a].key, c);
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::optional<std::vector<Morphism>> LinearProblem::solve(SparseRow* certificate) const {
  SparseMatrix A;
  std::vector<Scalar> b;
  build(A, b);
  SolveResult r = monocycle::solve(A, b, P_->coeff, certificate != nullptr);
  if (!r.ok) {
    if (certificate) *certificate = r.certificate;
    return std::nullopt;
  }
  return assemble(r.x);
}

std::vector<std::vector<Morphism>> LinearProblem::homogeneous_basis() const {
  SparseMatrix A;
  std::vector<Scalar> b;
  build(A, b);
  std::vector<std::vector<Morphism>> out;
  for (auto& v : kernel_basis(A, P_->coeff)) out.push_back(assemble(v));
  return out;
}

std::optional<Morphism> find_homotopy(const Object& F, const Object& G, const Morphism& f, SparseRow* certificate) {
  LinearProblem lp(F.P());
  int h = lp.add_unknown(F.cells(), G.cells(), f.deg.shifted(-1), F.fl());
  lp.add_equation({{h, [&](const Morphism& x) { return d_hom(F, G, x); }}}, f);
  auto sol = lp.solve(certificate);
  if (!sol) return std::nullopt;
  return (*sol)[0];
}

std::optional<Morphism> find_homotopy_between(const Object& F, const Object& G, const Morphism& f, const Morphism& g,
                                              SparseRow* certificate) {
  return find_homotopy(F, G, sub(f, g), certificate);
}

bool null_homotopic(const Object& F, const Object& G, const Morphism& f) { return find_homotopy(F, G, f).has_value(); }

std::optional<Equivalence> verify_equivalence(const Object& F, const Object& G, const Morphism& phi) {
  if (!is_chain_map(F, G, phi)) return std::nullopt;
  LinearProblem lp(F.P());
  int psi = lp.add_unknown(G.cells(), F.cells(), {0, 0}, F.fl());
  int h1 = lp.add_unknown(F.cells(), F.cells(), {-1, 0}, F.fl());
  lp.add_equation({{psi, [&](const Morphism& x) { return d_hom(G, F, x); }}},
                  zero_morphism(F.P(), F.fl(), G.cells(), F.cells(), {1, 0}));
  lp.add_equation({{psi, [&](const Morphism& x) { return compose(x, phi); }},
                   {h1, [&](const Morphism& x) { return neg(d_hom(F, F, x)); }}},
                  identity(F));
  auto s1 = lp.solve();
  if (!s1) return std::nullopt;
  Equivalence e{phi, (*s1)[0], (*s1)[1], {}};
  auto h2 = find_homotopy(G, G, sub(compose(phi, e.psi), identity(G)));
  if (!h2) return std::nullopt;
  e.h_dst = *h2;
  return e;
}

void check_equivalence(const Object& F, const Object& G, const Equivalence& e) {
  if (!is_chain_map(F, G, e.phi)) throw WitnessError("equivalence: phi is not a chain map");
  if (!is_chain_map(G, F, e.psi)) throw WitnessError("equivalence: psi is not a chain map");
  if (sub(compose(e.psi, e.phi), identity(F)).m != d_hom(F, F, e.h_src).m)
    throw WitnessError("equivalence: psi phi - id differs from d(h)");
  if (sub(compose(e.phi, e.psi), identity(G)).m != d_hom(G, G, e.h_dst).m)
    throw WitnessError("equivalence: phi psi - id differs from d(h)");
}

std::vector<Morphism> cycle_basis(const Object& F, const Object& G, Bidegree deg) {
  LinearProblem lp(F.P());
  int x = lp.add_unknown(F.cells(), G.cells(), deg, F.fl());
  lp.add_equation({{x, [&](const Morphism& m) { return d_hom(F, G, m); }}},
                  zero_morphism(F.P(), F.fl(), F.cells(), G.cells(), deg.shifted(1)));
  std::vector<Morphism> out;
  for (auto& v : lp.homogeneous_basis()) out.push_back(v[0]);
  return out;
}

std::optional<Equivalence> find_isomorphism(const Object& F, const Object& G, unsigned seed, int attempts) {
  if (F.fl() != G.fl()) return std::nullopt;
  auto Z = cycle_basis(F, G, {0, 0});
  Morphism zero = zero_morphism(F.P(), F.fl(), F.cells(), G.cells(), {0, 0});
  if (Z.empty()) {
    if (auto e = verify_equivalence(F, G, zero)) return e;
    return std::nullopt;
  }
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int t = 0; t < attempts; ++t) {
    Morphism phi = zero;
    for (size_t i = 0; i < Z.size(); ++i) {
      int c = (t == 0) ? 1 : coef(rng);
      if (c) phi = add(phi, scale(Z[i], c));
    }
    if (auto e = verify_equivalence(F, G, phi)) return e;
  }
  return std::nullopt;
}

std::optional<Morphism> contracting_homotopy(const Object& F) { return find_homotopy(F, F, identity(F)); }

}  // namespace monocycle

namespace monocycle {

Equivalence compose_equivalence(const Equivalence& e1, const Equivalence& e2) {
  Equivalence e;
  e.phi = compose(e2.phi, e1.phi);
  e.psi = compose(e1.psi, e2.psi);
  e.h_src = add(e1.h_src, compose(compose(e1.psi, e2.h_src), e1.phi));
  e.h_dst = add(e2.h_dst, compose(compose(e2.phi, e1.h_dst), e2.psi));
  return e;
}

Equivalence identity_equivalence(const Object& F) {
  Equivalence e;
  e.phi = identity(F);
  e.psi = identity(F);
  e.h_src = zero_morphism(F.P(), F.fl(), F.cells(), F.cells(), {-1, 0});
  e.h_dst = e.h_src;
  return e;
}

Equivalence inverse_equivalence(const Equivalence& e) { return {e.psi, e.phi, e.h_dst, e.h_src}; }

}  // namespace monocycle
