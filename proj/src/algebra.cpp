#include "monocycle/algebra.hpp"

#include <sstream>

#include "monocycle/errors.hpp"

namespace monocycle {

const char* tag_name(AlgTag t) {
  switch (t) {
    case AlgTag::R: return "R";
    case AlgTag::Lambda: return "Lambda";
    case AlgTag::Rdual: return "Rdual";
    case AlgTag::Lambdadual: return "Lambdadual";
    case AlgTag::A: return "A";
    case AlgTag::Adual: return "Adual";
    case AlgTag::S: return "S";
    case AlgTag::E: return "E";
    case AlgTag::B: return "B";
  }
  return "?";
}

AlgTag parse_tag(const std::string& s) {
  for (AlgTag t : {AlgTag::R, AlgTag::Lambda, AlgTag::Rdual, AlgTag::Lambdadual, AlgTag::A, AlgTag::Adual,
                   AlgTag::S, AlgTag::E, AlgTag::B})
    if (s == tag_name(t)) return t;
  throw TagError("unknown algebra tag " + s);
}

namespace {
// generator sets as bits: r=1, xi=2, rbar=4, xibar=8
int tag_bits(AlgTag t) {
  switch (t) {
    case AlgTag::R: return 2;
    case AlgTag::Lambda: return 8;
    case AlgTag::Rdual: return 1;
    case AlgTag::Lambdadual: return 4;
    case AlgTag::A: return 2 | 8;
    case AlgTag::Adual: return 1 | 4;
    case AlgTag::S: return 1 | 2;
    case AlgTag::E: return 4 | 8;
    case AlgTag::B: return 15;
  }
  return 15;
}
int mono_bits(const BMono& m) { return (m.r ? 1 : 0) | (m.xi ? 2 : 0) | (m.rb ? 4 : 0) | (m.xb ? 8 : 0); }

void add_term(std::map<BMono, Scalar>& t, const BMono& m, const Scalar& c, const CoeffRing& k) {
  if (c == 0) return;
  auto it = t.find(m);
  if (it == t.end()) {
    Scalar v = k.normalize(c);
    if (v != 0) t.emplace(m, v);
  } else {
    it->second = k.normalize(it->second + c);
    if (it->second == 0) t.erase(it);
  }
}

// (rbar^a xibar^b) * (rbar^c xibar^d) in E, as combination of normal words
std::vector<std::pair<std::pair<int, int>, int>> e_product(int a, int b, int c, int d) {
  // right-multiply by letters of rbar^c xibar^d one at a time
  std::map<std::pair<int, int>, int> cur{{{a, b}, 1}};
  auto times_rbar = [](const std::map<std::pair<int, int>, int>& in) {
    std::map<std::pair<int, int>, int> out;
    for (auto [w, s] : in) {
      auto [x, y] = w;
      if (y == 0) {
        if (x == 0) out[{1, 0}] += s;
      } else {
        // rbar^x xibar rbar = rbar^x (1 - rbar xibar)
        out[{x, 0}] += s;
        if (x == 0) out[{1, 1}] -= s;
      }
    }
    return out;
  };
  auto times_xibar = [](const std::map<std::pair<int, int>, int>& in) {
    std::map<std::pair<int, int>, int> out;
    for (auto [w, s] : in)
      if (w.second == 0) out[{w.first, 1}] += s;
    return out;
  };
  if (c) cur = times_rbar(cur);
  if (d) cur = times_xibar(cur);
  std::vector<std::pair<std::pair<int, int>, int>> res;
  for (auto [w, s] : cur)
    if (s) res.push_back({w, s});
  return res;
}
}  // namespace

bool tag_allows(AlgTag t, const BMono& m) {
  if (m.rb > 1 || m.xb > 1 || m.r < 0 || m.xi < 0 || m.rb < 0 || m.xb < 0) return false;
  return (mono_bits(m) & ~tag_bits(t)) == 0;
}

AlgTag join_tags(AlgTag a, AlgTag b) {
  int need = tag_bits(a) | tag_bits(b);
  for (AlgTag t : {AlgTag::R, AlgTag::Lambda, AlgTag::Rdual, AlgTag::Lambdadual, AlgTag::A, AlgTag::Adual,
                   AlgTag::S, AlgTag::E, AlgTag::B})
    if ((need & ~tag_bits(t)) == 0) return t;
  return AlgTag::B;
}

RingElem RingElem::one(AlgTag t) { return mono(t, BMono{}, 1); }

RingElem RingElem::mono(AlgTag t, const BMono& m, const Scalar& c) {
  if (!tag_allows(t, m)) throw TagError(std::string("monomial not in ") + tag_name(t));
  RingElem e{t, {}};
  if (c != 0) e.terms[m] = c;
  return e;
}

RingElem RingElem::gen(AlgTag t, const std::string& name) {
  BMono m;
  if (name == "xi") m.xi = 1;
  else if (name == "xibar") m.xb = 1;
  else if (name == "r") m.r = 1;
  else if (name == "rbar") m.rb = 1;
  else throw TagError("unknown generator " + name);
  return mono(t, m);
}

std::string RingElem::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    if (m.r) os << "*r" << (m.r > 1 ? "^" + std::to_string(m.r) : "");
    if (m.xi) os << "*xi" << (m.xi > 1 ? "^" + std::to_string(m.xi) : "");
    if (m.rb) os << "*rbar";
    if (m.xb) os << "*xibar";
  }
  return os.str();
}

static void check_tag(const RingElem& a) {
  for (const auto& [m, c] : a.terms)
    if (!tag_allows(a.tag, m)) throw TagError(std::string("illegal monomial for tag ") + tag_name(a.tag));
}

RingElem ring_add(const RingElem& a, const RingElem& b, const CoeffRing& k) {
  check_tag(a);
  check_tag(b);
  RingElem r{join_tags(a.tag, b.tag), a.terms};
  for (const auto& [m, c] : b.terms) add_term(r.terms, m, c, k);
  return r;
}

RingElem ring_scale(const RingElem& a, const Scalar& c, const CoeffRing& k) {
  RingElem r{a.tag, {}};
  for (const auto& [m, v] : a.terms) add_term(r.terms, m, v * c, k);
  return r;
}

RingElem ring_mul(const RingElem& a, const RingElem& b, const CoeffRing& k) {
  check_tag(a);
  check_tag(b);
  RingElem r{join_tags(a.tag, b.tag), {}};
  for (const auto& [m1, c1] : a.terms)
    for (const auto& [m2, c2] : b.terms) {
      // r and xi are even and central; only the odd letters interact
      for (auto [w, s] : e_product(m1.rb, m1.xb, m2.rb, m2.xb)) {
        BMono m{m1.r + m2.r, m1.xi + m2.xi, w.first, w.second};
        add_term(r.terms, m, c1 * c2 * s, k);
      }
    }
  // in the graded-commutative rings xibar^2 = rbar^2 = 0 also hold; e_product already encodes them
  return r;
}

RingElem omega(const CoeffRing& k) {
  RingElem a = RingElem::mono(AlgTag::B, BMono{1, 0, 0, 1});
  RingElem b = RingElem::mono(AlgTag::B, BMono{0, 1, 1, 0});
  return ring_add(a, b, k);
}

RingElem theta(AlgTag t) { return RingElem::mono(t, BMono{1, 1, 0, 0}); }

RingElem apply_kappa(const RingElem& a, const CoeffRing& k) {
  check_tag(a);
  switch (a.tag) {
    case AlgTag::A:
    case AlgTag::Lambda:
    case AlgTag::R: {
      // kappa(xi^n xibar) = xi^(n+1)
      RingElem r{AlgTag::A, {}};
      for (const auto& [m, c] : a.terms)
        if (m.xb) add_term(r.terms, BMono{0, m.xi + 1, 0, 0}, c, k);
      return r;
    }
    case AlgTag::Adual:
    case AlgTag::Lambdadual:
    case AlgTag::Rdual: {
      RingElem r{AlgTag::Adual, {}};
      for (const auto& [m, c] : a.terms)
        if (m.rb) add_term(r.terms, BMono{m.r + 1, 0, 0, 0}, c, k);
      return r;
    }
    case AlgTag::B:
    case AlgTag::E:
    case AlgTag::S: {
      RingElem w = omega(k);
      RingElem r{AlgTag::B, {}};
      for (const auto& [m, c] : a.terms) {
        RingElem mono = RingElem::mono(AlgTag::B, m, c);
        RingElem left = ring_mul(w, mono, k);
        RingElem right = ring_mul(mono, w, k);
        // b of degree |b|: omega b + (-1)^(|b|+1) b omega
        int deg = m.degree().i;
        Scalar sign = ((deg + 1) % 2 == 0) ? 1 : -1;
        r = ring_add(r, ring_add(left, ring_scale(right, sign, k), k), k);
      }
      r.tag = AlgTag::B;
      return r;
    }
  }
  throw TagError("kappa undefined");
}

std::vector<BMono> monomials_in(AlgTag t, Bidegree d) {
  std::vector<BMono> out;
  for (int rb = 0; rb <= 1; ++rb)
    for (int xb = 0; xb <= 1; ++xb) {
      // i = 2 xi - rb + xb ; j = -2 r + 2 xi - 2 rb + 2 xb
      int twoxi = d.i + rb - xb;
      if (twoxi < 0 || twoxi % 2) continue;
      int xi = twoxi / 2;
      int twor = 2 * xi - 2 * rb + 2 * xb - d.j;
      if (twor < 0 || twor % 2) continue;
      BMono m{twor / 2, xi, rb, xb};
      if (tag_allows(t, m)) out.push_back(m);
    }
  return out;
}

std::map<Bidegree, ModuleRank> dg_ring_cohomology(AlgTag t, const Window& w, const CoeffRing& k) {
  if (t != AlgTag::A && t != AlgTag::Adual && t != AlgTag::B)
    throw TagError(std::string("no differential on ") + tag_name(t));
  auto dmatrix = [&](Bidegree from) {
    auto src = monomials_in(t, from);
    auto dst = monomials_in(t, from.shifted(1));
    std::map<BMono, int> idx;
    for (size_t i = 0; i < dst.size(); ++i) idx[dst[i]] = static_cast<int>(i);
    std::map<std::pair<int, int>, Scalar> e;
    for (size_t c = 0; c < src.size(); ++c) {
      RingElem img = apply_kappa(RingElem::mono(t, src[c]), k);
      for (const auto& [m, v] : img.terms) e[{idx.at(m), static_cast<int>(c)}] = v;
    }
    return SparseMatrix::from_entries(static_cast<int>(dst.size()), static_cast<int>(src.size()), e);
  };
  std::map<Bidegree, ModuleRank> out;
  for (int i = w.imin; i <= w.imax; ++i)
    for (int j = w.jmin; j <= w.jmax; ++j) {
      Bidegree d{i, j};
      int n = static_cast<int>(monomials_in(t, d).size());
      out[d] = homology(n, dmatrix(d.shifted(-1)), dmatrix(d), k);
    }
  return out;
}

std::vector<std::vector<Scalar>> e_action_matrix(const RingElem& a, const CoeffRing& k) {
  // basis of the exterior algebra on rbar: v0 = 1, v1 = rbar
  std::vector<std::vector<Scalar>> m(2, std::vector<Scalar>(2, 0));
  for (const auto& [mono, c] : a.terms) {
    if (mono.r || mono.xi) throw TagError("element not in E");
    // rbar^a xibar^b acts as (mult rbar)^a (contract)^b
    for (int col = 0; col < 2; ++col) {
      int v = col;
      bool alive = true;
      if (mono.xb) {
        if (v == 1) v = 0;
        else alive = false;
      }
      if (alive && mono.rb) {
        if (v == 0) v = 1;
        else alive = false;
      }
      if (alive) m[v][col] = k.normalize(m[v][col] + c);
    }
  }
  return m;
}

}  // namespace monocycle
