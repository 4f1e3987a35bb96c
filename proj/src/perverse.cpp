#include "monocycle/perverse.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <set>

#include "monocycle/errors.hpp"
#include "monocycle/functors.hpp"
#include "monocycle/recollement.hpp"

namespace monocycle {

namespace {

constexpr int kMaxSpan = 64;

// U_s = {s and every later stratum}; s is closed there
PresPtr segment_from(const PresPtr& P, int s) {
  std::vector<std::string> U;
  for (int t = s; t < P->nstrata(); ++t) U.push_back(P->strata[t].id);
  if (!is_declared_open(*P, U)) throw ScopeError("strata from " + P->strata[s].id + " on are not a declared open");
  return open_part(P, U);
}

// Hom(G, S[m]<n>) = 0 for every m < a the cells of S allow
bool vanishes_below(const Object& G, const Object& S, int a) {
  if (S.size() == 0) return true;
  int cmin = INT_MAX;
  for (const auto& c : S.cells()) cmin = std::min(cmin, c.c);
  if (a - cmin > kMaxSpan) throw IndeterminateError("degree range too wide to certify");
  const int emax = S.fl() == Flavor::Eq ? 0 : 1;
  for (int m = cmin; m < a; ++m) {
    std::set<int> ns;
    for (const auto& c : S.cells())
      for (int e = 0; e <= emax; ++e) ns.insert(-(m + e - c.c + c.t));
    for (int n : ns)
      if (!hom_space(G, S, m, n).is_zero()) return false;
  }
  return true;
}

void require_flavor(const Object& F) {
  if (F.fl() == Flavor::Mon) throw FlavorError("perverse degrees need an equivariant or constructible object");
}

}  // namespace

std::vector<Object> perverse_generators(const PresPtr& P, Flavor fl, int s) {
  std::vector<Object> out;
  Object E = parity_object(P, fl, s);
  out.push_back(E);
  if (!P->coeff.is_field()) out.push_back(cone(E, E, scalar_identity(E, P->coeff.uniformizer())));
  return out;
}

Object stratum_restriction(const Object& F, int s, bool shriek) {
  const PresPtr& P = F.P();
  PresPtr PU = segment_from(P, s);
  Object FU = j_restrict(F, PU);
  const std::string id = P->strata[s].id;
  if (PU->nstrata() == 1) return FU;
  SupportedObject S = shriek ? i_upper_shriek(FU, {id}) : i_upper_star(FU, {id});
  return support_purify(S).obj;
}

bool perverse_ge(const Object& F, int a) {
  require_flavor(F);
  for (int s = 0; s < F.P()->nstrata(); ++s) {
    Object S = stratum_restriction(F, s, true);
    for (const auto& G : perverse_generators(S.P(), F.fl(), S.P()->stratum_index(F.P()->strata[s].id)))
      if (!vanishes_below(G, S, a)) return false;
  }
  return true;
}

bool perverse_le(const Object& F, int a) {
  require_flavor(F);
  return perverse_ge(verdier(F), -a);
}

namespace {

// largest a with ge(a), searching up from a bound where it holds trivially
int top_ge(const std::function<bool(int)>& ge, int start) {
  int a = start;
  while (ge(a + 1)) {
    if (++a - start > kMaxSpan) throw IndeterminateError("no upper bound on perverse degrees");
  }
  return a;
}

int min_c(const Object& F) {
  int c = INT_MAX;
  for (const auto& x : F.cells()) c = std::min(c, x.c);
  return c;
}

// the perverse lower bound of a single-stratum restriction
int stratum_lo(const Object& S, int sidx) {
  if (S.size() == 0) return INT_MAX;
  auto gens = perverse_generators(S.P(), S.fl(), sidx);
  auto ge = [&](int a) {
    for (const auto& G : gens)
      if (!vanishes_below(G, S, a)) return false;
    return true;
  };
  return top_ge(ge, min_c(S) - 1);
}

}  // namespace

DegreeInterval perverse_degrees(const Object& F) {
  require_flavor(F);
  DegreeInterval d;
  int lo = INT_MAX, hi = INT_MIN;
  Object DF = verdier(F);
  for (int s = 0; s < F.P()->nstrata(); ++s) {
    const std::string& id = F.P()->strata[s].id;
    Object S = stratum_restriction(F, s, true);
    lo = std::min(lo, stratum_lo(S, S.P()->stratum_index(id)));
    Object T = stratum_restriction(DF, s, true);
    int l2 = stratum_lo(T, T.P()->stratum_index(id));
    if (l2 != INT_MAX) hi = std::max(hi, -l2);
  }
  if (lo == INT_MAX) return d;
  d.empty = false;
  d.lo = lo;
  d.hi = hi;
  return d;
}

bool is_perverse(const Object& F) {
  auto d = perverse_degrees(F);
  return d.empty || (d.lo == 0 && d.hi == 0);
}

std::vector<StratumDegrees> perverse_degrees_by_stratum(const Object& F) {
  require_flavor(F);
  std::vector<StratumDegrees> out;
  Object DF = verdier(F);
  for (int s = 0; s < F.P()->nstrata(); ++s) {
    const std::string& id = F.P()->strata[s].id;
    StratumDegrees sd;
    sd.stratum = id;
    Object S = stratum_restriction(F, s, true);
    Object T = stratum_restriction(DF, s, true);
    int l1 = stratum_lo(S, S.P()->stratum_index(id));
    int l2 = stratum_lo(T, T.P()->stratum_index(id));
    // the shriek restriction bounds from below, the star restriction from above
    if (l1 != INT_MAX) sd.shriek = {false, l1, -stratum_lo(verdier(S), S.P()->stratum_index(id))};
    if (l2 != INT_MAX) sd.star = {false, stratum_lo(verdier(T), T.P()->stratum_index(id)), -l2};
    out.push_back(sd);
  }
  return out;
}

std::string interval_str(const DegreeInterval& d) {
  if (d.empty) return "empty";
  return "[" + std::to_string(d.lo) + "," + std::to_string(d.hi) + "]";
}

ExactnessReport check_j_exactness(const PresPtr& P, const std::vector<std::pair<std::string, Object>>& inputs) {
  if (!P->fdatum) throw ScopeError(P->name + " has no f-datum");
  ExactnessReport rep;
  for (const auto& [name, F] : inputs) {
    ExactnessReport::Row row;
    row.input = name;
    row.input_perverse = is_perverse(F);
    if (row.input_perverse) {
      row.shriek = perverse_degrees(j_shriek(F, P).obj);
      row.star = perverse_degrees(j_star(F, P).obj);
      DegreeInterval zero{false, 0, 0};
      if (!(row.shriek == zero) || !(row.star == zero)) rep.pass = false;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace monocycle
