#pragma once
#include <optional>
#include <string>
#include <vector>

#include "monocycle/complex.hpp"

namespace monocycle {

// the heart generators on stratum s, as objects over the open part where s is closed:
// E_s itself, plus cone(p * id) when the coefficients are local integers
std::vector<Object> perverse_generators(const PresPtr& P, Flavor fl, int s);

// restriction of F to stratum s (upper-shriek or upper-star), living over the open part where s is closed
Object stratum_restriction(const Object& F, int s, bool shriek);

bool perverse_ge(const Object& F, int a);
bool perverse_le(const Object& F, int a);

struct DegreeInterval {
  bool empty = true;  // the zero object
  int lo = 0, hi = 0;
  bool operator==(const DegreeInterval& o) const {
    return empty == o.empty && (empty || (lo == o.lo && hi == o.hi));
  }
};
std::string interval_str(const DegreeInterval& d);

DegreeInterval perverse_degrees(const Object& F);
bool is_perverse(const Object& F);
struct StratumDegrees {
  std::string stratum;
  DegreeInterval shriek, star;  // lower bound from j_s^!, upper bound from j_s^*
};
std::vector<StratumDegrees> perverse_degrees_by_stratum(const Object& F);

struct ExactnessReport {
  struct Row {
    std::string input;
    bool input_perverse = false;
    DegreeInterval shriek, star;
  };
  std::vector<Row> rows;
  bool pass = true;
};
// j_! and j_* of perverse objects on the generic part must stay perverse
ExactnessReport check_j_exactness(const PresPtr& P, const std::vector<std::pair<std::string, Object>>& inputs);

}  // namespace monocycle
