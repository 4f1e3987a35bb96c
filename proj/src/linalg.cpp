#include "monocycle/linalg.hpp"

#include <algorithm>

#include "monocycle/errors.hpp"

namespace monocycle {

SparseMatrix SparseMatrix::from_entries(int nrows, int ncols, const std::map<std::pair<int, int>, Scalar>& e) {
  SparseMatrix m;
  m.ncols = ncols;
  m.rows.assign(nrows, {});
  for (const auto& [rc, v] : e)
    if (v != 0) m.rows[rc.first].push_back({rc.second, v});
  return m;
}

namespace {

const Scalar* find_col(const SparseRow& r, int c) {
  auto it = std::lower_bound(r.begin(), r.end(), c, [](const auto& e, int col) { return e.first < col; });
  if (it != r.end() && it->first == c) return &it->second;
  return nullptr;
}

// r := r - f * s
void axpy(SparseRow& r, const Scalar& f, const SparseRow& s, const CoeffRing& ring) {
  SparseRow out;
  out.reserve(r.size() + s.size());
  size_t i = 0, j = 0;
  while (i < r.size() || j < s.size()) {
    if (j == s.size() || (i < r.size() && r[i].first < s[j].first)) {
      out.push_back(std::move(r[i++]));
    } else if (i == r.size() || s[j].first < r[i].first) {
      Scalar v = ring.normalize(-f * s[j].second);
      if (v != 0) out.push_back({s[j].first, v});
      ++j;
    } else {
      Scalar v = ring.normalize(r[i].second - f * s[j].second);
      if (v != 0) out.push_back({r[i].first, v});
      ++i;
      ++j;
    }
  }
  r.swap(out);
}

size_t bits(const Scalar& x) {
  return mpz_sizeinbase(x.get_num_mpz_t(), 2) + mpz_sizeinbase(x.get_den_mpz_t(), 2);
}

struct Echelon {
  struct Pivot {
    SparseRow row;
    int col;
    Scalar b;
    SparseRow hist;
  };
  std::vector<Pivot> pivots;
  // leftover zero rows: their right-hand sides and histories
  std::vector<std::pair<Scalar, SparseRow>> residual;
};

Echelon echelon(const SparseMatrix& a, const std::vector<Scalar>* b, const CoeffRing& ring, bool track) {
  struct Active {
    SparseRow row;
    Scalar b;
    SparseRow hist;
  };
  std::vector<Active> act;
  act.reserve(a.rows.size());
  for (int i = 0; i < a.nrows(); ++i) {
    Active r;
    for (const auto& [c, v] : a.rows[i]) {
      Scalar w = ring.normalize(v);
      if (w != 0) r.row.push_back({c, w});
    }
    r.b = b ? ring.normalize((*b)[i]) : Scalar(0);
    if (track) r.hist.push_back({i, Scalar(1)});
    act.push_back(std::move(r));
  }
  Echelon out;
  std::vector<char> alive(act.size(), 1);
  size_t nalive = act.size();
  while (true) {
    // choose pivot
    int best = -1, bestc = -1;
    int bestv = INT_MAX;
    size_t bestlen = SIZE_MAX, bestbits = SIZE_MAX;
    for (size_t i = 0; i < act.size(); ++i) {
      if (!alive[i]) continue;
      if (act[i].row.empty()) {
        out.residual.push_back({act[i].b, std::move(act[i].hist)});
        alive[i] = 0;
        --nalive;
        continue;
      }
      const auto& row = act[i].row;
      if (ring.is_field()) {
        if (row.size() > bestlen) continue;
        for (const auto& [c, v] : row) {
          size_t bb = bits(v);
          if (row.size() < bestlen || bb < bestbits) {
            best = static_cast<int>(i);
            bestc = c;
            bestlen = row.size();
            bestbits = bb;
          }
        }
      } else {
        for (const auto& [c, v] : row) {
          int val = ring.valuation(v);
          if (val < bestv || (val == bestv && row.size() < bestlen)) {
            best = static_cast<int>(i);
            bestc = c;
            bestv = val;
            bestlen = row.size();
          }
        }
      }
    }
    if (best < 0) break;
    Active& piv = act[best];
    Scalar pv = *find_col(piv.row, bestc);
    for (size_t i = 0; i < act.size(); ++i) {
      if (!alive[i] || static_cast<int>(i) == best) continue;
      const Scalar* e = find_col(act[i].row, bestc);
      if (!e) continue;
      Scalar f = ring.divide(*e, pv);
      axpy(act[i].row, f, piv.row, ring);
      if (b) act[i].b = ring.normalize(act[i].b - f * piv.b);
      if (track) axpy(act[i].hist, f, piv.hist, ring);
    }
    out.pivots.push_back({std::move(piv.row), bestc, piv.b, std::move(piv.hist)});
    alive[best] = 0;
    --nalive;
  }
  return out;
}

}  // namespace

Elimination eliminate(const SparseMatrix& a, const CoeffRing& ring) {
  Echelon e = echelon(a, nullptr, ring, false);
  Elimination r;
  r.rank = static_cast<int>(e.pivots.size());
  for (const auto& p : e.pivots) r.valuations.push_back(ring.valuation(*find_col(p.row, p.col)));
  std::sort(r.valuations.begin(), r.valuations.end());
  return r;
}

SolveResult solve(const SparseMatrix& a, const std::vector<Scalar>& b, const CoeffRing& ring, bool want_certificate) {
  Echelon e = echelon(a, &b, ring, want_certificate);
  SolveResult res;
  for (const auto& [rb, hist] : e.residual) {
    if (rb != 0) {
      res.certificate = hist;
      return res;
    }
  }
  std::vector<Scalar> x(a.ncols, Scalar(0));
  for (auto it = e.pivots.rbegin(); it != e.pivots.rend(); ++it) {
    Scalar acc = it->b;
    Scalar pv;
    for (const auto& [c, v] : it->row) {
      if (c == it->col)
        pv = v;
      else if (x[c] != 0)
        acc = ring.normalize(acc - v * x[c]);
    }
    if (!ring.divides(pv, acc)) {
      // no integral solution: the scaled history row certifies it
      if (want_certificate) {
        SparseRow cert;
        for (const auto& [i, v] : it->hist) cert.push_back({i, v / pv});
        res.certificate = cert;
      }
      return res;
    }
    x[it->col] = ring.divide(acc, pv);
  }
  res.ok = true;
  res.x = std::move(x);
  return res;
}

std::vector<std::vector<Scalar>> kernel_basis(const SparseMatrix& a, const CoeffRing& ring) {
  // work over the fraction field, then clear denominators
  CoeffRing field = ring.is_field() ? ring : CoeffRing::rationals();
  Echelon e = echelon(a, nullptr, field, false);
  std::vector<char> is_piv(a.ncols, 0);
  for (const auto& p : e.pivots) is_piv[p.col] = 1;
  std::vector<std::vector<Scalar>> basis;
  for (int fcol = 0; fcol < a.ncols; ++fcol) {
    if (is_piv[fcol]) continue;
    std::vector<Scalar> x(a.ncols, Scalar(0));
    x[fcol] = 1;
    for (auto it = e.pivots.rbegin(); it != e.pivots.rend(); ++it) {
      Scalar acc = 0, pv;
      for (const auto& [c, v] : it->row) {
        if (c == it->col)
          pv = v;
        else if (x[c] != 0)
          acc = field.normalize(acc - v * x[c]);
      }
      x[it->col] = field.divide(acc, pv);
    }
    if (!ring.is_field()) {
      mpz_class l = 1;
      for (const auto& v : x)
        if (v != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
      for (auto& v : x) v *= l;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

ModuleRank homology(int n, const SparseMatrix& d_in, const SparseMatrix& d_out, const CoeffRing& ring) {
  Elimination ein = eliminate(d_in, ring), eout = eliminate(d_out, ring);
  ModuleRank m;
  m.free_rank = n - ein.rank - eout.rank;
  for (int v : ein.valuations)
    if (v > 0) m.torsion.push_back(v);
  return m;
}

}  // namespace monocycle
