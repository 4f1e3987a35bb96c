#pragma once
#include <gmpxx.h>

#include <climits>
#include <string>

namespace monocycle {

using Scalar = mpq_class;

enum class CoeffKind { Fp, Q, Zp };

// The coefficient ring: a prime field, the rationals, or the integers localized at p.
// Elements of every kind are stored as mpq_class; Fp values are kept reduced into [0,p).
struct CoeffRing {
  CoeffKind kind = CoeffKind::Q;
  long p = 0;

  static CoeffRing rationals() { return {CoeffKind::Q, 0}; }
  static CoeffRing prime_field(long p) { return {CoeffKind::Fp, p}; }
  static CoeffRing local_integers(long p) { return {CoeffKind::Zp, p}; }
  static CoeffRing parse(const std::string& s);  // "Q", "F2", "Z(2)"

  bool is_field() const { return kind != CoeffKind::Zp; }
  std::string name() const;
  // generator of the maximal ideal; 0 for fields
  Scalar uniformizer() const { return kind == CoeffKind::Zp ? Scalar(p) : Scalar(0); }

  Scalar normalize(const Scalar& x) const;
  bool is_unit(const Scalar& x) const;
  // p-adic valuation over Z(p); 0 for nonzero field elements; INT_MAX for zero
  int valuation(const Scalar& x) const;
  Scalar inverse(const Scalar& x) const;  // throws ArithmeticError for non-units
  // exact quotient a/b, which must lie in the ring
  Scalar divide(const Scalar& a, const Scalar& b) const;
  bool divides(const Scalar& b, const Scalar& a) const;  // b | a

  bool operator==(const CoeffRing& o) const { return kind == o.kind && p == o.p; }
  bool operator!=(const CoeffRing& o) const { return !(*this == o); }
};

std::string scalar_str(const Scalar& x);

}  // namespace monocycle
