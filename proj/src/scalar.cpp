#include "monocycle/scalar.hpp"

#include "monocycle/errors.hpp"

namespace monocycle {

CoeffRing CoeffRing::parse(const std::string& s) {
  if (s == "Q" || s == "QQ") return rationals();
  try {
    if (s.size() > 1 && (s[0] == 'F' || s[0] == 'f')) {
      long p = std::stol(s.substr(1));
      if (p < 2) throw ParseError("bad prime in " + s);
      return prime_field(p);
    }
    if (s.size() > 3 && s[0] == 'Z' && s[1] == '(' && s.back() == ')') {
      long p = std::stol(s.substr(2, s.size() - 3));
      if (p < 2) throw ParseError("bad prime in " + s);
      return local_integers(p);
    }
  } catch (const std::logic_error&) {
  }
  throw ParseError("unknown coefficient ring '" + s + "' (use Q, F<p>, Z(<p>))");
}

std::string CoeffRing::name() const {
  switch (kind) {
    case CoeffKind::Q: return "Q";
    case CoeffKind::Fp: return "F" + std::to_string(p);
    case CoeffKind::Zp: return "Z(" + std::to_string(p) + ")";
  }
  return "?";
}

static mpz_class mod_p(const mpz_class& z, long p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(p));
  return r;
}

Scalar CoeffRing::normalize(const Scalar& x) const {
  switch (kind) {
    case CoeffKind::Q: return x;
    case CoeffKind::Zp: {
      // p-free denominators are enforced where division happens
      return x;
    }
    case CoeffKind::Fp: {
      mpz_class num = mod_p(x.get_num(), p), den = mod_p(x.get_den(), p);
      if (den == 0) throw ArithmeticError("division by zero mod " + std::to_string(p));
      mpz_class inv;
      mpz_class pz(p);
      mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
      return Scalar(mod_p(num * inv, p));
    }
  }
  return x;
}

bool CoeffRing::is_unit(const Scalar& x) const {
  if (x == 0) return false;
  if (kind != CoeffKind::Zp) return true;
  return mod_p(x.get_num(), p) != 0;
}

int CoeffRing::valuation(const Scalar& x) const {
  if (x == 0) return INT_MAX;
  if (kind != CoeffKind::Zp) return 0;
  mpz_class n = abs(x.get_num());
  int v = 0;
  while (mod_p(n, p) == 0) {
    n /= p;
    ++v;
  }
  return v;
}

Scalar CoeffRing::inverse(const Scalar& x) const {
  if (!is_unit(x)) throw ArithmeticError("not a unit: " + x.get_str() + " in " + name());
  return normalize(Scalar(1) / x);
}

Scalar CoeffRing::divide(const Scalar& a, const Scalar& b) const {
  if (b == 0) throw ArithmeticError("division by zero");
  if (kind == CoeffKind::Zp && valuation(a) < valuation(b))
    throw ArithmeticError("quotient leaves " + name());
  if (kind == CoeffKind::Fp) return normalize(a * inverse(b));
  Scalar q = a / b;
  return q;
}

bool CoeffRing::divides(const Scalar& b, const Scalar& a) const {
  if (a == 0) return true;
  if (b == 0) return false;
  return valuation(b) <= valuation(a);
}

std::string scalar_str(const Scalar& x) { return x.get_str(); }

}  // namespace monocycle
