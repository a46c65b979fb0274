#ifndef MUMCL_RATFUNC_HPP
#define MUMCL_RATFUNC_HPP

#include <utility>

#include "mumcl/poly.hpp"

namespace mumcl {

// Nonzero rational function over F_p in canonical form:
//   scalar * num / den,  scalar in F_p*,  num and den monic and coprime.
// Canonical form makes equality a plain field-by-field comparison.
struct RatFunc {
  i64 scalar = 1;
  Poly num = poly_one();
  Poly den = poly_one();

  bool operator==(const RatFunc& o) const {
    return scalar == o.scalar && num == o.num && den == o.den;
  }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }
  bool is_constant() const { return num.is_one() && den.is_one(); }
  bool is_one() const { return scalar == 1 && is_constant(); }
};

// Normalize an arbitrary nonzero quotient into canonical form.
inline RatFunc ratfunc_make(const PrimeField& F, const Poly& num,
                            const Poly& den, i64 scalar = 1) {
  if (num.is_zero()) throw input_error("ratfunc_make: zero numerator");
  if (den.is_zero()) throw input_error("ratfunc_make: zero denominator");
  scalar = F.normalize(scalar);
  if (scalar == 0) throw input_error("ratfunc_make: zero scalar");
  Poly g = poly_gcd(F, num, den);
  Poly n = poly_div_exact(F, num, g);
  Poly d = poly_div_exact(F, den, g);
  RatFunc r;
  r.scalar = F.mul(scalar, F.mul(n.leading(), F.inv(d.leading())));
  r.num = poly_monic(F, n);
  r.den = poly_monic(F, d);
  return r;
}

inline RatFunc ratfunc_const(const PrimeField& F, i64 c) {
  return ratfunc_make(F, poly_one(), poly_one(), c);
}

inline RatFunc ratfunc_one() { return RatFunc(); }

inline RatFunc ratfunc_mul(const PrimeField& F, const RatFunc& a,
                           const RatFunc& b) {
  // cross-cancel before multiplying to keep degrees low
  Poly g1 = poly_gcd(F, a.num, b.den);
  Poly g2 = poly_gcd(F, b.num, a.den);
  Poly n = poly_mul(F, poly_div_exact(F, a.num, g1),
                    poly_div_exact(F, b.num, g2));
  Poly d = poly_mul(F, poly_div_exact(F, a.den, g2),
                    poly_div_exact(F, b.den, g1));
  return ratfunc_make(F, n, d, F.mul(a.scalar, b.scalar));
}

inline RatFunc ratfunc_inv(const PrimeField& F, const RatFunc& a) {
  RatFunc r;
  r.scalar = F.inv(a.scalar);
  r.num = a.den;
  r.den = a.num;
  return r;
}

inline RatFunc ratfunc_div(const PrimeField& F, const RatFunc& a,
                           const RatFunc& b) {
  return ratfunc_mul(F, a, ratfunc_inv(F, b));
}

inline RatFunc ratfunc_scale(const PrimeField& F, const RatFunc& a, i64 s) {
  RatFunc r = a;
  r.scalar = F.mul(r.scalar, F.normalize(s));
  if (r.scalar == 0) throw input_error("ratfunc_scale: zero scalar");
  return r;
}

inline RatFunc ratfunc_pow(const PrimeField& F, const RatFunc& a, i64 e) {
  RatFunc base = e < 0 ? ratfunc_inv(F, a) : a;
  i64 n = e < 0 ? -e : e;
  RatFunc r;
  while (n > 0) {
    if (n & 1) r = ratfunc_mul(F, r, base);
    base = ratfunc_mul(F, base, base);
    n >>= 1;
  }
  return r;
}

// max(deg num, deg den); 0 for constants.
inline int ratfunc_height(const RatFunc& a) {
  return std::max(a.num.degree(), a.den.degree());
}

// Value at the finite point t = x.  Throws if x is a zero or a pole; callers
// in the gluing pipeline only evaluate away from the divisor.
inline i64 ratfunc_eval(const PrimeField& F, const RatFunc& a, i64 x) {
  i64 n = poly_eval(F, a.num, x);
  i64 d = poly_eval(F, a.den, x);
  if (d == 0) throw input_error("ratfunc_eval: pole at evaluation point");
  if (n == 0) throw input_error("ratfunc_eval: zero at evaluation point");
  return F.mul(a.scalar, F.div(n, d));
}

// Value at infinity, defined when deg num == deg den; both parts are monic so
// the value is just the scalar.
inline i64 ratfunc_eval_infinity(const PrimeField& F, const RatFunc& a) {
  if (a.num.degree() != a.den.degree())
    throw input_error("ratfunc_eval_infinity: zero or pole at infinity");
  (void)F;
  return a.scalar;
}

// f(s*t) in canonical form.
inline RatFunc ratfunc_compose_scale(const PrimeField& F, const RatFunc& a,
                                     i64 s) {
  Poly n = poly_compose_scale(F, a.num, s);
  Poly d = poly_compose_scale(F, a.den, s);
  if (n.is_zero() || d.is_zero())
    throw input_error("ratfunc_compose_scale: scale must be nonzero");
  return ratfunc_make(F, n, d, a.scalar);
}

// f(t^d) in canonical form.
inline RatFunc ratfunc_compose_power(const PrimeField& F, const RatFunc& a,
                                     int d) {
  return ratfunc_make(F, poly_compose_power(a.num, d),
                      poly_compose_power(a.den, d), a.scalar);
}

}  // namespace mumcl

#endif  // MUMCL_RATFUNC_HPP
