#ifndef MUMCL_PROJLINE_HPP
#define MUMCL_PROJLINE_HPP

#include <map>
#include <optional>
#include <vector>

#include "mumcl/ratfunc.hpp"

namespace mumcl {

// Closed point of the projective line over F_p: either the point at infinity
// or a monic irreducible polynomial in the affine coordinate t.
//
// Conventions used throughout: homogeneous coordinates [T:U] with t = T/U,
// so the finite point a is [a:1] and infinity is [1:0].
struct ClosedPoint {
  bool infinity = false;
  Poly q;  // monic irreducible when infinity is false

  static ClosedPoint inf() {
    ClosedPoint P;
    P.infinity = true;
    return P;
  }

  static ClosedPoint from_poly(Poly poly) {
    if (poly.degree() < 1)
      throw input_error("ClosedPoint: polynomial must have degree >= 1");
    if (poly.leading() != 1)
      throw input_error("ClosedPoint: polynomial must be monic");
    ClosedPoint P;
    P.q = std::move(poly);
    return P;
  }

  // The finite rational point t = a.
  static ClosedPoint rational(const PrimeField& F, i64 a) {
    return from_poly(poly_make(F, {F.neg(F.normalize(a)), 1}));
  }

  int degree() const { return infinity ? 1 : q.degree(); }

  bool operator==(const ClosedPoint& o) const {
    return infinity == o.infinity && q == o.q;
  }
  bool operator!=(const ClosedPoint& o) const { return !(*this == o); }

  // Canonical order: infinity first, then ascending degree, then coefficient
  // by coefficient from the constant term up, each coefficient c compared via
  // the key (p - c) mod p.  Under this order the rational point t = a sorts
  // by ascending a, which matches the orbit enumeration convention below.
  bool operator<(const ClosedPoint& o) const {
    if (infinity != o.infinity) return infinity;
    if (infinity) return false;
    if (q.degree() != o.q.degree()) return q.degree() < o.q.degree();
    for (size_t i = 0; i + 1 < q.c.size(); ++i) {
      i64 a = q.c[i], b = o.q.c[i];
      if (a == b) continue;
      if (a == 0) return true;
      if (b == 0) return false;
      return a > b;
    }
    return false;
  }
};

// Divisor on the projective line: finite formal sum of closed points with
// nonzero integer multiplicities, stored in canonical point order.
struct DivisorP1 {
  std::map<ClosedPoint, i64> mult;

  bool is_zero() const { return mult.empty(); }

  i64 multiplicity(const ClosedPoint& P) const {
    auto it = mult.find(P);
    return it == mult.end() ? 0 : it->second;
  }

  void add(const ClosedPoint& P, i64 m) {
    if (m == 0) return;
    auto [it, inserted] = mult.emplace(P, m);
    if (!inserted) {
      it->second += m;
      if (it->second == 0) mult.erase(it);
    }
  }

  i64 degree() const {
    i64 d = 0;
    for (auto& [P, m] : mult) d += m * P.degree();
    return d;
  }

  bool operator==(const DivisorP1& o) const { return mult == o.mult; }
  bool operator!=(const DivisorP1& o) const { return mult != o.mult; }
};

inline DivisorP1 divisor_add(const DivisorP1& a, const DivisorP1& b) {
  DivisorP1 r = a;
  for (auto& [P, m] : b.mult) r.add(P, m);
  return r;
}

inline DivisorP1 divisor_negate(const DivisorP1& a) {
  DivisorP1 r;
  for (auto& [P, m] : a.mult) r.mult.emplace(P, -m);
  return r;
}

inline DivisorP1 divisor_sub(const DivisorP1& a, const DivisorP1& b) {
  return divisor_add(a, divisor_negate(b));
}

inline DivisorP1 divisor_scale(const DivisorP1& a, i64 s) {
  DivisorP1 r;
  if (s == 0) return r;
  for (auto& [P, m] : a.mult) r.mult.emplace(P, s * m);
  return r;
}

// Coefficientwise minimum, treating absent points as multiplicity zero.
inline DivisorP1 divisor_min(const DivisorP1& a, const DivisorP1& b) {
  DivisorP1 r;
  for (auto& [P, m] : a.mult) r.add(P, std::min(m, b.multiplicity(P)));
  for (auto& [P, m] : b.mult)
    if (a.mult.find(P) == a.mult.end()) r.add(P, std::min(i64(0), m));
  return r;
}

// Principal divisor of a nonzero rational function; the multiplicity at
// infinity is deg den - deg num, giving total degree zero.
inline DivisorP1 divisor_of(const PrimeField& F, const RatFunc& f) {
  DivisorP1 B;
  for (auto& pf : poly_factor(F, f.num).factors)
    B.add(ClosedPoint::from_poly(pf.factor), pf.multiplicity);
  for (auto& pf : poly_factor(F, f.den).factors)
    B.add(ClosedPoint::from_poly(pf.factor), -pf.multiplicity);
  B.add(ClosedPoint::inf(),
        static_cast<i64>(f.den.degree()) - static_cast<i64>(f.num.degree()));
  return B;
}

// The function with a prescribed principal divisor, normalized to scalar 1.
// Requires degree zero; unique up to the scalar, which is pinned to 1.
inline RatFunc function_with_divisor(const PrimeField& F, const DivisorP1& B) {
  if (B.degree() != 0)
    throw input_error("function_with_divisor: divisor degree is nonzero");
  Poly n = poly_one(), d = poly_one();
  for (auto& [P, m] : B.mult) {
    if (P.infinity) continue;  // accounted for by the degree deficit
    Poly pw = poly_one();
    for (i64 i = 0; i < (m < 0 ? -m : m); ++i) pw = poly_mul(F, pw, P.q);
    if (m > 0)
      n = poly_mul(F, n, pw);
    else
      d = poly_mul(F, d, pw);
  }
  RatFunc f;
  f.num = n;
  f.den = d;
  return f;
}

// ---------------------------------------------------------------------------
// Moebius transformations t -> (a t + b) / (c t + d)
// ---------------------------------------------------------------------------

// Invertible fractional-linear map, stored projectively with the first
// nonzero entry of (a, b, c, d) normalized to 1.
struct MobiusMap {
  i64 a = 1, b = 0, c = 0, d = 1;

  bool operator==(const MobiusMap& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
  bool operator!=(const MobiusMap& o) const { return !(*this == o); }
  bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
};

inline MobiusMap mobius_make(const PrimeField& F, i64 a, i64 b, i64 c,
                             i64 d) {
  a = F.normalize(a);
  b = F.normalize(b);
  c = F.normalize(c);
  d = F.normalize(d);
  i64 det = F.sub(F.mul(a, d), F.mul(b, c));
  if (det == 0) throw input_error("mobius_make: singular matrix");
  i64 lead = a != 0 ? a : (b != 0 ? b : c);
  i64 s = F.inv(lead);
  MobiusMap m;
  m.a = F.mul(a, s);
  m.b = F.mul(b, s);
  m.c = F.mul(c, s);
  m.d = F.mul(d, s);
  return m;
}

inline MobiusMap mobius_identity() { return MobiusMap(); }

// First m2, then m1 (matrix product m1 * m2).
inline MobiusMap mobius_compose(const PrimeField& F, const MobiusMap& m1,
                                const MobiusMap& m2) {
  return mobius_make(F, F.add(F.mul(m1.a, m2.a), F.mul(m1.b, m2.c)),
                     F.add(F.mul(m1.a, m2.b), F.mul(m1.b, m2.d)),
                     F.add(F.mul(m1.c, m2.a), F.mul(m1.d, m2.c)),
                     F.add(F.mul(m1.c, m2.b), F.mul(m1.d, m2.d)));
}

inline MobiusMap mobius_inverse(const PrimeField& F, const MobiusMap& m) {
  return mobius_make(F, m.d, F.neg(m.b), F.neg(m.c), m.a);
}

namespace detail {

// q read as the degree-k homogeneous form sum q_i T^i U^(k-i), evaluated at
// T = A t + B, U = C t + D and dehomogenized at U = 1.
inline Poly binary_substitute(const PrimeField& F, const Poly& q, int k,
                              i64 A, i64 B, i64 C, i64 D) {
  Poly first = poly_make(F, {B, A});
  Poly second = poly_make(F, {D, C});
  std::vector<Poly> pow_first(static_cast<size_t>(k) + 1);
  std::vector<Poly> pow_second(static_cast<size_t>(k) + 1);
  pow_first[0] = pow_second[0] = poly_one();
  for (int i = 1; i <= k; ++i) {
    pow_first[static_cast<size_t>(i)] =
        poly_mul(F, pow_first[static_cast<size_t>(i - 1)], first);
    pow_second[static_cast<size_t>(i)] =
        poly_mul(F, pow_second[static_cast<size_t>(i - 1)], second);
  }
  Poly out;
  for (int i = 0; i <= q.degree(); ++i) {
    i64 ci = q.c[static_cast<size_t>(i)];
    if (ci == 0) continue;
    Poly term = poly_mul(F, pow_first[static_cast<size_t>(i)],
                         pow_second[static_cast<size_t>(k - i)]);
    out = poly_add(F, out, poly_scale(F, term, ci));
  }
  return out;
}

}  // namespace detail

// Image of a closed point under m.  The defining form is composed with the
// adjugate matrix (a projective inverse), which permutes closed points.
inline ClosedPoint mobius_apply(const PrimeField& F, const MobiusMap& m,
                                const ClosedPoint& P) {
  // adjugate of [[a,b],[c,d]]
  i64 A = m.d, B = F.neg(m.b), C = F.neg(m.c), D = m.a;
  if (P.infinity) {
    // form U composes to C t + D
    if (C == 0) return ClosedPoint::inf();
    return ClosedPoint::from_poly(
        poly_monic(F, poly_make(F, {D, C})));
  }
  int k = P.q.degree();
  Poly r = detail::binary_substitute(F, P.q, k, A, B, C, D);
  if (r.degree() == k) return ClosedPoint::from_poly(poly_monic(F, r));
  if (k == 1 && r.degree() == 0) return ClosedPoint::inf();
  throw internal_error("mobius_apply: image form degenerated");
}

inline DivisorP1 mobius_pushforward(const PrimeField& F, const DivisorP1& B,
                                    const MobiusMap& m) {
  DivisorP1 r;
  for (auto& [P, mult] : B.mult) r.add(mobius_apply(F, m, P), mult);
  return r;
}

// f composed with m, i.e. t -> (a t + b)/(c t + d) substituted into f.
inline RatFunc mobius_pullback(const PrimeField& F, const RatFunc& f,
                               const MobiusMap& m) {
  if (m.is_identity()) return f;
  int dn = f.num.degree(), dd = f.den.degree();
  int k = std::max(dn, dd);
  Poly n = detail::binary_substitute(F, f.num, dn, m.a, m.b, m.c, m.d);
  Poly d = detail::binary_substitute(F, f.den, dd, m.a, m.b, m.c, m.d);
  // pad both sides with powers of (c t + d) up to common homogeneous degree
  Poly lin = poly_make(F, {m.d, m.c});
  for (int i = dn; i < k; ++i) n = poly_mul(F, n, lin);
  for (int i = dd; i < k; ++i) d = poly_mul(F, d, lin);
  return ratfunc_make(F, n, d, f.scalar);
}

// ---------------------------------------------------------------------------
// Orbits of the cyclic substitution t -> zeta_d * t
// ---------------------------------------------------------------------------

// Primitive d-th root of unity derived from the field generator.
inline i64 zeta(const PrimeField& F, int d) {
  if (d < 1 || (F.p() - 1) % d != 0)
    throw input_error("zeta: order must divide p - 1");
  return F.pow(F.generator(), (F.p() - 1) / d);
}

// One step of the substitution action on points: q(t) -> monic(q(zeta t)).
inline ClosedPoint sigma_step(const PrimeField& F, const ClosedPoint& P,
                              i64 z) {
  if (P.infinity) return P;
  return ClosedPoint::from_poly(poly_monic(F, poly_compose_scale(F, P.q, z)));
}

// Orbit of P under the substitution action, listed from its canonically
// smallest member and following successive substitution steps.  Infinity and
// the point t = 0 are the two fixed points.
inline std::vector<ClosedPoint> sigma_orbit(const PrimeField& F,
                                            const ClosedPoint& P, int d) {
  i64 z = zeta(F, d);
  std::vector<ClosedPoint> cycle;
  ClosedPoint cur = P;
  do {
    cycle.push_back(cur);
    cur = sigma_step(F, cur, z);
  } while (cur != P);
  size_t min_at = 0;
  for (size_t i = 1; i < cycle.size(); ++i)
    if (cycle[i] < cycle[min_at]) min_at = i;
  std::rotate(cycle.begin(),
              cycle.begin() + static_cast<std::ptrdiff_t>(min_at),
              cycle.end());
  return cycle;
}

}  // namespace mumcl

#endif  // MUMCL_PROJLINE_HPP
