#ifndef MUMCL_POLY_HPP
#define MUMCL_POLY_HPP

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "mumcl/field.hpp"

namespace mumcl {

// Dense univariate polynomial over F_p.  c[i] is the coefficient of t^i,
// canonical representatives in [0, p), no trailing zeros.  The zero
// polynomial has an empty coefficient vector and degree -1.
struct Poly {
  std::vector<i64> c;

  Poly() = default;
  explicit Poly(std::vector<i64> coeffs) : c(std::move(coeffs)) {}

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  bool is_one() const { return c.size() == 1 && c[0] == 1; }
  i64 leading() const {
    if (c.empty()) throw internal_error("Poly::leading on zero polynomial");
    return c.back();
  }

  bool operator==(const Poly& o) const { return c == o.c; }
  bool operator!=(const Poly& o) const { return c != o.c; }
  bool operator<(const Poly& o) const {
    if (c.size() != o.c.size()) return c.size() < o.c.size();
    for (size_t i = 0; i < c.size(); ++i)
      if (c[i] != o.c[i]) return c[i] < o.c[i];
    return false;
  }
};

inline Poly poly_trim(Poly f) {
  while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
  return f;
}

// Build a polynomial from arbitrary integer coefficients.
inline Poly poly_make(const PrimeField& F, std::vector<i64> coeffs) {
  for (i64& x : coeffs) x = F.normalize(x);
  return poly_trim(Poly(std::move(coeffs)));
}

inline Poly poly_zero() { return Poly(); }
inline Poly poly_one() { return Poly({1}); }
inline Poly poly_const(const PrimeField& F, i64 a) {
  return poly_make(F, {a});
}
// The monomial t.
inline Poly poly_t() { return Poly({0, 1}); }

inline Poly poly_add(const PrimeField& F, const Poly& a, const Poly& b) {
  std::vector<i64> c(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < a.c.size(); ++i) c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) c[i] = F.add(c[i], b.c[i]);
  return poly_trim(Poly(std::move(c)));
}

inline Poly poly_sub(const PrimeField& F, const Poly& a, const Poly& b) {
  std::vector<i64> c(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < a.c.size(); ++i) c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) c[i] = F.sub(c[i], b.c[i]);
  return poly_trim(Poly(std::move(c)));
}

inline Poly poly_scale(const PrimeField& F, const Poly& a, i64 s) {
  s = F.normalize(s);
  if (s == 0) return Poly();
  Poly r = a;
  for (i64& x : r.c) x = F.mul(x, s);
  return r;
}

inline Poly poly_mul(const PrimeField& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<i64> c(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      c[i + j] = F.add(c[i + j], F.mul(a.c[i], b.c[j]));
  }
  return poly_trim(Poly(std::move(c)));
}

// Quotient and remainder, b nonzero.
inline std::pair<Poly, Poly> poly_divmod(const PrimeField& F, const Poly& a,
                                         const Poly& b) {
  if (b.is_zero()) throw input_error("poly_divmod: division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<i64> rem = a.c;
  std::vector<i64> quo(a.c.size() - b.c.size() + 1, 0);
  i64 lead_inv = F.inv(b.leading());
  for (int i = static_cast<int>(rem.size()) - 1;
       i >= static_cast<int>(b.c.size()) - 1; --i) {
    if (rem[static_cast<size_t>(i)] == 0) continue;
    i64 q = F.mul(rem[static_cast<size_t>(i)], lead_inv);
    int shift = i - b.degree();
    quo[static_cast<size_t>(shift)] = q;
    for (size_t j = 0; j < b.c.size(); ++j) {
      size_t k = static_cast<size_t>(shift) + j;
      rem[k] = F.sub(rem[k], F.mul(q, b.c[j]));
    }
  }
  return {poly_trim(Poly(std::move(quo))), poly_trim(Poly(std::move(rem)))};
}

inline Poly poly_mod(const PrimeField& F, const Poly& a, const Poly& b) {
  return poly_divmod(F, a, b).second;
}

inline Poly poly_div_exact(const PrimeField& F, const Poly& a, const Poly& b) {
  auto [q, r] = poly_divmod(F, a, b);
  if (!r.is_zero()) throw internal_error("poly_div_exact: nonzero remainder");
  return q;
}

inline Poly poly_monic(const PrimeField& F, const Poly& a) {
  if (a.is_zero()) return a;
  return poly_scale(F, a, F.inv(a.leading()));
}

// Monic gcd.
inline Poly poly_gcd(const PrimeField& F, Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(F, a);
}

inline Poly poly_derivative(const PrimeField& F, const Poly& a) {
  if (a.c.size() <= 1) return Poly();
  std::vector<i64> c(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i)
    c[i - 1] = F.mul(a.c[i], F.normalize(static_cast<i64>(i)));
  return poly_trim(Poly(std::move(c)));
}

inline i64 poly_eval(const PrimeField& F, const Poly& a, i64 x) {
  i64 r = 0;
  x = F.normalize(x);
  for (size_t i = a.c.size(); i-- > 0;) r = F.add(F.mul(r, x), a.c[i]);
  return r;
}

// base^e mod m by square and multiply.
inline Poly poly_pow_mod(const PrimeField& F, Poly base, i64 e,
                         const Poly& m) {
  if (e < 0) throw internal_error("poly_pow_mod: negative exponent");
  Poly r = poly_one();
  base = poly_mod(F, base, m);
  while (e > 0) {
    if (e & 1) r = poly_mod(F, poly_mul(F, r, base), m);
    base = poly_mod(F, poly_mul(F, base, base), m);
    e >>= 1;
  }
  return r;
}

// f(s*t): multiply coefficient i by s^i.
inline Poly poly_compose_scale(const PrimeField& F, const Poly& f, i64 s) {
  Poly r = f;
  i64 pw = 1;
  s = F.normalize(s);
  for (size_t i = 0; i < r.c.size(); ++i) {
    r.c[i] = F.mul(r.c[i], pw);
    pw = F.mul(pw, s);
  }
  return poly_trim(r);
}

// f(t^d): spread exponents by d.
inline Poly poly_compose_power(const Poly& f, int d) {
  if (d < 1) throw internal_error("poly_compose_power: d must be positive");
  if (f.is_zero()) return f;
  std::vector<i64> c(static_cast<size_t>(f.degree()) * d + 1, 0);
  for (size_t i = 0; i < f.c.size(); ++i) c[i * d] = f.c[i];
  return Poly(std::move(c));
}

// ---------------------------------------------------------------------------
// Factorization: squarefree decomposition, then distinct-degree splitting,
// then equal-degree splitting.  The random choices in the equal-degree step
// are drawn from a generator seeded by the polynomial itself, so results are
// identical across runs and platforms.
// ---------------------------------------------------------------------------

struct PolyFactor {
  Poly factor;  // monic irreducible
  int multiplicity = 0;
};

struct Factorization {
  i64 unit = 1;  // leading scalar; unit * prod factor^mult reconstructs input
  std::vector<PolyFactor> factors;
};

namespace detail {

// f = g(t^p) has a p-th root because a^p = a on F_p coefficients.
inline Poly poly_pth_root(const PrimeField& F, const Poly& f) {
  size_t p = static_cast<size_t>(F.p());
  std::vector<i64> c((f.c.size() + p - 1) / p, 0);
  for (size_t i = 0; i < f.c.size(); ++i) {
    if (f.c[i] == 0) continue;
    if (i % p != 0)
      throw internal_error("poly_pth_root: polynomial is not a p-th power");
    c[i / p] = f.c[i];
  }
  return poly_trim(Poly(std::move(c)));
}

// Squarefree decomposition of monic f: pairs (g_i, m_i) with f = prod g_i^m_i
// and the g_i squarefree and pairwise coprime.
inline void poly_squarefree(const PrimeField& F, const Poly& f,
                            std::vector<std::pair<Poly, int>>& out,
                            int outer_mult) {
  Poly df = poly_derivative(F, f);
  if (df.is_zero()) {
    // every exponent is a multiple of p
    poly_squarefree(F, poly_pth_root(F, f), out,
                    outer_mult * static_cast<int>(F.p()));
    return;
  }
  Poly c = poly_gcd(F, f, df);
  Poly w = poly_div_exact(F, f, c);
  int i = 1;
  while (!w.is_one()) {
    Poly y = poly_gcd(F, w, c);
    Poly z = poly_div_exact(F, w, y);
    if (!z.is_one()) out.emplace_back(z, i * outer_mult);
    w = std::move(y);
    c = poly_div_exact(F, c, w);
    ++i;
  }
  if (!c.is_one())
    poly_squarefree(F, poly_pth_root(F, c), out,
                    outer_mult * static_cast<int>(F.p()));
}

// Distinct-degree splitting of squarefree monic f: pairs (product, d) where
// product collects all irreducible factors of degree d.
inline std::vector<std::pair<Poly, int>> poly_ddf(const PrimeField& F,
                                                  Poly f) {
  std::vector<std::pair<Poly, int>> out;
  Poly h = poly_t();
  int d = 0;
  while (f.degree() >= 2 * (d + 1)) {
    ++d;
    h = poly_pow_mod(F, h, F.p(), f);
    Poly g = poly_gcd(F, poly_sub(F, h, poly_t()), f);
    if (!g.is_one()) {
      out.emplace_back(g, d);
      f = poly_div_exact(F, f, g);
      h = poly_mod(F, h, f);
    }
  }
  if (f.degree() > 0) out.emplace_back(f, f.degree());
  return out;
}

inline std::uint64_t poly_seed(const Poly& f) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (i64 x : f.c) {
    h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Equal-degree splitting: f is a squarefree monic product of irreducibles of
// degree d.  Cantor-Zassenhaus for odd p; the exponent (p^d - 1) / 2 is
// applied as ((p-1)/2) * (1 + p + ... + p^(d-1)) to stay within 63-bit
// exponents for any p below 2^31.
inline void poly_edf(const PrimeField& F, const Poly& f, int d,
                     std::vector<Poly>& out, std::mt19937_64& rng) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  std::uniform_int_distribution<i64> coeff(0, F.p() - 1);
  for (;;) {
    std::vector<i64> rc(static_cast<size_t>(f.degree()), 0);
    for (i64& x : rc) x = coeff(rng);
    Poly r = poly_trim(Poly(std::move(rc)));
    if (r.degree() < 1) continue;
    // prod_{i<d} r^(p^i) mod f, then raise to (p-1)/2
    Poly frob = r;
    Poly acc = r;
    for (int i = 1; i < d; ++i) {
      frob = poly_pow_mod(F, frob, F.p(), f);
      acc = poly_mod(F, poly_mul(F, acc, frob), f);
    }
    Poly a = poly_pow_mod(F, acc, (F.p() - 1) / 2, f);
    Poly g = poly_gcd(F, poly_sub(F, a, poly_one()), f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      poly_edf(F, g, d, out, rng);
      poly_edf(F, poly_div_exact(F, f, g), d, out, rng);
      return;
    }
  }
}

}  // namespace detail

// Full factorization into monic irreducibles, deterministic output order:
// ascending degree, then ascending coefficient vectors.
inline Factorization poly_factor(const PrimeField& F, const Poly& f) {
  if (f.is_zero()) throw input_error("poly_factor: zero polynomial");
  Factorization out;
  out.unit = f.leading();
  if (f.degree() == 0) return out;
  Poly m = poly_monic(F, f);
  std::vector<std::pair<Poly, int>> sqf;
  detail::poly_squarefree(F, m, sqf, 1);
  for (auto& [part, mult] : sqf) {
    for (auto& [prod, d] : detail::poly_ddf(F, part)) {
      std::vector<Poly> irr;
      std::mt19937_64 rng(detail::poly_seed(prod));
      detail::poly_edf(F, prod, d, irr, rng);
      for (Poly& q : irr) out.factors.push_back({std::move(q), mult});
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const PolyFactor& a, const PolyFactor& b) {
              return a.factor < b.factor;
            });
  return out;
}

inline bool poly_is_irreducible(const PrimeField& F, const Poly& f) {
  if (f.degree() < 1) return false;
  Factorization fac = poly_factor(F, f);
  return fac.factors.size() == 1 && fac.factors[0].multiplicity == 1;
}

}  // namespace mumcl

#endif  // MUMCL_POLY_HPP
