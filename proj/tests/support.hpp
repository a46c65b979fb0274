#ifndef MUMCL_TESTS_SUPPORT_HPP
#define MUMCL_TESTS_SUPPORT_HPP

// Shared helpers for the test suite: deterministic random generators for
// field elements, polynomials and rational functions, plus brute-force
// reference implementations (trial-division factorization, exhaustive
// enumerations) used to cross-check the library's algorithmic paths.

#include <random>
#include <vector>

#include "mumcl/projline.hpp"

namespace mumcl::testsupport {

inline i64 random_unit(const PrimeField& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<i64> dist(1, F.p() - 1);
  return dist(rng);
}

inline i64 random_element(const PrimeField& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<i64> dist(0, F.p() - 1);
  return dist(rng);
}

inline Poly random_poly(const PrimeField& F, std::mt19937_64& rng,
                        int max_degree, bool nonzero = false) {
  std::uniform_int_distribution<int> deg_dist(0, max_degree);
  int deg = deg_dist(rng);
  std::vector<i64> c(static_cast<size_t>(deg) + 1);
  for (i64& x : c) x = random_element(F, rng);
  Poly f = poly_trim(Poly(std::move(c)));
  if (nonzero && f.is_zero()) f = poly_const(F, random_unit(F, rng));
  return f;
}

inline Poly random_monic_poly(const PrimeField& F, std::mt19937_64& rng,
                              int degree) {
  std::vector<i64> c(static_cast<size_t>(degree) + 1);
  for (int i = 0; i < degree; ++i)
    c[static_cast<size_t>(i)] = random_element(F, rng);
  c[static_cast<size_t>(degree)] = 1;
  return Poly(std::move(c));
}

inline RatFunc random_ratfunc(const PrimeField& F, std::mt19937_64& rng,
                              int max_degree) {
  std::uniform_int_distribution<int> deg_dist(0, max_degree);
  Poly n = random_monic_poly(F, rng, deg_dist(rng));
  Poly d = random_monic_poly(F, rng, deg_dist(rng));
  return ratfunc_make(F, n, d, random_unit(F, rng));
}

inline MobiusMap random_mobius(const PrimeField& F, std::mt19937_64& rng) {
  for (;;) {
    i64 a = random_element(F, rng), b = random_element(F, rng);
    i64 c = random_element(F, rng), d = random_element(F, rng);
    if (F.sub(F.mul(a, d), F.mul(b, c)) != 0) return mobius_make(F, a, b, c, d);
  }
}

// All monic polynomials of the given degree, odometer order.
inline std::vector<Poly> all_monic_polys(const PrimeField& F, int degree) {
  std::vector<Poly> out;
  std::vector<i64> c(static_cast<size_t>(degree) + 1, 0);
  c.back() = 1;
  for (;;) {
    out.push_back(poly_trim(Poly(c)));
    int i = 0;
    while (i < degree && c[static_cast<size_t>(i)] == F.p() - 1) {
      c[static_cast<size_t>(i)] = 0;
      ++i;
    }
    if (i == degree) break;
    ++c[static_cast<size_t>(i)];
  }
  return out;
}

// Reference irreducibility check: no monic divisor of degree 1..deg/2.
inline bool oracle_irreducible(const PrimeField& F, const Poly& f) {
  if (f.degree() < 1) return false;
  for (int d = 1; 2 * d <= f.degree(); ++d)
    for (const Poly& g : all_monic_polys(F, d))
      if (poly_mod(F, f, g).is_zero()) return false;
  return true;
}

// Reference factorization by repeated trial division with the smallest monic
// divisor; independent of the library's squarefree/splitting pipeline.
inline Factorization oracle_factor(const PrimeField& F, Poly f) {
  Factorization out;
  out.unit = f.leading();
  f = poly_monic(F, f);
  while (f.degree() > 0) {
    Poly divisor;
    for (int d = 1; d <= f.degree() && divisor.is_zero(); ++d) {
      for (const Poly& g : all_monic_polys(F, d)) {
        if (d < f.degree() && !oracle_irreducible(F, g)) continue;
        if (poly_mod(F, f, g).is_zero()) {
          divisor = g;
          break;
        }
      }
    }
    if (divisor.is_zero()) throw internal_error("oracle_factor: no divisor");
    int mult = 0;
    for (;;) {
      auto [q, r] = poly_divmod(F, f, divisor);
      if (!r.is_zero()) break;
      f = q;
      ++mult;
    }
    out.factors.push_back({divisor, mult});
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const PolyFactor& a, const PolyFactor& b) {
              return a.factor < b.factor;
            });
  return out;
}

inline bool same_factorization(const Factorization& a,
                               const Factorization& b) {
  if (a.unit != b.unit || a.factors.size() != b.factors.size()) return false;
  for (size_t i = 0; i < a.factors.size(); ++i) {
    if (a.factors[i].factor != b.factors[i].factor) return false;
    if (a.factors[i].multiplicity != b.factors[i].multiplicity) return false;
  }
  return true;
}

}  // namespace mumcl::testsupport

#endif  // MUMCL_TESTS_SUPPORT_HPP
