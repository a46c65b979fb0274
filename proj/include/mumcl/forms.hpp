#ifndef MUMCL_FORMS_HPP
#define MUMCL_FORMS_HPP

#include <algorithm>
#include <array>
#include <utility>
#include <vector>

#include "mumcl/field.hpp"

namespace mumcl {

// Exponent layout: with 3 variables the entries read (x0, x1, x2) and the
// last slot stays 0; with 4 variables they read (x0, x1, y0, y1), the two
// factors of a product of two lines.
using Exponents = std::array<int, 4>;

inline int exponent_total(const Exponents& e) { return e[0] + e[1] + e[2] + e[3]; }

// Graded lexicographic order, earlier variables larger.
inline bool monomial_less(const Exponents& a, const Exponents& b) {
  int ta = exponent_total(a);
  int tb = exponent_total(b);
  if (ta != tb) return ta < tb;
  return a < b;
}

struct FormTerm {
  Exponents e{0, 0, 0, 0};
  i64 c = 0;

  bool operator==(const FormTerm& o) const { return e == o.e && c == o.c; }
  bool operator!=(const FormTerm& o) const { return !(*this == o); }
};

// Homogeneous form: total degree constant with 3 variables, both factor
// degrees constant with 4.  Terms are kept sorted with the largest monomial
// first and the leading coefficient normalized to 1.
struct Form {
  int nvars = 3;
  std::vector<FormTerm> terms;

  bool operator==(const Form& o) const { return nvars == o.nvars && terms == o.terms; }
  bool operator!=(const Form& o) const { return !(*this == o); }
  bool operator<(const Form& o) const {
    if (nvars != o.nvars) return nvars < o.nvars;
    size_t n = std::min(terms.size(), o.terms.size());
    for (size_t i = 0; i < n; ++i) {
      if (terms[i].e != o.terms[i].e) return monomial_less(terms[i].e, o.terms[i].e);
      if (terms[i].c != o.terms[i].c) return terms[i].c < o.terms[i].c;
    }
    return terms.size() < o.terms.size();
  }
};

inline Form form_make(const PrimeField& F, int nvars,
                      std::vector<FormTerm> terms) {
  if (nvars != 3 && nvars != 4)
    throw input_error("form_make: variable count must be 3 or 4");
  std::vector<FormTerm> acc;
  for (FormTerm t : terms) {
    for (int i = 0; i < 4; ++i) {
      if (t.e[static_cast<size_t>(i)] < 0)
        throw input_error("form_make: negative exponent");
      if (i >= nvars && t.e[static_cast<size_t>(i)] != 0)
        throw input_error("form_make: exponent on unused variable");
    }
    t.c = F.normalize(t.c);
    if (t.c == 0) continue;
    bool merged = false;
    for (FormTerm& u : acc)
      if (u.e == t.e) {
        u.c = F.add(u.c, t.c);
        merged = true;
        break;
      }
    if (!merged) acc.push_back(t);
  }
  acc.erase(std::remove_if(acc.begin(), acc.end(),
                           [](const FormTerm& t) { return t.c == 0; }),
            acc.end());
  if (acc.empty()) throw input_error("form_make: zero form");
  if (nvars == 3) {
    int d = exponent_total(acc.front().e);
    for (const FormTerm& t : acc)
      if (exponent_total(t.e) != d)
        throw input_error("form_make: form is not homogeneous");
  } else {
    int dx = acc.front().e[0] + acc.front().e[1];
    int dy = acc.front().e[2] + acc.front().e[3];
    for (const FormTerm& t : acc)
      if (t.e[0] + t.e[1] != dx || t.e[2] + t.e[3] != dy)
        throw input_error("form_make: form is not bihomogeneous");
  }
  std::sort(acc.begin(), acc.end(), [](const FormTerm& a, const FormTerm& b) {
    return monomial_less(b.e, a.e);
  });
  i64 lead = acc.front().c;
  if (lead != 1) {
    i64 inv = F.inv(lead);
    for (FormTerm& t : acc) t.c = F.mul(t.c, inv);
  }
  return Form{nvars, std::move(acc)};
}

// Degree vector: (d) with 3 variables, (dx, dy) with 4.
inline std::vector<i64> form_degree(const Form& f) {
  const Exponents& e = f.terms.front().e;
  if (f.nvars == 3) return {static_cast<i64>(exponent_total(e))};
  return {static_cast<i64>(e[0] + e[1]), static_cast<i64>(e[2] + e[3])};
}

inline Form form_mul(const PrimeField& F, const Form& a, const Form& b) {
  if (a.nvars != b.nvars)
    throw input_error("form_mul: mixed variable counts");
  std::vector<FormTerm> prod;
  for (const FormTerm& s : a.terms)
    for (const FormTerm& t : b.terms) {
      Exponents e;
      for (size_t i = 0; i < 4; ++i) e[i] = s.e[i] + t.e[i];
      prod.push_back(FormTerm{e, F.mul(s.c, t.c)});
    }
  return form_make(F, a.nvars, std::move(prod));
}

// Line a*x0 + b*x1 + c*x2 in the plane.
inline Form form_plane_line(const PrimeField& F, i64 a, i64 b, i64 c) {
  return form_make(F, 3,
                   {FormTerm{{1, 0, 0, 0}, a}, FormTerm{{0, 1, 0, 0}, b},
                    FormTerm{{0, 0, 1, 0}, c}});
}

// Monic polynomial q of degree k homogenized in the pair (v, w): sum of
// q_i v^i w^(k-i), expressed in the requested variable pair of a form.
// pair_index 0 uses (x0, x1); 1 uses (y0, y1) of a 4-variable form.
inline Form form_from_poly(const PrimeField& F, int nvars, int pair_index,
                           const std::vector<i64>& coeffs) {
  if (coeffs.empty() || coeffs.back() == 0)
    throw input_error("form_from_poly: leading coefficient must be nonzero");
  int k = static_cast<int>(coeffs.size()) - 1;
  size_t lo = pair_index == 0 ? 0 : 2;
  std::vector<FormTerm> terms;
  for (int i = 0; i <= k; ++i) {
    FormTerm t;
    t.e[lo] = i;
    t.e[lo + 1] = k - i;
    t.c = coeffs[static_cast<size_t>(i)];
    terms.push_back(t);
  }
  return form_make(F, nvars, std::move(terms));
}

}  // namespace mumcl

#endif  // MUMCL_FORMS_HPP
