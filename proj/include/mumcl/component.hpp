#ifndef MUMCL_COMPONENT_HPP
#define MUMCL_COMPONENT_HPP

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mumcl/field.hpp"
#include "mumcl/forms.hpp"
#include "mumcl/poly.hpp"
#include "mumcl/projline.hpp"
#include "mumcl/ratfunc.hpp"

namespace mumcl {

enum class ComponentKind { Plane, Quadric, Line };

inline const char* kind_name(ComponentKind k) {
  switch (k) {
    case ComponentKind::Plane: return "plane";
    case ComponentKind::Quadric: return "quadric";
    case ComponentKind::Line: return "line";
  }
  return "?";
}

struct ComponentModel {
  std::string name;
  ComponentKind kind = ComponentKind::Line;
};

// Divisor on one component: surface kinds carry (form, multiplicity) pairs,
// the line kind a divisor on P^1.  Forms are trusted to be irreducible.
struct ComponentDivisor {
  ComponentKind kind = ComponentKind::Line;
  std::vector<std::pair<Form, i64>> forms;
  DivisorP1 points;

  bool is_zero() const { return forms.empty() && points.is_zero(); }
  bool operator==(const ComponentDivisor& o) const {
    return kind == o.kind && forms == o.forms && points == o.points;
  }
  bool operator!=(const ComponentDivisor& o) const { return !(*this == o); }
};

inline ComponentDivisor divisor_on_line(DivisorP1 d) {
  ComponentDivisor out;
  out.kind = ComponentKind::Line;
  out.points = std::move(d);
  return out;
}

inline ComponentDivisor divisor_on_surface(
    ComponentKind kind, std::vector<std::pair<Form, i64>> entries) {
  if (kind == ComponentKind::Line)
    throw input_error("divisor_on_surface: component is a line");
  int nvars = kind == ComponentKind::Plane ? 3 : 4;
  std::vector<std::pair<Form, i64>> acc;
  for (auto& [form, mult] : entries) {
    if (form.nvars != nvars)
      throw input_error("divisor_on_surface: form variable count differs from kind");
    if (mult == 0) continue;
    bool merged = false;
    for (auto& [f, m] : acc)
      if (f == form) {
        m += mult;
        merged = true;
        break;
      }
    if (!merged) acc.emplace_back(std::move(form), mult);
  }
  acc.erase(std::remove_if(acc.begin(), acc.end(),
                           [](const auto& e) { return e.second == 0; }),
            acc.end());
  std::sort(acc.begin(), acc.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  ComponentDivisor out;
  out.kind = kind;
  out.forms = std::move(acc);
  return out;
}

inline ComponentDivisor component_zero(ComponentKind kind) {
  ComponentDivisor out;
  out.kind = kind;
  return out;
}

inline ComponentDivisor component_add(const PrimeField& F,
                                      const ComponentDivisor& a,
                                      const ComponentDivisor& b) {
  (void)F;
  if (a.kind != b.kind) throw input_error("component_add: kind mismatch");
  if (a.kind == ComponentKind::Line)
    return divisor_on_line(divisor_add(a.points, b.points));
  std::vector<std::pair<Form, i64>> entries = a.forms;
  entries.insert(entries.end(), b.forms.begin(), b.forms.end());
  return divisor_on_surface(a.kind, std::move(entries));
}

inline ComponentDivisor component_negate(const ComponentDivisor& a) {
  ComponentDivisor out = a;
  for (auto& [f, m] : out.forms) m = -m;
  out.points = divisor_negate(a.points);
  return out;
}

inline ComponentDivisor component_sub(const PrimeField& F,
                                      const ComponentDivisor& a,
                                      const ComponentDivisor& b) {
  return component_add(F, a, component_negate(b));
}

// Image in the component's divisor class group: (degree) for the plane and
// the line, (x-degree, y-degree) for the quadric.
inline std::vector<i64> class_of(const ComponentDivisor& B) {
  if (B.kind == ComponentKind::Line)
    return {B.points.degree()};
  std::vector<i64> cls(B.kind == ComponentKind::Plane ? 1 : 2, 0);
  for (const auto& [form, mult] : B.forms) {
    std::vector<i64> d = form_degree(form);
    for (size_t i = 0; i < cls.size(); ++i) cls[i] += mult * d[i];
  }
  return cls;
}

// Rational function on a surface kind, kept as a formal product of forms.
struct FormalFunction {
  i64 scalar = 1;
  std::vector<std::pair<Form, i64>> factors;
};

struct ComponentFunction {
  ComponentKind kind = ComponentKind::Line;
  FormalFunction formal;
  RatFunc rational;
};

inline ComponentFunction function_one(ComponentKind kind) {
  ComponentFunction out;
  out.kind = kind;
  return out;
}

// A function with divisor exactly B, normalized to scalar 1; defined when
// the class of B vanishes.
inline ComponentFunction witness(const PrimeField& F, const ComponentDivisor& B) {
  std::vector<i64> cls = class_of(B);
  for (i64 c : cls)
    if (c != 0) throw input_error("witness: not component-wise trivial");
  ComponentFunction out;
  out.kind = B.kind;
  if (B.kind == ComponentKind::Line) {
    out.rational = function_with_divisor(F, B.points);
  } else {
    out.formal.factors = B.forms;
  }
  return out;
}

inline ComponentFunction function_scale(const PrimeField& F,
                                        const ComponentFunction& f, i64 c) {
  c = F.normalize(c);
  if (c == 0) throw input_error("function_scale: zero scalar");
  ComponentFunction out = f;
  if (f.kind == ComponentKind::Line)
    out.rational = ratfunc_scale(F, f.rational, c);
  else
    out.formal.scalar = F.mul(f.formal.scalar, c);
  return out;
}

inline ComponentFunction function_mul(const PrimeField& F,
                                      const ComponentFunction& a,
                                      const ComponentFunction& b) {
  if (a.kind != b.kind) throw input_error("function_mul: kind mismatch");
  ComponentFunction out;
  out.kind = a.kind;
  if (a.kind == ComponentKind::Line) {
    out.rational = ratfunc_mul(F, a.rational, b.rational);
    return out;
  }
  out.formal.scalar = F.mul(a.formal.scalar, b.formal.scalar);
  std::vector<std::pair<Form, i64>> factors = a.formal.factors;
  for (const auto& [form, e] : b.formal.factors) {
    bool merged = false;
    for (auto& [f, m] : factors)
      if (f == form) {
        m += e;
        merged = true;
        break;
      }
    if (!merged) factors.emplace_back(form, e);
  }
  factors.erase(std::remove_if(factors.begin(), factors.end(),
                               [](const auto& e) { return e.second == 0; }),
                factors.end());
  std::sort(factors.begin(), factors.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  out.formal.factors = std::move(factors);
  return out;
}

// The divisor cut out by a function, read off formally on surfaces.
inline ComponentDivisor formal_divisor(const PrimeField& F,
                                       const ComponentFunction& f) {
  if (f.kind == ComponentKind::Line)
    return divisor_on_line(divisor_of(F, f.rational));
  return divisor_on_surface(f.kind, f.formal.factors);
}

// Conductor piece inside one component.
//
// Plane: the line parameterized by [s:t] -> matrix * (s, t); the piece
// coordinate is s/t, so s = T, t = U and the affine chart is U = 1.
// Quadric: a ruling with one factor pinned to a rational point; the free
// factor's coordinate is repar(piece coordinate).
// Line: a rational point (the curve case).
struct PlaneLocus {
  std::array<std::array<i64, 2>, 3> m{{{0, 0}, {0, 0}, {0, 0}}};
};

struct QuadricLocus {
  int fixed_factor = 0;  // 0: x pinned, free coordinate y; 1: y pinned
  bool fixed_infinity = false;
  i64 fixed_value = 0;
  MobiusMap repar;
};

struct LineLocus {
  ClosedPoint point = ClosedPoint::inf();
};

struct ConductorEmbedding {
  std::string component;
  ComponentKind kind = ComponentKind::Line;
  PlaneLocus plane;
  QuadricLocus quadric;
  LineLocus line;
  // Split covers: the Mobius map from the piece coordinate to the reference
  // coordinate.  Cyclic covers: the Mobius map applied after t -> t^d.
  MobiusMap cover;
};

inline std::array<i64, 3> plane_locus_minors(const PrimeField& F,
                                             const PlaneLocus& l) {
  auto det2 = [&](int r1, int r2) {
    return F.sub(F.mul(l.m[static_cast<size_t>(r1)][0], l.m[static_cast<size_t>(r2)][1]),
                 F.mul(l.m[static_cast<size_t>(r1)][1], l.m[static_cast<size_t>(r2)][0]));
  };
  return {det2(0, 1), det2(0, 2), det2(1, 2)};
}

inline bool plane_locus_rank2(const PrimeField& F, const PlaneLocus& l) {
  std::array<i64, 3> m = plane_locus_minors(F, l);
  return m[0] != 0 || m[1] != 0 || m[2] != 0;
}

// Whether two pieces cut out the same subvariety of one component; the cover
// data and any reparameterization are ignored.
inline bool same_locus(const PrimeField& F, const ConductorEmbedding& a,
                       const ConductorEmbedding& b) {
  if (a.component != b.component || a.kind != b.kind) return false;
  switch (a.kind) {
    case ComponentKind::Plane: {
      std::array<i64, 3> u = plane_locus_minors(F, a.plane);
      std::array<i64, 3> v = plane_locus_minors(F, b.plane);
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
          if (F.sub(F.mul(u[static_cast<size_t>(i)], v[static_cast<size_t>(j)]),
                    F.mul(u[static_cast<size_t>(j)], v[static_cast<size_t>(i)])) != 0)
            return false;
      return true;
    }
    case ComponentKind::Quadric:
      return a.quadric.fixed_factor == b.quadric.fixed_factor &&
             a.quadric.fixed_infinity == b.quadric.fixed_infinity &&
             (a.quadric.fixed_infinity ||
              F.normalize(a.quadric.fixed_value) == F.normalize(b.quadric.fixed_value));
    case ComponentKind::Line:
      return a.line.point == b.line.point;
  }
  return false;
}

namespace detail {

inline Poly poly_power(const PrimeField& F, const Poly& base, int e) {
  Poly out = poly_one();
  for (int i = 0; i < e; ++i) out = poly_mul(F, out, base);
  return out;
}

}  // namespace detail

// Substitute the parameterization of a surface locus into one form.  The
// result is the affine restriction in the piece coordinate; zero means the
// form vanishes on the whole locus.  free_degree receives the form's degree
// along the locus, fixing the multiplicity at infinity.
inline Poly restrict_form(const PrimeField& F, const Form& f,
                          const ConductorEmbedding& e, int* free_degree) {
  if (e.kind == ComponentKind::Plane) {
    if (f.nvars != 3) throw input_error("restrict_form: expected 3 variables");
    std::array<Poly, 3> lin;
    for (size_t i = 0; i < 3; ++i)
      lin[i] = poly_make(F, {e.plane.m[i][1], e.plane.m[i][0]});
    Poly out;
    for (const FormTerm& t : f.terms) {
      Poly term = poly_const(F, t.c);
      for (size_t i = 0; i < 3; ++i) {
        if (lin[i].is_zero() && t.e[i] > 0) {
          term = poly_zero();
          break;
        }
        term = poly_mul(F, term, detail::poly_power(F, lin[i], t.e[i]));
      }
      out = poly_add(F, out, term);
    }
    if (free_degree) *free_degree = exponent_total(f.terms.front().e);
    return out;
  }
  if (e.kind == ComponentKind::Quadric) {
    if (f.nvars != 4) throw input_error("restrict_form: expected 4 variables");
    const QuadricLocus& q = e.quadric;
    i64 p0 = q.fixed_infinity ? 1 : F.normalize(q.fixed_value);
    i64 p1 = q.fixed_infinity ? 0 : 1;
    size_t fixed_lo = q.fixed_factor == 0 ? 0 : 2;
    size_t free_lo = q.fixed_factor == 0 ? 2 : 0;
    int k = q.fixed_factor == 0 ? f.terms.front().e[2] + f.terms.front().e[3]
                                : f.terms.front().e[0] + f.terms.front().e[1];
    std::vector<i64> binary(static_cast<size_t>(k) + 1, 0);
    for (const FormTerm& t : f.terms) {
      i64 c = t.c;
      c = F.mul(c, F.pow(p0, t.e[fixed_lo]));
      c = F.mul(c, F.pow(p1, t.e[fixed_lo + 1]));
      size_t idx = static_cast<size_t>(t.e[free_lo]);
      binary[idx] = F.add(binary[idx], c);
    }
    if (free_degree) *free_degree = k;
    Poly coeffs;
    coeffs.c = binary;
    coeffs = poly_trim(coeffs);
    if (coeffs.is_zero()) return poly_zero();
    return detail::binary_substitute(F, coeffs, k, q.repar.a, q.repar.b,
                                     q.repar.c, q.repar.d);
  }
  throw input_error("restrict_form: locus is a point");
}

// Restriction of a divisor to a surface locus, as a divisor in the piece
// coordinate.  Errors if any support form vanishes on the locus.
inline DivisorP1 restrict_divisor(const PrimeField& F, const ComponentDivisor& B,
                                  const ConductorEmbedding& e) {
  if (e.kind == ComponentKind::Line)
    throw input_error("restrict_divisor: locus is a point");
  if (B.kind != e.kind) throw input_error("restrict_divisor: kind mismatch");
  DivisorP1 out;
  for (const auto& [form, mult] : B.forms) {
    int k = 0;
    Poly g = restrict_form(F, form, e, &k);
    if (g.is_zero())
      throw input_error("restrict_divisor: support contains conductor piece");
    Factorization fac = poly_factor(F, g);
    for (const PolyFactor& pf : fac.factors)
      out.add(ClosedPoint::from_poly(pf.factor),
              mult * static_cast<i64>(pf.multiplicity));
    out.add(ClosedPoint::inf(), mult * static_cast<i64>(k - g.degree()));
  }
  return out;
}

// Restriction of a function to a conductor piece.  On surface loci the forms
// are substituted; the degree-0 balance makes the result a genuine rational
// function in the piece coordinate.  On a point locus the value is taken,
// which must be finite and nonzero.
inline RatFunc restrict_function(const PrimeField& F, const ComponentFunction& f,
                                 const ConductorEmbedding& e) {
  if (e.kind == ComponentKind::Line) {
    if (f.kind != ComponentKind::Line)
      throw input_error("restrict_function: kind mismatch");
    const RatFunc& r = f.rational;
    if (e.line.point.infinity) {
      if (r.num.degree() != r.den.degree())
        throw input_error("restrict_function: zero or pole at conductor point");
      return ratfunc_const(F, r.scalar);
    }
    i64 a = F.neg(e.line.point.q.c[0]);
    i64 n = poly_eval(F, r.num, a);
    i64 d = poly_eval(F, r.den, a);
    if (n == 0 || d == 0)
      throw input_error("restrict_function: zero or pole at conductor point");
    return ratfunc_const(F, F.mul(r.scalar, F.div(n, d)));
  }
  if (f.kind != e.kind) throw input_error("restrict_function: kind mismatch");
  RatFunc out = ratfunc_const(F, f.formal.scalar);
  for (const auto& [form, exp] : f.formal.factors) {
    Poly g = restrict_form(F, form, e, nullptr);
    if (g.is_zero())
      throw input_error("restrict_function: support contains conductor piece");
    out = ratfunc_mul(F, out, ratfunc_pow(F, ratfunc_make(F, g, poly_one()), exp));
  }
  return out;
}

// Mumford condition of one divisor against one conductor piece: no support
// form may vanish on the locus, and on a curve the support must miss the
// point.  Returns human-readable violations.
inline std::vector<std::string> mumford_violations(const PrimeField& F,
                                                   const ComponentDivisor& B,
                                                   const ConductorEmbedding& e) {
  std::vector<std::string> out;
  if (e.kind == ComponentKind::Line) {
    i64 m = B.points.multiplicity(e.line.point);
    if (m != 0)
      out.push_back("support meets the conductor point on component " + e.component);
    return out;
  }
  for (const auto& [form, mult] : B.forms) {
    (void)mult;
    Poly g = restrict_form(F, form, e, nullptr);
    if (g.is_zero())
      out.push_back("support contains the conductor locus on component " + e.component);
  }
  return out;
}

// Random divisor of the requested class whose support avoids the given loci;
// on a line component, prescribed rational points receive prescribed
// multiplicities.  Sampling is deterministic in the supplied generator.
inline ComponentDivisor sample_divisor(
    const PrimeField& F, const ComponentModel& c, const std::vector<i64>& target,
    const std::vector<ConductorEmbedding>& avoid,
    const std::vector<std::pair<ClosedPoint, i64>>& prescriptions,
    std::mt19937& rng) {
  for (const ConductorEmbedding& e : avoid)
    if (e.kind != c.kind)
      throw input_error("sample_divisor: avoid locus kind mismatch");

  if (c.kind == ComponentKind::Line) {
    if (target.size() != 1)
      throw input_error("sample_divisor: line class has one coordinate");
    DivisorP1 out;
    std::vector<ClosedPoint> blocked;
    for (const ConductorEmbedding& e : avoid) blocked.push_back(e.line.point);
    i64 prescribed_total = 0;
    for (const auto& [pt, order] : prescriptions) {
      if (!pt.infinity && pt.degree() != 1)
        throw input_error("sample_divisor: prescriptions must be rational points");
      if (order == 0) throw input_error("sample_divisor: zero prescribed order");
      for (const ClosedPoint& b : blocked)
        if (b == pt)
          throw input_error("sample_divisor: prescribed point lies on a conductor locus");
      if (out.multiplicity(pt) != 0)
        throw input_error("sample_divisor: duplicate prescribed point");
      out.add(pt, order);
      prescribed_total += order;
    }
    i64 rem = target[0] - prescribed_total;
    if (rem != 0) {
      std::vector<ClosedPoint> candidates;
      auto free_point = [&](const ClosedPoint& q) {
        for (const ClosedPoint& b : blocked)
          if (b == q) return false;
        return out.multiplicity(q) == 0;
      };
      ClosedPoint inf = ClosedPoint::inf();
      if (free_point(inf)) candidates.push_back(inf);
      for (i64 a = 0; a < F.p(); ++a) {
        ClosedPoint q = ClosedPoint::rational(F, a);
        if (free_point(q)) candidates.push_back(q);
      }
      if (candidates.empty())
        throw input_error(
            "sample_divisor: moving lemma sampling failed, all " +
            std::to_string(F.p() + 1) + " rational points are blocked");
      std::shuffle(candidates.begin(), candidates.end(), rng);
      i64 sign = rem > 0 ? 1 : -1;
      i64 k = std::min<i64>(rem * sign, static_cast<i64>(candidates.size()));
      for (i64 i = 0; i + 1 < k; ++i) {
        out.add(candidates[static_cast<size_t>(i)], sign);
        rem -= sign;
      }
      out.add(candidates[static_cast<size_t>(k - 1)], rem);
    }
    return divisor_on_line(out);
  }

  if (!prescriptions.empty())
    throw input_error("sample_divisor: prescriptions supported on line components only");

  auto fill = [&](i64 count, auto make_candidate, i64 pool,
                  std::vector<std::pair<Form, i64>>& entries) {
    if (count == 0) return;
    i64 sign = count > 0 ? 1 : -1;
    i64 need = count * sign;
    std::vector<Form> chosen;
    int attempts = 0;
    int bound = static_cast<int>(64 * pool + 64 * need);
    while (static_cast<i64>(chosen.size()) < std::min(need, pool) &&
           attempts < bound) {
      ++attempts;
      Form f = make_candidate();
      bool bad = false;
      for (const Form& g : chosen)
        if (g == f) {
          bad = true;
          break;
        }
      for (const ConductorEmbedding& e : avoid)
        if (!bad && restrict_form(F, f, e, nullptr).is_zero()) bad = true;
      if (!bad) chosen.push_back(std::move(f));
    }
    if (chosen.empty())
      throw input_error("sample_divisor: moving lemma sampling failed after " +
                        std::to_string(attempts) + " attempts");
    for (size_t i = 0; i + 1 < chosen.size(); ++i) {
      entries.emplace_back(chosen[i], sign);
      need -= 1;
    }
    entries.emplace_back(chosen.back(), sign * need);
  };

  std::vector<std::pair<Form, i64>> entries;
  if (c.kind == ComponentKind::Plane) {
    if (target.size() != 1)
      throw input_error("sample_divisor: plane class has one coordinate");
    std::uniform_int_distribution<i64> coef(0, F.p() - 1);
    auto line = [&]() {
      while (true) {
        i64 a = coef(rng), b = coef(rng), cc = coef(rng);
        if (a == 0 && b == 0 && cc == 0) continue;
        return form_plane_line(F, a, b, cc);
      }
    };
    fill(target[0], line, F.p() * F.p() + F.p() + 1, entries);
  } else {
    if (target.size() != 2)
      throw input_error("sample_divisor: quadric class has two coordinates");
    std::uniform_int_distribution<i64> pick(0, F.p());
    auto ruling = [&](int pair_index) {
      return [&, pair_index]() {
        i64 v = pick(rng);
        // v == p encodes the point at infinity, whose ruling is {w = 0} for
        // the pair (v, w).
        size_t lo = pair_index == 0 ? 0 : 2;
        if (v == F.p()) {
          FormTerm t;
          t.e[lo + 1] = 1;
          t.c = 1;
          return form_make(F, 4, {t});
        }
        return form_from_poly(F, 4, pair_index, {F.neg(v), 1});
      };
    };
    fill(target[0], ruling(0), F.p() + 1, entries);
    fill(target[1], ruling(1), F.p() + 1, entries);
  }
  return divisor_on_surface(c.kind, std::move(entries));
}

}  // namespace mumcl

#endif  // MUMCL_COMPONENT_HPP
