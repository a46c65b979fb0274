// Conductor covers and their quotient groups.
//
// A conductor of the glued scheme is a projective line (or a single point)
// together with a degree-d cover by pieces living on the components.  The
// obstruction group attached to such a cover measures function tuples on the
// pieces modulo pullbacks from the reference and per-piece constants.  This
// header classifies tuples into canonical class data, decides triviality,
// extracts the torsion part of cyclic covers, descends invariant functions,
// and provides an exhaustive low-height oracle.

#ifndef MUMCL_COVERS_HPP
#define MUMCL_COVERS_HPP

#include <map>
#include <string>
#include <vector>

#include "mumcl/component.hpp"
#include "mumcl/projline.hpp"
#include "mumcl/ratfunc.hpp"

namespace mumcl {

enum class CoverKind { Split, Cyclic };

inline const char* cover_kind_name(CoverKind k) {
  return k == CoverKind::Split ? "split" : "cyclic";
}

// A cover of the reference curve.  Split covers carry d pieces, each mapped
// to the reference by the degree-1 Mobius map stored on its embedding.
// Cyclic covers carry a single piece whose map to the reference is
// t -> M(t^d) with M the stored Mobius map; the deck transformation is
// t -> zeta_d * t.  Point-reference covers glue d marked points on curve
// components and are always split.
struct CoverDescriptor {
  CoverKind kind = CoverKind::Split;
  bool point_reference = false;
  i64 degree = 2;
  std::vector<ConductorEmbedding> pieces;
};

inline std::vector<std::string> cover_violations(const PrimeField& F,
                                                 const CoverDescriptor& c) {
  std::vector<std::string> out;
  if (c.degree < 2) out.push_back("cover degree must be at least 2");
  if (c.kind == CoverKind::Split) {
    if (static_cast<i64>(c.pieces.size()) != c.degree)
      out.push_back("split cover piece count must equal its degree");
  } else {
    if (c.pieces.size() != 1)
      out.push_back("cyclic cover must have exactly one piece");
    if (c.point_reference)
      out.push_back("point-reference covers must be split");
    if ((F.p() - 1) % c.degree != 0)
      out.push_back("cyclic cover degree must divide p - 1");
  }
  for (const ConductorEmbedding& e : c.pieces) {
    bool curve = e.kind == ComponentKind::Line;
    if (curve != c.point_reference)
      out.push_back(c.point_reference
                        ? "point-reference pieces must live on line components"
                        : "line-reference pieces must live on surface components");
    if (c.point_reference && !e.cover.is_identity())
      out.push_back("point-reference pieces carry no cover map");
  }
  return out;
}

// Enumerable shape of the quotient group attached to a cover.
struct QuotientGroupShape {
  std::string free_basis;
  i64 torsion_order = 1;
};

inline QuotientGroupShape quotient_shape(const CoverDescriptor& c) {
  QuotientGroupShape s;
  if (c.point_reference) {
    s.free_basis = "trivial";
    s.torsion_order = 1;
  } else if (c.kind == CoverKind::Split) {
    s.free_basis =
        "closed points of the reference line x " + std::to_string(c.degree - 1);
    s.torsion_order = 1;
  } else {
    s.free_basis = "nontrivial orbits x (orbit size - 1)";
    s.torsion_order = c.degree;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Graded part of a class
// ---------------------------------------------------------------------------

// The free invariant of a function tuple.  Split: transported divisor
// differences against the first piece.  Cyclic: per-orbit multiplicity
// vectors of the divisor, listed in orbit order, normalized to end in 0,
// with zero vectors and the two ramified fixed points dropped.
struct GradedPart {
  std::vector<DivisorP1> split;
  std::map<ClosedPoint, std::vector<i64>> cyclic;

  bool is_zero() const {
    for (const DivisorP1& d : split)
      if (!d.is_zero()) return false;
    return cyclic.empty();
  }
  bool operator==(const GradedPart& o) const {
    return split == o.split && cyclic == o.cyclic;
  }
};

namespace detail {

inline void check_tuple(const std::vector<RatFunc>& fs,
                        const CoverDescriptor& c) {
  size_t expect = c.kind == CoverKind::Cyclic ? 1 : c.pieces.size();
  if (fs.size() != expect)
    throw input_error("function tuple size does not match the cover");
}

inline std::map<ClosedPoint, std::vector<i64>> orbit_vectors(
    const PrimeField& F, const DivisorP1& D, i64 d) {
  std::map<ClosedPoint, std::vector<ClosedPoint>> listings;
  std::map<ClosedPoint, std::vector<i64>> vecs;
  ClosedPoint zero = ClosedPoint::rational(F, 0);
  for (const auto& [P, mult] : D.mult) {
    if (P.infinity || P == zero) continue;  // ramified fixed points
    std::vector<ClosedPoint> orbit = sigma_orbit(F, P, static_cast<int>(d));
    const ClosedPoint& key = orbit.front();
    auto it = vecs.find(key);
    if (it == vecs.end()) {
      it = vecs.emplace(key, std::vector<i64>(orbit.size(), 0)).first;
      listings.emplace(key, orbit);
    }
    const std::vector<ClosedPoint>& listing = listings.at(key);
    for (size_t i = 0; i < listing.size(); ++i)
      if (listing[i] == P) {
        it->second[i] += mult;
        break;
      }
  }
  for (auto it = vecs.begin(); it != vecs.end();) {
    std::vector<i64>& v = it->second;
    i64 last = v.back();
    bool zero_vec = true;
    for (i64& entry : v) {
      entry -= last;
      if (entry != 0) zero_vec = false;
    }
    it = zero_vec ? vecs.erase(it) : std::next(it);
  }
  return vecs;
}

}  // namespace detail

inline GradedPart q_map(const PrimeField& F, const std::vector<RatFunc>& fs,
                        const CoverDescriptor& c) {
  detail::check_tuple(fs, c);
  GradedPart g;
  if (c.point_reference) return g;
  if (c.kind == CoverKind::Split) {
    std::vector<DivisorP1> transported;
    for (size_t a = 0; a < fs.size(); ++a) {
      MobiusMap back = mobius_inverse(F, c.pieces[a].cover);
      transported.push_back(divisor_of(F, mobius_pullback(F, fs[a], back)));
    }
    for (size_t a = 1; a < transported.size(); ++a)
      g.split.push_back(divisor_sub(transported[a], transported[0]));
  } else {
    g.cyclic = detail::orbit_vectors(F, divisor_of(F, fs[0]), c.degree);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Torsion part and canonical classes
// ---------------------------------------------------------------------------

// For a cyclic cover and a function with sigma-invariant divisor, the ratio
// f(zeta t)/f(t) is a constant d-th root of unity; it equals
// zeta^(deg num - deg den) and is the entire obstruction of f.
inline i64 torsion_part(const PrimeField& F, const RatFunc& f,
                        const CoverDescriptor& c) {
  if (c.kind != CoverKind::Cyclic)
    throw input_error("torsion_part: cover is not cyclic");
  if (!q_map(F, {f}, c).is_zero())
    throw input_error("torsion undefined: infinite-order component");
  i64 z = zeta(F, static_cast<int>(c.degree));
  i64 e = ((f.num.degree() - f.den.degree()) % c.degree + c.degree) % c.degree;
  return F.pow(z, e);
}

struct QuotientClass {
  CoverKind kind = CoverKind::Split;
  bool point_reference = false;
  i64 degree = 2;
  GradedPart graded;
  bool torsion_defined = false;
  i64 lambda = 1;
  std::vector<RatFunc> reps;  // carried for the group law, not compared

  bool operator==(const QuotientClass& o) const {
    return kind == o.kind && point_reference == o.point_reference &&
           degree == o.degree && graded == o.graded &&
           torsion_defined == o.torsion_defined && lambda == o.lambda;
  }
};

inline QuotientClass classify_tuple(const PrimeField& F,
                                    const std::vector<RatFunc>& fs,
                                    const CoverDescriptor& c) {
  QuotientClass q;
  q.kind = c.kind;
  q.point_reference = c.point_reference;
  q.degree = c.degree;
  q.graded = q_map(F, fs, c);
  q.reps = fs;
  if (c.kind == CoverKind::Cyclic && q.graded.is_zero()) {
    q.torsion_defined = true;
    q.lambda = torsion_part(F, fs[0], c);
  }
  return q;
}

inline bool is_trivial(const QuotientClass& q) {
  if (q.point_reference) return true;
  if (!q.graded.is_zero()) return false;
  return q.kind == CoverKind::Split || q.lambda == 1;
}

// Order of the class: 1 when trivial, the multiplicative order of lambda for
// cyclic torsion, and 0 (standing for infinite) when the graded part is
// nonzero.
inline i64 class_order(const PrimeField& F, const QuotientClass& q) {
  if (is_trivial(q)) return 1;
  if (!q.graded.is_zero()) return 0;
  return F.order(q.lambda);
}

inline QuotientClass class_sub(const PrimeField& F, const QuotientClass& q1,
                               const QuotientClass& q2,
                               const CoverDescriptor& c) {
  if (q1.kind != q2.kind || q1.degree != q2.degree ||
      q1.point_reference != q2.point_reference)
    throw input_error("class_sub: classes live on different covers");
  if (!q1.reps.empty() && q1.reps.size() == q2.reps.size()) {
    std::vector<RatFunc> quot;
    for (size_t i = 0; i < q1.reps.size(); ++i)
      quot.push_back(ratfunc_div(F, q1.reps[i], q2.reps[i]));
    return classify_tuple(F, quot, c);
  }
  QuotientClass q;
  q.kind = q1.kind;
  q.point_reference = q1.point_reference;
  q.degree = q1.degree;
  if (q.point_reference) return q;
  if (q.kind == CoverKind::Split) {
    size_t n = std::max(q1.graded.split.size(), q2.graded.split.size());
    for (size_t i = 0; i < n; ++i) {
      DivisorP1 a = i < q1.graded.split.size() ? q1.graded.split[i] : DivisorP1();
      DivisorP1 b = i < q2.graded.split.size() ? q2.graded.split[i] : DivisorP1();
      q.graded.split.push_back(divisor_sub(a, b));
    }
    return q;
  }
  std::map<ClosedPoint, std::vector<i64>> diff = q1.graded.cyclic;
  for (const auto& [key, v2] : q2.graded.cyclic) {
    auto it = diff.find(key);
    if (it == diff.end()) {
      std::vector<i64> neg(v2.size());
      for (size_t i = 0; i < v2.size(); ++i) neg[i] = -v2[i];
      diff.emplace(key, neg);
    } else {
      for (size_t i = 0; i < v2.size(); ++i) it->second[i] -= v2[i];
      bool zero_vec = true;
      for (i64 e : it->second)
        if (e != 0) zero_vec = false;
      if (zero_vec) diff.erase(it);
    }
  }
  q.graded.cyclic = std::move(diff);
  if (q.graded.is_zero()) {
    if (!q1.torsion_defined || !q2.torsion_defined)
      throw internal_error(
          "class_sub: torsion of the difference needs representatives");
    q.torsion_defined = true;
    q.lambda = F.div(q1.lambda, q2.lambda);
  }
  return q;
}

// ---------------------------------------------------------------------------
// Descent along a cyclic cover
// ---------------------------------------------------------------------------

struct DescendResult {
  bool ok = false;
  RatFunc g;  // function on the reference with g(M(t^d)) = f(t), when ok
  bool lambda_defined = false;
  i64 lambda = 1;
  std::string reason;
};

namespace detail {

inline bool exponents_divisible(const Poly& a, i64 d) {
  for (int i = 0; i <= a.degree(); ++i)
    if (a.c[static_cast<size_t>(i)] != 0 && i % d != 0) return false;
  return true;
}

inline Poly exponent_bucket(const PrimeField& F, const Poly& a, i64 d) {
  std::vector<i64> c;
  for (int i = 0; i <= a.degree(); i += static_cast<int>(d))
    c.push_back(a.c[static_cast<size_t>(i)]);
  return poly_make(F, c);
}

}  // namespace detail

// A function descends along t -> M(t^d) exactly when both its numerator and
// denominator are polynomials in t^d; that criterion is equivalent to a
// vanishing graded part together with lambda = 1.
inline DescendResult descend(const PrimeField& F, const RatFunc& f,
                             const CoverDescriptor& c) {
  if (c.kind != CoverKind::Cyclic)
    throw input_error("descend: cover is not cyclic");
  if (c.pieces.empty()) throw input_error("descend: cover has no pieces");
  DescendResult r;
  if (detail::exponents_divisible(f.num, c.degree) &&
      detail::exponents_divisible(f.den, c.degree)) {
    RatFunc base = ratfunc_make(F, detail::exponent_bucket(F, f.num, c.degree),
                                detail::exponent_bucket(F, f.den, c.degree),
                                f.scalar);
    r.g = mobius_pullback(F, base, mobius_inverse(F, c.pieces[0].cover));
    RatFunc check = ratfunc_compose_power(
        F, mobius_pullback(F, r.g, c.pieces[0].cover), c.degree);
    if (!(check == f)) throw internal_error("descend: verification failed");
    r.ok = true;
    return r;
  }
  if (!q_map(F, {f}, c).is_zero()) {
    r.reason = "infinite-order component";
    return r;
  }
  r.lambda_defined = true;
  r.lambda = torsion_part(F, f, c);
  if (r.lambda == 1) throw internal_error("descend: lambda 1 did not descend");
  r.reason = "lambda = " + std::to_string(r.lambda);
  return r;
}

// ---------------------------------------------------------------------------
// Exhaustive oracle
// ---------------------------------------------------------------------------

struct BruteForceResult {
  bool equal = false;
  i64 height_bound = 0;
};

namespace detail {

inline std::vector<Poly> monic_polys_up_to(const PrimeField& F, i64 maxdeg) {
  std::vector<Poly> out;
  for (i64 deg = 0; deg <= maxdeg; ++deg) {
    std::vector<i64> c(static_cast<size_t>(deg) + 1, 0);
    c.back() = 1;
    while (true) {
      out.push_back(poly_make(F, c));
      size_t i = 0;
      while (i + 1 < c.size() && c[i] == F.p() - 1) c[i++] = 0;
      if (i + 1 >= c.size()) break;
      ++c[i];
    }
  }
  return out;
}

}  // namespace detail

// Searches reference functions of height at most H whose cover pullback
// accounts for the entrywise ratio of the tuples up to per-piece constants.
// A hit certifies equality of the classes; a miss only reports the bound.
inline BruteForceResult brute_force_class_equal(const PrimeField& F,
                                                const std::vector<RatFunc>& fs,
                                                const std::vector<RatFunc>& gs,
                                                const CoverDescriptor& c,
                                                i64 height) {
  detail::check_tuple(fs, c);
  detail::check_tuple(gs, c);
  BruteForceResult r;
  r.height_bound = height;
  if (c.point_reference) {
    r.equal = true;
    return r;
  }
  std::vector<RatFunc> ratio;
  for (size_t i = 0; i < fs.size(); ++i)
    ratio.push_back(ratfunc_div(F, fs[i], gs[i]));
  std::vector<Poly> polys = detail::monic_polys_up_to(F, height);
  for (const Poly& num : polys)
    for (const Poly& den : polys) {
      if (!poly_gcd(F, num, den).is_one()) continue;
      RatFunc psi = ratfunc_make(F, num, den);
      bool hit = true;
      if (c.kind == CoverKind::Split) {
        for (size_t a = 0; a < ratio.size() && hit; ++a) {
          RatFunc pulled = mobius_pullback(F, psi, c.pieces[a].cover);
          hit = ratfunc_div(F, ratio[a], pulled).is_constant();
        }
      } else {
        RatFunc pulled = ratfunc_compose_power(
            F, mobius_pullback(F, psi, c.pieces[0].cover), c.degree);
        hit = ratfunc_div(F, ratio[0], pulled).is_constant();
      }
      if (hit) {
        r.equal = true;
        return r;
      }
    }
  return r;
}

}  // namespace mumcl

#endif  // MUMCL_COVERS_HPP
