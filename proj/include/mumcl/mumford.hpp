// Mumford divisors and the full decision pipeline.
//
// A Mumford divisor stores one component divisor per component and keeps its
// support away from every conductor locus.  Its class is examined layer by
// layer: the pullback classes on the components, the per-conductor quotient
// classes of the witness restrictions, and finally the piecewise-trivial
// class of gluing constants.  Linear equivalence modulo the conductor holds
// exactly when all three layers vanish, in which case a machine-checked
// witness function is synthesized.

#ifndef MUMCL_MUMFORD_HPP
#define MUMCL_MUMFORD_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mumcl/scheme.hpp"

namespace mumcl {

struct MumfordDivisor {
  std::vector<ComponentDivisor> parts;  // aligned with the scheme's components

  bool is_zero() const {
    for (const ComponentDivisor& p : parts)
      if (!p.is_zero()) return false;
    return true;
  }
  bool operator==(const MumfordDivisor& o) const { return parts == o.parts; }
};

inline MumfordDivisor mumford_zero(const GluedScheme& s) {
  MumfordDivisor b;
  for (const ComponentModel& c : s.components)
    b.parts.push_back(component_zero(c.kind));
  return b;
}

inline void mumford_shape_check(const GluedScheme& s, const MumfordDivisor& B) {
  if (B.parts.size() != s.components.size())
    throw input_error("divisor does not match the scheme's component list");
  for (size_t i = 0; i < B.parts.size(); ++i)
    if (B.parts[i].kind != s.components[i].kind)
      throw input_error("divisor kind mismatch on component " +
                        s.components[i].name);
}

inline MumfordDivisor mumford_sub(const GluedScheme& s, const MumfordDivisor& a,
                                  const MumfordDivisor& b) {
  mumford_shape_check(s, a);
  mumford_shape_check(s, b);
  MumfordDivisor out;
  for (size_t i = 0; i < a.parts.size(); ++i)
    out.parts.push_back(component_sub(s.F, a.parts[i], b.parts[i]));
  return out;
}

// ---------------------------------------------------------------------------
// The Mumford condition
// ---------------------------------------------------------------------------

inline std::vector<std::string> mumford_diagnostics(const GluedScheme& s,
                                                    const MumfordDivisor& B) {
  mumford_shape_check(s, B);
  std::vector<std::string> out;
  for (const SchemeConductor& cond : s.conductors)
    for (size_t i = 0; i < cond.cover.pieces.size(); ++i) {
      const ConductorEmbedding& e = cond.cover.pieces[i];
      size_t host = *component_index(s, e.component);
      for (const std::string& v : mumford_violations(s.F, B.parts[host], e))
        out.push_back("conductor " + cond.name + " piece " +
                      std::to_string(i) + ": " + v);
    }
  return out;
}

inline bool is_mumford(const GluedScheme& s, const MumfordDivisor& B) {
  return mumford_diagnostics(s, B).empty();
}

inline void require_mumford(const GluedScheme& s, const MumfordDivisor& B) {
  std::vector<std::string> d = mumford_diagnostics(s, B);
  if (!d.empty()) throw input_error("divisor is not Mumford: " + d.front());
}

// ---------------------------------------------------------------------------
// The three filtration layers
// ---------------------------------------------------------------------------

inline std::vector<i64> pullback_class(const GluedScheme& s,
                                       const MumfordDivisor& B) {
  require_mumford(s, B);
  std::vector<i64> out;
  for (const ComponentDivisor& part : B.parts)
    for (i64 d : class_of(part)) out.push_back(d);
  return out;
}

inline std::vector<ComponentFunction> component_witnesses(
    const GluedScheme& s, const MumfordDivisor& B) {
  std::vector<ComponentFunction> out;
  for (const ComponentDivisor& part : B.parts) out.push_back(witness(s.F, part));
  return out;
}

inline std::vector<RatFunc> restriction_tuple(
    const GluedScheme& s, const std::vector<ComponentFunction>& ws,
    const SchemeConductor& cond) {
  std::vector<RatFunc> out;
  for (const ConductorEmbedding& e : cond.cover.pieces) {
    size_t host = *component_index(s, e.component);
    try {
      out.push_back(restrict_function(s.F, ws[host], e));
    } catch (const input_error& err) {
      throw internal_error("restriction vanished on conductor " + cond.name +
                           ": " + err.what());
    }
  }
  return out;
}

// Per-conductor quotient classes of the witness restrictions.  Classes are
// independent of the scalar ambiguity in the witnesses, so separate entry
// points for plain divisors and for explicitly chosen witnesses both exist.
inline std::vector<std::pair<std::string, QuotientClass>> rho_from_witnesses(
    const GluedScheme& s, const std::vector<ComponentFunction>& ws) {
  std::vector<std::pair<std::string, QuotientClass>> out;
  for (const SchemeConductor& cond : s.conductors)
    out.push_back({cond.name, classify_tuple(s.F, restriction_tuple(s, ws, cond),
                                             cond.cover)});
  return out;
}

inline std::vector<std::pair<std::string, QuotientClass>> rho_class(
    const GluedScheme& s, const MumfordDivisor& B) {
  require_mumford(s, B);
  return rho_from_witnesses(s, component_witnesses(s, B));
}

// The gluing-constant vector: one discrete logarithm per conductor piece,
// measuring each transported restriction against the conductor's reference
// function (the piece-0 transport for split covers, the descended function
// for cyclic ones).  Only defined when every conductor class is trivial.
inline std::vector<i64> pt_vector_from_witnesses(
    const GluedScheme& s, const std::vector<ComponentFunction>& ws) {
  const PrimeField& F = s.F;
  std::vector<i64> v;
  for (const SchemeConductor& cond : s.conductors) {
    std::vector<RatFunc> fs = restriction_tuple(s, ws, cond);
    if (cond.cover.kind == CoverKind::Cyclic) {
      if (!descend(F, fs[0], cond.cover).ok)
        throw input_error("pt undefined: conductor " + cond.name +
                          " class is not trivial");
      v.push_back(0);
      continue;
    }
    std::vector<RatFunc> transported;
    for (size_t a = 0; a < fs.size(); ++a)
      transported.push_back(
          cond.cover.point_reference
              ? fs[a]
              : mobius_pullback(F, fs[a],
                                mobius_inverse(F, cond.cover.pieces[a].cover)));
    for (size_t a = 0; a < transported.size(); ++a) {
      RatFunc ratio = ratfunc_div(F, transported[a], transported[0]);
      if (!ratio.is_constant())
        throw input_error("pt undefined: conductor " + cond.name +
                          " class is not trivial");
      v.push_back(F.discrete_log(ratio.scalar));
    }
  }
  return v;
}

inline std::vector<i64> pt_class(const GluedScheme& s,
                                 const MumfordDivisor& B) {
  require_mumford(s, B);
  std::vector<ComponentFunction> ws = component_witnesses(s, B);
  PtPresentation pt = pt_presentation(s);
  return class_in_cokernel(pt.pres, pt_vector_from_witnesses(s, ws));
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

struct ClassReport {
  std::vector<i64> pullback;
  bool pullback_zero = false;
  bool rho_computed = false;
  std::vector<std::pair<std::string, QuotientClass>> rho;
  bool rho_trivial = false;
  bool pt_computed = false;
  std::vector<i64> pt;
  bool pt_zero = false;
  std::string verdict;      // PRINCIPAL_MOD_D or NONTRIVIAL
  std::string obstruction;  // first nonvanishing layer when NONTRIVIAL
};

inline ClassReport classify(const GluedScheme& s, const MumfordDivisor& B) {
  require_mumford(s, B);
  ClassReport r;
  r.pullback = pullback_class(s, B);
  r.pullback_zero = std::all_of(r.pullback.begin(), r.pullback.end(),
                                [](i64 d) { return d == 0; });
  if (!r.pullback_zero) {
    r.verdict = "NONTRIVIAL";
    r.obstruction = "pullback";
    return r;
  }
  std::vector<ComponentFunction> ws = component_witnesses(s, B);
  r.rho = rho_from_witnesses(s, ws);
  r.rho_computed = true;
  r.rho_trivial = std::all_of(r.rho.begin(), r.rho.end(),
                              [](const auto& q) { return is_trivial(q.second); });
  if (!r.rho_trivial) {
    r.verdict = "NONTRIVIAL";
    r.obstruction = "rho";
    return r;
  }
  PtPresentation pt = pt_presentation(s);
  r.pt = class_in_cokernel(pt.pres, pt_vector_from_witnesses(s, ws));
  r.pt_computed = true;
  r.pt_zero =
      std::all_of(r.pt.begin(), r.pt.end(), [](i64 d) { return d == 0; });
  if (!r.pt_zero) {
    r.verdict = "NONTRIVIAL";
    r.obstruction = "pt";
    return r;
  }
  r.verdict = "PRINCIPAL_MOD_D";
  return r;
}

// ---------------------------------------------------------------------------
// Witness synthesis and verification
// ---------------------------------------------------------------------------

struct Witness {
  std::vector<ComponentFunction> functions;  // gauge-fixed per component
  std::vector<i64> gauges;                   // scalar applied to each witness
  std::vector<std::pair<std::string, RatFunc>> references;  // per conductor
  std::string certificate;
};

namespace detail {

inline RatFunc transported_restriction(const GluedScheme& s,
                                       const SchemeConductor& cond, size_t a,
                                       const ComponentFunction& f) {
  const ConductorEmbedding& e = cond.cover.pieces[a];
  RatFunc r = restrict_function(s.F, f, e);
  if (cond.cover.point_reference) return r;
  return mobius_pullback(s.F, r, mobius_inverse(s.F, e.cover));
}

}  // namespace detail

inline Witness synthesize_witness(const GluedScheme& s,
                                  const PtPresentation& pt,
                                  const std::vector<ComponentFunction>& ws) {
  const PrimeField& F = s.F;
  std::vector<i64> v = pt_vector_from_witnesses(s, ws);
  std::optional<std::vector<i64>> x = lift_solution(pt.pres, v);
  if (!x) throw internal_error("witness synthesis: gluing class is not zero");
  Witness w;
  size_t ncomp = s.components.size();
  for (size_t i = 0; i < ncomp; ++i) {
    i64 mult = F.inv(F.pow(F.generator(), (*x)[i]));
    w.gauges.push_back(mult);
    w.functions.push_back(function_scale(F, ws[i], mult));
  }
  for (const SchemeConductor& cond : s.conductors) {
    size_t host = *component_index(s, cond.cover.pieces[0].component);
    if (cond.cover.kind == CoverKind::Cyclic) {
      RatFunc piece =
          restrict_function(F, w.functions[host], cond.cover.pieces[0]);
      DescendResult d = descend(F, piece, cond.cover);
      if (!d.ok)
        throw internal_error("witness synthesis: descent failed on " +
                             cond.name);
      w.references.push_back({cond.name, d.g});
    } else {
      w.references.push_back({cond.name, detail::transported_restriction(
                                             s, cond, 0, w.functions[host])});
    }
  }
  w.certificate =
      "per-component functions with the divisor's support, gauge-fixed so the "
      "transported restrictions along every conductor agree with the recorded "
      "reference function";
  return w;
}

// Independent witness checker: recomputes every restriction from scratch and
// verifies (a) the divisor of each component function is the divisor part and
// (b) the restrictions glue along every conductor, agreeing with the recorded
// reference when one is present.
inline std::vector<std::string> check_witness(const GluedScheme& s,
                                              const MumfordDivisor& diff,
                                              const Witness& w) {
  const PrimeField& F = s.F;
  std::vector<std::string> out;
  if (w.functions.size() != s.components.size()) {
    out.push_back("witness does not cover every component");
    return out;
  }
  for (size_t i = 0; i < s.components.size(); ++i)
    if (!(formal_divisor(F, w.functions[i]) == diff.parts[i]))
      out.push_back("witness divisor differs on component " +
                    s.components[i].name);
  for (size_t j = 0; j < s.conductors.size(); ++j) {
    const SchemeConductor& cond = s.conductors[j];
    const RatFunc* ref = nullptr;
    if (j < w.references.size() && w.references[j].first == cond.name)
      ref = &w.references[j].second;
    try {
      if (cond.cover.kind == CoverKind::Cyclic) {
        size_t host = *component_index(s, cond.cover.pieces[0].component);
        RatFunc piece =
            restrict_function(F, w.functions[host], cond.cover.pieces[0]);
        DescendResult d = descend(F, piece, cond.cover);
        if (!d.ok)
          out.push_back("restriction does not descend along conductor " +
                        cond.name);
        else if (ref && !(d.g == *ref))
          out.push_back("descended function differs from the reference on " +
                        cond.name);
      } else {
        std::vector<RatFunc> transported;
        for (size_t a = 0; a < cond.cover.pieces.size(); ++a) {
          size_t host = *component_index(s, cond.cover.pieces[a].component);
          transported.push_back(detail::transported_restriction(
              s, cond, a, w.functions[host]));
        }
        for (size_t a = 1; a < transported.size(); ++a)
          if (!(transported[a] == transported[0]))
            out.push_back("restrictions do not glue along conductor " +
                          cond.name);
        if (ref && !transported.empty() && !(transported[0] == *ref))
          out.push_back("restrictions differ from the reference on " +
                        cond.name);
      }
    } catch (const input_error& err) {
      out.push_back("restriction failed along conductor " + cond.name + ": " +
                    err.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Linear equivalence modulo the conductor
// ---------------------------------------------------------------------------

struct LineqResult {
  ClassReport report;
  std::optional<Witness> witness;
};

inline LineqResult lineq_mod_D(const GluedScheme& s, const MumfordDivisor& B,
                               const MumfordDivisor& Bprime) {
  require_mumford(s, B);
  require_mumford(s, Bprime);
  MumfordDivisor diff = mumford_sub(s, B, Bprime);
  LineqResult r;
  r.report = classify(s, diff);
  if (r.report.verdict == "PRINCIPAL_MOD_D") {
    Witness w = synthesize_witness(s, pt_presentation(s),
                                   component_witnesses(s, diff));
    std::vector<std::string> problems = check_witness(s, diff, w);
    if (!problems.empty())
      throw internal_error("synthesized witness failed verification: " +
                           problems.front());
    r.witness = std::move(w);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Min-restriction to a 2-piece split conductor
// ---------------------------------------------------------------------------

inline DivisorP1 restrict_min(const GluedScheme& s, const MumfordDivisor& B,
                              const std::string& conductor) {
  mumford_shape_check(s, B);
  const SchemeConductor& cond = find_conductor(s, conductor);
  if (cond.cover.kind != CoverKind::Split || cond.cover.degree != 2 ||
      cond.cover.point_reference)
    throw input_error(
        "restrict_min: only 2-piece split line conductors are supported");
  std::vector<DivisorP1> transported;
  for (const ConductorEmbedding& e : cond.cover.pieces) {
    size_t host = *component_index(s, e.component);
    std::vector<std::string> viol = mumford_violations(s.F, B.parts[host], e);
    if (!viol.empty()) throw input_error("restrict_min: " + viol.front());
    DivisorP1 r = restrict_divisor(s.F, B.parts[host], e);
    transported.push_back(mobius_pushforward(s.F, r, e.cover));
  }
  return divisor_min(transported[0], transported[1]);
}

// ---------------------------------------------------------------------------
// Independent end-to-end oracle
// ---------------------------------------------------------------------------

struct OracleReport {
  bool pipeline_equivalent = false;
  bool exhaustive_equivalent = false;
  bool conductor_oracle_agrees = true;
  bool agrees() const {
    return pipeline_equivalent == exhaustive_equivalent &&
           conductor_oracle_agrees;
  }
};

// Decides equivalence twice: through the layered pipeline, and by exhausting
// every per-component scalar gauge of the witness functions and testing the
// gluing directly.  Also replays each conductor classification against the
// exhaustive low-height reference-function search.
inline OracleReport oracle_compare(const GluedScheme& s,
                                   const MumfordDivisor& B,
                                   const MumfordDivisor& Bprime, i64 height) {
  const PrimeField& F = s.F;
  OracleReport r;
  LineqResult lr = lineq_mod_D(s, B, Bprime);
  r.pipeline_equivalent = lr.report.verdict == "PRINCIPAL_MOD_D";

  MumfordDivisor diff = mumford_sub(s, B, Bprime);
  bool classes_zero = true;
  for (const ComponentDivisor& part : diff.parts)
    for (i64 d : class_of(part))
      if (d != 0) classes_zero = false;
  if (!classes_zero) {
    r.exhaustive_equivalent = false;
    return r;
  }

  std::vector<ComponentFunction> ws = component_witnesses(s, diff);
  for (const SchemeConductor& cond : s.conductors) {
    std::vector<RatFunc> fs = restriction_tuple(s, ws, cond);
    i64 bound = height;
    for (const RatFunc& f : fs)
      bound = std::max<i64>(bound, ratfunc_height(f));
    bool cls = is_trivial(classify_tuple(F, fs, cond.cover));
    std::vector<RatFunc> ones(fs.size(), ratfunc_one());
    if (cls != brute_force_class_equal(F, fs, ones, cond.cover, bound).equal)
      r.conductor_oracle_agrees = false;
  }

  size_t ncomp = s.components.size();
  std::vector<i64> gauge(ncomp, 1);
  while (true) {
    std::vector<ComponentFunction> scaled;
    for (size_t i = 0; i < ncomp; ++i)
      scaled.push_back(function_scale(F, ws[i], gauge[i]));
    bool glues = true;
    for (const SchemeConductor& cond : s.conductors) {
      if (cond.cover.kind == CoverKind::Cyclic) {
        size_t host = *component_index(s, cond.cover.pieces[0].component);
        RatFunc piece =
            restrict_function(F, scaled[host], cond.cover.pieces[0]);
        if (!descend(F, piece, cond.cover).ok) glues = false;
      } else {
        RatFunc first;
        for (size_t a = 0; a < cond.cover.pieces.size() && glues; ++a) {
          size_t host = *component_index(s, cond.cover.pieces[a].component);
          RatFunc t =
              detail::transported_restriction(s, cond, a, scaled[host]);
          if (a == 0)
            first = t;
          else if (!(t == first))
            glues = false;
        }
      }
      if (!glues) break;
    }
    if (glues) {
      r.exhaustive_equivalent = true;
      break;
    }
    size_t i = 0;
    while (i < ncomp && gauge[i] == F.p() - 1) gauge[i++] = 1;
    if (i >= ncomp) break;
    ++gauge[i];
  }
  return r;
}

}  // namespace mumcl

#endif  // MUMCL_MUMFORD_HPP
