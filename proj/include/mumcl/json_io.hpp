// JSON readers and writers for scheme files, divisor files, and the
// machine-readable outputs of the command-line tool.
//
// Readers are strict: unknown fields are rejected so a typo in an input file
// fails loudly instead of being silently ignored.  Writers use ordered JSON
// throughout, keeping key order stable so equal data serializes to equal
// bytes.

#ifndef MUMCL_JSON_IO_HPP
#define MUMCL_JSON_IO_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mumcl/mumford.hpp"

namespace mumcl {

using json = nlohmann::ordered_json;

namespace jsonio {

inline void check_fields(const json& j, const std::string& where,
                         const std::vector<std::string>& required,
                         const std::vector<std::string>& optional = {}) {
  if (!j.is_object()) throw input_error(where + ": expected an object");
  for (const std::string& k : required)
    if (!j.contains(k))
      throw input_error(where + ": missing field \"" + k + "\"");
  for (const auto& item : j.items()) {
    const std::string& k = item.key();
    if (std::find(required.begin(), required.end(), k) == required.end() &&
        std::find(optional.begin(), optional.end(), k) == optional.end())
      throw input_error(where + ": unknown field \"" + k + "\"");
  }
}

inline i64 get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw input_error(where + ": expected an integer");
  return j.get<i64>();
}

inline std::string get_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw input_error(where + ": expected a string");
  return j.get<std::string>();
}

inline ClosedPoint parse_point(const PrimeField& F, const json& j,
                               const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() != "inf")
      throw input_error(where + ": the only named point is \"inf\"");
    return ClosedPoint::inf();
  }
  if (j.is_number_integer()) return ClosedPoint::rational(F, j.get<i64>());
  if (j.is_array()) {
    std::vector<i64> coeffs;
    for (const json& c : j) coeffs.push_back(get_int(c, where));
    if (coeffs.size() < 2)
      throw input_error(where + ": point polynomial needs degree at least 1");
    Poly q = poly_make(F, coeffs);
    if (q.degree() + 1 != static_cast<int>(coeffs.size()) || q.leading() != 1)
      throw input_error(where + ": point polynomial must be monic");
    Factorization fac = poly_factor(F, q);
    if (fac.factors.size() != 1 || fac.factors[0].multiplicity != 1)
      throw input_error(where + ": point polynomial must be irreducible");
    return ClosedPoint::from_poly(q);
  }
  throw input_error(where + ": expected \"inf\", an integer, or coefficients");
}

inline json point_to_json(const PrimeField& F, const ClosedPoint& P) {
  if (P.infinity) return json("inf");
  if (P.degree() == 1) return json(F.neg(P.q.c[0]));
  return json(P.q.c);
}

inline MobiusMap parse_mobius(const PrimeField& F, const json& j,
                              const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() ||
      !j[1].is_array() || j[0].size() != 2 || j[1].size() != 2)
    throw input_error(where + ": expected [[a, b], [c, d]]");
  return mobius_make(F, get_int(j[0][0], where), get_int(j[0][1], where),
                     get_int(j[1][0], where), get_int(j[1][1], where));
}

inline json mobius_to_json(const MobiusMap& m) {
  return json::array({json::array({m.a, m.b}), json::array({m.c, m.d})});
}

inline Form parse_form(const PrimeField& F, int nvars, const json& j,
                       const std::string& where) {
  if (!j.is_array() || j.empty())
    throw input_error(where + ": expected a nonempty list of terms");
  std::vector<FormTerm> terms;
  for (const json& t : j) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_array())
      throw input_error(where + ": each term is [[exponents], coefficient]");
    if (static_cast<int>(t[0].size()) != nvars)
      throw input_error(where + ": expected " + std::to_string(nvars) +
                        " exponents");
    FormTerm term;
    for (int i = 0; i < nvars; ++i)
      term.e[static_cast<size_t>(i)] =
          static_cast<int>(get_int(t[0][static_cast<size_t>(i)], where));
    term.c = get_int(t[1], where);
    terms.push_back(term);
  }
  return form_make(F, nvars, std::move(terms));
}

inline json form_to_json(const Form& f) {
  json out = json::array();
  for (const FormTerm& t : f.terms) {
    json e = json::array();
    for (int i = 0; i < f.nvars; ++i) e.push_back(t.e[static_cast<size_t>(i)]);
    out.push_back(json::array({e, t.c}));
  }
  return out;
}

inline ConductorEmbedding parse_piece(const GluedScheme& s, const json& j,
                                      bool point_reference,
                                      const std::string& where) {
  check_fields(j, where, {"component", "locus"}, {"map"});
  ConductorEmbedding e;
  e.component = get_string(j.at("component"), where + ".component");
  std::optional<size_t> host = component_index(s, e.component);
  if (!host) throw input_error(where + ": unknown component " + e.component);
  e.kind = s.components[*host].kind;
  const json& locus = j.at("locus");
  const std::string lw = where + ".locus";
  if (e.kind == ComponentKind::Plane) {
    check_fields(locus, lw, {"matrix"});
    const json& m = locus.at("matrix");
    if (!m.is_array() || m.size() != 3)
      throw input_error(lw + ": expected three rows");
    for (size_t r = 0; r < 3; ++r) {
      if (!m[r].is_array() || m[r].size() != 2)
        throw input_error(lw + ": each row has two entries");
      for (size_t c = 0; c < 2; ++c)
        e.plane.m[r][c] = s.F.normalize(get_int(m[r][c], lw));
    }
  } else if (e.kind == ComponentKind::Quadric) {
    check_fields(locus, lw, {"fixed_factor", "fixed_point"}, {"mobius"});
    i64 ff = get_int(locus.at("fixed_factor"), lw + ".fixed_factor");
    if (ff != 0 && ff != 1)
      throw input_error(lw + ": fixed_factor is 0 or 1");
    e.quadric.fixed_factor = static_cast<int>(ff);
    ClosedPoint p =
        parse_point(s.F, locus.at("fixed_point"), lw + ".fixed_point");
    if (p.infinity) {
      e.quadric.fixed_infinity = true;
    } else {
      if (p.degree() != 1)
        throw input_error(lw + ": fixed point must be rational");
      e.quadric.fixed_value = s.F.neg(p.q.c[0]);
    }
    if (locus.contains("mobius"))
      e.quadric.repar = parse_mobius(s.F, locus.at("mobius"), lw + ".mobius");
  } else {
    check_fields(locus, lw, {"point"});
    e.line.point = parse_point(s.F, locus.at("point"), lw + ".point");
  }
  if (j.contains("map")) {
    if (point_reference)
      throw input_error(where + ": point-reference pieces carry no cover map");
    e.cover = parse_mobius(s.F, j.at("map"), where + ".map");
  }
  return e;
}

}  // namespace jsonio

inline GluedScheme parse_scheme(const json& j, bool validate = true) {
  jsonio::check_fields(j, "scheme", {"p", "components", "conductors"});
  i64 p = jsonio::get_int(j.at("p"), "scheme.p");
  if (p == 2) throw input_error("characteristic 2 unsupported");
  GluedScheme s{PrimeField(p)};
  if (!j.at("components").is_array())
    throw input_error("scheme.components: expected a list");
  for (const json& cj : j.at("components")) {
    jsonio::check_fields(cj, "component", {"name", "kind"});
    ComponentModel c;
    c.name = jsonio::get_string(cj.at("name"), "component.name");
    std::string kind = jsonio::get_string(cj.at("kind"), "component.kind");
    if (kind == "plane")
      c.kind = ComponentKind::Plane;
    else if (kind == "quadric")
      c.kind = ComponentKind::Quadric;
    else if (kind == "line")
      c.kind = ComponentKind::Line;
    else
      throw input_error("component " + c.name + ": unknown kind " + kind);
    s.components.push_back(std::move(c));
  }
  if (!j.at("conductors").is_array())
    throw input_error("scheme.conductors: expected a list");
  for (const json& dj : j.at("conductors")) {
    jsonio::check_fields(dj, "conductor",
                         {"name", "reference", "cover", "degree", "pieces"});
    SchemeConductor c;
    c.name = jsonio::get_string(dj.at("name"), "conductor.name");
    const std::string where = "conductor " + c.name;
    std::string ref = jsonio::get_string(dj.at("reference"), where);
    if (ref == "point")
      c.cover.point_reference = true;
    else if (ref != "line")
      throw input_error(where + ": reference is \"line\" or \"point\"");
    std::string cover = jsonio::get_string(dj.at("cover"), where);
    if (cover == "split")
      c.cover.kind = CoverKind::Split;
    else if (cover == "cyclic")
      c.cover.kind = CoverKind::Cyclic;
    else
      throw input_error(where + ": cover is \"split\" or \"cyclic\"");
    c.cover.degree = jsonio::get_int(dj.at("degree"), where + ".degree");
    if (!dj.at("pieces").is_array())
      throw input_error(where + ".pieces: expected a list");
    size_t idx = 0;
    for (const json& pj : dj.at("pieces")) {
      c.cover.pieces.push_back(
          jsonio::parse_piece(s, pj, c.cover.point_reference,
                              where + " piece " + std::to_string(idx)));
      ++idx;
    }
    s.conductors.push_back(std::move(c));
  }
  if (validate) scheme_validate(s);
  return s;
}

inline MumfordDivisor parse_divisor(const json& j, const GluedScheme& s,
                                    const std::string& scheme_name) {
  jsonio::check_fields(j, "divisor", {"scheme", "support"});
  std::string declared = jsonio::get_string(j.at("scheme"), "divisor.scheme");
  if (declared != scheme_name)
    throw input_error("divisor file is for scheme \"" + declared +
                      "\", not \"" + scheme_name + "\"");
  if (!j.at("support").is_array())
    throw input_error("divisor.support: expected a list");
  std::vector<std::vector<std::pair<Form, i64>>> forms(s.components.size());
  std::vector<DivisorP1> points(s.components.size());
  size_t idx = 0;
  for (const json& ej : j.at("support")) {
    const std::string where = "support entry " + std::to_string(idx);
    jsonio::check_fields(ej, where, {"component", "mult"}, {"form", "point"});
    std::string name = jsonio::get_string(ej.at("component"), where);
    std::optional<size_t> host = component_index(s, name);
    if (!host) throw input_error(where + ": unknown component " + name);
    i64 mult = jsonio::get_int(ej.at("mult"), where + ".mult");
    ComponentKind kind = s.components[*host].kind;
    if (kind == ComponentKind::Line) {
      if (!ej.contains("point") || ej.contains("form"))
        throw input_error(where + ": component " + name +
                          " is a line, give \"point\"");
      points[*host].add(
          jsonio::parse_point(s.F, ej.at("point"), where + ".point"), mult);
    } else {
      if (!ej.contains("form") || ej.contains("point"))
        throw input_error(where + ": component " + name +
                          " is a surface, give \"form\"");
      int nvars = kind == ComponentKind::Plane ? 3 : 4;
      forms[*host].push_back(
          {jsonio::parse_form(s.F, nvars, ej.at("form"), where + ".form"),
           mult});
    }
    ++idx;
  }
  MumfordDivisor b;
  for (size_t i = 0; i < s.components.size(); ++i) {
    if (s.components[i].kind == ComponentKind::Line)
      b.parts.push_back(divisor_on_line(std::move(points[i])));
    else
      b.parts.push_back(
          divisor_on_surface(s.components[i].kind, std::move(forms[i])));
  }
  return b;
}

// ---------------------------------------------------------------------------
// Writers
// ---------------------------------------------------------------------------

inline json divisor_p1_to_json(const PrimeField& F, const DivisorP1& d) {
  json out = json::array();
  for (const auto& [P, m] : d.mult)
    out.push_back(json::array({jsonio::point_to_json(F, P), m}));
  return out;
}

inline json ratfunc_to_json(const RatFunc& r) {
  json out;
  out["scalar"] = r.scalar;
  out["num"] = r.num.c;
  out["den"] = r.den.c;
  return out;
}

inline json divisor_to_json(const GluedScheme& s, const MumfordDivisor& b,
                            const std::string& scheme_name) {
  json out;
  out["scheme"] = scheme_name;
  json support = json::array();
  for (size_t i = 0; i < b.parts.size(); ++i) {
    const std::string& name = s.components[i].name;
    for (const auto& [form, m] : b.parts[i].forms) {
      json e;
      e["component"] = name;
      e["form"] = jsonio::form_to_json(form);
      e["mult"] = m;
      support.push_back(std::move(e));
    }
    for (const auto& [P, m] : b.parts[i].points.mult) {
      json e;
      e["component"] = name;
      e["point"] = jsonio::point_to_json(s.F, P);
      e["mult"] = m;
      support.push_back(std::move(e));
    }
  }
  out["support"] = std::move(support);
  return out;
}

inline json quotient_class_to_json(const PrimeField& F,
                                   const QuotientClass& q) {
  json out;
  out["cover"] = cover_kind_name(q.kind);
  out["point_reference"] = q.point_reference;
  out["degree"] = q.degree;
  out["trivial"] = is_trivial(q);
  if (q.kind == CoverKind::Split) {
    json graded = json::array();
    for (const DivisorP1& d : q.graded.split)
      graded.push_back(divisor_p1_to_json(F, d));
    out["graded"] = std::move(graded);
  } else {
    json graded = json::array();
    for (const auto& [orbit, vec] : q.graded.cyclic) {
      json e;
      e["orbit"] = jsonio::point_to_json(F, orbit);
      e["multiplicities"] = vec;
      graded.push_back(std::move(e));
    }
    out["graded"] = std::move(graded);
    out["torsion_defined"] = q.torsion_defined;
    if (q.torsion_defined) out["lambda"] = q.lambda;
  }
  return out;
}

inline json class_report_to_json(const GluedScheme& s, const ClassReport& r) {
  json out;
  out["pullback"] = r.pullback;
  out["pullback_zero"] = r.pullback_zero;
  if (r.rho_computed) {
    json rho = json::array();
    for (const auto& [name, q] : r.rho) {
      json e;
      e["conductor"] = name;
      e["class"] = quotient_class_to_json(s.F, q);
      rho.push_back(std::move(e));
    }
    out["rho"] = std::move(rho);
    out["rho_trivial"] = r.rho_trivial;
  }
  if (r.pt_computed) {
    out["pt"] = r.pt;
    out["pt_zero"] = r.pt_zero;
  }
  out["verdict"] = r.verdict;
  out["obstruction"] = r.obstruction;
  return out;
}

inline json witness_to_json(const GluedScheme& s, const Witness& w) {
  json out;
  json funcs = json::array();
  for (size_t i = 0; i < w.functions.size(); ++i) {
    const ComponentFunction& f = w.functions[i];
    json e;
    e["component"] = s.components[i].name;
    e["gauge"] = w.gauges[i];
    if (f.kind == ComponentKind::Line) {
      e["function"] = ratfunc_to_json(f.rational);
    } else {
      e["scalar"] = f.formal.scalar;
      json factors = json::array();
      for (const auto& [form, exp] : f.formal.factors)
        factors.push_back(
            json::array({jsonio::form_to_json(form), exp}));
      e["factors"] = std::move(factors);
    }
    funcs.push_back(std::move(e));
  }
  out["functions"] = std::move(funcs);
  json refs = json::array();
  for (const auto& [name, r] : w.references) {
    json e;
    e["conductor"] = name;
    e["function"] = ratfunc_to_json(r);
    refs.push_back(std::move(e));
  }
  out["references"] = std::move(refs);
  out["certificate"] = w.certificate;
  return out;
}

inline json dual_complex_to_json(const DualComplex& dc) {
  json out;
  out["vertices"] = dc.vertices;
  json edges = json::array();
  for (const auto& [name, ends] : dc.edges)
    edges.push_back(json::array({name, ends.first, ends.second}));
  out["edges"] = std::move(edges);
  out["markers"] = dc.markers;
  out["connected_components"] = dc.connected;
  out["betti1"] = dc.betti1;
  return out;
}

inline json group_report_to_json(const GluedScheme& s, const GroupReport& r) {
  json out;
  json comps = json::array();
  for (const auto& [name, rank] : r.component_ranks) {
    json e;
    e["component"] = name;
    e["rank"] = rank;
    comps.push_back(std::move(e));
  }
  out["component_ranks"] = std::move(comps);
  out["pullback_rank"] = r.pullback_rank;
  json conds = json::array();
  for (const auto& [name, shape] : r.conductor_shapes) {
    json e;
    e["conductor"] = name;
    e["free_basis"] = shape.free_basis;
    e["torsion_order"] = shape.torsion_order;
    conds.push_back(std::move(e));
  }
  out["conductor_quotients"] = std::move(conds);
  out["pt_invariant_factors"] = r.pt_invariant_factors;
  out["pt_order"] = r.pt_order;
  out["dual_complex"] = dual_complex_to_json(dual_complex(s));
  return out;
}

}  // namespace mumcl

#endif  // MUMCL_JSON_IO_HPP
