// The glued scheme model: components plus named conductor covers.
//
// A scheme is stored purely combinatorially.  Validation checks the
// structural invariants, the dual complex captures how 2-piece conductors
// connect components, and the piecewise-trivial part of the class group is
// the cokernel of the constants-pullback matrix modulo p - 1.

#ifndef MUMCL_SCHEME_HPP
#define MUMCL_SCHEME_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mumcl/abelian.hpp"
#include "mumcl/component.hpp"
#include "mumcl/covers.hpp"

namespace mumcl {

struct SchemeConductor {
  std::string name;
  CoverDescriptor cover;
};

struct GluedScheme {
  PrimeField F;
  std::vector<ComponentModel> components;
  std::vector<SchemeConductor> conductors;

  explicit GluedScheme(PrimeField field) : F(std::move(field)) {}

  int dimension() const {
    for (const ComponentModel& c : components)
      if (c.kind != ComponentKind::Line) return 2;
    return components.empty() ? 2 : 1;
  }
};

inline std::optional<size_t> component_index(const GluedScheme& s,
                                             const std::string& name) {
  for (size_t i = 0; i < s.components.size(); ++i)
    if (s.components[i].name == name) return i;
  return std::nullopt;
}

inline const ComponentModel& find_component(const GluedScheme& s,
                                            const std::string& name) {
  std::optional<size_t> i = component_index(s, name);
  if (!i) throw input_error("unknown component: " + name);
  return s.components[*i];
}

inline const SchemeConductor& find_conductor(const GluedScheme& s,
                                             const std::string& name) {
  for (const SchemeConductor& c : s.conductors)
    if (c.name == name) return c;
  throw input_error("unknown conductor: " + name);
}

// Every conductor piece hosted on the named component, in declaration order.
inline std::vector<ConductorEmbedding> pieces_on(const GluedScheme& s,
                                                 const std::string& component) {
  std::vector<ConductorEmbedding> out;
  for (const SchemeConductor& c : s.conductors)
    for (const ConductorEmbedding& e : c.cover.pieces)
      if (e.component == component) out.push_back(e);
  return out;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

inline std::vector<std::string> scheme_diagnostics(const GluedScheme& s) {
  std::vector<std::string> out;
  if (s.components.empty()) out.push_back("scheme has no components");
  for (size_t i = 0; i < s.components.size(); ++i)
    for (size_t j = i + 1; j < s.components.size(); ++j)
      if (s.components[i].name == s.components[j].name)
        out.push_back("duplicate component name: " + s.components[i].name);
  for (size_t i = 0; i < s.conductors.size(); ++i)
    for (size_t j = i + 1; j < s.conductors.size(); ++j)
      if (s.conductors[i].name == s.conductors[j].name)
        out.push_back("duplicate conductor name: " + s.conductors[i].name);

  bool has_curve = false, has_surface = false;
  for (const ComponentModel& c : s.components)
    (c.kind == ComponentKind::Line ? has_curve : has_surface) = true;
  if (has_curve && has_surface)
    out.push_back("components of mixed dimension");

  for (const SchemeConductor& cond : s.conductors) {
    for (const std::string& v : cover_violations(s.F, cond.cover))
      out.push_back("conductor " + cond.name + ": " + v);
    for (size_t i = 0; i < cond.cover.pieces.size(); ++i) {
      const ConductorEmbedding& e = cond.cover.pieces[i];
      std::string where =
          "conductor " + cond.name + " piece " + std::to_string(i) + ": ";
      std::optional<size_t> host = component_index(s, e.component);
      if (!host) {
        out.push_back(where + "unknown host component " + e.component);
        continue;
      }
      if (s.components[*host].kind != e.kind) {
        out.push_back(where + "locus kind does not match component " +
                      e.component);
        continue;
      }
      if (e.kind == ComponentKind::Plane && !plane_locus_rank2(s.F, e.plane))
        out.push_back(where + "plane locus is degenerate");
      if (e.kind == ComponentKind::Quadric &&
          (e.quadric.fixed_factor < 0 || e.quadric.fixed_factor > 1))
        out.push_back(where + "quadric locus fixes an unknown factor");
      if (e.kind == ComponentKind::Line && !e.line.point.infinity &&
          !(e.line.point.degree() == 1))
        out.push_back(where + "conductor point must be rational");
    }
  }

  for (const ComponentModel& comp : s.components) {
    std::vector<std::pair<std::string, ConductorEmbedding>> hosted;
    for (const SchemeConductor& cond : s.conductors)
      for (const ConductorEmbedding& e : cond.cover.pieces)
        if (e.component == comp.name && e.kind == comp.kind)
          hosted.push_back({cond.name, e});
    for (size_t i = 0; i < hosted.size(); ++i)
      for (size_t j = i + 1; j < hosted.size(); ++j)
        if (same_locus(s.F, hosted[i].second, hosted[j].second))
          out.push_back("conductors " + hosted[i].first + " and " +
                        hosted[j].first + " share a locus on component " +
                        comp.name);
  }
  return out;
}

inline void scheme_validate(const GluedScheme& s) {
  std::vector<std::string> d = scheme_diagnostics(s);
  if (!d.empty()) throw input_error("invalid scheme: " + d.front());
}

// ---------------------------------------------------------------------------
// Dual complex
// ---------------------------------------------------------------------------

struct DualComplex {
  std::vector<std::string> vertices;
  // conductor name with the indices of its two host vertices
  std::vector<std::pair<std::string, std::pair<size_t, size_t>>> edges;
  std::vector<std::string> markers;  // conductors with a piece count other than 2
  i64 connected = 0;
  i64 betti1 = 0;
};

inline DualComplex dual_complex(const GluedScheme& s) {
  DualComplex d;
  for (const ComponentModel& c : s.components) d.vertices.push_back(c.name);
  std::vector<size_t> parent(s.components.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto root = [&](size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const SchemeConductor& cond : s.conductors) {
    if (cond.cover.pieces.size() != 2) {
      d.markers.push_back(cond.name);
      continue;
    }
    size_t a = *component_index(s, cond.cover.pieces[0].component);
    size_t b = *component_index(s, cond.cover.pieces[1].component);
    d.edges.push_back({cond.name, {a, b}});
    parent[root(a)] = root(b);
  }
  for (size_t i = 0; i < parent.size(); ++i)
    if (root(i) == i) ++d.connected;
  d.betti1 = static_cast<i64>(d.edges.size()) -
             static_cast<i64>(d.vertices.size()) + d.connected;
  return d;
}

// ---------------------------------------------------------------------------
// The piecewise-trivial group
// ---------------------------------------------------------------------------

// Rows are conductor pieces, columns are components followed by conductors.
// A component column restricts its constants to every piece it hosts; a
// conductor column pulls its constants back to all of its pieces.  The group
// is the cokernel of this matrix with coefficients modulo p - 1.
struct PtPresentation {
  IntMatrix matrix{0, 0};
  CokernelPresentation pres;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
};

inline PtPresentation pt_presentation(const GluedScheme& s) {
  int rows = 0;
  for (const SchemeConductor& c : s.conductors)
    rows += static_cast<int>(c.cover.pieces.size());
  int ncomp = static_cast<int>(s.components.size());
  int ncond = static_cast<int>(s.conductors.size());
  PtPresentation out;
  out.matrix = IntMatrix(rows, ncomp + ncond);
  int r = 0;
  for (int j = 0; j < ncond; ++j) {
    const SchemeConductor& cond = s.conductors[static_cast<size_t>(j)];
    for (size_t i = 0; i < cond.cover.pieces.size(); ++i) {
      const ConductorEmbedding& e = cond.cover.pieces[i];
      std::optional<size_t> host = component_index(s, e.component);
      if (!host) throw input_error("unknown component: " + e.component);
      out.matrix.at(r, static_cast<int>(*host)) = 1;
      out.matrix.at(r, ncomp + j) = 1;
      out.row_labels.push_back(cond.name + "/" + std::to_string(i));
      ++r;
    }
  }
  for (const ComponentModel& c : s.components) out.col_labels.push_back(c.name);
  for (const SchemeConductor& c : s.conductors) out.col_labels.push_back(c.name);
  out.pres = cokernel_mod(out.matrix, s.F.p() - 1);

  bool all_two_piece = true;
  for (const SchemeConductor& c : s.conductors)
    if (c.cover.pieces.size() != 2) all_two_piece = false;
  if (all_two_piece) {
    i64 b1 = dual_complex(s).betti1;
    std::vector<i64> expect(static_cast<size_t>(b1), s.F.p() - 1);
    if (out.pres.invariant_factors() != expect)
      throw internal_error(
          "pt_presentation: cokernel disagrees with the first Betti number");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Filtration report
// ---------------------------------------------------------------------------

inline i64 component_class_rank(ComponentKind k) {
  return k == ComponentKind::Quadric ? 2 : 1;
}

struct GroupReport {
  std::vector<std::pair<std::string, i64>> component_ranks;
  i64 pullback_rank = 0;
  std::vector<std::pair<std::string, QuotientGroupShape>> conductor_shapes;
  std::vector<i64> pt_invariant_factors;
  i64 pt_order = 1;
};

inline GroupReport group_report(const GluedScheme& s) {
  GroupReport r;
  for (const ComponentModel& c : s.components) {
    i64 rank = component_class_rank(c.kind);
    r.component_ranks.push_back({c.name, rank});
    r.pullback_rank += rank;
  }
  for (const SchemeConductor& c : s.conductors)
    r.conductor_shapes.push_back({c.name, quotient_shape(c.cover)});
  PtPresentation pt = pt_presentation(s);
  r.pt_invariant_factors = pt.pres.invariant_factors();
  r.pt_order = pt.pres.order();
  return r;
}

}  // namespace mumcl

#endif  // MUMCL_SCHEME_HPP
