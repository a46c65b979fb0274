#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "mumcl/scheme.hpp"
#include "schemes.hpp"
#include "support.hpp"

using namespace mumcl;
using namespace testschemes;

namespace {

bool mentions(const std::vector<std::string>& msgs, const std::string& what) {
  return std::any_of(msgs.begin(), msgs.end(), [&](const std::string& m) {
    return m.find(what) != std::string::npos;
  });
}

}  // namespace

TEST_CASE("scheme validation accepts the stock examples") {
  CHECK(scheme_diagnostics(two_planes()).empty());
  CHECK(scheme_diagnostics(triangle()).empty());
  CHECK(scheme_diagnostics(nodal_cycle()).empty());
  CHECK(scheme_diagnostics(nodal_path()).empty());
  CHECK(scheme_diagnostics(cyclic_plane()).empty());
  CHECK(two_planes().dimension() == 2);
  CHECK(nodal_cycle().dimension() == 1);
}

TEST_CASE("scheme validation names each defect") {
  SECTION("tame degree restriction") {
    GluedScheme s{PrimeField(5)};
    s.components = {{"plane", ComponentKind::Plane}};
    s.conductors.push_back(
        cyclic_conductor("C", 3, on_plane("plane", coordinate_line(0))));
    std::vector<std::string> d = scheme_diagnostics(s);
    CHECK(mentions(d, "conductor C"));
    CHECK(mentions(d, "divide p - 1"));
  }
  SECTION("host kind mismatch and mixed dimension") {
    GluedScheme s = two_planes();
    s.components[1].kind = ComponentKind::Line;
    std::vector<std::string> d = scheme_diagnostics(s);
    CHECK(mentions(d, "mixed dimension"));
    CHECK(mentions(d, "locus kind does not match component plane2"));
  }
  SECTION("unknown host") {
    GluedScheme s = two_planes();
    s.conductors[0].cover.pieces[1].component = "plane9";
    CHECK(mentions(scheme_diagnostics(s), "unknown host component plane9"));
  }
  SECTION("shared loci on one component") {
    GluedScheme s = two_planes();
    s.conductors.push_back(split_conductor(
        "D2", {on_plane("plane1", PlaneLocus{{{{0, 0}, {2, 1}, {0, 3}}}}),
               on_plane("plane2", coordinate_line(1))}));
    std::vector<std::string> d = scheme_diagnostics(s);
    CHECK(mentions(d, "share a locus on component plane1"));
    CHECK_FALSE(mentions(d, "plane2"));
  }
  SECTION("node points must be rational") {
    GluedScheme s = nodal_cycle();
    s.conductors[0].cover.pieces[0].line.point =
        ClosedPoint::from_poly(poly_make(s.F, {2, 0, 1}));
    CHECK(mentions(scheme_diagnostics(s), "conductor point must be rational"));
  }
  SECTION("degenerate plane locus") {
    GluedScheme s = two_planes();
    s.conductors[0].cover.pieces[0].plane =
        PlaneLocus{{{{1, 0}, {2, 0}, {3, 0}}}};
    CHECK(mentions(scheme_diagnostics(s), "plane locus is degenerate"));
  }
  SECTION("duplicate names and empty schemes") {
    GluedScheme s = two_planes();
    s.components[1].name = "plane1";
    CHECK(mentions(scheme_diagnostics(s), "duplicate component name"));
    GluedScheme e{PrimeField(5)};
    CHECK(mentions(scheme_diagnostics(e), "no components"));
  }
  SECTION("validate throws on the first defect") {
    GluedScheme s = two_planes();
    s.conductors[0].cover.pieces[1].component = "plane9";
    CHECK_THROWS_AS(scheme_validate(s), input_error);
    CHECK_NOTHROW(scheme_validate(two_planes()));
  }
}

TEST_CASE("lookups") {
  GluedScheme s = two_planes();
  CHECK(find_component(s, "plane2").kind == ComponentKind::Plane);
  CHECK_THROWS_AS(find_component(s, "x"), input_error);
  CHECK(find_conductor(s, "D").cover.degree == 2);
  CHECK_THROWS_AS(find_conductor(s, "x"), input_error);
  CHECK(pieces_on(s, "plane1").size() == 1);
  CHECK(pieces_on(s, "plane2").size() == 1);
  CHECK(pieces_on(triangle(), "C2").size() == 2);
}

TEST_CASE("dual complex") {
  SECTION("two planes form a path") {
    DualComplex d = dual_complex(two_planes());
    CHECK(d.vertices == std::vector<std::string>{"plane1", "plane2"});
    REQUIRE(d.edges.size() == 1);
    CHECK(d.edges[0].first == "D");
    CHECK(d.connected == 1);
    CHECK(d.betti1 == 0);
  }
  SECTION("triangle forms a cycle") {
    DualComplex d = dual_complex(triangle());
    CHECK(d.edges.size() == 3);
    CHECK(d.connected == 1);
    CHECK(d.betti1 == 1);
  }
  SECTION("nodal path and cycle") {
    CHECK(dual_complex(nodal_cycle()).betti1 == 1);
    CHECK(dual_complex(nodal_path()).betti1 == 0);
  }
  SECTION("cyclic conductors are markers, not edges") {
    DualComplex d = dual_complex(cyclic_plane());
    CHECK(d.edges.empty());
    CHECK(d.markers == std::vector<std::string>{"C"});
    CHECK(d.betti1 == 0);
  }
  SECTION("no conductors means isolated vertices") {
    GluedScheme s{PrimeField(5)};
    s.components = {{"A", ComponentKind::Plane}, {"B", ComponentKind::Plane}};
    DualComplex d = dual_complex(s);
    CHECK(d.connected == 2);
    CHECK(d.betti1 == 0);
  }
  SECTION("loops count toward the Betti number") {
    GluedScheme s{PrimeField(5)};
    s.components = {{"P", ComponentKind::Plane}};
    s.conductors.push_back(split_conductor(
        "D", {on_plane("P", coordinate_line(0)),
              on_plane("P", coordinate_line(1))}));
    REQUIRE(scheme_diagnostics(s).empty());
    DualComplex d = dual_complex(s);
    CHECK(d.edges.size() == 1);
    CHECK(d.betti1 == 1);
  }
}

TEST_CASE("piecewise-trivial group") {
  SECTION("two planes give the trivial group") {
    PtPresentation pt = pt_presentation(two_planes());
    CHECK(pt.matrix.rows == 2);
    CHECK(pt.matrix.cols == 3);
    CHECK(pt.matrix.at(0, 0) == 1);
    CHECK(pt.matrix.at(0, 2) == 1);
    CHECK(pt.matrix.at(1, 1) == 1);
    CHECK(pt.matrix.at(1, 2) == 1);
    CHECK(pt.pres.is_trivial());
    CHECK(pt.row_labels == std::vector<std::string>{"D/0", "D/1"});
    CHECK(pt.col_labels ==
          std::vector<std::string>{"plane1", "plane2", "D"});
  }
  SECTION("triangle gives one cyclic factor of order p - 1") {
    PtPresentation pt = pt_presentation(triangle());
    CHECK(pt.pres.invariant_factors() == std::vector<i64>{6});
    CHECK(pt.pres.order() == 6);
  }
  SECTION("nodal examples") {
    CHECK(pt_presentation(nodal_cycle()).pres.invariant_factors() ==
          std::vector<i64>{4});
    CHECK(pt_presentation(nodal_path()).pres.is_trivial());
  }
  SECTION("a lone cyclic conductor contributes nothing") {
    PtPresentation pt = pt_presentation(cyclic_plane());
    CHECK(pt.matrix.rows == 1);
    CHECK(pt.pres.is_trivial());
  }
  SECTION("reordering the declaration leaves the group unchanged") {
    GluedScheme s = triangle();
    std::rotate(s.conductors.begin(), s.conductors.begin() + 1,
                s.conductors.end());
    std::rotate(s.components.begin(), s.components.begin() + 2,
                s.components.end());
    REQUIRE(scheme_diagnostics(s).empty());
    CHECK(pt_presentation(s).pres.invariant_factors() ==
          std::vector<i64>{6});
  }
  SECTION("all-split-2-piece schemes follow the Betti number") {
    std::vector<PlaneLocus> lines = {
        coordinate_line(0), coordinate_line(1), coordinate_line(2),
        PlaneLocus{{{{1, 0}, {1, 0}, {0, 1}}}},
        PlaneLocus{{{{1, 0}, {0, 1}, {1, 0}}}},
        PlaneLocus{{{{1, 0}, {0, 1}, {0, 1}}}},
        PlaneLocus{{{{2, 0}, {1, 0}, {0, 1}}}},
        PlaneLocus{{{{3, 0}, {1, 0}, {0, 1}}}},
        PlaneLocus{{{{4, 0}, {1, 0}, {0, 1}}}},
        PlaneLocus{{{{1, 0}, {0, 2}, {0, 1}}}}};
    for (i64 p : {i64(5), i64(7)}) {
      std::mt19937_64 rng(static_cast<unsigned>(p));
      for (int iter = 0; iter < 10; ++iter) {
        GluedScheme s{PrimeField(p)};
        std::uniform_int_distribution<size_t> nc(1, 4);
        size_t ncomp = nc(rng);
        for (size_t i = 0; i < ncomp; ++i)
          s.components.push_back({"P" + std::to_string(i), ComponentKind::Plane});
        std::vector<size_t> used(ncomp, 0);
        std::uniform_int_distribution<size_t> nd(0, 5);
        std::uniform_int_distribution<size_t> pick(0, ncomp - 1);
        size_t ncond = nd(rng);
        for (size_t j = 0; j < ncond; ++j) {
          size_t a = pick(rng), b = pick(rng);
          size_t need_a = used[a] + 1, need_b = used[b] + (a == b ? 2 : 1);
          if (std::max(need_a, need_b) > lines.size()) continue;
          ConductorEmbedding ea =
              on_plane("P" + std::to_string(a), lines[used[a]++]);
          ConductorEmbedding eb =
              on_plane("P" + std::to_string(b), lines[used[b]++]);
          s.conductors.push_back(
              split_conductor("D" + std::to_string(j), {ea, eb}));
        }
        REQUIRE(scheme_diagnostics(s).empty());
        i64 b1 = dual_complex(s).betti1;
        PtPresentation pt = pt_presentation(s);
        i64 expect = 1;
        for (i64 k = 0; k < b1; ++k) expect *= p - 1;
        CHECK(pt.pres.order() == expect);
        CHECK(pt.pres.invariant_factors() ==
              std::vector<i64>(static_cast<size_t>(b1), p - 1));
      }
    }
  }
}

TEST_CASE("filtration report") {
  SECTION("two planes") {
    GroupReport r = group_report(two_planes());
    CHECK(r.pullback_rank == 2);
    REQUIRE(r.conductor_shapes.size() == 1);
    CHECK(r.conductor_shapes[0].second.torsion_order == 1);
    CHECK(r.conductor_shapes[0].second.free_basis.find("closed points") !=
          std::string::npos);
    CHECK(r.pt_invariant_factors.empty());
    CHECK(r.pt_order == 1);
  }
  SECTION("triangle") {
    GroupReport r = group_report(triangle());
    CHECK(r.pullback_rank == 6);
    CHECK(r.conductor_shapes.size() == 3);
    CHECK(r.pt_invariant_factors == std::vector<i64>{6});
  }
  SECTION("a single plane is just its class group") {
    GluedScheme s{PrimeField(5)};
    s.components = {{"P", ComponentKind::Plane}};
    GroupReport r = group_report(s);
    CHECK(r.pullback_rank == 1);
    CHECK(r.conductor_shapes.empty());
    CHECK(r.pt_order == 1);
  }
  SECTION("dimension one quotients are trivial") {
    GroupReport r = group_report(nodal_cycle());
    for (const auto& [name, shape] : r.conductor_shapes) {
      CHECK(shape.free_basis == "trivial");
      CHECK(shape.torsion_order == 1);
    }
    CHECK(r.pt_invariant_factors == std::vector<i64>{4});
  }
  SECTION("cyclic conductor shape carries its torsion order") {
    GroupReport r = group_report(cyclic_plane());
    REQUIRE(r.conductor_shapes.size() == 1);
    CHECK(r.conductor_shapes[0].second.torsion_order == 3);
  }
}
