#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "ftsurf/classify.hpp"
#include "ftsurf/cubic_graph.hpp"
#include "ftsurf/cycles.hpp"
#include "ftsurf/perm_group.hpp"
#include "ftsurf/surface.hpp"
#include "helpers.hpp"

using namespace ftsurf;
using namespace ftsurf::testing;

namespace {

PermGroup alternating4() {
  return PermGroup::from_generators(
      {Permutation::from_cycles(4, {{0, 1, 2}}),
       Permutation::from_cycles(4, {{1, 2, 3}})},
      4);
}

PermGroup dihedral4_in_s4() {
  // The stabilizer of the pairing {{0,2},{1,3}}: order 8.
  return PermGroup::from_generators(
      {Permutation::from_cycles(4, {{0, 1, 2, 3}}),
       Permutation::from_cycles(4, {{1, 3}})},
      4);
}

CycleDoubleCover k4_triangles() {
  return {Cycle({0, 1, 2}), Cycle({0, 1, 3}), Cycle({0, 2, 3}),
          Cycle({1, 2, 3})};
}

// Surfaces produced for a graph, as canonical ids keyed by subtype name.
std::multiset<std::pair<std::string, std::string>> classified_ids(
    const ClassificationReport& report) {
  std::multiset<std::pair<std::string, std::string>> out;
  for (const ConstructionResult& r : report.results)
    for (const Construction& c : r.surfaces)
      out.emplace(to_string(c.subtype), canonical_form(c.surface));
  return out;
}

// Independent pipeline: every vertex-faithful cycle double cover, rebuilt
// into a surface, kept when face-transitive.
std::multiset<std::string> brute_force_surface_ids(const CubicGraph& g) {
  std::multiset<std::string> out;
  for (const CycleDoubleCover& cdc : brute_force_cdcs(g, true)) {
    if (!is_vertex_faithful(g, cdc)) continue;
    const SimplicialSurface x = surface_from_cdc(g, cdc);
    if (is_face_transitive(x)) out.insert(canonical_form(x));
  }
  return out;
}

}  // namespace

TEST_CASE("subtype table round trips") {
  REQUIRE(all_subtypes().size() == kSubtypeCount);
  int col = 0;
  for (const Subtype s : all_subtypes()) {
    CHECK(census_column(s) == col++);
    const auto parsed = parse_subtype(to_string(s));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == s);
  }
  CHECK(to_string(Subtype::S31) == "(3,1)");
  CHECK(to_string(Subtype::S21_3) == "(2,1).3");
  CHECK(to_string(Subtype::S16) == "(1,6)");
  CHECK_FALSE(parse_subtype("(4,1)").has_value());
  CHECK_FALSE(parse_subtype("").has_value());

  CHECK(vertex_face_type_of(Subtype::S31).vertex_orbits == 3);
  CHECK(vertex_face_type_of(Subtype::S31).face_stabilizer == 1);
  CHECK(vertex_face_type_of(Subtype::S13_2).vertex_orbits == 1);
  CHECK(vertex_face_type_of(Subtype::S13_2).face_stabilizer == 3);
  CHECK(vertex_face_type_of(Subtype::S16).face_stabilizer == 6);
}

TEST_CASE("verify_construction on the tetrahedron") {
  const CubicGraph k4 = complete_k4();
  const SimplicialSurface tetra = surface_from_cdc(k4, k4_triangles());
  const PermGroup s4 = automorphism_group(k4);
  const CycleDoubleCover cdc = k4_triangles();
  CHECK(verify_construction(k4, s4, cdc, tetra, Subtype::S16));
  // A proper subgroup is rejected: the surface's full group is larger.
  CHECK_FALSE(verify_construction(k4, alternating4(), cdc, tetra,
                                  Subtype::S13_1));
  // Wrong subtype claim is rejected.
  CHECK_FALSE(verify_construction(k4, s4, cdc, tetra, Subtype::S12));
}

TEST_CASE("construct_16 on K4 yields the tetrahedron") {
  const CubicGraph k4 = complete_k4();
  const std::vector<Construction> out =
      construct_16(k4, automorphism_group(k4));
  REQUIRE(out.size() == 1);
  CHECK(out[0].subtype == Subtype::S16);
  CHECK(is_isomorphic(out[0].surface, tetrahedron()));
  CHECK(is_vertex_faithful(k4, out[0].cdc));
}

TEST_CASE("construct_13 on K4 is empty") {
  CHECK(construct_13(complete_k4(), alternating4()).empty());
}

TEST_CASE("construct_12 on K4 is empty") {
  CHECK(construct_12(complete_k4(), dihedral4_in_s4()).empty());
}

TEST_CASE("construct_22 on the prism yields the bipyramid") {
  const CubicGraph g = prism(3);
  const std::vector<Construction> out =
      construct_22(g, automorphism_group(g));
  REQUIRE(out.size() == 1);
  CHECK(out[0].subtype == Subtype::S22);
  CHECK(is_isomorphic(out[0].surface, suspension(3)));
}

TEST_CASE("construct_31 rebuilds its fixture") {
  const SimplicialSurface x = load_fixture("x31");
  const CubicGraph g = face_graph(x);
  const std::vector<Construction> out = construct_31(g, lambda_image(x));
  REQUIRE(!out.empty());
  bool found = false;
  for (const Construction& c : out)
    found = found || (c.subtype == Subtype::S31 && is_isomorphic(c.surface, x));
  CHECK(found);
}

TEST_CASE("construct_21 rebuilds the three subtype fixtures") {
  for (const auto& [name, subtype] :
       std::vector<std::pair<const char*, Subtype>>{
           {"x21", Subtype::S21_1},
           {"y21", Subtype::S21_2},
           {"z21", Subtype::S21_3}}) {
    CAPTURE(name);
    const SimplicialSurface x = load_fixture(name);
    const CubicGraph g = face_graph(x);
    const std::vector<Construction> out = construct_21(g, lambda_image(x));
    bool found = false;
    for (const Construction& c : out)
      found = found || (c.subtype == subtype && is_isomorphic(c.surface, x));
    CHECK(found);
  }
}

TEST_CASE("construct_11 rebuilds all four subtype fixtures") {
  for (const auto& [name, subtype] :
       std::vector<std::pair<const char*, Subtype>>{
           {"x11", Subtype::S11_1},
           {"y11", Subtype::S11_2},
           {"xbar11", Subtype::S11_3},
           {"ybar11", Subtype::S11_4}}) {
    CAPTURE(name);
    const SimplicialSurface x = load_fixture(name);
    const CubicGraph g = face_graph(x);
    const std::vector<Construction> out = construct_11(g, lambda_image(x));
    bool found = false;
    for (const Construction& c : out)
      found = found || (c.subtype == subtype && is_isomorphic(c.surface, x));
    CHECK(found);
  }
}

TEST_CASE("subtype_of matches the fixture table") {
  CHECK(subtype_of(load_fixture("x13")) == Subtype::S13_1);
  CHECK(subtype_of(load_fixture("z21")) == Subtype::S21_3);
  CHECK(subtype_of(load_fixture("y11")) == Subtype::S11_2);
  CHECK(subtype_of(load_fixture("x22")) == Subtype::S22);
  CHECK(subtype_of(tetrahedron()) == Subtype::S16);
  CHECK(subtype_of(suspension(5)) == Subtype::S22);
}

TEST_CASE("any conjugate of the Heawood subgroup reconstructs the torus") {
  const CubicGraph g = heawood();
  const SimplicialSurface torus = load_fixture("x13");
  const std::vector<PermGroup> reps =
      subgroups_up_to_conjugacy(automorphism_group(g), 42);
  REQUIRE(!reps.empty());
  int transitive_reps = 0;
  for (const PermGroup& h : reps) {
    if (h.orbit_of(0).size() != 14) continue;
    ++transitive_reps;
    const std::vector<Construction> out = construct_13(g, h);
    bool found = false;
    for (const Construction& c : out)
      found = found || is_isomorphic(c.surface, torus);
    CHECK(found);
  }
  CHECK(transitive_reps >= 1);
}

TEST_CASE("classify_graph on K4") {
  const ClassificationReport report = classify_graph(complete_k4());
  CHECK_FALSE(report.skip_reason.has_value());
  const auto ids = classified_ids(report);
  REQUIRE(ids.size() == 1);
  CHECK(ids.begin()->first == "(1,6)");
  CHECK(ids.begin()->second == canonical_form(tetrahedron()));
}

TEST_CASE("classify_graph on the Petersen graph") {
  const ClassificationReport report = classify_graph(petersen());
  const auto ids = classified_ids(report);
  REQUIRE(ids.size() == 1);
  CHECK(ids.begin()->first == "(1,6)");
  CHECK(ids.begin()->second == canonical_form(load_fixture("x16")));
}

TEST_CASE("classify_graph skips ineligible graphs") {
  const ClassificationReport gp = classify_graph(generalized_petersen(9, 3));
  REQUIRE(gp.skip_reason.has_value());
  CHECK(*gp.skip_reason == "not node-transitive");
  CHECK(gp.results.empty());

  const ClassificationReport ring = classify_graph(make_generalized_mgon_ring(8));
  REQUIRE(ring.skip_reason.has_value());
  CHECK(*ring.skip_reason == "generalized m-gon obstruction");

  ClassifyOptions capped;
  capped.max_aut_order = 100;
  const ClassificationReport big = classify_graph(petersen(), capped);
  REQUIRE(big.skip_reason.has_value());
  CHECK(*big.skip_reason == "group too large");
}

TEST_CASE("an unobstructed polygon ring classifies normally") {
  // Ring of 3 squares: 12 nodes, m = 3 < 4 = 2^k, so no obstruction.
  const ClassificationReport report =
      classify_graph(make_generalized_mgon_ring(3));
  CHECK_FALSE(report.skip_reason.has_value());
}

TEST_CASE("classify_graph output is verified and consistent") {
  const ClassificationReport report = classify_graph(prism(3));
  CHECK_FALSE(report.skip_reason.has_value());
  for (const ConstructionResult& r : report.results) {
    for (const Construction& c : r.surfaces) {
      CHECK(verify_construction(prism(3), r.subgroup, c.cdc, c.surface,
                                c.subtype));
      CHECK(is_face_transitive(c.surface));
      CHECK(r.subtype == c.subtype);
    }
  }
  // Results are ordered by census column.
  int last = -1;
  for (const ConstructionResult& r : report.results) {
    CHECK(census_column(r.subtype) >= last);
    last = census_column(r.subtype);
  }
}

TEST_CASE("classify_graph agrees with the brute-force pipeline on the prism") {
  const CubicGraph g = prism(3);
  const auto report = classify_graph(g);
  std::multiset<std::string> ids;
  for (const auto& [subtype, id] : classified_ids(report)) ids.insert(id);
  CHECK(ids == brute_force_surface_ids(g));
}

TEST_CASE("relabeling leaves classification results invariant") {
  Lcg rng(1234321);
  const CubicGraph g = complete_bipartite_k33();
  const auto base = classified_ids(classify_graph(g));
  for (int trial = 0; trial < 5; ++trial) {
    const Permutation p = random_permutation(g.node_count(), rng);
    const auto moved = classified_ids(classify_graph(relabel(g, p)));
    CHECK(moved == base);
  }
}
