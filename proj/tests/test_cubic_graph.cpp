#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ftsurf/cubic_graph.hpp"
#include "ftsurf/perm_group.hpp"
#include "ftsurf/permutation.hpp"
#include "helpers.hpp"

using namespace ftsurf;
using namespace ftsurf::testing;

namespace {

// Independent graph6 encoder: upper triangle packed columnwise into 6-bit
// characters, zero padded.
std::string encode_graph6(const CubicGraph& g) {
  const int n = g.node_count();
  std::string out{static_cast<char>(n + 63)};
  std::vector<int> bits;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) bits.push_back(g.adjacent(i, j) ? 1 : 0);
  while (bits.size() % 6 != 0) bits.push_back(0);
  for (std::size_t k = 0; k < bits.size(); k += 6) {
    int v = 0;
    for (int b = 0; b < 6; ++b) v = (v << 1) | bits[k + b];
    out.push_back(static_cast<char>(v + 63));
  }
  return out;
}

// Independent automorphism count: try all node permutations.
int brute_force_aut_order(const CubicGraph& g) {
  const int n = g.node_count();
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = i;
  int count = 0;
  do {
    bool ok = true;
    for (const auto& [u, v] : g.arcs())
      if (!g.adjacent(images[static_cast<std::size_t>(u)],
                      images[static_cast<std::size_t>(v)])) {
        ok = false;
        break;
      }
    count += ok;
  } while (std::next_permutation(images.begin(), images.end()));
  return count;
}

CubicGraph from_edges(int n, std::vector<std::pair<int, int>> edges) {
  return CubicGraph::from_edge_list(n, edges);
}

}  // namespace

TEST_CASE("from_edge_list validation") {
  CHECK_THROWS_AS(from_edges(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}}),
                  GraphError);
  CHECK_THROWS_AS(from_edges(4, {{1, 1}, {1, 2}, {1, 3}, {2, 3}, {2, 4},
                                 {3, 4}}),
                  GraphError);
  CHECK_THROWS_AS(
      from_edges(4, {{1, 2}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}),
      GraphError);
  CHECK_THROWS_AS(from_edges(4, {{1, 2}, {1, 3}, {1, 5}, {2, 3}, {2, 4},
                                 {3, 4}}),
                  GraphError);
  const CubicGraph k4 = complete_k4();
  CHECK(k4.node_count() == 4);
  CHECK(k4.arc_count() == 6);
  for (int v = 0; v < 4; ++v) {
    const auto& nb = k4.neighbours(v);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
  }
}

TEST_CASE("arc ids are stable and invertible") {
  const CubicGraph g = petersen();
  for (int id = 0; id < g.arc_count(); ++id) {
    const auto [u, v] = g.arc(id);
    CHECK(g.arc_id(u, v) == id);
    CHECK(g.arc_id(v, u) == id);
  }
  CHECK_THROWS_AS(g.arc_id(0, 2), std::invalid_argument);
}

TEST_CASE("graph6 parsing and encoding") {
  const CubicGraph k4 = parse_graph6("C~");
  CHECK(k4 == complete_k4());
  CHECK(to_graph6(complete_k4()) == "C~");
  // 3 nodes cannot be cubic.
  CHECK_THROWS_AS(parse_graph6("B?"), GraphError);
  CHECK_THROWS_AS(parse_graph6(""), GraphError);

  for (const CubicGraph& g :
       {complete_k4(), petersen(), prism(4), heawood(), moebius_ladder(4)}) {
    const std::string s = encode_graph6(g);
    CHECK(to_graph6(g) == s);
    CHECK(parse_graph6(s) == g);
  }
}

TEST_CASE("sparse6 parsing") {
  CHECK(parse_sparse6(":CcKI") == complete_k4());
  CHECK_THROWS_AS(parse_sparse6("C~"), GraphError);
}

TEST_CASE("petersen fixture") {
  const std::string line = read_file(fixture_path("petersen.g6"));
  const std::string trimmed = line.substr(0, line.find_first_of("\r\n"));
  const CubicGraph g = parse_graph6(trimmed);
  CHECK(g.node_count() == 10);
  CHECK(g.arc_count() == 15);
  CHECK(to_graph6(g) == trimmed);
  CHECK(is_isomorphic(g, petersen()));
}

TEST_CASE("automorphism groups match brute force on small graphs") {
  CHECK(automorphism_group(complete_k4()).order() ==
        brute_force_aut_order(complete_k4()));
  CHECK(automorphism_group(complete_k4()).order() == 24);
  CHECK(automorphism_group(complete_bipartite_k33()).order() ==
        brute_force_aut_order(complete_bipartite_k33()));
  CHECK(automorphism_group(complete_bipartite_k33()).order() == 72);
  CHECK(automorphism_group(prism(3)).order() == brute_force_aut_order(prism(3)));
  CHECK(automorphism_group(prism(3)).order() == 12);
  CHECK(automorphism_group(prism(4)).order() == brute_force_aut_order(prism(4)));
  CHECK(automorphism_group(prism(4)).order() == 48);
  CHECK(automorphism_group(moebius_ladder(4)).order() ==
        brute_force_aut_order(moebius_ladder(4)));
}

TEST_CASE("automorphism groups of named graphs") {
  CHECK(automorphism_group(petersen()).order() == 120);
  CHECK(automorphism_group(heawood()).order() == 336);
  // Every generator preserves adjacency.
  const CubicGraph g = heawood();
  const PermGroup aut = automorphism_group(g);
  for (const Permutation& p : aut.generators())
    for (const auto& [u, v] : g.arcs()) CHECK(g.adjacent(p(u), p(v)));
}

TEST_CASE("node transitivity") {
  CHECK(is_node_transitive(complete_k4()));
  CHECK(is_node_transitive(petersen()));
  CHECK(is_node_transitive(prism(5)));
  CHECK(is_node_transitive(heawood()));
  // Two triangles joined through two extra nodes: cubic but with two kinds
  // of nodes (in and out of triangles).
  const CubicGraph g = from_edges(8, {{1, 2},
                                      {1, 3},
                                      {2, 3},
                                      {4, 5},
                                      {4, 6},
                                      {5, 6},
                                      {1, 4},
                                      {2, 7},
                                      {3, 8},
                                      {5, 7},
                                      {6, 8},
                                      {7, 8}});
  CHECK_FALSE(is_node_transitive(g));
  CHECK_FALSE(is_node_transitive(generalized_petersen(9, 3)));
}

TEST_CASE("arc orbit colouring") {
  const CubicGraph g = prism(3);
  SUBCASE("full automorphism group gives two orbits") {
    const ArcColouring col = arc_orbit_colouring(automorphism_group(g), g);
    CHECK(col.colour_count == 2);
    CHECK(col.orbit_sizes == std::vector<int>{6, 3});
    // Colour 1 is the larger orbit (triangle arcs), colour 2 the rungs.
    for (std::size_t id = 0; id < static_cast<std::size_t>(g.arc_count());
         ++id) {
      const auto [u, v] = g.arc(static_cast<int>(id));
      const bool rung = (v - u == 3);
      CHECK(col.colour_by_arc[id] == (rung ? 2 : 1));
    }
  }
  SUBCASE("rotation subgroup gives three orbits") {
    const PermGroup rot = PermGroup::from_generators(
        {Permutation::from_cycles(6, {{0, 1, 2}, {3, 4, 5}})}, 6);
    const ArcColouring col = arc_orbit_colouring(rot, g);
    CHECK(col.colour_count == 3);
    CHECK(col.orbit_sizes == std::vector<int>{3, 3, 3});
  }
  SUBCASE("colours partition the arcs") {
    const ArcColouring col = arc_orbit_colouring(automorphism_group(g), g);
    int total = 0;
    for (int s : col.orbit_sizes) total += s;
    CHECK(total == g.arc_count());
  }
  SUBCASE("non-subgroup input throws") {
    // (1 2) on the prism swaps nodes inside one triangle but not the rungs'
    // other ends, so it is not an automorphism.
    const PermGroup bad = PermGroup::from_generators(
        {Permutation::from_cycles(6, {{0, 1}})}, 6);
    CHECK_THROWS_AS(arc_orbit_colouring(bad, g), std::invalid_argument);
  }
}

TEST_CASE("canonical forms and isomorphism") {
  Lcg rng(424242);
  const CubicGraph g = petersen();
  const std::string canon = canonical_form(g);
  for (int i = 0; i < 20; ++i) {
    const Permutation p = random_permutation(10, rng);
    const CubicGraph h = relabel(g, p);
    CHECK(canonical_form(h) == canon);
    CHECK(is_isomorphic(g, h));
  }
  CHECK(canonical_form(complete_bipartite_k33()) !=
        canonical_form(prism(3)));
  CHECK_FALSE(is_isomorphic(complete_bipartite_k33(), prism(3)));
  CHECK(is_isomorphic(moebius_ladder(3), complete_bipartite_k33()));

  // The labeling permutation actually produces the canonical graph.
  const auto [form, tau] = canonical_labeling(g);
  CHECK(form == canon);
  CHECK(to_graph6(relabel(g, tau)) == form);
}

TEST_CASE("generalized polygon rings") {
  CHECK_FALSE(detect_generalized_mgon(complete_k4()).has_value());
  CHECK_FALSE(detect_generalized_mgon(petersen()).has_value());
  const CubicGraph ring8 = make_generalized_mgon_ring(8);
  CHECK(ring8.node_count() == 32);
  const auto hit8 = detect_generalized_mgon(ring8);
  REQUIRE(hit8.has_value());
  CHECK(*hit8 == std::pair<int, int>{8, 2});
  const auto hit5 = detect_generalized_mgon(make_generalized_mgon_ring(5));
  REQUIRE(hit5.has_value());
  CHECK(*hit5 == std::pair<int, int>{5, 2});
}

TEST_CASE("arc action of a node permutation") {
  const CubicGraph g = complete_k4();
  const Permutation p = Permutation::from_cycles(4, {{0, 1, 2, 3}});
  const Permutation pa = g.arc_action(p);
  CHECK(pa.degree() == 6);
  for (int id = 0; id < g.arc_count(); ++id) {
    const auto [u, v] = g.arc(id);
    CHECK(pa(id) == g.arc_id(p(u), p(v)));
  }
}
