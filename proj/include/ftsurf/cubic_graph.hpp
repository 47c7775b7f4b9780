#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ftsurf/perm_group.hpp"
#include "ftsurf/permutation.hpp"

namespace ftsurf {

enum class GraphErrorKind {
  Malformed,
  Loop,
  ParallelArc,
  NotCubic,
  Disconnected,
};

class GraphError : public std::runtime_error {
public:
  GraphError(GraphErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  GraphErrorKind kind() const { return kind_; }

private:
  GraphErrorKind kind_;
};

// Simple connected 3-regular graph. Nodes are 0-based internally; edge-list
// input and every text format use 1-based ids. Arcs are unordered node pairs
// {u,v} with u < v, identified by their index in the sorted arc list.
class CubicGraph {
public:
  static CubicGraph from_edge_list(
      int node_count, std::span<const std::pair<int, int>> edges_1based);
  // 0-based adjacency as parsed from graph6/sparse6 payloads.
  static CubicGraph from_adjacency(int node_count,
                                   std::vector<std::vector<int>> adj);

  int node_count() const { return static_cast<int>(adj_.size()); }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::array<int, 3>& neighbours(int v) const;  // ascending
  bool adjacent(int u, int v) const;

  const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }
  int arc_id(int u, int v) const;  // throws std::invalid_argument if absent
  std::pair<int, int> arc(int id) const;

  // Action of a node permutation on arc ids.
  Permutation arc_action(const Permutation& node_perm) const;

  bool operator==(const CubicGraph& other) const { return adj_ == other.adj_; }

private:
  CubicGraph() = default;
  std::vector<std::array<int, 3>> adj_;
  std::vector<std::pair<int, int>> arcs_;
  std::vector<int> arc_lookup_;  // n*n table, -1 when not adjacent
};

// Parsers accept an optional format header and surrounding whitespace.
CubicGraph parse_graph6(std::string_view text);
CubicGraph parse_sparse6(std::string_view text);
// First line "n m", then m lines "u v" with 1-based node ids.
CubicGraph parse_edge_list_text(std::string_view text);
std::string to_graph6(const CubicGraph& g);

PermGroup automorphism_group(const CubicGraph& g);
bool is_node_transitive(const CubicGraph& g);

// Canonical graph6 string; equal exactly for isomorphic graphs.
std::string canonical_form(const CubicGraph& g);

// Canonical graph6 string together with a relabeling permutation tau that
// achieves it: renaming every node v to tau(v) yields the canonical graph.
std::pair<std::string, Permutation> canonical_labeling(const CubicGraph& g);
bool is_isomorphic(const CubicGraph& a, const CubicGraph& b);

struct ArcColouring {
  int colour_count = 0;
  std::vector<int> colour_by_arc;  // arc id -> colour in 1..colour_count
  std::vector<int> orbit_sizes;    // indexed by colour-1, decreasing
};

// Colour classes are the H-orbits on arcs; colours 1..k run through the
// orbits in decreasing size, ties broken by the smallest contained arc.
// Throws std::invalid_argument when H is not a subgroup of Aut(g).
ArcColouring arc_orbit_colouring(const PermGroup& h, const CubicGraph& g);

// Recognizes the ring-of-4-cycles family: n = 2^k*m nodes (k,m >= 2), two
// Aut-arc-orbits of sizes n (disjoint 4-cycles) and n/2 (perfect matching),
// the 4-cycles grouped into m circularly arranged collections of 2^(k-2)
// with matching arcs only between adjacent collections, alternating between
// previous and next around each 4-cycle. Returns the match with largest m,
// or nothing; near-misses return nothing.
std::optional<std::pair<int, int>> detect_generalized_mgon(const CubicGraph& g);

// Builds the k=2 member of that family: a ring of m squares.
CubicGraph make_generalized_mgon_ring(int m);

}  // namespace ftsurf
