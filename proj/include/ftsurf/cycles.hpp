#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ftsurf/cubic_graph.hpp"
#include "ftsurf/perm_group.hpp"
#include "ftsurf/permutation.hpp"

namespace ftsurf {

// A simple cycle of graph nodes, stored in canonical traversal order: the
// lexicographically least rotation over both directions. Nodes are distinct,
// length >= 3; adjacency in a particular graph is checked by is_valid_cycle.
class Cycle {
public:
  explicit Cycle(std::vector<int> nodes);

  const std::vector<int>& nodes() const { return nodes_; }
  int length() const { return static_cast<int>(nodes_.size()); }

  bool contains_node(int v) const;
  // True when u and v are consecutive on the cycle (in either direction).
  bool contains_arc(int u, int v) const;
  // The cycle's arcs as unordered pairs (u < v), in traversal order.
  std::vector<std::pair<int, int>> arcs() const;

  friend bool operator==(const Cycle&, const Cycle&) = default;
  friend std::strong_ordering operator<=>(const Cycle&,
                                          const Cycle&) = default;

private:
  std::vector<int> nodes_;
};

// A cycle double cover is kept sorted and duplicate-free; every producer in
// this library returns it that way.
using CycleDoubleCover = std::vector<Cycle>;

// All nodes in range, consecutive nodes (cyclically) adjacent in g.
bool is_valid_cycle(const CubicGraph& g, const Cycle& c);

// Every arc of g covered exactly twice by the given cycles. Throws
// std::invalid_argument when a cycle is not valid in g.
bool is_cycle_double_cover(const CubicGraph& g, std::span<const Cycle> cycles);

// Per-condition breakdown of the vertex-faithfulness test.
struct VertexFaithfulDiagnostic {
  bool all_chordless = false;
  bool pairwise_at_most_one_shared_arc = false;
  bool incident_cycles_distinct = false;
  bool incident_triples_distinct = false;

  bool ok() const {
    return all_chordless && pairwise_at_most_one_shared_arc &&
           incident_cycles_distinct && incident_triples_distinct;
  }
};

// Evaluates all four conditions on a cycle double cover of g: (a) every
// cycle chordless, (b) two cycles share at most one arc, (c) the three
// cycles through each node pairwise distinct, (d) no two nodes have the
// same unordered triple of incident cycles. Throws std::invalid_argument
// when cdc is not a cycle double cover of g.
VertexFaithfulDiagnostic vertex_faithful_diagnostic(const CubicGraph& g,
                                                    std::span<const Cycle> cdc);

bool is_vertex_faithful(const CubicGraph& g, std::span<const Cycle> cdc);

// The sigma-induced alpha cycle grown from a seed path F_1..F_n:
// (sigma(F_1), ..., sigma(F_{n-1}), sigma^2(F_1), ..., sigma^l(F_{n-1}))
// with l the order of sigma. Returns the cycle when all (n-1)*l entries are
// distinct and the result has length >= 3, std::nullopt otherwise. Throws
// std::invalid_argument when the seed is not a path in g, sigma does not
// preserve g's arcs, or sigma(F_1) != F_n.
std::optional<Cycle> alpha_cycle(const Permutation& sigma,
                                 std::span<const int> seed,
                                 const CubicGraph& g);

// All cycles whose cyclic arc-colour word is a repetition of `pattern`
// (colour values of kappa), up to rotation and reversal. Sorted.
std::vector<Cycle> pattern_cycles(const CubicGraph& g,
                                  const ArcColouring& kappa,
                                  std::span<const int> pattern);

// Deletes all arcs of other colours; when the remaining subgraph is
// 2-regular, returns its disjoint cycles, otherwise an empty list. Sorted.
std::vector<Cycle> mono_coloured_cycles(const CubicGraph& g,
                                        const ArcColouring& kappa, int colour);

// Canonical representative of the node-wise image of c under sigma.
Cycle cycle_image(const Permutation& sigma, const Cycle& c);

// Orbit of c under the group, sorted.
std::vector<Cycle> cycle_orbit(const PermGroup& h, const Cycle& c);

// Every simple cycle of g, sorted by (length, nodes).
std::vector<Cycle> all_simple_cycles(const CubicGraph& g);

inline constexpr int kDefaultCdcNodeCap = 22;

// Exhaustive cycle double covers of g via exact-cover search over the full
// cycle catalog, branching on the least-covered arc. With up_to_iso, one
// representative (the least) per Aut(g)-orbit. Throws CapExceededError when
// g has more than node_cap nodes.
std::vector<CycleDoubleCover> brute_force_cdcs(
    const CubicGraph& g, bool up_to_iso, int node_cap = kDefaultCdcNodeCap);

// Reduces a list of CDCs to the lexicographically least representative of
// each orbit under the group's action on cycles. Sorted.
std::vector<CycleDoubleCover> reduce_cdcs_up_to_iso(
    const PermGroup& aut, std::span<const CycleDoubleCover> cdcs);

// Text format: one cycle per line as comma-separated 1-based node ids.
std::string serialize_cdc(std::span<const Cycle> cdc);
CycleDoubleCover parse_cdc(const std::string& text);

}  // namespace ftsurf
