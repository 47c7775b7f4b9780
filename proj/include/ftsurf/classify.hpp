#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ftsurf/cubic_graph.hpp"
#include "ftsurf/cycles.hpp"
#include "ftsurf/perm_group.hpp"
#include "ftsurf/surface.hpp"

namespace ftsurf {

// The thirteen symmetry types of face-transitive surfaces, in census
// column order.
enum class Subtype {
  S31,
  S22,
  S21_1,
  S21_2,
  S21_3,
  S11_1,
  S11_2,
  S11_3,
  S11_4,
  S12,
  S13_1,
  S13_2,
  S16,
};

inline constexpr int kSubtypeCount = 13;

// All subtypes in census column order.
std::span<const Subtype> all_subtypes();

// Census column index; equals the enum value.
int census_column(Subtype s);

// "(3,1)", "(2,1).2", ...
std::string to_string(Subtype s);

// Inverse of to_string; nullopt when the text matches no subtype.
std::optional<Subtype> parse_subtype(std::string_view text);

// The (v, s[, index]) data carried by the subtype tag.
VertexFaceType vertex_face_type_of(Subtype s);

struct ConstructOptions {
  // Search sigma and pi over all of Aut(g) instead of the default domains
  // (sigma in H, pi in the setwise stabilizer of the candidate cover).
  bool wide_pi_search = false;
  // Cap on automorphism group element enumeration.
  std::uint64_t aut_element_cap = kDefaultElementCap;
};

struct Construction {
  CycleDoubleCover cdc;  // cover of g defining the surface
  SimplicialSurface surface;
  Subtype subtype;
};

// Constructors for the seven vertex-face type families. Each takes a
// node-transitive subgroup H <= Aut(g) and returns verified constructions,
// deduped by surface isomorphism. Order or arc-orbit preconditions that
// fail yield an empty list.
std::vector<Construction> construct_31(const CubicGraph& g, const PermGroup& h,
                                       const ConstructOptions& opts = {});
std::vector<Construction> construct_22(const CubicGraph& g, const PermGroup& h,
                                       const ConstructOptions& opts = {});
std::vector<Construction> construct_21(const CubicGraph& g, const PermGroup& h,
                                       const ConstructOptions& opts = {});
std::vector<Construction> construct_11(const CubicGraph& g, const PermGroup& h,
                                       const ConstructOptions& opts = {});
std::vector<Construction> construct_12(const CubicGraph& g, const PermGroup& h,
                                       const ConstructOptions& opts = {});
std::vector<Construction> construct_13(const CubicGraph& g, const PermGroup& h,
                                       const ConstructOptions& opts = {});
std::vector<Construction> construct_16(const CubicGraph& g, const PermGroup& h,
                                       const ConstructOptions& opts = {});

// Symmetry type of a face-transitive surface. The (v,s) part comes from
// vertex_face_type; the index of a (2,1)/(1,1)/(1,3) surface is re-derived
// from the arc-orbit structure of its vertex-defining cover. Throws
// NotFaceTransitiveError.
Subtype subtype_of(const SimplicialSurface& x, const ConstructOptions& opts = {});

// True iff lambda_image(x) matches H exactly (transported along the node ->
// face correspondence) and subtype_of(x) == claimed. Constructors discard
// candidates failing this; the surface is recovered under its true group.
bool verify_construction(const CubicGraph& g, const PermGroup& h,
                         std::span<const Cycle> cdc, const SimplicialSurface& x,
                         Subtype claimed, const ConstructOptions& opts = {});

struct ConstructionResult {
  std::string graph_id;  // canonical graph6 of the node graph
  PermGroup subgroup;
  Subtype subtype;
  std::vector<Construction> surfaces;
};

inline constexpr std::uint64_t kDefaultClassifyAutCap = 100'000;

struct ClassifyOptions {
  // Graphs whose automorphism group exceeds this are skipped.
  std::uint64_t max_aut_order = kDefaultClassifyAutCap;
  bool wide_pi_search = false;
  std::uint64_t aut_element_cap = kDefaultElementCap;
};

struct ClassificationReport {
  std::vector<ConstructionResult> results;
  // Set when the graph was skipped without running the constructors.
  std::optional<std::string> skip_reason;
};

// Runs every matching constructor over the node-transitive subgroups of
// Aut(g) of order s*|V|, s in {1,2,3,6}, one representative per conjugacy
// class. Surfaces are deduped by canonical form across all results.
ClassificationReport classify_graph(const CubicGraph& g,
                                    const ClassifyOptions& opts = {});

}  // namespace ftsurf
