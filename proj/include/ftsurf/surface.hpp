#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ftsurf/cubic_graph.hpp"
#include "ftsurf/cycles.hpp"
#include "ftsurf/perm_group.hpp"

namespace ftsurf {

enum class SurfaceErrorKind {
  Malformed,      // parse failure, bad face, duplicate face
  EdgeDegree,     // an edge not contained in exactly two faces
  PinchedVertex,  // a vertex link that is not a single cycle
  Disconnected,
};

class SurfaceError : public std::runtime_error {
public:
  SurfaceError(SurfaceErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  SurfaceErrorKind kind() const { return kind_; }

private:
  SurfaceErrorKind kind_;
};

class NotFaceTransitiveError : public std::runtime_error {
public:
  explicit NotFaceTransitiveError(const std::string& what)
      : std::runtime_error(what) {}
};

// Cyclic sequence of the faces around a vertex, stored as a canonical Cycle
// over face indices.
struct Umbrella {
  int vertex;
  Cycle faces;
};

// A closed simplicial surface given by its triangles. Vertex ids are
// positive integers as supplied; face ids are indices into faces().
class SimplicialSurface {
public:
  // Validates the face list: faces are distinct 3-sets, every edge lies in
  // exactly two faces, every vertex link is a single cycle, and the surface
  // is strongly connected. Throws SurfaceError.
  static SimplicialSurface validate(std::span<const std::array<int, 3>> faces);

  // Sorted ascending, each face sorted ascending.
  const std::vector<std::array<int, 3>>& faces() const { return faces_; }
  const std::vector<int>& vertices() const { return vertices_; }
  // Unordered vertex pairs (u < v), sorted.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  // The two faces of each edge, aligned with edges().
  const std::vector<std::pair<int, int>>& edge_faces() const {
    return edge_faces_;
  }

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }

  int degree(int vertex) const;
  const Umbrella& umbrella(int vertex) const;
  const std::vector<Umbrella>& umbrellas() const { return umbrellas_; }

  friend bool operator==(const SimplicialSurface& a,
                         const SimplicialSurface& b) {
    return a.faces_ == b.faces_;
  }

private:
  SimplicialSurface() = default;

  std::vector<std::array<int, 3>> faces_;
  std::vector<int> vertices_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::pair<int, int>> edge_faces_;
  std::vector<Umbrella> umbrellas_;  // aligned with vertices_
};

int euler_characteristic(const SimplicialSurface& x);

// True iff the faces admit a consistent orientation: each edge receives
// opposite directions from its two faces.
bool is_orientable(const SimplicialSurface& x);

// The dual graph: node i is faces()[i], arcs join faces sharing an edge.
CubicGraph face_graph(const SimplicialSurface& x);

// One cycle per vertex (its umbrella over face-graph nodes), sorted. Always
// a vertex-faithful cycle double cover of face_graph(x).
CycleDoubleCover vertex_defining_cdc(const SimplicialSurface& x);

// The image of Aut(X) inside Aut(face_graph(X)): the setwise stabilizer of
// the vertex-defining cycle double cover. Throws CapExceededError when the
// face graph's automorphism group is too large to enumerate.
PermGroup lambda_image(const SimplicialSurface& x,
                       std::uint64_t aut_cap = kDefaultElementCap);

bool is_face_transitive(const SimplicialSurface& x,
                        std::uint64_t aut_cap = kDefaultElementCap);

struct VertexFaceType {
  int vertex_orbits = 0;    // v
  int face_stabilizer = 0;  // s
  std::optional<int> subtype_index;

  std::string to_string() const;  // "(v,s)" or "(v,s).i"

  friend bool operator==(const VertexFaceType&, const VertexFaceType&) =
      default;
};

// (v, s) for a face-transitive surface: v = orbit count of lambda_image(x)
// on the vertex-defining cycles, s = |lambda_image(x)| / |faces|. The
// subtype index is left unset. Throws NotFaceTransitiveError.
VertexFaceType vertex_face_type(const SimplicialSurface& x);

// Edge 3-colouring, bijective on the edges of every face.
struct GruenbaumColouring {
  std::vector<int> colour_by_edge;  // aligned with edges(), values 1..3
};

bool is_gruenbaum_colouring(const SimplicialSurface& x,
                            const GruenbaumColouring& w);

enum class EdgeClass { Mirror, Rotational };

// Mirror iff the two edges flanking e at a shared vertex carry equal
// colours; the verdict is the same at both endpoints. Throws
// std::invalid_argument on an invalid colouring or a non-edge.
EdgeClass classify_edge(const SimplicialSurface& x,
                        const GruenbaumColouring& w, std::pair<int, int> e);

// Byte-string invariant: canonical face-graph form refined by the
// vertex-defining cycle double cover. Equal iff surfaces are isomorphic.
std::string canonical_form(const SimplicialSurface& x);

// The canonical representative of x's isomorphism class, with vertices
// renumbered 1..|X0| by first appearance in the sorted face list.
SimplicialSurface canonical_surface(const SimplicialSurface& x);

bool is_isomorphic(const SimplicialSurface& a, const SimplicialSurface& b);

// Least vertex count a surface of Euler characteristic chi can have:
// ceil((7 + sqrt(49 - 24 chi)) / 2), in integer arithmetic. Throws
// std::invalid_argument when chi > 2.
int min_vertex_bound(int chi);

// Accepts a JSON object {"faces": [[v,v,v], ...]} or a brace list
// {{v,v,v},{v,v,v},...}, both with 1-based vertex ids. Throws SurfaceError.
SimplicialSurface parse_surface(const std::string& text);

// JSON text of the canonical representative; parse . serialize is the
// identity on canonical surfaces.
std::string serialize_surface(const SimplicialSurface& x);

// Rebuilds the surface whose vertex-defining cycle double cover on g is
// cdc: vertices are the cycles, numbered 1..|cdc| in sorted order; the face
// of node v is the triple of cycles through v. Throws std::invalid_argument
// unless cdc is a vertex-faithful cycle double cover of g.
SimplicialSurface surface_from_cdc(const CubicGraph& g,
                                   std::span<const Cycle> cdc);

}  // namespace ftsurf
