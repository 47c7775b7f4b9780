#include "ftsurf/surface.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ftsurf {

namespace {

using EdgeKey = std::pair<int, int>;

EdgeKey edge_key(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

[[noreturn]] void fail(SurfaceErrorKind kind, const std::string& what) {
  throw SurfaceError(kind, what);
}

}  // namespace

SimplicialSurface SimplicialSurface::validate(
    std::span<const std::array<int, 3>> faces_in) {
  if (faces_in.empty()) {
    fail(SurfaceErrorKind::Malformed, "surface has no faces");
  }
  std::vector<std::array<int, 3>> faces;
  faces.reserve(faces_in.size());
  for (std::array<int, 3> f : faces_in) {
    std::sort(f.begin(), f.end());
    if (f[0] < 1) {
      fail(SurfaceErrorKind::Malformed, "vertex ids must be positive");
    }
    if (f[0] == f[1] || f[1] == f[2]) {
      fail(SurfaceErrorKind::Malformed, "face repeats a vertex");
    }
    faces.push_back(f);
  }
  std::sort(faces.begin(), faces.end());
  if (std::adjacent_find(faces.begin(), faces.end()) != faces.end()) {
    fail(SurfaceErrorKind::Malformed, "duplicate face");
  }

  std::map<EdgeKey, std::vector<int>> edge_map;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const auto& f = faces[i];
    edge_map[{f[0], f[1]}].push_back(static_cast<int>(i));
    edge_map[{f[0], f[2]}].push_back(static_cast<int>(i));
    edge_map[{f[1], f[2]}].push_back(static_cast<int>(i));
  }
  for (const auto& [e, incident] : edge_map) {
    if (incident.size() != 2) {
      fail(SurfaceErrorKind::EdgeDegree,
           "edge {" + std::to_string(e.first) + "," +
               std::to_string(e.second) + "} lies in " +
               std::to_string(incident.size()) + " face(s), expected 2");
    }
  }

  std::map<int, std::vector<int>> faces_at_vertex;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    for (int v : faces[i]) {
      faces_at_vertex[v].push_back(static_cast<int>(i));
    }
  }

  const auto other_face = [&edge_map](const EdgeKey& e, int face) {
    const auto& pair = edge_map.at(e);
    return pair[0] == face ? pair[1] : pair[0];
  };

  std::vector<Umbrella> umbrellas;
  umbrellas.reserve(faces_at_vertex.size());
  for (const auto& [v, incident] : faces_at_vertex) {
    const auto thirds = [&faces, v](int face) {
      std::array<int, 2> out{};
      int k = 0;
      for (int w : faces[face]) {
        if (w != v) out[k++] = w;
      }
      return out;
    };
    std::vector<int> seq;
    const int f0 = incident[0];
    int cur = f0;
    int prev = -1;
    while (true) {
      seq.push_back(cur);
      const auto [a, b] = thirds(cur);
      const int na = other_face(edge_key(v, a), cur);
      const int nb = other_face(edge_key(v, b), cur);
      const int next = (na == prev) ? nb : na;
      prev = cur;
      cur = next;
      if (cur == f0 || seq.size() > incident.size()) break;
    }
    if (cur != f0 || seq.size() != incident.size()) {
      fail(SurfaceErrorKind::PinchedVertex,
           "link of vertex " + std::to_string(v) + " is not a single cycle");
    }
    umbrellas.push_back(Umbrella{v, Cycle(std::move(seq))});
  }

  std::vector<char> reached(faces.size(), 0);
  std::queue<int> frontier;
  frontier.push(0);
  reached[0] = 1;
  int reach_count = 1;
  while (!frontier.empty()) {
    const int f = frontier.front();
    frontier.pop();
    const auto& face = faces[f];
    for (const EdgeKey& e : {edge_key(face[0], face[1]),
                             edge_key(face[0], face[2]),
                             edge_key(face[1], face[2])}) {
      const int g = other_face(e, f);
      if (!reached[g]) {
        reached[g] = 1;
        ++reach_count;
        frontier.push(g);
      }
    }
  }
  if (reach_count != static_cast<int>(faces.size())) {
    fail(SurfaceErrorKind::Disconnected, "surface is disconnected");
  }

  SimplicialSurface x;
  x.faces_ = std::move(faces);
  for (const auto& [v, incident] : faces_at_vertex) x.vertices_.push_back(v);
  for (const auto& [e, incident] : edge_map) {
    x.edges_.push_back(e);
    x.edge_faces_.emplace_back(incident[0], incident[1]);
  }
  x.umbrellas_ = std::move(umbrellas);
  return x;
}

namespace {

int vertex_index(const std::vector<int>& vertices, int v) {
  const auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) {
    throw std::invalid_argument("not a vertex of the surface: " +
                                std::to_string(v));
  }
  return static_cast<int>(it - vertices.begin());
}

}  // namespace

int SimplicialSurface::degree(int vertex) const {
  return umbrella(vertex).faces.length();
}

const Umbrella& SimplicialSurface::umbrella(int vertex) const {
  return umbrellas_[vertex_index(vertices_, vertex)];
}

int euler_characteristic(const SimplicialSurface& x) {
  return x.vertex_count() - x.edge_count() + x.face_count();
}

bool is_orientable(const SimplicialSurface& x) {
  // dir = +1 when the face's boundary walk traverses the edge min->max.
  const auto dir = [&x](int face, const EdgeKey& e) {
    const auto& f = x.faces()[face];
    if (e == EdgeKey{f[0], f[2]}) return -1;
    return 1;
  };

  std::vector<int> sign(x.face_count(), 0);
  sign[0] = 1;
  std::queue<int> frontier;
  frontier.push(0);
  while (!frontier.empty()) {
    const int f = frontier.front();
    frontier.pop();
    const auto& face = x.faces()[f];
    for (const EdgeKey& e : {edge_key(face[0], face[1]),
                             edge_key(face[0], face[2]),
                             edge_key(face[1], face[2])}) {
      const auto it = std::lower_bound(x.edges().begin(), x.edges().end(), e);
      const auto [fa, fb] = x.edge_faces()[it - x.edges().begin()];
      const int g = (fa == f) ? fb : fa;
      const int needed = -sign[f] * dir(f, e) * dir(g, e);
      if (sign[g] == 0) {
        sign[g] = needed;
        frontier.push(g);
      } else if (sign[g] != needed) {
        return false;
      }
    }
  }
  return true;
}

CubicGraph face_graph(const SimplicialSurface& x) {
  std::vector<std::vector<int>> adj(x.face_count());
  for (const auto& [fa, fb] : x.edge_faces()) {
    adj[fa].push_back(fb);
    adj[fb].push_back(fa);
  }
  return CubicGraph::from_adjacency(x.face_count(), std::move(adj));
}

CycleDoubleCover vertex_defining_cdc(const SimplicialSurface& x) {
  CycleDoubleCover cdc;
  cdc.reserve(x.umbrellas().size());
  for (const Umbrella& u : x.umbrellas()) cdc.push_back(u.faces);
  std::sort(cdc.begin(), cdc.end());
  return cdc;
}

namespace {

CycleDoubleCover apply_to_cdc(const Permutation& p,
                              const CycleDoubleCover& cdc) {
  CycleDoubleCover image;
  image.reserve(cdc.size());
  for (const Cycle& c : cdc) image.push_back(cycle_image(p, c));
  std::sort(image.begin(), image.end());
  return image;
}

}  // namespace

PermGroup lambda_image(const SimplicialSurface& x, std::uint64_t aut_cap) {
  const CubicGraph g = face_graph(x);
  const PermGroup aut = automorphism_group(g);
  const CycleDoubleCover cdc = vertex_defining_cdc(x);
  std::vector<Permutation> stabilizing;
  for (const Permutation& e : aut.elements(aut_cap)) {
    if (apply_to_cdc(e, cdc) == cdc) stabilizing.push_back(e);
  }
  return PermGroup::from_generators(stabilizing, g.node_count());
}

bool is_face_transitive(const SimplicialSurface& x, std::uint64_t aut_cap) {
  const PermGroup h = lambda_image(x, aut_cap);
  return static_cast<int>(h.orbit_of(0).size()) == x.face_count();
}

std::string VertexFaceType::to_string() const {
  std::string out = "(" + std::to_string(vertex_orbits) + "," +
                    std::to_string(face_stabilizer) + ")";
  if (subtype_index) out += "." + std::to_string(*subtype_index);
  return out;
}

VertexFaceType vertex_face_type(const SimplicialSurface& x) {
  const PermGroup h = lambda_image(x);
  if (static_cast<int>(h.orbit_of(0).size()) != x.face_count()) {
    throw NotFaceTransitiveError("surface is not face-transitive");
  }
  const CycleDoubleCover cdc = vertex_defining_cdc(x);

  std::set<Cycle> remaining(cdc.begin(), cdc.end());
  int orbits = 0;
  while (!remaining.empty()) {
    ++orbits;
    for (const Cycle& c : cycle_orbit(h, *remaining.begin())) {
      remaining.erase(c);
    }
  }

  const std::uint64_t order = h.order();
  if (order % static_cast<std::uint64_t>(x.face_count()) != 0) {
    throw std::logic_error("face stabilizer order is not integral");
  }
  const int s = static_cast<int>(order / x.face_count());

  static const std::set<std::pair<int, int>> admissible = {
      {3, 1}, {2, 1}, {2, 2}, {1, 1}, {1, 2}, {1, 3}, {1, 6}};
  if (!admissible.contains({orbits, s})) {
    throw std::logic_error("vertex-face type (" + std::to_string(orbits) +
                           "," + std::to_string(s) +
                           ") outside the admissible set");
  }
  return VertexFaceType{orbits, s, std::nullopt};
}

bool is_gruenbaum_colouring(const SimplicialSurface& x,
                            const GruenbaumColouring& w) {
  if (w.colour_by_edge.size() != x.edges().size()) return false;
  for (int c : w.colour_by_edge) {
    if (c < 1 || c > 3) return false;
  }
  const auto colour = [&x, &w](const EdgeKey& e) {
    const auto it = std::lower_bound(x.edges().begin(), x.edges().end(), e);
    return w.colour_by_edge[it - x.edges().begin()];
  };
  for (const auto& f : x.faces()) {
    const int a = colour({f[0], f[1]});
    const int b = colour({f[0], f[2]});
    const int c = colour({f[1], f[2]});
    if (a == b || a == c || b == c) return false;
  }
  return true;
}

EdgeClass classify_edge(const SimplicialSurface& x,
                        const GruenbaumColouring& w, std::pair<int, int> e) {
  if (!is_gruenbaum_colouring(x, w)) {
    throw std::invalid_argument(
        "edge colouring is not bijective on every face");
  }
  const EdgeKey key = edge_key(e.first, e.second);
  const auto it = std::lower_bound(x.edges().begin(), x.edges().end(), key);
  if (it == x.edges().end() || *it != key) {
    throw std::invalid_argument("not an edge of the surface");
  }
  const auto [fa, fb] = x.edge_faces()[it - x.edges().begin()];

  const auto third = [&x, &key](int face) {
    for (int v : x.faces()[face]) {
      if (v != key.first && v != key.second) return v;
    }
    throw std::logic_error("edge not contained in its incident face");
  };
  const int ta = third(fa);
  const int tb = third(fb);
  const auto colour = [&x, &w](const EdgeKey& edge) {
    const auto pos = std::lower_bound(x.edges().begin(), x.edges().end(), edge);
    return w.colour_by_edge[pos - x.edges().begin()];
  };

  const bool mirror_at_first =
      colour(edge_key(key.first, ta)) == colour(edge_key(key.first, tb));
  const bool mirror_at_second =
      colour(edge_key(key.second, ta)) == colour(edge_key(key.second, tb));
  if (mirror_at_first != mirror_at_second) {
    throw std::logic_error("edge classification differs between endpoints");
  }
  return mirror_at_first ? EdgeClass::Mirror : EdgeClass::Rotational;
}

namespace {

struct CanonicalData {
  std::string graph_bytes;
  CubicGraph graph;
  CycleDoubleCover cdc;
};

CanonicalData canonicalize(const SimplicialSurface& x) {
  const CubicGraph g = face_graph(x);
  const CycleDoubleCover cdc = vertex_defining_cdc(x);
  auto [bytes, tau] = canonical_labeling(g);
  const PermGroup aut = automorphism_group(g);

  std::optional<CycleDoubleCover> best;
  for (const Permutation& e : aut.elements()) {
    CycleDoubleCover image = apply_to_cdc(tau * e, cdc);
    if (!best || image < *best) best = std::move(image);
  }

  std::vector<std::vector<int>> adj(g.node_count());
  for (const auto& [u, v] : g.arcs()) {
    adj[tau(u)].push_back(tau(v));
    adj[tau(v)].push_back(tau(u));
  }
  return CanonicalData{std::move(bytes),
                       CubicGraph::from_adjacency(g.node_count(), std::move(adj)),
                       std::move(*best)};
}

}  // namespace

std::string canonical_form(const SimplicialSurface& x) {
  const CanonicalData data = canonicalize(x);
  return data.graph_bytes + "\n" + serialize_cdc(data.cdc);
}

SimplicialSurface canonical_surface(const SimplicialSurface& x) {
  const CanonicalData data = canonicalize(x);
  const SimplicialSurface rebuilt = surface_from_cdc(data.graph, data.cdc);

  // Renumber vertices 1..|X0| by first appearance in the sorted face list.
  std::map<int, int> renumber;
  for (const auto& f : rebuilt.faces()) {
    for (int v : f) {
      renumber.emplace(v, 0);
    }
  }
  int next_id = 0;
  for (const auto& f : rebuilt.faces()) {
    for (int v : f) {
      if (renumber.at(v) == 0) renumber.at(v) = ++next_id;
    }
  }
  std::vector<std::array<int, 3>> faces;
  faces.reserve(rebuilt.faces().size());
  for (const auto& f : rebuilt.faces()) {
    faces.push_back({renumber.at(f[0]), renumber.at(f[1]), renumber.at(f[2])});
  }
  return SimplicialSurface::validate(faces);
}

bool is_isomorphic(const SimplicialSurface& a, const SimplicialSurface& b) {
  if (a.vertex_count() != b.vertex_count() ||
      a.edge_count() != b.edge_count() || a.face_count() != b.face_count()) {
    return false;
  }
  return canonical_form(a) == canonical_form(b);
}

int min_vertex_bound(int chi) {
  if (chi > 2) {
    throw std::invalid_argument("no surface has Euler characteristic above 2");
  }
  const long long d = 49LL - 24LL * chi;
  long long lo = 0, hi = d;
  while (lo < hi) {  // integer sqrt: largest r with r*r <= d
    const long long mid = (lo + hi + 1) / 2;
    if (mid <= d / mid) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  const long long r = lo;
  if (r * r == d) return static_cast<int>((7 + r + 1) / 2);
  return static_cast<int>((7 + r) / 2 + 1);
}

namespace {

SimplicialSurface surface_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(SurfaceErrorKind::Malformed, std::string("JSON parse error: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("faces") || !doc["faces"].is_array()) {
    fail(SurfaceErrorKind::Malformed,
         "expected a JSON object with a \"faces\" array");
  }
  std::vector<std::array<int, 3>> faces;
  for (const auto& entry : doc["faces"]) {
    if (!entry.is_array() || entry.size() != 3) {
      fail(SurfaceErrorKind::Malformed, "face must be a list of 3 vertex ids");
    }
    std::array<int, 3> f{};
    for (int k = 0; k < 3; ++k) {
      if (!entry[k].is_number_integer()) {
        fail(SurfaceErrorKind::Malformed, "vertex ids must be integers");
      }
      f[k] = entry[k].get<int>();
    }
    faces.push_back(f);
  }
  return SimplicialSurface::validate(faces);
}

SimplicialSurface surface_from_brace_list(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  std::size_t i = 0;
  const auto expect = [&s, &i](char c) {
    if (i >= s.size() || s[i] != c) {
      fail(SurfaceErrorKind::Malformed,
           std::string("expected '") + c + "' at position " +
               std::to_string(i) + " of face list");
    }
    ++i;
  };
  const auto parse_int = [&s, &i]() {
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start])))) {
      fail(SurfaceErrorKind::Malformed,
           "expected a vertex id at position " + std::to_string(start));
    }
    try {
      return std::stoi(s.substr(start, i - start));
    } catch (const std::exception&) {
      fail(SurfaceErrorKind::Malformed, "vertex id out of range");
    }
  };

  std::vector<std::array<int, 3>> faces;
  expect('{');
  while (i < s.size() && s[i] == '{') {
    ++i;
    std::vector<int> vals;
    vals.push_back(parse_int());
    while (i < s.size() && s[i] == ',') {
      ++i;
      vals.push_back(parse_int());
    }
    expect('}');
    if (vals.size() != 3) {
      fail(SurfaceErrorKind::Malformed, "face must have 3 vertex ids");
    }
    faces.push_back({vals[0], vals[1], vals[2]});
    if (i < s.size() && s[i] == ',') {
      ++i;
      continue;
    }
    break;
  }
  expect('}');
  if (i != s.size()) {
    fail(SurfaceErrorKind::Malformed, "trailing characters after face list");
  }
  return SimplicialSurface::validate(faces);
}

}  // namespace

SimplicialSurface parse_surface(const std::string& text) {
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) {
    fail(SurfaceErrorKind::Malformed, "empty surface text");
  }
  if (text[first] != '{') {
    fail(SurfaceErrorKind::Malformed, "unrecognized surface format");
  }
  const std::size_t second = text.find_first_not_of(" \t\r\n", first + 1);
  if (second != std::string::npos && text[second] == '"') {
    return surface_from_json(text);
  }
  return surface_from_brace_list(text);
}

std::string serialize_surface(const SimplicialSurface& x) {
  const SimplicialSurface canon = canonical_surface(x);
  nlohmann::json faces = nlohmann::json::array();
  for (const auto& f : canon.faces()) {
    faces.push_back({f[0], f[1], f[2]});
  }
  nlohmann::json doc;
  doc["faces"] = std::move(faces);
  return doc.dump();
}

SimplicialSurface surface_from_cdc(const CubicGraph& g,
                                   std::span<const Cycle> cdc) {
  if (!vertex_faithful_diagnostic(g, cdc).ok()) {
    throw std::invalid_argument("cycle double cover is not vertex-faithful");
  }
  CycleDoubleCover sorted(cdc.begin(), cdc.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<std::array<int, 3>> faces(
      static_cast<std::size_t>(g.node_count()));
  for (int v = 0; v < g.node_count(); ++v) {
    int k = 0;
    std::array<int, 3> face{};
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i].contains_node(v)) {
        if (k == 3) {
          throw std::logic_error("more than 3 cycles through a node");
        }
        face[k++] = static_cast<int>(i) + 1;
      }
    }
    if (k != 3) throw std::logic_error("node not on exactly 3 cycles");
    faces[v] = face;
  }
  return SimplicialSurface::validate(faces);
}

}  // namespace ftsurf
