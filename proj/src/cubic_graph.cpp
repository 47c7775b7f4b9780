#include "ftsurf/cubic_graph.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <sstream>

namespace ftsurf {

namespace {

[[noreturn]] void fail(GraphErrorKind kind, const std::string& what) {
  throw GraphError(kind, what);
}

std::vector<std::vector<int>> adjacency_from_edges(
    int node_count, const std::vector<std::pair<int, int>>& edges_0based) {
  std::vector<std::vector<int>> adj(node_count);
  for (auto [u, v] : edges_0based) {
    if (u < 0 || u >= node_count || v < 0 || v >= node_count)
      fail(GraphErrorKind::Malformed, "node id out of range");
    if (u == v) fail(GraphErrorKind::Loop, "loop at node " + std::to_string(u + 1));
    if (std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end())
      fail(GraphErrorKind::ParallelArc,
           "parallel arc " + std::to_string(u + 1) + "-" + std::to_string(v + 1));
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

}  // namespace

const std::array<int, 3>& CubicGraph::neighbours(int v) const {
  if (v < 0 || v >= node_count())
    throw std::invalid_argument("node out of range");
  return adj_[v];
}

bool CubicGraph::adjacent(int u, int v) const {
  if (u < 0 || u >= node_count() || v < 0 || v >= node_count())
    throw std::invalid_argument("node out of range");
  return arc_lookup_[static_cast<std::size_t>(u) * node_count() + v] >= 0;
}

int CubicGraph::arc_id(int u, int v) const {
  if (u < 0 || u >= node_count() || v < 0 || v >= node_count())
    throw std::invalid_argument("node out of range");
  const int id = arc_lookup_[static_cast<std::size_t>(u) * node_count() + v];
  if (id < 0) throw std::invalid_argument("nodes are not adjacent");
  return id;
}

std::pair<int, int> CubicGraph::arc(int id) const {
  if (id < 0 || id >= arc_count()) throw std::invalid_argument("arc id out of range");
  return arcs_[id];
}

Permutation CubicGraph::arc_action(const Permutation& node_perm) const {
  if (node_perm.degree() != node_count())
    throw std::invalid_argument("permutation degree mismatch");
  std::vector<int> images(arcs_.size());
  for (std::size_t i = 0; i < arcs_.size(); ++i)
    images[i] = arc_id(node_perm(arcs_[i].first), node_perm(arcs_[i].second));
  return Permutation(std::move(images));
}

CubicGraph CubicGraph::from_adjacency(int node_count,
                                      std::vector<std::vector<int>> adj) {
  if (node_count < 0 || static_cast<int>(adj.size()) != node_count)
    fail(GraphErrorKind::Malformed, "adjacency size mismatch");
  for (int v = 0; v < node_count; ++v) {
    for (int w : adj[v]) {
      if (w < 0 || w >= node_count)
        fail(GraphErrorKind::Malformed, "node id out of range");
      if (w == v) fail(GraphErrorKind::Loop, "loop at node " + std::to_string(v + 1));
    }
    std::sort(adj[v].begin(), adj[v].end());
    if (std::adjacent_find(adj[v].begin(), adj[v].end()) != adj[v].end())
      fail(GraphErrorKind::ParallelArc, "parallel arc at node " + std::to_string(v + 1));
    if (adj[v].size() != 3) fail(GraphErrorKind::NotCubic, "not 3-regular");
  }
  for (int v = 0; v < node_count; ++v) {
    for (int w : adj[v]) {
      if (std::find(adj[w].begin(), adj[w].end(), v) == adj[w].end())
        fail(GraphErrorKind::Malformed, "asymmetric adjacency");
    }
  }
  if (node_count > 0) {
    std::vector<char> seen(node_count, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    if (reached != node_count) fail(GraphErrorKind::Disconnected, "graph is disconnected");
  }

  CubicGraph g;
  g.adj_.resize(node_count);
  for (int v = 0; v < node_count; ++v)
    g.adj_[v] = {adj[v][0], adj[v][1], adj[v][2]};
  for (int v = 0; v < node_count; ++v)
    for (int w : g.adj_[v])
      if (v < w) g.arcs_.emplace_back(v, w);
  std::sort(g.arcs_.begin(), g.arcs_.end());
  g.arc_lookup_.assign(static_cast<std::size_t>(node_count) * node_count, -1);
  for (std::size_t i = 0; i < g.arcs_.size(); ++i) {
    const auto [u, w] = g.arcs_[i];
    g.arc_lookup_[static_cast<std::size_t>(u) * node_count + w] = static_cast<int>(i);
    g.arc_lookup_[static_cast<std::size_t>(w) * node_count + u] = static_cast<int>(i);
  }
  return g;
}

CubicGraph CubicGraph::from_edge_list(
    int node_count, std::span<const std::pair<int, int>> edges_1based) {
  std::vector<std::pair<int, int>> zero;
  zero.reserve(edges_1based.size());
  for (auto [u, v] : edges_1based) {
    if (u < 1 || u > node_count || v < 1 || v > node_count)
      fail(GraphErrorKind::Malformed, "node id out of range");
    zero.emplace_back(u - 1, v - 1);
  }
  return from_adjacency(node_count, adjacency_from_edges(node_count, zero));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

void strip_header(std::string_view& s, std::string_view header) {
  if (s.substr(0, header.size()) == header) s.remove_prefix(header.size());
}

int payload_byte(char c) {
  if (c < 63 || c > 126) fail(GraphErrorKind::Malformed, "byte out of range");
  return c - 63;
}

std::uint64_t parse_format_number(std::string_view& s) {
  if (s.empty()) fail(GraphErrorKind::Malformed, "missing node count");
  if (s[0] == 126) {
    if (s.size() >= 2 && s[1] == 126) {
      if (s.size() < 8) fail(GraphErrorKind::Malformed, "truncated node count");
      std::uint64_t n = 0;
      for (int i = 2; i < 8; ++i) n = (n << 6) | payload_byte(s[i]);
      s.remove_prefix(8);
      return n;
    }
    if (s.size() < 4) fail(GraphErrorKind::Malformed, "truncated node count");
    std::uint64_t n = 0;
    for (int i = 1; i < 4; ++i) n = (n << 6) | payload_byte(s[i]);
    s.remove_prefix(4);
    return n;
  }
  const std::uint64_t n = payload_byte(s[0]);
  s.remove_prefix(1);
  return n;
}

void append_format_number(std::string& out, std::uint64_t n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6)
      out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6)
      out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
}

class BitReader {
public:
  explicit BitReader(std::string_view payload) : payload_(payload) {}

  bool has(int bits) const {
    return (payload_.size() - byte_) * 6 - bit_ >= static_cast<std::size_t>(bits);
  }
  std::uint64_t take(int bits) {
    std::uint64_t out = 0;
    for (int i = 0; i < bits; ++i) {
      const int b = payload_byte(payload_[byte_]);
      out = (out << 1) | ((b >> (5 - bit_)) & 1);
      if (++bit_ == 6) {
        bit_ = 0;
        ++byte_;
      }
    }
    return out;
  }

private:
  std::string_view payload_;
  std::size_t byte_ = 0;
  int bit_ = 0;
};

}  // namespace

CubicGraph parse_graph6(std::string_view text) {
  std::string_view s = trim(text);
  strip_header(s, ">>graph6<<");
  if (!s.empty() && s[0] == ':')
    fail(GraphErrorKind::Malformed, "sparse6 data passed to graph6 parser");
  const std::uint64_t n64 = parse_format_number(s);
  if (n64 > 100000) fail(GraphErrorKind::Malformed, "node count too large");
  const int n = static_cast<int>(n64);
  const std::uint64_t bits = n64 * (n64 - (n64 > 0 ? 1 : 0)) / 2;
  const std::uint64_t bytes = (bits + 5) / 6;
  if (s.size() != bytes) fail(GraphErrorKind::Malformed, "payload length mismatch");
  BitReader reader(s);
  std::vector<std::pair<int, int>> edges;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (reader.take(1)) edges.emplace_back(i, j);
  return CubicGraph::from_adjacency(n, adjacency_from_edges(n, edges));
}

CubicGraph parse_sparse6(std::string_view text) {
  std::string_view s = trim(text);
  strip_header(s, ">>sparse6<<");
  if (s.empty() || s[0] != ':')
    fail(GraphErrorKind::Malformed, "sparse6 data must start with ':'");
  s.remove_prefix(1);
  const std::uint64_t n64 = parse_format_number(s);
  if (n64 > 100000) fail(GraphErrorKind::Malformed, "node count too large");
  const int n = static_cast<int>(n64);
  const int k = n64 > 1 ? std::bit_width(n64 - 1) : 1;
  BitReader reader(s);
  std::vector<std::pair<int, int>> edges;
  std::uint64_t v = 0;
  while (reader.has(1 + k)) {
    const std::uint64_t b = reader.take(1);
    const std::uint64_t x = reader.take(k);
    if (b) ++v;
    if (v >= n64 || x >= n64) break;
    if (x > v)
      v = x;
    else
      edges.emplace_back(static_cast<int>(x), static_cast<int>(v));
  }
  return CubicGraph::from_adjacency(n, adjacency_from_edges(n, edges));
}

CubicGraph parse_edge_list_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  long long n = 0, m = 0;
  if (!(in >> n >> m) || n < 0 || m < 0)
    fail(GraphErrorKind::Malformed, "expected 'n m' header");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u = 0, v = 0;
    if (!(in >> u >> v)) fail(GraphErrorKind::Malformed, "truncated edge list");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  std::string extra;
  if (in >> extra) fail(GraphErrorKind::Malformed, "trailing data after edge list");
  return CubicGraph::from_edge_list(static_cast<int>(n), edges);
}

std::string to_graph6(const CubicGraph& g) {
  const int n = g.node_count();
  std::string out;
  append_format_number(out, static_cast<std::uint64_t>(n));
  int acc = 0;
  int acc_bits = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++acc_bits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        acc_bits = 0;
      }
    }
  }
  if (acc_bits > 0)
    out.push_back(static_cast<char>((acc << (6 - acc_bits)) + 63));
  return out;
}

namespace {

// Backtracking search over equitable ordered partitions. Leaves are discrete
// partitions read as labelings; the canonical labeling minimizes the
// adjacency bitstring, and equal-bitstring leaf pairs yield automorphisms.
class CanonicalSearcher {
public:
  explicit CanonicalSearcher(const CubicGraph& g)
      : g_(g), n_(g.node_count()) {}

  void run() {
    if (n_ == 0) {
      best_bytes_.clear();
      return;
    }
    std::vector<std::vector<int>> cells(1);
    cells[0].resize(n_);
    for (int v = 0; v < n_; ++v) cells[0][v] = v;
    refine(cells);
    std::vector<int> prefix;
    recurse(cells, prefix);
  }

  const std::vector<Permutation>& automorphisms() const { return autos_; }
  const std::vector<std::uint8_t>& best_bytes() const { return best_bytes_; }
  const std::vector<int>& best_labeling() const { return best_labeling_; }

private:
  void refine(std::vector<std::vector<int>>& cells) const {
    std::vector<int> cnt(n_);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t w = 0; w < cells.size() && !changed; ++w) {
        std::fill(cnt.begin(), cnt.end(), 0);
        for (int x : cells[w])
          for (int y : g_.neighbours(x)) ++cnt[y];
        for (std::size_t ci = 0; ci < cells.size() && !changed; ++ci) {
          if (cells[ci].size() <= 1) continue;
          std::array<std::vector<int>, 4> groups;
          for (int v : cells[ci]) groups[cnt[v]].push_back(v);
          int nonempty = 0;
          for (const auto& grp : groups) nonempty += grp.empty() ? 0 : 1;
          if (nonempty <= 1) continue;
          std::vector<std::vector<int>> next;
          next.reserve(cells.size() + 3);
          for (std::size_t cj = 0; cj < cells.size(); ++cj) {
            if (cj != ci) {
              next.push_back(std::move(cells[cj]));
              continue;
            }
            for (auto& grp : groups)
              if (!grp.empty()) next.push_back(std::move(grp));
          }
          cells = std::move(next);
          changed = true;
        }
      }
    }
  }

  std::vector<std::uint8_t> leaf_bytes(const std::vector<int>& inverse) const {
    std::vector<std::uint8_t> bytes;
    bytes.reserve((static_cast<std::size_t>(n_) * (n_ - 1) / 2 + 5) / 6);
    int acc = 0;
    int acc_bits = 0;
    for (int j = 1; j < n_; ++j) {
      for (int i = 0; i < j; ++i) {
        acc = (acc << 1) | (g_.adjacent(inverse[i], inverse[j]) ? 1 : 0);
        if (++acc_bits == 6) {
          bytes.push_back(static_cast<std::uint8_t>(acc));
          acc = 0;
          acc_bits = 0;
        }
      }
    }
    if (acc_bits > 0)
      bytes.push_back(static_cast<std::uint8_t>(acc << (6 - acc_bits)));
    return bytes;
  }

  void handle_leaf(const std::vector<std::vector<int>>& cells) {
    std::vector<int> inverse(n_);  // label -> node
    std::vector<int> labeling(n_);
    for (int i = 0; i < n_; ++i) {
      inverse[i] = cells[i][0];
      labeling[cells[i][0]] = i;
    }
    std::vector<std::uint8_t> bytes = leaf_bytes(inverse);
    if (first_labeling_.empty()) {
      first_labeling_ = labeling;
      first_bytes_ = bytes;
      best_labeling_ = labeling;
      best_bytes_ = std::move(bytes);
      return;
    }
    if (bytes == first_bytes_) record_automorphism(first_labeling_, labeling);
    if (bytes < best_bytes_) {
      best_labeling_ = labeling;
      best_bytes_ = std::move(bytes);
    } else if (bytes == best_bytes_ && first_bytes_ != best_bytes_) {
      record_automorphism(best_labeling_, labeling);
    }
  }

  void record_automorphism(const std::vector<int>& lab1,
                           const std::vector<int>& lab2) {
    // Equal relabeled adjacency: node u maps to lab2^{-1}(lab1(u)).
    std::vector<int> inv2(n_);
    for (int v = 0; v < n_; ++v) inv2[lab2[v]] = v;
    std::vector<int> images(n_);
    for (int u = 0; u < n_; ++u) images[u] = inv2[lab1[u]];
    Permutation a{std::move(images)};
    if (!a.is_identity()) autos_.push_back(std::move(a));
  }

  // Union of orbits of the automorphisms found so far that fix the prefix
  // pointwise; used to skip equivalent siblings.
  std::vector<int> prefix_orbit_roots(const std::vector<int>& prefix) const {
    std::vector<int> parent(n_);
    for (int v = 0; v < n_; ++v) parent[v] = v;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const Permutation& a : autos_) {
      bool fixes = true;
      for (int p : prefix) {
        if (a(p) != p) {
          fixes = false;
          break;
        }
      }
      if (!fixes) continue;
      for (int v = 0; v < n_; ++v) {
        const int r1 = find(v);
        const int r2 = find(a(v));
        if (r1 != r2) parent[r1] = r2;
      }
    }
    std::vector<int> roots(n_);
    for (int v = 0; v < n_; ++v) roots[v] = find(v);
    return roots;
  }

  void recurse(const std::vector<std::vector<int>>& cells,
               std::vector<int>& prefix) {
    int target = -1;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].size() > 1) {
        target = static_cast<int>(i);
        break;
      }
    }
    if (target == -1) {
      handle_leaf(cells);
      return;
    }
    std::vector<int> explored;
    for (int v : cells[target]) {
      if (!explored.empty()) {
        const std::vector<int> roots = prefix_orbit_roots(prefix);
        bool skip = false;
        for (int w : explored) {
          if (roots[w] == roots[v]) {
            skip = true;
            break;
          }
        }
        if (skip) continue;
      }
      explored.push_back(v);
      std::vector<std::vector<int>> child;
      child.reserve(cells.size() + 1);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (static_cast<int>(i) != target) {
          child.push_back(cells[i]);
          continue;
        }
        child.push_back({v});
        std::vector<int> rest;
        rest.reserve(cells[i].size() - 1);
        for (int w : cells[i])
          if (w != v) rest.push_back(w);
        child.push_back(std::move(rest));
      }
      refine(child);
      prefix.push_back(v);
      recurse(child, prefix);
      prefix.pop_back();
    }
  }

  const CubicGraph& g_;
  int n_;
  std::vector<Permutation> autos_;
  std::vector<int> first_labeling_;
  std::vector<std::uint8_t> first_bytes_;
  std::vector<int> best_labeling_;
  std::vector<std::uint8_t> best_bytes_;
};

}  // namespace

PermGroup automorphism_group(const CubicGraph& g) {
  CanonicalSearcher search(g);
  search.run();
  return PermGroup::from_generators(search.automorphisms(), g.node_count());
}

bool is_node_transitive(const CubicGraph& g) {
  if (g.node_count() == 0) return true;
  return static_cast<int>(automorphism_group(g).orbit_of(0).size()) ==
         g.node_count();
}

std::string canonical_form(const CubicGraph& g) {
  return canonical_labeling(g).first;
}

std::pair<std::string, Permutation> canonical_labeling(const CubicGraph& g) {
  CanonicalSearcher search(g);
  search.run();
  std::string out;
  append_format_number(out, static_cast<std::uint64_t>(g.node_count()));
  for (std::uint8_t b : search.best_bytes())
    out.push_back(static_cast<char>(b + 63));
  return {std::move(out), Permutation(search.best_labeling())};
}

bool is_isomorphic(const CubicGraph& a, const CubicGraph& b) {
  if (a.node_count() != b.node_count()) return false;
  return canonical_form(a) == canonical_form(b);
}

ArcColouring arc_orbit_colouring(const PermGroup& h, const CubicGraph& g) {
  if (h.degree() != g.node_count())
    throw std::invalid_argument("group degree does not match node count");
  for (const Permutation& p : h.generators()) {
    for (const auto& [u, v] : g.arcs()) {
      if (!g.adjacent(p(u), p(v)))
        throw std::invalid_argument("group is not a subgroup of Aut(g)");
    }
  }

  const int arc_count = g.arc_count();
  std::vector<std::vector<int>> orbits;
  std::vector<char> seen(arc_count, 0);
  for (int a = 0; a < arc_count; ++a) {
    if (seen[a]) continue;
    std::vector<int> orbit{a};
    seen[a] = 1;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      const auto [u, v] = g.arc(orbit[k]);
      for (const Permutation& p : h.generators()) {
        const int img = g.arc_id(p(u), p(v));
        if (!seen[img]) {
          seen[img] = 1;
          orbit.push_back(img);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  std::sort(orbits.begin(), orbits.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a[0] < b[0];
            });

  ArcColouring col;
  col.colour_count = static_cast<int>(orbits.size());
  col.colour_by_arc.assign(arc_count, 0);
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    col.orbit_sizes.push_back(static_cast<int>(orbits[i].size()));
    for (int a : orbits[i]) col.colour_by_arc[a] = static_cast<int>(i) + 1;
  }
  return col;
}

namespace {

struct SquareDecomposition {
  std::vector<std::array<int, 4>> squares;  // nodes in cyclic order
  std::vector<int> square_of;               // node -> square index
  std::vector<int> pos_in_square;           // node -> position 0..3
  std::vector<int> match;                   // node -> matching partner
};

// Splits the graph by arc colour into disjoint 4-cycles (colour 1) and a
// perfect matching (colour 2); empty result when the shape does not hold.
std::optional<SquareDecomposition> decompose_squares(const CubicGraph& g,
                                                     const ArcColouring& col) {
  const int n = g.node_count();
  SquareDecomposition dec;
  dec.square_of.assign(n, -1);
  dec.pos_in_square.assign(n, -1);
  dec.match.assign(n, -1);

  std::vector<std::vector<int>> cycle_adj(n);
  for (int a = 0; a < g.arc_count(); ++a) {
    const auto [u, v] = g.arc(a);
    if (col.colour_by_arc[a] == 1) {
      cycle_adj[u].push_back(v);
      cycle_adj[v].push_back(u);
    } else {
      if (dec.match[u] != -1 || dec.match[v] != -1) return std::nullopt;
      dec.match[u] = v;
      dec.match[v] = u;
    }
  }
  for (int v = 0; v < n; ++v) {
    if (cycle_adj[v].size() != 2 || dec.match[v] == -1) return std::nullopt;
  }
  for (int v = 0; v < n; ++v) {
    if (dec.square_of[v] != -1) continue;
    std::array<int, 4> square{v, cycle_adj[v][0], -1, -1};
    for (int step = 2; step < 4; ++step) {
      const int cur = square[step - 1];
      const int prev = square[step - 2];
      const int next =
          cycle_adj[cur][0] == prev ? cycle_adj[cur][1] : cycle_adj[cur][0];
      square[step] = next;
    }
    const int last = square[3];
    const bool closes = (cycle_adj[last][0] == square[0] &&
                         cycle_adj[last][1] == square[2]) ||
                        (cycle_adj[last][1] == square[0] &&
                         cycle_adj[last][0] == square[2]);
    if (!closes) return std::nullopt;
    for (int i = 0; i < 4; ++i) {
      const int x = square[i];
      if (x < 0 || dec.square_of[x] != -1) return std::nullopt;
      dec.square_of[x] = static_cast<int>(dec.squares.size());
      dec.pos_in_square[x] = i;
    }
    dec.squares.push_back(square);
  }
  return dec;
}

// Tries to label the squares with collection indices in Z_m so that matching
// arcs go exclusively to the previous/next collection, alternating around
// each square. Signs: +1 means "partner lies in the next collection".
bool try_collection_grouping(const SquareDecomposition& dec, int m) {
  const int q = static_cast<int>(dec.squares.size());
  const int per_collection = q / m;
  std::vector<int> label(q, -1);
  std::vector<int> sign(dec.square_of.size(), 0);

  auto assign_square_signs = [&](int sq, int node, int node_sign) {
    const int base = dec.pos_in_square[node];
    for (int i = 0; i < 4; ++i) {
      const int x = dec.squares[sq][i];
      const int parity = (i - base) & 1;
      sign[x] = parity == 0 ? node_sign : -node_sign;
    }
  };

  std::vector<int> queue{0};
  label[0] = 0;
  assign_square_signs(0, dec.squares[0][0], +1);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int sq = queue[qi];
    for (int x : dec.squares[sq]) {
      const int y = dec.match[x];
      const int tq = dec.square_of[y];
      const int want = ((label[sq] + sign[x]) % m + m) % m;
      if (label[tq] == -1) {
        label[tq] = want;
        assign_square_signs(tq, y, -sign[x]);
        queue.push_back(tq);
      } else {
        if (label[tq] != want) return false;
        if (m > 2 && sign[y] != -sign[x]) return false;
      }
    }
  }
  std::vector<int> class_size(m, 0);
  for (int l : label) {
    if (l == -1) return false;
    ++class_size[l];
  }
  for (int c : class_size)
    if (c != per_collection) return false;
  return true;
}

}  // namespace

std::optional<std::pair<int, int>> detect_generalized_mgon(const CubicGraph& g) {
  const int n = g.node_count();
  if (n < 8 || n % 4 != 0) return std::nullopt;
  const PermGroup aut = automorphism_group(g);
  const ArcColouring col = arc_orbit_colouring(aut, g);
  if (col.colour_count != 2) return std::nullopt;
  if (col.orbit_sizes[0] != n || col.orbit_sizes[1] != n / 2)
    return std::nullopt;
  const std::optional<SquareDecomposition> dec = decompose_squares(g, col);
  if (!dec) return std::nullopt;
  const int q = n / 4;
  for (int c = 1, k = 2; c * 2 <= q; c *= 2, ++k) {
    if (q % c != 0) break;
    const int m = q / c;
    if (try_collection_grouping(*dec, m)) return std::make_pair(m, k);
  }
  return std::nullopt;
}

CubicGraph make_generalized_mgon_ring(int m) {
  if (m < 3) throw std::invalid_argument("ring needs at least 3 squares");
  std::vector<std::pair<int, int>> edges;
  auto node = [m](int c, int i) { return 4 * (((c % m) + m) % m) + i; };
  for (int c = 0; c < m; ++c) {
    for (int i = 0; i < 4; ++i) edges.emplace_back(node(c, i), node(c, (i + 1) % 4));
    edges.emplace_back(node(c, 0), node(c + 1, 1));
    edges.emplace_back(node(c, 2), node(c + 1, 3));
  }
  return CubicGraph::from_adjacency(4 * m,
                                    adjacency_from_edges(4 * m, edges));
}

}  // namespace ftsurf
