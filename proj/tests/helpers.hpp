#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ftsurf/cubic_graph.hpp"
#include "ftsurf/permutation.hpp"
#include "ftsurf/surface.hpp"

namespace ftsurf::testing {

inline CubicGraph complete_k4() {
  const std::vector<std::pair<int, int>> edges{{1, 2}, {1, 3}, {1, 4},
                                               {2, 3}, {2, 4}, {3, 4}};
  return CubicGraph::from_edge_list(4, edges);
}

inline CubicGraph complete_bipartite_k33() {
  std::vector<std::pair<int, int>> edges;
  for (int u = 1; u <= 3; ++u)
    for (int v = 4; v <= 6; ++v) edges.emplace_back(u, v);
  return CubicGraph::from_edge_list(6, edges);
}

// Two n-cycles 1..n and n+1..2n joined by rungs i -- n+i.
inline CubicGraph prism(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= n; ++i) {
    edges.emplace_back(i, i % n + 1);
    edges.emplace_back(n + i, n + i % n + 1);
    edges.emplace_back(i, n + i);
  }
  return CubicGraph::from_edge_list(2 * n, edges);
}

// 2n-cycle with antipodal chords.
inline CubicGraph moebius_ladder(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= 2 * n; ++i) edges.emplace_back(i, i % (2 * n) + 1);
  for (int i = 1; i <= n; ++i) edges.emplace_back(i, i + n);
  return CubicGraph::from_edge_list(2 * n, edges);
}

// Circulant C_n(step, n/2); cubic for even n when 0 < step < n/2.
inline CubicGraph circulant(int n, int step) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    edges.emplace_back(i + 1, (i + step) % n + 1);
    if (i < n / 2) edges.emplace_back(i + 1, (i + n / 2) % n + 1);
  }
  return CubicGraph::from_edge_list(n, edges);
}

inline CubicGraph generalized_petersen(int n, int k) {
  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<int, int>> inner;
  for (int i = 0; i < n; ++i) {
    edges.emplace_back(i + 1, (i + 1) % n + 1);
    edges.emplace_back(i + 1, n + i + 1);
    const int j = (i + k) % n;
    inner.emplace(std::min(i, j), std::max(i, j));
  }
  for (const auto& [i, j] : inner) edges.emplace_back(n + i + 1, n + j + 1);
  return CubicGraph::from_edge_list(2 * n, edges);
}

inline CubicGraph petersen() { return generalized_petersen(5, 2); }

// Heawood graph: bipartite incidence graph of the Fano plane.
inline CubicGraph heawood() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 14; ++i) edges.emplace_back(i + 1, (i + 1) % 14 + 1);
  for (int i = 1; i <= 14; i += 2) edges.emplace_back(i, (i + 4) % 14 + 1);
  return CubicGraph::from_edge_list(14, edges);
}

// Suspension over the n-cycle: rim 1..n, apexes n+1 and n+2.
inline SimplicialSurface suspension(int n) {
  std::vector<std::array<int, 3>> faces;
  for (int apex = n + 1; apex <= n + 2; ++apex)
    for (int i = 1; i <= n; ++i) {
      std::array<int, 3> f{i, i % n + 1, apex};
      std::sort(f.begin(), f.end());
      faces.push_back(f);
    }
  return SimplicialSurface::validate(faces);
}

inline SimplicialSurface tetrahedron() {
  return SimplicialSurface::validate(
      std::vector<std::array<int, 3>>{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
}

inline std::string fixture_path(const std::string& name) {
  return std::string(FTSURF_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline SimplicialSurface load_fixture(const std::string& name) {
  return parse_surface(read_file(fixture_path(name + ".surf")));
}

// perm({2,3,1}) is the map 1->2, 2->3, 3->1 on points 0..2 (1-based images).
inline Permutation perm(const std::vector<int>& one_based_images) {
  std::vector<int> images(one_based_images.size());
  for (std::size_t i = 0; i < images.size(); ++i)
    images[i] = one_based_images[i] - 1;
  return Permutation(std::move(images));
}

// Deterministic 64-bit LCG for property tests.
class Lcg {
 public:
  explicit Lcg(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_ >> 11;
  }

  // Uniform in [0, n).
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

 private:
  std::uint64_t state_;
};

inline Permutation random_permutation(int degree, Lcg& rng) {
  std::vector<int> images(static_cast<std::size_t>(degree));
  std::iota(images.begin(), images.end(), 0);
  for (int i = degree - 1; i > 0; --i)
    std::swap(images[static_cast<std::size_t>(i)],
              images[static_cast<std::size_t>(rng.below(i + 1))]);
  return Permutation(std::move(images));
}

// Relabels nodes of g by p (node v becomes p(v)).
inline CubicGraph relabel(const CubicGraph& g, const Permutation& p) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& [u, v] : g.arcs()) edges.emplace_back(p(u) + 1, p(v) + 1);
  return CubicGraph::from_edge_list(g.node_count(), edges);
}

}  // namespace ftsurf::testing
