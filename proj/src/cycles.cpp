#include "ftsurf/cycles.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace ftsurf {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument(what);
}

}  // namespace

Cycle::Cycle(std::vector<int> nodes) {
  if (nodes.size() < 3) fail("cycle needs at least 3 nodes");
  for (int v : nodes) {
    if (v < 0) fail("negative node id in cycle");
  }
  std::vector<int> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    fail("repeated node in cycle");
  }

  const std::size_t n = nodes.size();
  const std::size_t m = static_cast<std::size_t>(
      std::min_element(nodes.begin(), nodes.end()) - nodes.begin());
  std::vector<int> fwd(n), bwd(n);
  for (std::size_t i = 0; i < n; ++i) {
    fwd[i] = nodes[(m + i) % n];
    bwd[i] = nodes[(m + n - i) % n];
  }
  nodes_ = std::min(fwd, bwd);
}

bool Cycle::contains_node(int v) const {
  return std::find(nodes_.begin(), nodes_.end(), v) != nodes_.end();
}

bool Cycle::contains_arc(int u, int v) const {
  const std::size_t n = nodes_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const int a = nodes_[i];
    const int b = nodes_[(i + 1) % n];
    if ((a == u && b == v) || (a == v && b == u)) return true;
  }
  return false;
}

std::vector<std::pair<int, int>> Cycle::arcs() const {
  std::vector<std::pair<int, int>> out;
  const std::size_t n = nodes_.size();
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int a = nodes_[i];
    const int b = nodes_[(i + 1) % n];
    out.emplace_back(std::min(a, b), std::max(a, b));
  }
  return out;
}

bool is_valid_cycle(const CubicGraph& g, const Cycle& c) {
  const auto& nodes = c.nodes();
  const std::size_t n = nodes.size();
  for (int v : nodes) {
    if (v >= g.node_count()) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!g.adjacent(nodes[i], nodes[(i + 1) % n])) return false;
  }
  return true;
}

namespace {

// Arc ids of a cycle already known valid in g.
std::vector<int> cycle_arc_ids(const CubicGraph& g, const Cycle& c) {
  std::vector<int> ids;
  const auto& nodes = c.nodes();
  const std::size_t n = nodes.size();
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back(g.arc_id(nodes[i], nodes[(i + 1) % n]));
  }
  return ids;
}

std::vector<int> arc_cover_counts(const CubicGraph& g,
                                  std::span<const Cycle> cycles) {
  std::vector<int> counts(g.arcs().size(), 0);
  for (const Cycle& c : cycles) {
    if (!is_valid_cycle(g, c)) fail("cycle is not valid in the graph");
    for (int id : cycle_arc_ids(g, c)) ++counts[id];
  }
  return counts;
}

}  // namespace

bool is_cycle_double_cover(const CubicGraph& g,
                           std::span<const Cycle> cycles) {
  const std::vector<int> counts = arc_cover_counts(g, cycles);
  return std::all_of(counts.begin(), counts.end(),
                     [](int c) { return c == 2; });
}

VertexFaithfulDiagnostic vertex_faithful_diagnostic(
    const CubicGraph& g, std::span<const Cycle> cdc) {
  if (!is_cycle_double_cover(g, cdc)) fail("not a cycle double cover");

  VertexFaithfulDiagnostic diag;

  diag.all_chordless = true;
  for (const Cycle& c : cdc) {
    const auto& w = c.nodes();
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n && diag.all_chordless; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const bool consecutive = (j == i + 1) || (i == 0 && j == n - 1);
        if (!consecutive && g.adjacent(w[i], w[j])) {
          diag.all_chordless = false;
          break;
        }
      }
    }
  }

  const std::size_t k = cdc.size();
  std::map<std::pair<std::size_t, std::size_t>, int> shared;
  for (std::size_t i = 0; i < k; ++i) {
    const auto arcs_i = cycle_arc_ids(g, cdc[i]);
    for (std::size_t j = i + 1; j < k; ++j) {
      int common = 0;
      for (int id : cycle_arc_ids(g, cdc[j])) {
        if (std::find(arcs_i.begin(), arcs_i.end(), id) != arcs_i.end()) {
          ++common;
        }
      }
      shared[{i, j}] = common;
    }
  }
  diag.pairwise_at_most_one_shared_arc = std::all_of(
      shared.begin(), shared.end(), [](const auto& e) { return e.second <= 1; });

  std::vector<std::vector<std::size_t>> through(g.node_count());
  for (std::size_t i = 0; i < k; ++i) {
    for (int v : cdc[i].nodes()) through[v].push_back(i);
  }
  diag.incident_cycles_distinct = true;
  for (const auto& list : through) {
    for (std::size_t a = 0; a < list.size(); ++a) {
      for (std::size_t b = a + 1; b < list.size(); ++b) {
        if (cdc[list[a]] == cdc[list[b]]) diag.incident_cycles_distinct = false;
      }
    }
  }

  // Triples compared by cycle value, not span position.
  std::map<Cycle, int> value_id;
  for (const Cycle& c : cdc) value_id.emplace(c, static_cast<int>(value_id.size()));
  std::set<std::vector<int>> triples;
  bool triples_distinct = true;
  for (const auto& list : through) {
    std::vector<int> triple;
    triple.reserve(list.size());
    for (std::size_t i : list) triple.push_back(value_id.at(cdc[i]));
    std::sort(triple.begin(), triple.end());
    if (!triples.insert(triple).second) triples_distinct = false;
  }
  diag.incident_triples_distinct = triples_distinct;

  return diag;
}

bool is_vertex_faithful(const CubicGraph& g, std::span<const Cycle> cdc) {
  return vertex_faithful_diagnostic(g, cdc).ok();
}

std::optional<Cycle> alpha_cycle(const Permutation& sigma,
                                 std::span<const int> seed,
                                 const CubicGraph& g) {
  const int n = g.node_count();
  if (sigma.degree() != n) fail("permutation degree does not match node count");
  for (const auto& [u, v] : g.arcs()) {
    if (!g.adjacent(sigma(u), sigma(v))) {
      fail("sigma is not an automorphism of the graph");
    }
  }
  if (seed.size() < 2) fail("seed path needs at least 2 nodes");
  for (int v : seed) {
    if (v < 0 || v >= n) fail("seed node out of range");
  }
  for (std::size_t i = 0; i + 1 < seed.size(); ++i) {
    if (!g.adjacent(seed[i], seed[i + 1])) fail("seed is not a path");
  }
  if (sigma(seed[0]) != seed.back()) fail("sigma does not map F_1 to F_n");

  const std::uint64_t ell = sigma.order();
  const std::uint64_t span_len = seed.size() - 1;
  if (ell > static_cast<std::uint64_t>(n)) return std::nullopt;
  const std::uint64_t total = span_len * ell;
  if (total > static_cast<std::uint64_t>(n)) return std::nullopt;
  if (total < 3) return std::nullopt;

  std::vector<int> work(seed.begin(), seed.end() - 1);
  std::vector<int> sequence;
  sequence.reserve(total);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (std::uint64_t i = 0; i < ell; ++i) {
    for (int& v : work) {
      v = sigma(v);
      if (seen[v]) return std::nullopt;
      seen[v] = 1;
      sequence.push_back(v);
    }
  }
  return Cycle(std::move(sequence));
}

namespace {

class PatternWalker {
public:
  PatternWalker(const CubicGraph& g, const ArcColouring& kappa,
                std::vector<int> pattern, std::set<Cycle>& out)
      : g_(g), kappa_(kappa), pattern_(std::move(pattern)), out_(out),
        used_(static_cast<std::size_t>(g.node_count()), 0) {}

  void run_from(int start, int offset) {
    start_ = start;
    offset_ = offset;
    path_.assign(1, start);
    used_[start] = 1;
    extend();
    used_[start] = 0;
  }

private:
  int colour(int u, int v) const {
    return kappa_.colour_by_arc[g_.arc_id(u, v)];
  }

  void extend() {
    const int v = path_.back();
    const int next_colour =
        pattern_[(offset_ + path_.size() - 1) % pattern_.size()];
    for (int w : g_.neighbours(v)) {
      if (colour(v, w) != next_colour) continue;
      if (w == start_) {
        if (path_.size() >= 3 && path_.size() % pattern_.size() == 0) {
          out_.insert(Cycle(path_));
        }
        continue;
      }
      if (w < start_ || used_[w]) continue;
      used_[w] = 1;
      path_.push_back(w);
      extend();
      path_.pop_back();
      used_[w] = 0;
    }
  }

  const CubicGraph& g_;
  const ArcColouring& kappa_;
  std::vector<int> pattern_;
  std::set<Cycle>& out_;
  std::vector<char> used_;
  std::vector<int> path_;
  int start_ = 0;
  int offset_ = 0;
};

void check_colouring(const CubicGraph& g, const ArcColouring& kappa) {
  if (kappa.colour_by_arc.size() != g.arcs().size()) {
    fail("colouring does not cover all arcs");
  }
  for (int c : kappa.colour_by_arc) {
    if (c < 1 || c > kappa.colour_count) fail("arc colour out of range");
  }
}

}  // namespace

std::vector<Cycle> pattern_cycles(const CubicGraph& g,
                                  const ArcColouring& kappa,
                                  std::span<const int> pattern) {
  check_colouring(g, kappa);
  if (pattern.empty()) fail("empty colour pattern");

  std::set<Cycle> found;
  const std::vector<int> forward(pattern.begin(), pattern.end());
  std::vector<int> backward(pattern.rbegin(), pattern.rend());
  for (const auto& dir : {forward, backward}) {
    PatternWalker walker(g, kappa, dir, found);
    for (int s = 0; s < g.node_count(); ++s) {
      for (std::size_t offset = 0; offset < dir.size(); ++offset) {
        walker.run_from(s, static_cast<int>(offset));
      }
    }
  }
  return {found.begin(), found.end()};
}

std::vector<Cycle> mono_coloured_cycles(const CubicGraph& g,
                                        const ArcColouring& kappa,
                                        int colour) {
  check_colouring(g, kappa);
  const int n = g.node_count();
  std::vector<std::vector<int>> nbrs(static_cast<std::size_t>(n));
  for (std::size_t id = 0; id < g.arcs().size(); ++id) {
    if (kappa.colour_by_arc[id] != colour) continue;
    const auto [u, v] = g.arc(static_cast<int>(id));
    nbrs[u].push_back(v);
    nbrs[v].push_back(u);
  }
  for (const auto& list : nbrs) {
    if (list.size() != 2) return {};
  }

  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  std::vector<Cycle> out;
  for (int s = 0; s < n; ++s) {
    if (visited[s]) continue;
    std::vector<int> trail;
    int prev = -1;
    int cur = s;
    do {
      visited[cur] = 1;
      trail.push_back(cur);
      const int next = (nbrs[cur][0] == prev) ? nbrs[cur][1] : nbrs[cur][0];
      prev = cur;
      cur = next;
    } while (cur != s);
    out.emplace_back(std::move(trail));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Cycle cycle_image(const Permutation& sigma, const Cycle& c) {
  std::vector<int> mapped;
  mapped.reserve(c.nodes().size());
  for (int v : c.nodes()) {
    if (v >= sigma.degree()) fail("permutation degree too small for cycle");
    mapped.push_back(sigma(v));
  }
  return Cycle(std::move(mapped));
}

std::vector<Cycle> cycle_orbit(const PermGroup& h, const Cycle& c) {
  std::set<Cycle> orbit{c};
  std::queue<Cycle> frontier;
  frontier.push(c);
  while (!frontier.empty()) {
    const Cycle cur = frontier.front();
    frontier.pop();
    for (const Permutation& gen : h.generators()) {
      Cycle image = cycle_image(gen, cur);
      if (orbit.insert(image).second) frontier.push(std::move(image));
    }
  }
  return {orbit.begin(), orbit.end()};
}

namespace {

struct CycleSearcher {
  const CubicGraph& g;
  std::vector<Cycle>& out;
  std::vector<char> used;
  std::vector<int> path;
  int start = 0;

  explicit CycleSearcher(const CubicGraph& graph, std::vector<Cycle>& sink)
      : g(graph), out(sink),
        used(static_cast<std::size_t>(graph.node_count()), 0) {}

  void run() {
    for (start = 0; start < g.node_count(); ++start) {
      path.assign(1, start);
      used[start] = 1;
      extend();
      used[start] = 0;
    }
  }

  void extend() {
    const int v = path.back();
    for (int w : g.neighbours(v)) {
      if (w == start) {
        // path[1] < path.back() picks one traversal direction per cycle.
        if (path.size() >= 3 && path[1] < path.back()) {
          out.emplace_back(path);
        }
        continue;
      }
      if (w < start || used[w]) continue;
      used[w] = 1;
      path.push_back(w);
      extend();
      path.pop_back();
      used[w] = 0;
    }
  }
};

}  // namespace

std::vector<Cycle> all_simple_cycles(const CubicGraph& g) {
  std::vector<Cycle> out;
  CycleSearcher searcher(g, out);
  searcher.run();
  std::sort(out.begin(), out.end(), [](const Cycle& a, const Cycle& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.nodes() < b.nodes();
  });
  return out;
}

namespace {

struct ExactCoverSearch {
  const CubicGraph& g;
  std::vector<Cycle> catalog;
  std::vector<std::vector<int>> arcs_of_cycle;
  std::vector<std::vector<int>> cycles_of_arc;
  std::vector<int> count;
  std::vector<char> chosen;
  std::vector<int> chosen_list;
  std::vector<CycleDoubleCover>& results;

  ExactCoverSearch(const CubicGraph& graph,
                   std::vector<CycleDoubleCover>& sink)
      : g(graph), results(sink) {
    catalog = all_simple_cycles(g);
    arcs_of_cycle.resize(catalog.size());
    cycles_of_arc.resize(g.arcs().size());
    for (std::size_t i = 0; i < catalog.size(); ++i) {
      arcs_of_cycle[i] = cycle_arc_ids(g, catalog[i]);
      for (int a : arcs_of_cycle[i]) {
        cycles_of_arc[a].push_back(static_cast<int>(i));
      }
    }
    count.assign(g.arcs().size(), 0);
    chosen.assign(catalog.size(), 0);
  }

  bool fits(int i) const {
    for (int a : arcs_of_cycle[i]) {
      if (count[a] >= 2) return false;
    }
    return true;
  }

  void apply(int i, int delta) {
    for (int a : arcs_of_cycle[i]) count[a] += delta;
    chosen[i] = delta > 0 ? 1 : 0;
    if (delta > 0) {
      chosen_list.push_back(i);
    } else {
      chosen_list.pop_back();
    }
  }

  void search() {
    int branch_arc = -1;
    int branch_count = 3;
    for (std::size_t a = 0; a < count.size(); ++a) {
      if (count[a] < branch_count) {
        branch_count = count[a];
        branch_arc = static_cast<int>(a);
      }
    }
    if (branch_count == 2) {
      CycleDoubleCover cdc;
      cdc.reserve(chosen_list.size());
      for (int i : chosen_list) cdc.push_back(catalog[i]);
      std::sort(cdc.begin(), cdc.end());
      results.push_back(std::move(cdc));
      return;
    }

    const auto& candidates = cycles_of_arc[branch_arc];
    if (branch_count == 1) {
      for (int i : candidates) {
        if (chosen[i] || !fits(i)) continue;
        apply(i, 1);
        search();
        apply(i, -1);
      }
      return;
    }
    for (std::size_t p = 0; p < candidates.size(); ++p) {
      const int i = candidates[p];
      if (chosen[i] || !fits(i)) continue;
      apply(i, 1);
      for (std::size_t q = p + 1; q < candidates.size(); ++q) {
        const int j = candidates[q];
        if (chosen[j] || !fits(j)) continue;
        apply(j, 1);
        search();
        apply(j, -1);
      }
      apply(i, -1);
    }
  }
};

}  // namespace

std::vector<CycleDoubleCover> brute_force_cdcs(const CubicGraph& g,
                                               bool up_to_iso, int node_cap) {
  if (g.node_count() > node_cap) {
    throw CapExceededError("graph has " + std::to_string(g.node_count()) +
                           " nodes, above the " + std::to_string(node_cap) +
                           "-node cap for exhaustive cycle double cover search");
  }
  std::vector<CycleDoubleCover> raw;
  ExactCoverSearch searcher(g, raw);
  searcher.search();
  std::sort(raw.begin(), raw.end());
  if (!up_to_iso) return raw;
  return reduce_cdcs_up_to_iso(automorphism_group(g), raw);
}

std::vector<CycleDoubleCover> reduce_cdcs_up_to_iso(
    const PermGroup& aut, std::span<const CycleDoubleCover> cdcs) {
  std::set<CycleDoubleCover> reps;
  std::set<CycleDoubleCover> visited;
  for (const CycleDoubleCover& cdc : cdcs) {
    CycleDoubleCover normal = cdc;
    std::sort(normal.begin(), normal.end());
    if (visited.contains(normal)) continue;

    std::set<CycleDoubleCover> orbit{normal};
    std::queue<CycleDoubleCover> frontier;
    frontier.push(normal);
    while (!frontier.empty()) {
      const CycleDoubleCover cur = frontier.front();
      frontier.pop();
      for (const Permutation& gen : aut.generators()) {
        CycleDoubleCover image;
        image.reserve(cur.size());
        for (const Cycle& c : cur) image.push_back(cycle_image(gen, c));
        std::sort(image.begin(), image.end());
        if (orbit.insert(image).second) frontier.push(std::move(image));
      }
    }
    reps.insert(*orbit.begin());
    visited.insert(orbit.begin(), orbit.end());
  }
  return {reps.begin(), reps.end()};
}

std::string serialize_cdc(std::span<const Cycle> cdc) {
  std::ostringstream out;
  for (const Cycle& c : cdc) {
    const auto& nodes = c.nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (i > 0) out << ',';
      out << nodes[i] + 1;
    }
    out << '\n';
  }
  return out.str();
}

CycleDoubleCover parse_cdc(const std::string& text) {
  CycleDoubleCover out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<int> nodes;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      std::size_t pos = 0;
      int value = 0;
      try {
        value = std::stoi(field, &pos);
      } catch (const std::exception&) {
        fail("bad node id in cycle line: " + field);
      }
      if (field.find_first_not_of(" \t\r", pos) != std::string::npos) {
        fail("trailing characters in cycle line: " + field);
      }
      if (value < 1) fail("node ids are 1-based");
      nodes.push_back(value - 1);
    }
    out.emplace_back(std::move(nodes));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ftsurf
