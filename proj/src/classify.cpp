#include "ftsurf/classify.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

namespace ftsurf {

namespace {

struct SubtypeInfo {
  Subtype tag;
  int v;
  int s;
  int index;  // 0 for single-type families
  const char* name;
};

constexpr std::array<SubtypeInfo, kSubtypeCount> kSubtypeTable{{
    {Subtype::S31, 3, 1, 0, "(3,1)"},
    {Subtype::S22, 2, 2, 0, "(2,2)"},
    {Subtype::S21_1, 2, 1, 1, "(2,1).1"},
    {Subtype::S21_2, 2, 1, 2, "(2,1).2"},
    {Subtype::S21_3, 2, 1, 3, "(2,1).3"},
    {Subtype::S11_1, 1, 1, 1, "(1,1).1"},
    {Subtype::S11_2, 1, 1, 2, "(1,1).2"},
    {Subtype::S11_3, 1, 1, 3, "(1,1).3"},
    {Subtype::S11_4, 1, 1, 4, "(1,1).4"},
    {Subtype::S12, 1, 2, 0, "(1,2)"},
    {Subtype::S13_1, 1, 3, 1, "(1,3).1"},
    {Subtype::S13_2, 1, 3, 2, "(1,3).2"},
    {Subtype::S16, 1, 6, 0, "(1,6)"},
}};

const SubtypeInfo& info_of(Subtype s) {
  return kSubtypeTable[static_cast<std::size_t>(s)];
}

}  // namespace

std::span<const Subtype> all_subtypes() {
  static const std::array<Subtype, kSubtypeCount> all = [] {
    std::array<Subtype, kSubtypeCount> a{};
    for (int i = 0; i < kSubtypeCount; ++i) a[i] = kSubtypeTable[i].tag;
    return a;
  }();
  return all;
}

int census_column(Subtype s) { return static_cast<int>(s); }

std::string to_string(Subtype s) { return info_of(s).name; }

std::optional<Subtype> parse_subtype(std::string_view text) {
  for (const SubtypeInfo& info : kSubtypeTable)
    if (text == info.name) return info.tag;
  return std::nullopt;
}

VertexFaceType vertex_face_type_of(Subtype s) {
  const SubtypeInfo& info = info_of(s);
  VertexFaceType vf;
  vf.vertex_orbits = info.v;
  vf.face_stabilizer = info.s;
  if (info.index > 0) vf.subtype_index = info.index;
  return vf;
}

namespace {

using RawCandidate = std::pair<CycleDoubleCover, Subtype>;

constexpr std::array<std::array<int, 3>, 6> kPerms3{{{1, 2, 3},
                                                     {1, 3, 2},
                                                     {2, 1, 3},
                                                     {2, 3, 1},
                                                     {3, 1, 2},
                                                     {3, 2, 1}}};

// Lazily shared automorphism data for one constructor invocation.
class SearchContext {
 public:
  SearchContext(const CubicGraph& g, const PermGroup& h,
                const ConstructOptions& opts)
      : g_(g), h_(h), opts_(opts) {}

  const CubicGraph& graph() const { return g_; }
  const PermGroup& subgroup() const { return h_; }
  const ConstructOptions& options() const { return opts_; }

  bool subgroup_matches(std::uint64_t order_factor) {
    return h_.order() ==
               order_factor * static_cast<std::uint64_t>(g_.node_count()) &&
           static_cast<int>(h_.orbit_of(0).size()) == g_.node_count();
  }

  const std::vector<Permutation>& aut_elements() {
    if (!aut_elements_)
      aut_elements_ = automorphism_group(g_).elements(opts_.aut_element_cap);
    return *aut_elements_;
  }

  const std::vector<Permutation>& h_elements() {
    if (!h_elements_) h_elements_ = h_.elements(opts_.aut_element_cap);
    return *h_elements_;
  }

  // Candidates for sigma: H by default, all of Aut(g) when widened.
  const std::vector<Permutation>& sigma_domain() {
    return opts_.wide_pi_search ? aut_elements() : h_elements();
  }

  // Candidates for pi: the setwise stabilizer of the cover inside Aut(g),
  // all of Aut(g) when widened.
  std::vector<const Permutation*> pi_domain(const CycleDoubleCover& cover) {
    std::vector<const Permutation*> out;
    for (const Permutation& e : aut_elements())
      if (opts_.wide_pi_search || stabilizes(e, cover)) out.push_back(&e);
    return out;
  }

 private:
  static bool stabilizes(const Permutation& e, const CycleDoubleCover& cover) {
    CycleDoubleCover image;
    image.reserve(cover.size());
    for (const Cycle& c : cover) image.push_back(cycle_image(e, c));
    std::sort(image.begin(), image.end());
    return image == cover;
  }

  const CubicGraph& g_;
  const PermGroup& h_;
  const ConstructOptions& opts_;
  std::optional<std::vector<Permutation>> aut_elements_;
  std::optional<std::vector<Permutation>> h_elements_;
};

// Distinct covers in discovery order; the first subtype assigned wins.
class CandidateSet {
 public:
  bool contains(const CycleDoubleCover& cover) const {
    return seen_.count(cover) > 0;
  }

  void add(CycleDoubleCover cover, Subtype subtype) {
    if (seen_.insert(cover).second)
      list_.emplace_back(std::move(cover), subtype);
  }

  std::vector<RawCandidate> take() { return std::move(list_); }

 private:
  std::set<CycleDoubleCover> seen_;
  std::vector<RawCandidate> list_;
};

// base cycles plus the H-orbit of alpha, when vertex-faithful.
std::optional<CycleDoubleCover> assemble_cover(const CubicGraph& g,
                                               const PermGroup& h,
                                               const Cycle& alpha,
                                               std::span<const Cycle> base) {
  std::set<Cycle> set(base.begin(), base.end());
  for (Cycle& c : cycle_orbit(h, alpha)) set.insert(std::move(c));
  CycleDoubleCover cover(set.begin(), set.end());
  if (!is_cycle_double_cover(g, cover)) return std::nullopt;
  if (!is_vertex_faithful(g, cover)) return std::nullopt;
  return cover;
}

// Union of the pattern cycle sets, when vertex-faithful.
std::optional<CycleDoubleCover> pattern_cover(
    const CubicGraph& g, const ArcColouring& kappa,
    std::span<const std::vector<int>> patterns) {
  std::set<Cycle> set;
  for (const std::vector<int>& p : patterns)
    for (Cycle& c : pattern_cycles(g, kappa, p)) set.insert(std::move(c));
  CycleDoubleCover cover(set.begin(), set.end());
  if (!is_cycle_double_cover(g, cover)) return std::nullopt;
  if (!is_vertex_faithful(g, cover)) return std::nullopt;
  return cover;
}

std::vector<int> remap_pattern(std::span<const int> pattern,
                               const std::array<int, 3>& tau) {
  std::vector<int> out(pattern.begin(), pattern.end());
  for (int& c : out) c = tau[static_cast<std::size_t>(c - 1)];
  return out;
}

// Simple paths of `arcs` arcs; a nonempty `word` prescribes the arc colours.
std::vector<std::vector<int>> seed_paths(const CubicGraph& g, int arcs,
                                         const ArcColouring* kappa,
                                         std::span<const int> word) {
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  std::vector<char> used(static_cast<std::size_t>(g.node_count()), 0);
  auto extend = [&](auto&& self) -> void {
    const std::size_t i = path.size() - 1;
    if (i == static_cast<std::size_t>(arcs)) {
      out.push_back(path);
      return;
    }
    for (int w : g.neighbours(path.back())) {
      if (used[static_cast<std::size_t>(w)]) continue;
      if (!word.empty() &&
          kappa->colour_by_arc[static_cast<std::size_t>(
              g.arc_id(path.back(), w))] != word[i])
        continue;
      used[static_cast<std::size_t>(w)] = 1;
      path.push_back(w);
      self(self);
      path.pop_back();
      used[static_cast<std::size_t>(w)] = 0;
    }
  };
  for (int v = 0; v < g.node_count(); ++v) {
    path.assign(1, v);
    std::fill(used.begin(), used.end(), 0);
    used[static_cast<std::size_t>(v)] = 1;
    extend(extend);
  }
  return out;
}

// partner[v] = other end of v's unique colour-2 arc; empty when colour 2 is
// not a perfect matching.
std::vector<int> matching_partners(const CubicGraph& g,
                                   const ArcColouring& kappa) {
  std::vector<int> partner(static_cast<std::size_t>(g.node_count()), -1);
  for (std::size_t id = 0; id < g.arcs().size(); ++id) {
    if (kappa.colour_by_arc[id] != 2) continue;
    const auto [u, v] = g.arcs()[id];
    if (partner[static_cast<std::size_t>(u)] != -1 ||
        partner[static_cast<std::size_t>(v)] != -1)
      return {};
    partner[static_cast<std::size_t>(u)] = v;
    partner[static_cast<std::size_t>(v)] = u;
  }
  for (int p : partner)
    if (p == -1) return {};
  return partner;
}

// True when some pi fixing seed.front() -> seed.back() rebuilds target.
bool exists_pi(SearchContext& ctx, const CycleDoubleCover& cover,
               std::span<const int> seed, const Cycle& target) {
  for (const Permutation* pi : ctx.pi_domain(cover)) {
    if ((*pi)(seed.front()) != seed.back()) continue;
    const std::optional<Cycle> a = alpha_cycle(*pi, seed, ctx.graph());
    if (a && *a == target) return true;
  }
  return false;
}

std::vector<RawCandidate> raw_31(SearchContext& ctx) {
  CandidateSet found;
  if (!ctx.subgroup_matches(1)) return found.take();
  const ArcColouring kappa = arc_orbit_colouring(ctx.subgroup(), ctx.graph());
  if (kappa.colour_count != 3) return found.take();
  // All bi-coloured cycles: pattern (i,j) over the three colour pairs.
  const std::vector<std::vector<int>> patterns{{1, 2}, {1, 3}, {2, 3}};
  if (auto cover = pattern_cover(ctx.graph(), kappa, patterns))
    found.add(std::move(*cover), Subtype::S31);
  return found.take();
}

std::vector<RawCandidate> raw_22(SearchContext& ctx) {
  CandidateSet found;
  if (!ctx.subgroup_matches(2)) return found.take();
  const CubicGraph& g = ctx.graph();
  const ArcColouring kappa = arc_orbit_colouring(ctx.subgroup(), g);
  if (kappa.colour_count != 2) return found.take();
  const std::vector<Cycle> mono = mono_coloured_cycles(g, kappa, 1);
  if (mono.empty()) return found.take();
  const std::vector<int> partner = matching_partners(g, kappa);
  if (partner.empty()) return found.take();
  for (std::size_t id = 0; id < g.arcs().size(); ++id) {
    if (kappa.colour_by_arc[id] != 1) continue;
    const auto [u, v] = g.arcs()[id];
    for (const auto& [f1, f2] : {std::pair{u, v}, std::pair{v, u}}) {
      const int fm = partner[static_cast<std::size_t>(f1)];
      if (fm == f2) continue;
      const std::array<int, 3> seed{fm, f1, f2};
      for (const Permutation& sigma : ctx.sigma_domain()) {
        if (sigma(fm) != f2) continue;
        const std::optional<Cycle> a = alpha_cycle(sigma, seed, g);
        if (!a) continue;
        if (auto cover = assemble_cover(g, ctx.subgroup(), *a, mono))
          found.add(std::move(*cover), Subtype::S22);
      }
    }
  }
  return found.take();
}

std::vector<RawCandidate> raw_21(SearchContext& ctx) {
  CandidateSet found;
  if (!ctx.subgroup_matches(1)) return found.take();
  const CubicGraph& g = ctx.graph();
  const ArcColouring kappa = arc_orbit_colouring(ctx.subgroup(), g);
  if (kappa.colour_count == 2) {
    const std::vector<Cycle> mono = mono_coloured_cycles(g, kappa, 1);
    if (mono.empty()) return found.take();
    constexpr std::array<int, 4> word{2, 1, 2, 1};
    for (const std::vector<int>& seed : seed_paths(g, 4, &kappa, word)) {
      for (const Permutation& sigma : ctx.sigma_domain()) {
        if (sigma(seed.front()) != seed.back()) continue;
        const std::optional<Cycle> a = alpha_cycle(sigma, seed, g);
        if (!a) continue;
        auto cover = assemble_cover(g, ctx.subgroup(), *a, mono);
        if (!cover || found.contains(*cover)) continue;
        const std::span<const int> prefix(seed.data(), 3);
        const Subtype st = exists_pi(ctx, *cover, prefix, *a)
                               ? Subtype::S21_1
                               : Subtype::S21_2;
        found.add(std::move(*cover), st);
      }
    }
  } else if (kappa.colour_count == 3) {
    constexpr std::array<int, 2> pat12{1, 2};
    constexpr std::array<int, 4> pat3132{3, 1, 3, 2};
    for (const std::array<int, 3>& tau : kPerms3) {
      const std::vector<std::vector<int>> patterns{
          remap_pattern(pat12, tau), remap_pattern(pat3132, tau)};
      if (auto cover = pattern_cover(g, kappa, patterns))
        found.add(std::move(*cover), Subtype::S21_3);
    }
  }
  return found.take();
}

std::vector<RawCandidate> raw_11(SearchContext& ctx) {
  CandidateSet found;
  if (!ctx.subgroup_matches(1)) return found.take();
  const CubicGraph& g = ctx.graph();
  const ArcColouring kappa = arc_orbit_colouring(ctx.subgroup(), g);
  if (kappa.colour_count == 3) {
    constexpr std::array<int, 3> pat123{1, 2, 3};
    constexpr std::array<int, 6> pat123132{1, 2, 3, 1, 3, 2};
    for (const std::array<int, 3>& tau : kPerms3) {
      const std::vector<std::vector<int>> patterns{remap_pattern(pat123, tau)};
      if (auto cover = pattern_cover(g, kappa, patterns))
        found.add(std::move(*cover), Subtype::S11_1);
    }
    for (const std::array<int, 3>& tau : kPerms3) {
      const std::vector<std::vector<int>> patterns{
          remap_pattern(pat123132, tau)};
      if (auto cover = pattern_cover(g, kappa, patterns))
        found.add(std::move(*cover), Subtype::S11_2);
    }
  } else if (kappa.colour_count == 2) {
    // All umbrellas share one vertex orbit, so the cover is the alpha orbit
    // alone; mono-coloured cycles would add a second orbit.
    constexpr std::array<int, 6> word{2, 1, 1, 2, 1, 1};
    for (const std::vector<int>& seed : seed_paths(g, 6, &kappa, word)) {
      for (const Permutation& sigma : ctx.sigma_domain()) {
        if (sigma(seed.front()) != seed.back()) continue;
        const std::optional<Cycle> a = alpha_cycle(sigma, seed, g);
        if (!a) continue;
        auto cover = assemble_cover(g, ctx.subgroup(), *a, {});
        if (!cover || found.contains(*cover)) continue;
        const std::span<const int> prefix(seed.data(), 4);
        const Subtype st = exists_pi(ctx, *cover, prefix, *a)
                               ? Subtype::S11_3
                               : Subtype::S11_4;
        found.add(std::move(*cover), st);
      }
    }
  }
  return found.take();
}

std::vector<RawCandidate> raw_12(SearchContext& ctx) {
  CandidateSet found;
  if (!ctx.subgroup_matches(2)) return found.take();
  const CubicGraph& g = ctx.graph();
  const ArcColouring kappa = arc_orbit_colouring(ctx.subgroup(), g);
  if (kappa.colour_count != 2) return found.take();
  constexpr std::array<int, 3> word{2, 1, 1};
  for (const std::vector<int>& seed : seed_paths(g, 3, &kappa, word)) {
    for (const Permutation& sigma : ctx.sigma_domain()) {
      if (sigma(seed.front()) != seed.back()) continue;
      const std::optional<Cycle> a = alpha_cycle(sigma, seed, g);
      if (!a) continue;
      if (auto cover = assemble_cover(g, ctx.subgroup(), *a, {}))
        found.add(std::move(*cover), Subtype::S12);
    }
  }
  return found.take();
}

std::vector<RawCandidate> raw_13(SearchContext& ctx) {
  CandidateSet found;
  if (!ctx.subgroup_matches(3)) return found.take();
  const CubicGraph& g = ctx.graph();
  for (const std::vector<int>& seed : seed_paths(g, 2, nullptr, {})) {
    for (const Permutation& sigma : ctx.sigma_domain()) {
      if (sigma(seed.front()) != seed.back()) continue;
      const std::optional<Cycle> a = alpha_cycle(sigma, seed, g);
      if (!a) continue;
      auto cover = assemble_cover(g, ctx.subgroup(), *a, {});
      if (!cover || found.contains(*cover)) continue;
      const std::span<const int> prefix(seed.data(), 2);
      const Subtype st = exists_pi(ctx, *cover, prefix, *a) ? Subtype::S13_1
                                                            : Subtype::S13_2;
      found.add(std::move(*cover), st);
    }
  }
  return found.take();
}

std::vector<RawCandidate> raw_16(SearchContext& ctx) {
  CandidateSet found;
  if (!ctx.subgroup_matches(6)) return found.take();
  const CubicGraph& g = ctx.graph();
  for (const std::vector<int>& seed : seed_paths(g, 1, nullptr, {})) {
    for (const Permutation& sigma : ctx.sigma_domain()) {
      if (sigma(seed.front()) != seed.back()) continue;
      const std::optional<Cycle> a = alpha_cycle(sigma, seed, g);
      if (!a) continue;
      if (auto cover = assemble_cover(g, ctx.subgroup(), *a, {}))
        found.add(std::move(*cover), Subtype::S16);
    }
  }
  return found.take();
}

std::vector<Construction> finalize(SearchContext& ctx,
                                   std::vector<RawCandidate> raw) {
  std::vector<Construction> out;
  std::set<std::string> forms;
  for (RawCandidate& cand : raw) {
    SimplicialSurface x = surface_from_cdc(ctx.graph(), cand.first);
    if (!verify_construction(ctx.graph(), ctx.subgroup(), cand.first, x,
                             cand.second, ctx.options()))
      continue;
    if (!forms.insert(canonical_form(x)).second) continue;
    out.push_back(
        Construction{std::move(cand.first), std::move(x), cand.second});
  }
  return out;
}

}  // namespace

std::vector<Construction> construct_31(const CubicGraph& g, const PermGroup& h,
                                       const ConstructOptions& opts) {
  SearchContext ctx(g, h, opts);
  return finalize(ctx, raw_31(ctx));
}

std::vector<Construction> construct_22(const CubicGraph& g, const PermGroup& h,
                                       const ConstructOptions& opts) {
  SearchContext ctx(g, h, opts);
  return finalize(ctx, raw_22(ctx));
}

std::vector<Construction> construct_21(const CubicGraph& g, const PermGroup& h,
                                       const ConstructOptions& opts) {
  SearchContext ctx(g, h, opts);
  return finalize(ctx, raw_21(ctx));
}

std::vector<Construction> construct_11(const CubicGraph& g, const PermGroup& h,
                                       const ConstructOptions& opts) {
  SearchContext ctx(g, h, opts);
  return finalize(ctx, raw_11(ctx));
}

std::vector<Construction> construct_12(const CubicGraph& g, const PermGroup& h,
                                       const ConstructOptions& opts) {
  SearchContext ctx(g, h, opts);
  return finalize(ctx, raw_12(ctx));
}

std::vector<Construction> construct_13(const CubicGraph& g, const PermGroup& h,
                                       const ConstructOptions& opts) {
  SearchContext ctx(g, h, opts);
  return finalize(ctx, raw_13(ctx));
}

std::vector<Construction> construct_16(const CubicGraph& g, const PermGroup& h,
                                       const ConstructOptions& opts) {
  SearchContext ctx(g, h, opts);
  return finalize(ctx, raw_16(ctx));
}

Subtype subtype_of(const SimplicialSurface& x, const ConstructOptions& opts) {
  const VertexFaceType vf = vertex_face_type(x);
  const int v = vf.vertex_orbits;
  const int s = vf.face_stabilizer;
  if (v == 3) return Subtype::S31;
  if (v == 2 && s == 2) return Subtype::S22;
  if (v == 1 && s == 2) return Subtype::S12;
  if (v == 1 && s == 6) return Subtype::S16;

  // Indexed families: re-derive the type conditions on the vertex-defining
  // cover under the full lambda image.
  const CubicGraph g = face_graph(x);
  const PermGroup h = lambda_image(x, opts.aut_element_cap);
  SearchContext ctx(g, h, opts);
  std::vector<RawCandidate> raw;
  if (v == 2 && s == 1)
    raw = raw_21(ctx);
  else if (v == 1 && s == 1)
    raw = raw_11(ctx);
  else if (v == 1 && s == 3)
    raw = raw_13(ctx);
  else
    throw std::logic_error("unexpected vertex-face type");

  CycleDoubleCover target = vertex_defining_cdc(x);
  std::sort(target.begin(), target.end());
  for (const RawCandidate& cand : raw)
    if (cand.first == target) return cand.second;
  throw std::logic_error("type index underivable from the vertex-defining cover");
}

bool verify_construction(const CubicGraph& g, const PermGroup& h,
                         std::span<const Cycle> cdc, const SimplicialSurface& x,
                         Subtype claimed, const ConstructOptions& opts) {
  const int n = g.node_count();
  CycleDoubleCover cover(cdc.begin(), cdc.end());
  std::sort(cover.begin(), cover.end());

  // Node v's face is the triple of 1-based indices of the cycles through v.
  std::vector<std::array<int, 3>> triple(static_cast<std::size_t>(n),
                                         {0, 0, 0});
  std::vector<int> hits(static_cast<std::size_t>(n), 0);
  for (std::size_t ci = 0; ci < cover.size(); ++ci) {
    for (int node : cover[ci].nodes()) {
      if (node < 0 || node >= n) return false;
      const auto ni = static_cast<std::size_t>(node);
      if (hits[ni] >= 3) return false;
      triple[ni][static_cast<std::size_t>(hits[ni]++)] =
          static_cast<int>(ci) + 1;
    }
  }
  const auto& faces = x.faces();
  if (static_cast<int>(faces.size()) != n) return false;
  std::vector<int> rho(static_cast<std::size_t>(n));
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    const auto vi = static_cast<std::size_t>(v);
    if (hits[vi] != 3) return false;
    std::array<int, 3> f = triple[vi];
    std::sort(f.begin(), f.end());
    const auto it = std::lower_bound(faces.begin(), faces.end(), f);
    if (it == faces.end() || *it != f) return false;
    const auto idx = static_cast<std::size_t>(it - faces.begin());
    if (used[idx]) return false;
    used[idx] = 1;
    rho[vi] = static_cast<int>(idx);
  }
  const Permutation r{std::vector<int>(rho)};
  const Permutation rinv = r.inverse();

  const PermGroup lambda = lambda_image(x, opts.aut_element_cap);
  if (lambda.order() != h.order()) return false;
  for (const Permutation& gen : h.generators())
    if (!lambda.contains(r * gen * rinv)) return false;
  return subtype_of(x, opts) == claimed;
}

ClassificationReport classify_graph(const CubicGraph& g,
                                    const ClassifyOptions& opts) {
  ClassificationReport report;
  const int n = g.node_count();
  const PermGroup aut = automorphism_group(g);
  if (static_cast<int>(aut.orbit_of(0).size()) != n) {
    report.skip_reason = "not node-transitive";
    return report;
  }
  if (const auto mgon = detect_generalized_mgon(g)) {
    const auto [m, k] = *mgon;
    if (m >= (1 << k)) {
      report.skip_reason = "generalized m-gon obstruction";
      return report;
    }
  }
  if (aut.order_exceeds(opts.max_aut_order)) {
    report.skip_reason = "group too large";
    return report;
  }

  const auto base = static_cast<std::uint64_t>(n);
  const std::array<std::uint64_t, 4> targets{base, 2 * base, 3 * base,
                                             6 * base};
  const auto batches =
      subgroups_up_to_conjugacy(aut, targets, opts.max_aut_order);

  const ConstructOptions copts{opts.wide_pi_search, opts.aut_element_cap};
  const std::string graph_id = canonical_form(g);
  std::vector<ConstructionResult> results;

  for (std::size_t ti = 0; ti < targets.size(); ++ti) {
    for (const PermGroup& h : batches[ti]) {
      if (static_cast<int>(h.orbit_of(0).size()) != n) continue;
      std::vector<Construction> built;
      const auto append = [&built](std::vector<Construction> more) {
        for (Construction& c : more) built.push_back(std::move(c));
      };
      switch (ti) {
        case 0:
          append(construct_31(g, h, copts));
          append(construct_21(g, h, copts));
          append(construct_11(g, h, copts));
          break;
        case 1:
          append(construct_22(g, h, copts));
          append(construct_12(g, h, copts));
          break;
        case 2:
          append(construct_13(g, h, copts));
          break;
        case 3:
          append(construct_16(g, h, copts));
          break;
      }
      std::map<Subtype, std::vector<Construction>> by_type;
      for (Construction& c : built)
        by_type[c.subtype].push_back(std::move(c));
      for (auto& [st, list] : by_type)
        results.push_back(
            ConstructionResult{graph_id, h, st, std::move(list)});
    }
  }

  // Dedupe isomorphic surfaces across results; first occurrence wins.
  std::set<std::string> seen;
  for (ConstructionResult& res : results) {
    std::erase_if(res.surfaces, [&seen](const Construction& c) {
      return !seen.insert(canonical_form(c.surface)).second;
    });
  }
  std::erase_if(results,
                [](const ConstructionResult& r) { return r.surfaces.empty(); });

  std::stable_sort(results.begin(), results.end(),
                   [](const ConstructionResult& a,
                      const ConstructionResult& b) {
                     return census_column(a.subtype) < census_column(b.subtype);
                   });
  report.results = std::move(results);
  return report;
}

}  // namespace ftsurf
