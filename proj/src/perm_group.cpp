#include "ftsurf/perm_group.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace ftsurf {

namespace {

// Returns true when a*b overflows 64 bits.
bool mul_overflows(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
  if (a != 0 && b > UINT64_MAX / a) return true;
  out = a * b;
  return false;
}

int pick_base_point(const Permutation& p, const std::vector<int>& used) {
  for (int x = 0; x < p.degree(); ++x) {
    if (p(x) != x && std::find(used.begin(), used.end(), x) == used.end())
      return x;
  }
  return -1;
}

}  // namespace

PermGroup PermGroup::trivial(int degree) {
  return from_generators({}, degree);
}

void PermGroup::rebuild_level(std::size_t idx) {
  Level& lv = levels_[idx];
  lv.orbit.clear();
  lv.transversal.clear();
  lv.orbit_pos.assign(degree_, -1);
  lv.orbit.push_back(lv.base_point);
  lv.transversal.push_back(Permutation::identity(degree_));
  lv.orbit_pos[lv.base_point] = 0;
  for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
    const int p = lv.orbit[k];
    for (const Permutation& s : lv.gens) {
      const int q = s(p);
      if (lv.orbit_pos[q] == -1) {
        lv.orbit_pos[q] = static_cast<int>(lv.orbit.size());
        lv.orbit.push_back(q);
        lv.transversal.push_back(s * lv.transversal[k]);
      }
    }
  }
}

std::pair<Permutation, std::size_t> PermGroup::sift(const Permutation& p,
                                                    std::size_t from) const {
  Permutation g = p;
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const Level& lv = levels_[i];
    const int q = g(lv.base_point);
    const int pos = lv.orbit_pos[q];
    if (pos == -1) return {std::move(g), i};
    g = lv.transversal[pos].inverse() * g;
  }
  return {std::move(g), levels_.size()};
}

// Places `g` as a strong generator at levels 0..stop, creating a level at the
// end of the chain when the residue fixes every existing base point.
void PermGroup::extend(const Permutation& g, std::size_t stop) {
  if (stop == levels_.size()) {
    std::vector<int> used;
    used.reserve(levels_.size());
    for (const Level& lv : levels_) used.push_back(lv.base_point);
    Level lv;
    lv.base_point = pick_base_point(g, used);
    levels_.push_back(std::move(lv));
  }
  for (std::size_t l = 0; l <= stop; ++l) {
    levels_[l].gens.push_back(g);
    rebuild_level(l);
  }
}

PermGroup PermGroup::from_generators(std::vector<Permutation> gens, int degree,
                                     std::span<const int> base_hint) {
  if (degree < 0) throw std::invalid_argument("negative degree");
  for (const Permutation& p : gens) {
    if (p.degree() != degree)
      throw std::invalid_argument("generator degree mismatch");
  }
  PermGroup g;
  g.degree_ = degree;
  g.generators_ = std::move(gens);

  for (int b : base_hint) {
    if (b < 0 || b >= degree)
      throw std::invalid_argument("base point out of range");
    bool present = false;
    for (const Level& lv : g.levels_) present = present || lv.base_point == b;
    if (!present) {
      Level lv;
      lv.base_point = b;
      g.levels_.push_back(std::move(lv));
    }
  }
  for (std::size_t i = 0; i < g.levels_.size(); ++i) g.rebuild_level(i);

  for (const Permutation& p : g.generators_) {
    auto [res, stop] = g.sift(p, 0);
    if (!res.is_identity()) g.extend(res, stop);
  }

  // Schreier-Sims completion: levels deeper than i satisfy the Schreier
  // condition; a non-trivial residue grows the chain and restarts there.
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(g.levels_.size()) - 1;
  while (i >= 0) {
    bool modified = false;
    const std::size_t li = static_cast<std::size_t>(i);
    for (std::size_t k = 0; k < g.levels_[li].orbit.size() && !modified; ++k) {
      const int p = g.levels_[li].orbit[k];
      for (std::size_t si = 0; si < g.levels_[li].gens.size() && !modified;
           ++si) {
        const Permutation s = g.levels_[li].gens[si];
        const Permutation sp = s * g.levels_[li].transversal[k];
        const int q = s(p);
        const Permutation& uq =
            g.levels_[li].transversal[g.levels_[li].orbit_pos[q]];
        const Permutation h = uq.inverse() * sp;
        if (h.is_identity()) continue;
        auto [res, stop] = g.sift(h, li + 1);
        if (!res.is_identity()) {
          g.extend(res, stop);
          i = static_cast<std::ptrdiff_t>(stop);
          modified = true;
        }
      }
    }
    if (!modified) --i;
  }

  g.recompute_order();
  return g;
}

void PermGroup::recompute_order() {
  order_ = 1;
  order_overflow_ = false;
  for (const Level& lv : levels_) {
    std::uint64_t next = 0;
    if (mul_overflows(order_, lv.orbit.size(), next)) {
      order_overflow_ = true;
      order_ = UINT64_MAX;
      return;
    }
    order_ = next;
  }
}

std::uint64_t PermGroup::order() const { return order_; }

bool PermGroup::order_exceeds(std::uint64_t cap) const {
  return order_overflow_ || order_ > cap;
}

std::vector<Permutation> PermGroup::strong_generators() const {
  if (levels_.empty()) return {};
  return levels_[0].gens;
}

bool PermGroup::contains(const Permutation& p) const {
  if (p.degree() != degree_)
    throw std::invalid_argument("permutation degree mismatch");
  auto [res, stop] = sift(p, 0);
  return res.is_identity();
}

std::vector<int> PermGroup::orbit_of(int point) const {
  if (point < 0 || point >= degree_)
    throw std::invalid_argument("point out of range");
  std::vector<int> orbit{point};
  std::vector<char> seen(degree_, 0);
  seen[point] = 1;
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    for (const Permutation& s : generators_) {
      const int q = s(orbit[k]);
      if (!seen[q]) {
        seen[q] = 1;
        orbit.push_back(q);
      }
    }
  }
  return orbit;
}

std::vector<std::vector<int>> PermGroup::orbits() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(degree_, 0);
  for (int p = 0; p < degree_; ++p) {
    if (seen[p]) continue;
    std::vector<int> orbit = orbit_of(p);
    for (int x : orbit) seen[x] = 1;
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

std::vector<std::vector<int>> PermGroup::orbits_on(
    std::span<const int> domain) const {
  std::vector<char> in_domain(degree_, 0);
  for (int p : domain) {
    if (p < 0 || p >= degree_)
      throw std::invalid_argument("domain point out of range");
    in_domain[p] = 1;
  }
  std::vector<std::vector<int>> out;
  std::vector<char> seen(degree_, 0);
  for (int p : domain) {
    if (seen[p]) continue;
    std::vector<int> orbit{p};
    seen[p] = 1;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      for (const Permutation& s : generators_) {
        const int q = s(orbit[k]);
        if (!in_domain[q])
          throw std::invalid_argument("group does not preserve domain");
        if (!seen[q]) {
          seen[q] = 1;
          orbit.push_back(q);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

PermGroup PermGroup::stabilizer(int point) const {
  if (point < 0 || point >= degree_)
    throw std::invalid_argument("point out of range");
  const std::array<int, 1> hint{point};
  PermGroup rebased = from_generators(generators_, degree_, hint);
  std::vector<Permutation> sub;
  if (rebased.levels_.size() > 1) sub = rebased.levels_[1].gens;
  return from_generators(std::move(sub), degree_);
}

bool PermGroup::is_transitive_on(std::span<const int> set) const {
  if (set.empty()) return true;
  for (int p : set) {
    if (p < 0 || p >= degree_)
      throw std::invalid_argument("point out of range");
  }
  std::vector<int> orbit = orbit_of(set[0]);
  std::sort(orbit.begin(), orbit.end());
  std::vector<int> want(set.begin(), set.end());
  std::sort(want.begin(), want.end());
  return orbit == want;
}

std::vector<Permutation> PermGroup::elements(std::uint64_t cap) const {
  if (order_exceeds(cap))
    throw CapExceededError("group order exceeds element enumeration cap");
  if (levels_.empty()) return {Permutation::identity(degree_)};
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(order_));
  std::vector<std::size_t> idx(levels_.size(), 0);
  std::vector<Permutation> partial(levels_.size(),
                                   Permutation::identity(degree_));
  std::size_t depth = 0;
  while (true) {
    const Permutation& u = levels_[depth].transversal[idx[depth]];
    partial[depth] = depth == 0 ? u : partial[depth - 1] * u;
    if (depth + 1 == levels_.size()) {
      out.push_back(partial[depth]);
      ++idx[depth];
      while (idx[depth] == levels_[depth].transversal.size()) {
        idx[depth] = 0;
        if (depth == 0) return out;
        --depth;
        ++idx[depth];
      }
    } else {
      ++depth;
    }
  }
}

namespace {

// Index table over the full element list of the host group.
struct GroupTable {
  int degree = 0;
  std::vector<Permutation> elems;  // elems[0] is the identity
  std::unordered_map<Permutation, int, PermutationHash> index;
  std::vector<int> inv;
  std::vector<std::uint64_t> elem_order;

  explicit GroupTable(const PermGroup& g, std::uint64_t cap)
      : degree(g.degree()), elems(g.elements(cap)) {
    index.reserve(elems.size() * 2);
    for (std::size_t i = 0; i < elems.size(); ++i)
      index.emplace(elems[i], static_cast<int>(i));
    inv.resize(elems.size());
    elem_order.resize(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
      inv[i] = index.at(elems[i].inverse());
      elem_order[i] = elems[i].order();
    }
  }

  int size() const { return static_cast<int>(elems.size()); }
  int mul(int a, int b) const { return index.at(elems[a] * elems[b]); }
  int conj(int t, int x, int t_inv) const { return mul(mul(t, x), t_inv); }
};

struct SubRec {
  std::vector<int> members;  // sorted element indices
  std::vector<int> gens;
  std::vector<std::uint64_t> member_orders;  // sorted
  std::vector<int> orbit_sizes;              // sorted

  void fill_invariants(const GroupTable& tab) {
    member_orders.clear();
    member_orders.reserve(members.size());
    for (int m : members) member_orders.push_back(tab.elem_order[m]);
    std::sort(member_orders.begin(), member_orders.end());

    std::vector<int> parent(tab.degree);
    for (int i = 0; i < tab.degree; ++i) parent[i] = i;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int gi : gens) {
      const Permutation& p = tab.elems[gi];
      for (int x = 0; x < tab.degree; ++x) {
        const int a = find(x);
        const int b = find(p(x));
        if (a != b) parent[a] = b;
      }
    }
    std::vector<int> count(tab.degree, 0);
    for (int x = 0; x < tab.degree; ++x) ++count[find(x)];
    orbit_sizes.clear();
    for (int x = 0; x < tab.degree; ++x)
      if (count[x] > 0) orbit_sizes.push_back(count[x]);
    std::sort(orbit_sizes.begin(), orbit_sizes.end());
  }

  bool contains(int e) const {
    return std::binary_search(members.begin(), members.end(), e);
  }
};

// Closure of gens inside the table; empty result means the closure grew past
// `abort_above`.
std::vector<int> index_closure(const GroupTable& tab,
                               const std::vector<int>& gens,
                               std::size_t abort_above) {
  std::vector<char> in(tab.elems.size(), 0);
  std::vector<int> members{0};
  in[0] = 1;
  for (std::size_t k = 0; k < members.size(); ++k) {
    for (int g : gens) {
      const int q = tab.mul(members[k], g);
      if (!in[q]) {
        in[q] = 1;
        members.push_back(q);
        if (members.size() > abort_above) return {};
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

bool conjugate_in_table(const GroupTable& tab, const SubRec& a,
                        const SubRec& b) {
  if (a.members.size() != b.members.size()) return false;
  if (a.member_orders != b.member_orders) return false;
  if (a.orbit_sizes != b.orbit_sizes) return false;
  if (a.members == b.members) return true;
  for (int t = 0; t < tab.size(); ++t) {
    const int ti = tab.inv[t];
    bool ok = true;
    for (int g : a.gens) {
      if (!b.contains(tab.conj(t, g, ti))) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

struct MemberSetHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ v.size();
    for (int x : v) h = h * 1099511628211ULL + static_cast<std::size_t>(x);
    return h;
  }
};

}  // namespace

std::vector<std::vector<PermGroup>> subgroups_up_to_conjugacy(
    const PermGroup& g, std::span<const std::uint64_t> target_orders,
    std::uint64_t host_cap) {
  if (g.order_exceeds(host_cap))
    throw CapExceededError("group order exceeds subgroup search cap");
  const std::uint64_t n = g.order();

  std::vector<std::uint64_t> targets;
  std::vector<std::vector<PermGroup>> result(target_orders.size());
  for (std::size_t i = 0; i < target_orders.size(); ++i) {
    const std::uint64_t t = target_orders[i];
    // The full group is its own only subgroup of that order; answering it
    // directly keeps the lattice walk bounded by the largest proper target.
    if (t == n) {
      result[i].push_back(g);
      continue;
    }
    if (t >= 1 && n % t == 0) targets.push_back(t);
  }
  if (targets.empty()) return result;
  const std::uint64_t max_target =
      *std::max_element(targets.begin(), targets.end());

  GroupTable tab(g, host_cap);
  auto divides_some_target = [&](std::uint64_t d) {
    for (std::uint64_t t : targets)
      if (t % d == 0) return true;
    return false;
  };
  auto properly_divides_some_target = [&](std::uint64_t d) {
    for (std::uint64_t t : targets)
      if (d < t && t % d == 0) return true;
    return false;
  };

  std::vector<SubRec> classes;
  std::unordered_set<std::vector<int>, MemberSetHash> seen_sets;
  std::vector<std::size_t> queue;

  SubRec triv;
  triv.members = {0};
  triv.fill_invariants(tab);
  seen_sets.insert(triv.members);
  classes.push_back(std::move(triv));
  if (properly_divides_some_target(1)) queue.push_back(0);

  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const std::size_t ui = queue[qi];
    std::vector<char> candidate_seen(tab.elems.size(), 0);
    for (int m : classes[ui].members) candidate_seen[m] = 1;
    for (int z = 1; z < tab.size(); ++z) {
      if (candidate_seen[z]) continue;
      // Mark the whole conjugation orbit of z under the subgroup; one
      // representative per orbit yields every extension up to conjugacy.
      std::vector<int> conj_orbit{z};
      candidate_seen[z] = 1;
      for (std::size_t k = 0; k < conj_orbit.size(); ++k) {
        for (int gi : classes[ui].gens) {
          const int y = tab.conj(gi, conj_orbit[k], tab.inv[gi]);
          if (!candidate_seen[y]) {
            candidate_seen[y] = 1;
            conj_orbit.push_back(y);
          }
        }
      }
      if (!divides_some_target(tab.elem_order[z])) continue;

      std::vector<int> ext_gens = classes[ui].gens;
      ext_gens.push_back(z);
      std::vector<int> members = index_closure(
          tab, ext_gens, static_cast<std::size_t>(max_target));
      if (members.empty()) continue;
      if (!divides_some_target(members.size())) continue;
      if (seen_sets.count(members)) continue;

      SubRec rec;
      rec.members = std::move(members);
      rec.gens = std::move(ext_gens);
      rec.fill_invariants(tab);

      bool duplicate = false;
      for (const SubRec& known : classes) {
        if (conjugate_in_table(tab, known, rec)) {
          duplicate = true;
          break;
        }
      }
      seen_sets.insert(rec.members);
      if (duplicate) continue;
      classes.push_back(std::move(rec));
      if (properly_divides_some_target(classes.back().members.size()))
        queue.push_back(classes.size() - 1);
    }
  }

  for (std::size_t ti = 0; ti < target_orders.size(); ++ti) {
    std::vector<const SubRec*> hits;
    for (const SubRec& rec : classes)
      if (rec.members.size() == target_orders[ti]) hits.push_back(&rec);
    std::sort(hits.begin(), hits.end(),
              [](const SubRec* a, const SubRec* b) {
                return a->members < b->members;
              });
    for (const SubRec* rec : hits) {
      std::vector<Permutation> gens;
      gens.reserve(rec->gens.size());
      for (int gi : rec->gens) gens.push_back(tab.elems[gi]);
      result[ti].push_back(
          PermGroup::from_generators(std::move(gens), g.degree()));
    }
  }
  return result;
}

std::vector<PermGroup> subgroups_up_to_conjugacy(const PermGroup& g,
                                                 std::uint64_t target_order,
                                                 std::uint64_t host_cap) {
  const std::array<std::uint64_t, 1> targets{target_order};
  return subgroups_up_to_conjugacy(g, targets, host_cap)[0];
}

bool are_conjugate(const PermGroup& g, const PermGroup& h1,
                   const PermGroup& h2, std::uint64_t element_cap) {
  if (h1.degree() != g.degree() || h2.degree() != g.degree())
    throw std::invalid_argument("degree mismatch");
  if (h1.order_overflowed() || h2.order_overflowed())
    throw CapExceededError("subgroup order exceeds conjugacy test cap");
  if (h1.order() != h2.order()) return false;

  auto orbit_sizes = [](const PermGroup& h) {
    std::vector<int> sizes;
    for (const auto& orb : h.orbits()) sizes.push_back(static_cast<int>(orb.size()));
    std::sort(sizes.begin(), sizes.end());
    return sizes;
  };
  if (orbit_sizes(h1) != orbit_sizes(h2)) return false;

  auto cycle_types = [&](const PermGroup& h) {
    std::vector<std::vector<int>> types;
    for (const Permutation& p : h.elements(element_cap))
      types.push_back(p.cycle_type());
    std::sort(types.begin(), types.end());
    return types;
  };
  if (cycle_types(h1) != cycle_types(h2)) return false;

  const std::vector<Permutation> h1_gens = h1.generators();
  for (const Permutation& t : g.elements(element_cap)) {
    const Permutation ti = t.inverse();
    bool ok = true;
    for (const Permutation& s : h1_gens) {
      if (!h2.contains(t * s * ti)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace ftsurf
