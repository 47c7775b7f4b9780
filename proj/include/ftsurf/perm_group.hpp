#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftsurf/permutation.hpp"

namespace ftsurf {

// Thrown when an operation would enumerate past a configured cap.
class CapExceededError : public std::runtime_error {
public:
  explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::uint64_t kDefaultElementCap = 1'000'000;
inline constexpr std::uint64_t kDefaultSubgroupHostCap = 100'000;

// A permutation group on {0..degree-1} with a base and strong generating set
// (stabilizer chain). Immutable after construction; all queries are const and
// safe to share across threads.
class PermGroup {
public:
  PermGroup() = default;

  static PermGroup trivial(int degree);

  // Builds a stabilizer chain from the generators. Throws
  // std::invalid_argument if generator degrees disagree with `degree`.
  // `base_hint` points are preferred (in order) when choosing base points,
  // so stabilizer chains can be aligned with a prescribed prefix.
  static PermGroup from_generators(std::vector<Permutation> gens, int degree,
                                   std::span<const int> base_hint = {});

  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<int>& base() const { return base_; }
  std::vector<Permutation> strong_generators() const;

  // True when the exact order does not fit in 64 bits; all callers only need
  // "order vs cap" decisions, which order_exceeds answers even then.
  bool order_overflowed() const { return order_overflow_; }
  std::uint64_t order() const;
  bool order_exceeds(std::uint64_t cap) const;

  bool is_trivial() const { return !order_overflow_ && order_ == 1; }
  bool contains(const Permutation& p) const;

  // Orbit of one point, in discovery order (starting point first).
  std::vector<int> orbit_of(int point) const;

  // Orbits on all points {0..degree-1}, each sorted, ordered by least point.
  std::vector<std::vector<int>> orbits() const;

  // Partition of `domain` into orbits. Throws std::invalid_argument if the
  // group moves a domain point outside the domain.
  std::vector<std::vector<int>> orbits_on(std::span<const int> domain) const;

  // {g in G : g(point) = point}, via a chain based at `point`.
  PermGroup stabilizer(int point) const;

  bool is_transitive_on(std::span<const int> set) const;

  // Every element exactly once. Throws CapExceededError when the order
  // exceeds `cap`. Deterministic order for fixed generators.
  std::vector<Permutation> elements(std::uint64_t cap = kDefaultElementCap) const;

private:
  struct Level {
    int base_point = -1;
    std::vector<Permutation> gens;  // generators of this level's stabilizer
    std::vector<int> orbit;         // discovery order, orbit[0] == base_point
    // transversal[p] maps base_point to p, for p in orbit
    std::vector<Permutation> transversal;
    std::vector<int> orbit_pos;     // point -> index into orbit, or -1
  };

  void rebuild_level(std::size_t idx);
  void extend(const Permutation& g, std::size_t stop);
  // Sifts p through levels [from..); returns the residue and the level at
  // which sifting stopped.
  std::pair<Permutation, std::size_t> sift(const Permutation& p,
                                           std::size_t from) const;
  void recompute_order();

  int degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<int> base_;
  std::vector<Level> levels_;
  std::uint64_t order_ = 1;
  bool order_overflow_ = false;
};

// One representative per conjugacy class of subgroups of exactly
// `target_order`. Returns {} when target_order does not divide |G|.
// Throws CapExceededError when |G| exceeds `host_cap`.
std::vector<PermGroup> subgroups_up_to_conjugacy(
    const PermGroup& g, std::uint64_t target_order,
    std::uint64_t host_cap = kDefaultSubgroupHostCap);

// Batch version sharing one bottom-up closure across several target orders.
// Result[i] corresponds to target_orders[i].
std::vector<std::vector<PermGroup>> subgroups_up_to_conjugacy(
    const PermGroup& g, std::span<const std::uint64_t> target_orders,
    std::uint64_t host_cap = kDefaultSubgroupHostCap);

// True iff some g in G conjugates H1 onto H2. Screens by order, orbit-size
// multiset and element cycle types before searching.
bool are_conjugate(const PermGroup& g, const PermGroup& h1, const PermGroup& h2,
                   std::uint64_t element_cap = kDefaultElementCap);

}  // namespace ftsurf
