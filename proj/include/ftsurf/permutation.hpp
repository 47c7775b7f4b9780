#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ftsurf {

// A permutation of the points {0, 1, ..., degree-1}, stored as its image
// table. Value type: immutable after construction, cheap to copy and hash.
class Permutation {
public:
  Permutation() = default;

  // Identity on `degree` points.
  explicit Permutation(int degree);

  // From an image table; images must be a bijection of {0..n-1}.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int degree) { return Permutation(degree); }

  // From disjoint-or-not cycles over 0-based points, e.g. {{0,1,2},{3,4}}.
  // Cycles are applied left to right; points outside all cycles are fixed.
  static Permutation from_cycles(int degree,
                                 const std::vector<std::vector<int>>& cycles);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int point) const { return images_[point]; }
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;

  // Function composition: (a * b)(x) = a(b(x)); b is applied first.
  friend Permutation operator*(const Permutation& a, const Permutation& b);

  // Element order (lcm of cycle lengths), saturating at UINT64_MAX.
  std::uint64_t order() const;

  // Nontrivial cycles, each rotated to start at its least point and sorted
  // by that point.
  std::vector<std::vector<int>> cycles() const;

  // Multiset of nontrivial cycle lengths, sorted ascending. Conjugation
  // invariant.
  std::vector<int> cycle_type() const;

  // 1-based cycle notation, "()" for the identity.
  std::string to_cycle_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend std::strong_ordering operator<=>(const Permutation&,
                                          const Permutation&) = default;

private:
  std::vector<int> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const;
};

}  // namespace ftsurf
