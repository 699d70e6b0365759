// Subsets of a finite metric group, with the product-set algebra.
#pragma once

#include <vector>

#include "approxlab/bitset.hpp"
#include "approxlab/group.hpp"
#include "approxlab/rational.hpp"

namespace approxlab {

class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(GroupPtr g) : group_(std::move(g)), bits_(group_->order()) {}
  ElementSet(GroupPtr g, Bitset bits) : group_(std::move(g)), bits_(std::move(bits)) {}
  ElementSet(GroupPtr g, const std::vector<int>& indices);

  static ElementSet singleton_identity(GroupPtr g);
  static ElementSet whole_group(GroupPtr g);

  const GroupPtr& group() const { return group_; }
  const Bitset& bits() const { return bits_; }
  std::size_t count() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool contains(int x) const { return bits_.test(static_cast<std::size_t>(x)); }
  void add(int x) { bits_.set(static_cast<std::size_t>(x)); }
  void remove(int x) { bits_.reset(static_cast<std::size_t>(x)); }
  std::vector<int> indices() const { return bits_.to_indices(); }

  bool operator==(const ElementSet& o) const;
  bool operator!=(const ElementSet& o) const { return !(*this == o); }
  bool subset_of(const ElementSet& o) const;
  bool intersects(const ElementSet& o) const;

  ElementSet set_union(const ElementSet& o) const;
  ElementSet set_intersect(const ElementSet& o) const;
  ElementSet set_difference(const ElementSet& o) const;

  // {a·b : a in this, b in o}
  ElementSet product(const ElementSet& o) const;
  // {a^-1 : a in this}
  ElementSet inverse() const;
  // X^n for n >= 0 (X^0 = {identity}); negative n means (X^-1)^|n|.
  ElementSet power(int n) const;
  // Left translate g·X and right translate X·g.
  ElementSet left_translate(int g) const;
  ElementSet right_translate(int g) const;
  // Closed thickening D_r(X) = {y : exists x in X with dist(x,y) <= r} = X·D_r(1).
  ElementSet thicken(const Rat& r) const;
  // {b^-1·a·b : a in this, b in o}
  ElementSet conjugation_set(const ElementSet& o) const;
  // {a^-1·b^-1·a·b : a in this, b in o}
  ElementSet commutator_set(const ElementSet& o) const;

  bool is_symmetric() const;          // X == X^-1
  bool contains_identity() const { return contains(group_->identity()); }

 private:
  void require_same_group(const ElementSet& o) const;
  GroupPtr group_;
  Bitset bits_;
};

struct LipschitzResult {
  Rat l;
  // Argmax witness: right translation by x, acting on the pair (a, b) in D_r(1).
  // Indices are -1 when D_r(1) has fewer than two points (l = 0 by convention).
  int x = -1, a = -1, b = -1;
};

// Smallest l such that every right translation by an element of X is
// l-Lipschitz on D_r(1): the exact maximum of dist(a·x, b·x)/dist(a, b).
// Throws on empty X.
LipschitzResult lipschitz_constant(const ElementSet& X, const Rat& r);

}  // namespace approxlab
