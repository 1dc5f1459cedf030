#pragma once

// Shared vocabulary: finite ordered state spaces, subsets of states, and exact
// beliefs over them.
//
// States are addressed by a flat index. For product grids the flat order is
// row-major over the coordinate-index lattice (last axis fastest), which is
// also the lexicographic order of the index vectors. Point sets that are not
// products use the same lexicographic order.

#include "polar/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace polar {

using StateIndex = std::size_t;

class StateSpace {
 public:
  /// Product grid Θ₁×…×Θ_d. Every axis must be strictly increasing with at
  /// least two values.
  explicit StateSpace(std::vector<std::vector<Rational>> axes);

  /// Product grid whose axis i holds the values 1, 2, …, sizes[i].
  static StateSpace grid(std::span<const std::size_t> sizes);
  static StateSpace grid(std::initializer_list<std::size_t> sizes);

  /// Arbitrary finite set of distinct points in ℝ^d with the induced
  /// coordinatewise order. The result need not be a product space.
  static StateSpace from_points(const std::vector<std::vector<Rational>>& points);

  std::size_t dims() const { return axes_.size(); }
  std::size_t size() const { return count_; }
  std::size_t axis_size(std::size_t axis) const { return axes_.at(axis).size(); }
  const std::vector<Rational>& axis(std::size_t axis) const { return axes_.at(axis); }
  bool is_product() const { return product_; }

  /// Index of state s along the given axis.
  std::size_t coordinate(StateIndex s, std::size_t axis) const {
    return coords_[s * axes_.size() + axis];
  }
  std::span<const std::size_t> coordinates(StateIndex s) const {
    return {coords_.data() + s * axes_.size(), axes_.size()};
  }
  const Rational& value(StateIndex s, std::size_t axis) const {
    return axes_[axis][coordinate(s, axis)];
  }

  std::optional<StateIndex> find(std::span<const std::size_t> coords) const;
  /// Throws polar::Error when no state has these coordinates.
  StateIndex index_of(std::span<const std::size_t> coords) const;
  StateIndex index_of(std::initializer_list<std::size_t> coords) const;

  /// Unique minimal / maximal state. Throws polar::Error when not unique,
  /// which can only happen for non-product point sets.
  StateIndex min_state() const;
  StateIndex max_state() const;

  /// a ≤ b coordinatewise.
  bool weakly_below(StateIndex a, StateIndex b) const;
  /// a ≪ b: strictly smaller on every coordinate.
  bool strictly_below(StateIndex a, StateIndex b) const;
  bool comparable(StateIndex a, StateIndex b) const {
    return weakly_below(a, b) || weakly_below(b, a);
  }

  /// "(i₁,…,i_d)" with one-based coordinate indices, e.g. "(1,2)".
  std::string label(StateIndex s) const;

  friend bool operator==(const StateSpace& a, const StateSpace& b) {
    return a.axes_ == b.axes_ && a.coords_ == b.coords_;
  }

 private:
  StateSpace() = default;
  void finish_product();

  std::vector<std::vector<Rational>> axes_;
  std::vector<std::size_t> coords_;
  std::vector<std::size_t> strides_;
  std::size_t count_ = 0;
  bool product_ = true;
};

using SpacePtr = std::shared_ptr<const StateSpace>;

inline SpacePtr make_space(StateSpace space) {
  return std::make_shared<const StateSpace>(std::move(space));
}
inline SpacePtr make_grid(std::initializer_list<std::size_t> sizes) {
  return make_space(StateSpace::grid(sizes));
}
inline SpacePtr make_grid(std::span<const std::size_t> sizes) {
  return make_space(StateSpace::grid(sizes));
}

/// True if both pointers refer to the same space or to equal spaces.
bool same_space(const SpacePtr& a, const SpacePtr& b);

/// Subset of a state space with membership-mask semantics.
class StateSubset {
 public:
  /// Empty subset of `space`.
  explicit StateSubset(SpacePtr space);
  StateSubset(SpacePtr space, std::initializer_list<StateIndex> members);
  StateSubset(SpacePtr space, std::span<const StateIndex> members);
  static StateSubset all(SpacePtr space);
  static StateSubset from_mask(SpacePtr space, std::vector<bool> mask);

  bool contains(StateIndex s) const { return mask_[s]; }
  void insert(StateIndex s);
  void erase(StateIndex s);

  std::size_t count() const;
  bool empty() const { return count() == 0; }
  bool is_full() const { return count() == mask_.size(); }
  std::vector<StateIndex> members() const;

  StateSubset complement() const;
  friend StateSubset operator&(const StateSubset& a, const StateSubset& b);
  friend StateSubset operator|(const StateSubset& a, const StateSubset& b);
  /// Members of a that are not in b.
  friend StateSubset operator-(const StateSubset& a, const StateSubset& b);
  bool is_subset_of(const StateSubset& other) const;

  const StateSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const std::vector<bool>& mask() const { return mask_; }

  /// "{(1,1),(2,2)}".
  std::string to_string() const;

  friend bool operator==(const StateSubset& a, const StateSubset& b) {
    return same_space(a.space_, b.space_) && a.mask_ == b.mask_;
  }

 private:
  SpacePtr space_;
  std::vector<bool> mask_;
};

/// Exact probability mass function over a state space.
class Belief {
 public:
  /// Throws polar::Error unless masses are nonnegative, sum to exactly one,
  /// and there is one mass per state.
  Belief(SpacePtr space, std::vector<Rational> mass);

  /// Normalizes nonnegative weights with positive total.
  static Belief from_weights(SpacePtr space, std::vector<Rational> weights);
  static Belief uniform(SpacePtr space);
  static Belief dirac(SpacePtr space, StateIndex s);
  /// Uniform over a nonempty subset.
  static Belief uniform_on(const StateSubset& subset);

  const Rational& operator[](StateIndex s) const { return mass_[s]; }
  const std::vector<Rational>& mass() const { return mass_; }
  std::size_t size() const { return mass_.size(); }
  const StateSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }

  bool full_support() const;
  StateSubset support() const;
  Rational probability(const StateSubset& event) const;
  Rational probability(std::span<const StateIndex> states) const;
  /// Σ_θ mass(θ)·values(θ).
  Rational expectation(std::span<const Rational> values) const;

  friend bool operator==(const Belief& a, const Belief& b) {
    return same_space(a.space_, b.space_) && a.mass_ == b.mass_;
  }

 private:
  struct Unchecked {};
  Belief(SpacePtr space, std::vector<Rational> mass, Unchecked);

  SpacePtr space_;
  std::vector<Rational> mass_;

  friend Belief condition(const Belief&, const StateSubset&);
  friend Belief mixture(std::span<const Rational>, std::span<const Belief>);
};

/// Univariate marginal with its running-sum cdf F(k) = Σ_{j≤k} mass(j).
struct Marginal {
  std::vector<Rational> mass;
  std::vector<Rational> cdf;
};

Marginal marginal(const Belief& belief, std::size_t axis);

/// belief(· | subset). Throws NullEventError if the subset has zero mass.
Belief condition(const Belief& belief, const StateSubset& subset);

/// Pointwise convex combination. Weights must be nonnegative and sum to one;
/// all beliefs must share one space.
Belief mixture(std::span<const Rational> weights, std::span<const Belief> beliefs);

/// ½ Σ_θ |a(θ) − b(θ)|.
Rational total_variation(const Belief& a, const Belief& b);

}  // namespace polar
