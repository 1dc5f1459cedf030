#pragma once

// Geometric predicates on identified sets in two-dimensional grids: spanning,
// biased/balanced, compensatory, and antichain dominance.

#include "polar/core.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace polar {

/// Minimal / maximal elements of a nonempty subset under ≤.
StateSubset min_set(const StateSubset& subset);
StateSubset max_set(const StateSubset& subset);

bool is_antichain(const StateSubset& subset);

/// Axis-aligned sub-box [lo, hi] of a product grid, in coordinate indices.
struct GridBox {
  std::vector<std::size_t> lo;
  std::vector<std::size_t> hi;

  static GridBox full(const StateSpace& space);
  bool contains(const StateSpace& space, StateIndex s) const;
  std::size_t state_count() const;
};

/// Attains the lowest and highest index on every axis of the box.
bool is_spanning(const StateSubset& subset);

/// Pivot θ ≫ θ̲ with {θ′ ≪ θ} ⊆ Γ and no member weakly above θ.
std::optional<StateIndex> biased_down_pivot(const StateSubset& gamma);
/// Pivot θ ≪ θ̄ with {θ′ ≫ θ} ⊆ Γ and no member weakly below θ.
std::optional<StateIndex> biased_up_pivot(const StateSubset& gamma);
/// Pivot θ ≪ θ̄ (within `box`) such that no member is ≤ θ and none is ≫ θ.
std::optional<StateIndex> compensatory_pivot(const StateSubset& subset, const GridBox& box);
std::optional<StateIndex> compensatory_pivot(const StateSubset& subset);
/// Dual form: θ̂ ≫ θ̲ such that no member is ≥ θ̂ and none is ≪ θ̂.
std::optional<StateIndex> compensatory_dual_pivot(const StateSubset& subset);

struct ClassifyOptions {
  /// Evaluate the predicates when d ≠ 2 instead of rejecting the request.
  bool allow_conjectural = false;
};

struct ClassificationReport {
  bool spanning = false;
  bool complement_spanning = false;
  bool biased_down = false;
  bool biased_up = false;
  bool balanced = false;
  bool compensatory = false;
  std::optional<StateIndex> biased_down_pivot;
  std::optional<StateIndex> biased_up_pivot;
  std::optional<StateIndex> compensatory_pivot;
  bool can_strongly_polarize = false;
  /// Set when the predicates were evaluated outside two dimensions.
  bool conjectural = false;
};

/// Throws PreconditionError for an empty or full gamma, a non-product space,
/// or d ≠ 2 without allow_conjectural.
ClassificationReport classify(const StateSubset& gamma, ClassifyOptions options = {});

enum class AcFailure { None, NotDisjoint, LowerMissesMinimum, UpperMissesMaximum, Compensatory };
std::string_view to_string(AcFailure failure);

struct AcVerdict {
  bool holds = false;
  AcFailure failure = AcFailure::None;
  /// Compensatory pivot of lower ∪ upper when that condition fails.
  std::optional<StateIndex> pivot;
};

/// Whether `upper` antichain-dominates `lower` within `box`. Throws
/// PreconditionError unless both are nonempty antichains inside the box of a
/// two-dimensional product grid.
AcVerdict antichain_dominates_in(const StateSubset& lower, const StateSubset& upper, const GridBox& box);
AcVerdict antichain_dominates(const StateSubset& lower, const StateSubset& upper);

}  // namespace polar
