#include "polar/classifier.hpp"

#include "polar/errors.hpp"

#include <stdexcept>

namespace polar {

StateSubset min_set(const StateSubset& subset) {
  if (subset.empty()) throw PreconditionError("min_set of an empty set");
  const auto& space = subset.space();
  const auto members = subset.members();
  StateSubset out(subset.space_ptr());
  for (StateIndex s : members) {
    bool minimal = true;
    for (StateIndex t : members) {
      if (t != s && space.weakly_below(t, s)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.insert(s);
  }
  return out;
}

StateSubset max_set(const StateSubset& subset) {
  if (subset.empty()) throw PreconditionError("max_set of an empty set");
  const auto& space = subset.space();
  const auto members = subset.members();
  StateSubset out(subset.space_ptr());
  for (StateIndex s : members) {
    bool maximal = true;
    for (StateIndex t : members) {
      if (t != s && space.weakly_below(s, t)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.insert(s);
  }
  return out;
}

bool is_antichain(const StateSubset& subset) {
  const auto members = subset.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (subset.space().comparable(members[i], members[j])) return false;
    }
  }
  return true;
}

GridBox GridBox::full(const StateSpace& space) {
  GridBox box;
  for (std::size_t i = 0; i < space.dims(); ++i) {
    box.lo.push_back(0);
    box.hi.push_back(space.axis_size(i) - 1);
  }
  return box;
}

bool GridBox::contains(const StateSpace& space, StateIndex s) const {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    const std::size_t c = space.coordinate(s, i);
    if (c < lo[i] || c > hi[i]) return false;
  }
  return true;
}

std::size_t GridBox::state_count() const {
  std::size_t n = 1;
  for (std::size_t i = 0; i < lo.size(); ++i) n *= hi[i] - lo[i] + 1;
  return n;
}

namespace {

void require_grid(const StateSpace& space) {
  if (!space.is_product()) {
    throw PreconditionError("geometric predicates need a product state space");
  }
}

bool spanning_in(const StateSubset& subset, const GridBox& box) {
  const auto& space = subset.space();
  const auto members = subset.members();
  for (std::size_t i = 0; i < space.dims(); ++i) {
    bool low = false;
    bool high = false;
    for (StateIndex s : members) {
      low = low || space.coordinate(s, i) == box.lo[i];
      high = high || space.coordinate(s, i) == box.hi[i];
    }
    if (!low || !high) return false;
  }
  return true;
}

// Every coordinate of s strictly below / above the box's corner.
bool strictly_inside_top(const StateSpace& space, StateIndex s, const GridBox& box) {
  for (std::size_t i = 0; i < box.hi.size(); ++i) {
    if (space.coordinate(s, i) >= box.hi[i]) return false;
  }
  return true;
}

bool strictly_inside_bottom(const StateSpace& space, StateIndex s, const GridBox& box) {
  for (std::size_t i = 0; i < box.lo.size(); ++i) {
    if (space.coordinate(s, i) <= box.lo[i]) return false;
  }
  return true;
}

}  // namespace

bool is_spanning(const StateSubset& subset) {
  require_grid(subset.space());
  return !subset.empty() && spanning_in(subset, GridBox::full(subset.space()));
}

std::optional<StateIndex> biased_down_pivot(const StateSubset& gamma) {
  const auto& space = gamma.space();
  require_grid(space);
  const auto box = GridBox::full(space);
  for (StateIndex pivot = 0; pivot < space.size(); ++pivot) {
    if (!strictly_inside_bottom(space, pivot, box)) continue;
    bool ok = true;
    for (StateIndex s = 0; s < space.size() && ok; ++s) {
      if (space.strictly_below(s, pivot) && !gamma.contains(s)) ok = false;
      if (space.weakly_below(pivot, s) && gamma.contains(s)) ok = false;
    }
    if (ok) return pivot;
  }
  return std::nullopt;
}

std::optional<StateIndex> biased_up_pivot(const StateSubset& gamma) {
  const auto& space = gamma.space();
  require_grid(space);
  const auto box = GridBox::full(space);
  for (StateIndex pivot = 0; pivot < space.size(); ++pivot) {
    if (!strictly_inside_top(space, pivot, box)) continue;
    bool ok = true;
    for (StateIndex s = 0; s < space.size() && ok; ++s) {
      if (space.strictly_below(pivot, s) && !gamma.contains(s)) ok = false;
      if (space.weakly_below(s, pivot) && gamma.contains(s)) ok = false;
    }
    if (ok) return pivot;
  }
  return std::nullopt;
}

std::optional<StateIndex> compensatory_pivot(const StateSubset& subset, const GridBox& box) {
  const auto& space = subset.space();
  require_grid(space);
  const auto members = subset.members();
  for (StateIndex pivot = 0; pivot < space.size(); ++pivot) {
    if (!box.contains(space, pivot) || !strictly_inside_top(space, pivot, box)) continue;
    bool trapped = true;
    for (StateIndex s : members) {
      if (space.weakly_below(s, pivot) || space.strictly_below(pivot, s)) {
        trapped = false;
        break;
      }
    }
    if (trapped) return pivot;
  }
  return std::nullopt;
}

std::optional<StateIndex> compensatory_pivot(const StateSubset& subset) {
  return compensatory_pivot(subset, GridBox::full(subset.space()));
}

std::optional<StateIndex> compensatory_dual_pivot(const StateSubset& subset) {
  const auto& space = subset.space();
  require_grid(space);
  const auto box = GridBox::full(space);
  const auto members = subset.members();
  for (StateIndex pivot = 0; pivot < space.size(); ++pivot) {
    if (!strictly_inside_bottom(space, pivot, box)) continue;
    bool trapped = true;
    for (StateIndex s : members) {
      if (space.weakly_below(pivot, s) || space.strictly_below(s, pivot)) {
        trapped = false;
        break;
      }
    }
    if (trapped) return pivot;
  }
  return std::nullopt;
}

ClassificationReport classify(const StateSubset& gamma, ClassifyOptions options) {
  const auto& space = gamma.space();
  require_grid(space);
  if (gamma.empty() || gamma.is_full()) {
    throw PreconditionError("identified set must be a nonempty proper subset");
  }
  ClassificationReport report;
  if (space.dims() != 2) {
    if (!options.allow_conjectural) {
      throw PreconditionError("characterization proven only for two dimensions");
    }
    report.conjectural = true;
  }
  const auto outside = gamma.complement();
  report.spanning = is_spanning(gamma);
  report.complement_spanning = is_spanning(outside);
  report.biased_down_pivot = biased_down_pivot(gamma);
  report.biased_up_pivot = biased_up_pivot(gamma);
  report.biased_down = report.biased_down_pivot.has_value();
  report.biased_up = report.biased_up_pivot.has_value();
  report.balanced = !report.biased_down && !report.biased_up;
  report.compensatory_pivot = compensatory_pivot(gamma);
  report.compensatory = report.compensatory_pivot.has_value();
  if (space.dims() == 2 && report.compensatory != compensatory_dual_pivot(gamma).has_value()) {
    throw std::logic_error("classify: compensatory test and its dual form disagree");
  }
  report.can_strongly_polarize = report.spanning && report.complement_spanning &&
                                 report.balanced && !report.compensatory;
  return report;
}

std::string_view to_string(AcFailure failure) {
  switch (failure) {
    case AcFailure::None: return "none";
    case AcFailure::NotDisjoint: return "not-disjoint";
    case AcFailure::LowerMissesMinimum: return "lower-misses-minimum";
    case AcFailure::UpperMissesMaximum: return "upper-misses-maximum";
    case AcFailure::Compensatory: return "compensatory";
  }
  return "?";
}

AcVerdict antichain_dominates_in(const StateSubset& lower, const StateSubset& upper,
                                 const GridBox& box) {
  const auto& space = lower.space();
  require_grid(space);
  if (space.dims() != 2) throw PreconditionError("antichain dominance is defined in two dimensions");
  if (!same_space(lower.space_ptr(), upper.space_ptr())) {
    throw Error("antichains belong to different state spaces");
  }
  for (const auto* set : {&lower, &upper}) {
    if (set->empty() || !is_antichain(*set)) {
      throw PreconditionError(set->to_string() + " is not a nonempty antichain");
    }
    for (StateIndex s : set->members()) {
      if (!box.contains(space, s)) throw PreconditionError(set->to_string() + " leaves the box");
    }
  }

  AcVerdict verdict;
  if (!(lower & upper).empty()) {
    verdict.failure = AcFailure::NotDisjoint;
    return verdict;
  }
  for (std::size_t i = 0; i < 2; ++i) {
    bool low_hit = false;
    bool high_hit = false;
    for (StateIndex s : lower.members()) low_hit = low_hit || space.coordinate(s, i) == box.lo[i];
    for (StateIndex s : upper.members()) high_hit = high_hit || space.coordinate(s, i) == box.hi[i];
    if (!low_hit) {
      verdict.failure = AcFailure::LowerMissesMinimum;
      return verdict;
    }
    if (!high_hit) {
      verdict.failure = AcFailure::UpperMissesMaximum;
      return verdict;
    }
  }
  if (auto pivot = compensatory_pivot(lower | upper, box)) {
    verdict.failure = AcFailure::Compensatory;
    verdict.pivot = pivot;
    return verdict;
  }
  verdict.holds = true;
  return verdict;
}

AcVerdict antichain_dominates(const StateSubset& lower, const StateSubset& upper) {
  return antichain_dominates_in(lower, upper, GridBox::full(lower.space()));
}

}  // namespace polar
