#include "polar/orders.hpp"

#include "polar/errors.hpp"

#include <set>

namespace polar {

std::string_view to_string(UpperFamilyKind kind) {
  switch (kind) {
    case UpperFamilyKind::UpperSet: return "st";
    case UpperFamilyKind::UpperOrthant: return "uo";
    case UpperFamilyKind::UpperProjection: return "cw";
  }
  return "?";
}

UpperFamilyKind parse_family_kind(std::string_view text) {
  if (text == "st") return UpperFamilyKind::UpperSet;
  if (text == "uo") return UpperFamilyKind::UpperOrthant;
  if (text == "cw") return UpperFamilyKind::UpperProjection;
  throw Error("unknown order '" + std::string(text) + "' (expected st, uo or cw)");
}

std::string_view to_string(Relation relation) {
  switch (relation) {
    case Relation::StrictlyBelow: return "strictly-below";
    case Relation::WeaklyBelow: return "weakly-below";
    case Relation::Equal: return "equal";
    case Relation::Incomparable: return "incomparable";
    case Relation::WeaklyAbove: return "weakly-above";
    case Relation::StrictlyAbove: return "strictly-above";
  }
  return "?";
}

std::string_view to_string(Strictness strictness) {
  return strictness == Strictness::OneEvent ? "one-event" : "all-events";
}

StateSubset up_closure(const StateSubset& seeds) {
  const auto& space = seeds.space();
  StateSubset out(seeds.space_ptr());
  const auto members = seeds.members();
  for (StateIndex s = 0; s < space.size(); ++s) {
    for (StateIndex m : members) {
      if (space.weakly_below(m, s)) {
        out.insert(s);
        break;
      }
    }
  }
  return out;
}

bool is_upper_set(const StateSubset& subset) { return up_closure(subset) == subset; }

namespace {

bool keep(const StateSubset& event, bool include_trivial) {
  if (include_trivial) return true;
  const std::size_t n = event.count();
  return n != 0 && n != event.space().size();
}

// Every upper set is the up-closure of its antichain of minimal elements, so
// walking antichains visits each upper set exactly once.
class AntichainWalk {
 public:
  AntichainWalk(const SpacePtr& space, bool include_trivial,
                const std::function<bool(const StateSubset&)>& visit, std::size_t cap)
      : space_(space), include_trivial_(include_trivial), visit_(visit), cap_(cap) {}

  void run() { descend(0); }

 private:
  bool descend(StateIndex start) {
    if (++produced_ > cap_) {
      throw CapExceededError("upper-set enumeration exceeds the cap of " + std::to_string(cap_) +
                             " sets");
    }
    StateSubset event = up_closure(StateSubset(space_, chosen_));
    if (keep(event, include_trivial_) && !visit_(event)) return false;
    for (StateIndex s = start; s < space_->size(); ++s) {
      bool free = true;
      for (StateIndex c : chosen_) {
        if (space_->comparable(c, s)) {
          free = false;
          break;
        }
      }
      if (!free) continue;
      chosen_.push_back(s);
      const bool go_on = descend(s + 1);
      chosen_.pop_back();
      if (!go_on) return false;
    }
    return true;
  }

  SpacePtr space_;
  bool include_trivial_;
  const std::function<bool(const StateSubset&)>& visit_;
  std::size_t cap_;
  std::size_t produced_ = 0;
  std::vector<StateIndex> chosen_;
};

void for_each_orthant(const SpacePtr& space, bool include_trivial,
                      const std::function<bool(const StateSubset&)>& visit) {
  const std::size_t d = space->dims();
  // Threshold t_i = k means "coordinate index > k"; k = -1 leaves the axis free.
  std::vector<long> threshold(d, -1);
  std::set<std::vector<bool>> seen;
  while (true) {
    StateSubset event(space);
    for (StateIndex s = 0; s < space->size(); ++s) {
      bool inside = true;
      for (std::size_t i = 0; i < d && inside; ++i) {
        inside = static_cast<long>(space->coordinate(s, i)) > threshold[i];
      }
      if (inside) event.insert(s);
    }
    if (keep(event, include_trivial) && seen.insert(event.mask()).second && !visit(event)) return;

    std::size_t i = d;
    while (i-- > 0) {
      if (threshold[i] + 1 < static_cast<long>(space->axis_size(i))) {
        ++threshold[i];
        break;
      }
      threshold[i] = -1;
    }
    if (i == static_cast<std::size_t>(-1)) return;
  }
}

void for_each_projection(const SpacePtr& space, bool include_trivial,
                         const std::function<bool(const StateSubset&)>& visit) {
  std::set<std::vector<bool>> seen;
  auto emit = [&](const StateSubset& event) {
    if (!keep(event, include_trivial) || !seen.insert(event.mask()).second) return true;
    return visit(event);
  };
  if (include_trivial) {
    if (!emit(StateSubset(space)) || !emit(StateSubset::all(space))) return;
  }
  for (std::size_t i = 0; i < space->dims(); ++i) {
    for (std::size_t k = 1; k < space->axis_size(i); ++k) {
      StateSubset event(space);
      for (StateIndex s = 0; s < space->size(); ++s) {
        if (space->coordinate(s, i) >= k) event.insert(s);
      }
      if (!emit(event)) return;
    }
  }
}

}  // namespace

void for_each_event(const SpacePtr& space, UpperFamilyKind kind, bool include_trivial,
                    const std::function<bool(const StateSubset&)>& visit, std::size_t cap) {
  switch (kind) {
    case UpperFamilyKind::UpperSet:
      AntichainWalk(space, include_trivial, visit, cap).run();
      return;
    case UpperFamilyKind::UpperOrthant:
      for_each_orthant(space, include_trivial, visit);
      return;
    case UpperFamilyKind::UpperProjection:
      for_each_projection(space, include_trivial, visit);
      return;
  }
}

std::vector<StateSubset> enumerate_events(const SpacePtr& space, UpperFamilyKind kind,
                                          bool include_trivial, std::size_t cap) {
  std::vector<StateSubset> events;
  for_each_event(
      space, kind, include_trivial,
      [&](const StateSubset& event) {
        events.push_back(event);
        return true;
      },
      cap);
  return events;
}

EventFamily::EventFamily(SpacePtr space, UpperFamilyKind kind, std::size_t cap)
    : space_(std::move(space)), kind_(kind) {
  events_ = enumerate_events(space_, kind_, false, cap);
  members_.reserve(events_.size());
  for (const auto& e : events_) members_.push_back(e.members());
}

DominanceVerdict compare(const Belief& low, const Belief& high, const EventFamily& family,
                         Strictness strictness) {
  if (!same_space(low.space_ptr(), high.space_ptr()) ||
      !same_space(low.space_ptr(), family.space_ptr())) {
    throw Error("compare: beliefs and event family must share one state space");
  }
  std::optional<std::size_t> first_up;     // low < high
  std::optional<std::size_t> first_down;   // low > high
  std::optional<std::size_t> first_equal;  // low = high
  std::vector<Rational> low_mass(family.size());
  std::vector<Rational> high_mass(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    low_mass[i] = low.probability(family.members(i));
    high_mass[i] = high.probability(family.members(i));
    const int c = cmp(low_mass[i], high_mass[i]);
    if (c < 0 && !first_up) first_up = i;
    if (c > 0 && !first_down) first_down = i;
    if (c == 0 && !first_equal) first_equal = i;
  }
  auto witness = [&](std::size_t i) {
    return EventWitness{family.event(i), low_mass[i], high_mass[i]};
  };

  DominanceVerdict verdict;
  if (!first_up && !first_down) {
    verdict.relation = Relation::Equal;
  } else if (first_up && first_down) {
    verdict.relation = Relation::Incomparable;
    verdict.witness = witness(*first_down);
    verdict.counter_witness = witness(*first_up);
  } else {
    const bool up = first_up.has_value();
    const bool all_strict = !first_equal;
    if (strictness == Strictness::OneEvent || all_strict) {
      verdict.relation = up ? Relation::StrictlyBelow : Relation::StrictlyAbove;
      verdict.witness = witness(up ? *first_up : *first_down);
    } else {
      verdict.relation = up ? Relation::WeaklyBelow : Relation::WeaklyAbove;
      verdict.witness = witness(*first_equal);
    }
  }
  return verdict;
}

DominanceVerdict compare(const Belief& low, const Belief& high, UpperFamilyKind kind,
                         Strictness strictness, std::size_t cap) {
  return compare(low, high, EventFamily(low.space_ptr(), kind, cap), strictness);
}

StrongCwVerdict compare_strong_cw(const Belief& low, const Belief& high) {
  if (!same_space(low.space_ptr(), high.space_ptr())) {
    throw Error("compare_strong_cw: beliefs must share one state space");
  }
  StrongCwVerdict verdict;
  bool first = true;
  for (std::size_t axis = 0; axis < low.space().dims(); ++axis) {
    const auto lo = marginal(low, axis);
    const auto hi = marginal(high, axis);
    for (std::size_t k = 0; k + 1 < lo.cdf.size(); ++k) {
      Rational gap = lo.cdf[k] - hi.cdf[k];
      if (sgn(gap) <= 0 && !verdict.failing_axis) {
        verdict.failing_axis = axis;
        verdict.failing_point = k;
      }
      if (first || gap < verdict.min_gap) verdict.min_gap = gap;
      first = false;
    }
  }
  verdict.holds = !verdict.failing_axis.has_value();
  return verdict;
}

// -- generating functions ----------------------------------------------------

namespace {

void require_size(const StateSpace& space, const StateFunction& u) {
  if (u.size() != space.size()) {
    throw Error("function has " + std::to_string(u.size()) + " values for " +
                std::to_string(space.size()) + " states");
  }
}

void require_product(const StateSpace& space, std::string_view what) {
  if (!space.is_product()) {
    throw PreconditionError(std::string(what) + " is only defined on product state spaces");
  }
}

// State equal to `base` except for coordinate `axis`, which is set to k.
StateIndex replace_coordinate(const StateSpace& space, StateIndex base, std::size_t axis,
                              std::size_t k) {
  std::vector<std::size_t> coords(space.coordinates(base).begin(), space.coordinates(base).end());
  coords[axis] = k;
  return space.index_of(coords);
}

}  // namespace

bool is_increasing(const StateSpace& space, const StateFunction& u) {
  require_size(space, u);
  for (StateIndex a = 0; a < space.size(); ++a) {
    for (StateIndex b = 0; b < space.size(); ++b) {
      if (a != b && space.weakly_below(a, b) && u[a] > u[b]) return false;
    }
  }
  return true;
}

bool is_sum_of_univariate_increasing(const StateSpace& space, const StateFunction& u) {
  require_size(space, u);
  require_product(space, "additive decomposition");
  const StateIndex ref = space.min_state();
  std::vector<std::vector<Rational>> parts(space.dims());
  for (std::size_t i = 0; i < space.dims(); ++i) {
    for (std::size_t k = 0; k < space.axis_size(i); ++k) {
      parts[i].push_back(u[replace_coordinate(space, ref, i, k)] - u[ref]);
      if (k > 0 && parts[i][k] < parts[i][k - 1]) return false;
    }
  }
  for (StateIndex s = 0; s < space.size(); ++s) {
    Rational predicted = u[ref];
    for (std::size_t i = 0; i < space.dims(); ++i) predicted += parts[i][space.coordinate(s, i)];
    if (predicted != u[s]) return false;
  }
  return true;
}

bool is_product_of_nonneg_univariate_increasing(const StateSpace& space, const StateFunction& u) {
  require_size(space, u);
  require_product(space, "multiplicative decomposition");
  for (const auto& v : u) {
    if (sgn(v) < 0) return false;
  }
  // If u factors with nonnegative increasing factors and is not identically
  // zero, it is positive at the maximum state; factor around that state.
  const StateIndex pivot = space.max_state();
  if (sgn(u[pivot]) == 0) {
    for (const auto& v : u) {
      if (sgn(v) != 0) return false;
    }
    return true;
  }
  std::vector<std::vector<Rational>> slices(space.dims());
  for (std::size_t i = 0; i < space.dims(); ++i) {
    for (std::size_t k = 0; k < space.axis_size(i); ++k) {
      slices[i].push_back(u[replace_coordinate(space, pivot, i, k)] / u[pivot]);
      if (k > 0 && slices[i][k] < slices[i][k - 1]) return false;
    }
  }
  for (StateIndex s = 0; s < space.size(); ++s) {
    Rational predicted = u[pivot];
    for (std::size_t i = 0; i < space.dims(); ++i) predicted *= slices[i][space.coordinate(s, i)];
    if (predicted != u[s]) return false;
  }
  return true;
}

bool in_generating_class(const StateSpace& space, UpperFamilyKind kind, const StateFunction& u) {
  switch (kind) {
    case UpperFamilyKind::UpperSet: return is_increasing(space, u);
    case UpperFamilyKind::UpperOrthant: return is_product_of_nonneg_univariate_increasing(space, u);
    case UpperFamilyKind::UpperProjection: return is_sum_of_univariate_increasing(space, u);
  }
  return false;
}

std::vector<StateFunction> canonical_generators(const SpacePtr& space, UpperFamilyKind kind,
                                                std::size_t cap) {
  std::vector<StateFunction> basis;
  for (const auto& event : enumerate_events(space, kind, false, cap)) {
    StateFunction u(space->size(), Rational(0));
    for (StateIndex s : event.members()) u[s] = 1;
    basis.push_back(std::move(u));
  }
  return basis;
}

bool compare_by_generators(const Belief& low, const Belief& high, UpperFamilyKind kind,
                           const std::vector<StateFunction>& basis) {
  if (!same_space(low.space_ptr(), high.space_ptr())) {
    throw Error("compare_by_generators: beliefs must share one state space");
  }
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (!in_generating_class(low.space(), kind, basis[j])) {
      throw PreconditionError("basis function " + std::to_string(j) +
                              " is not in the generating class of the " +
                              std::string(to_string(kind)) + " order");
    }
  }
  for (const auto& u : basis) {
    if (low.expectation(u) > high.expectation(u)) return false;
  }
  return true;
}

}  // namespace polar
