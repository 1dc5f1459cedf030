#pragma once

// Event families (upper sets, upper orthants, upper projections) and the
// dominance comparators they define.

#include "polar/core.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polar {

enum class UpperFamilyKind { UpperSet, UpperOrthant, UpperProjection };

/// "st", "uo" or "cw".
std::string_view to_string(UpperFamilyKind kind);
/// Accepts the short names above. Throws polar::Error otherwise.
UpperFamilyKind parse_family_kind(std::string_view text);

inline constexpr std::size_t kDefaultUpperSetCap = 1'000'000;

/// Calls `visit` once per distinct event of the family. Stops early when
/// `visit` returns false. Throws CapExceededError once more than `cap` upper
/// sets would be produced (the cap only applies to UpperSet).
void for_each_event(const SpacePtr& space, UpperFamilyKind kind, bool include_trivial,
                    const std::function<bool(const StateSubset&)>& visit,
                    std::size_t cap = kDefaultUpperSetCap);

std::vector<StateSubset> enumerate_events(const SpacePtr& space, UpperFamilyKind kind,
                                          bool include_trivial = false,
                                          std::size_t cap = kDefaultUpperSetCap);

/// Up-closure {θ : θ ≥ s for some s in `seeds`}.
StateSubset up_closure(const StateSubset& seeds);
bool is_upper_set(const StateSubset& subset);

/// The proper nonempty events of one family, materialized once so repeated
/// comparisons do not re-enumerate.
class EventFamily {
 public:
  EventFamily(SpacePtr space, UpperFamilyKind kind, std::size_t cap = kDefaultUpperSetCap);

  UpperFamilyKind kind() const { return kind_; }
  const SpacePtr& space_ptr() const { return space_; }
  std::size_t size() const { return events_.size(); }
  const std::vector<StateSubset>& events() const { return events_; }
  const StateSubset& event(std::size_t i) const { return events_[i]; }
  const std::vector<StateIndex>& members(std::size_t i) const { return members_[i]; }

 private:
  SpacePtr space_;
  UpperFamilyKind kind_;
  std::vector<StateSubset> events_;
  std::vector<std::vector<StateIndex>> members_;
};

enum class Relation { StrictlyBelow, WeaklyBelow, Equal, Incomparable, WeaklyAbove, StrictlyAbove };
std::string_view to_string(Relation relation);

/// How ≺ is read. OneEvent: weak dominance on every event and strict on at
/// least one. AllEvents: strict on every proper nonempty event of the family;
/// weak-but-not-everywhere-strict comparisons then report Weakly*.
enum class Strictness { OneEvent, AllEvents };
std::string_view to_string(Strictness strictness);

struct EventWitness {
  StateSubset event;
  Rational low_mass;
  Rational high_mass;
};

struct DominanceVerdict {
  Relation relation = Relation::Equal;
  /// Incomparable: an event with low > high. Strictly*: an event where the
  /// inequality is strict. Weakly*: an event where it is an equality.
  std::optional<EventWitness> witness;
  /// Incomparable only: an event with low < high.
  std::optional<EventWitness> counter_witness;

  /// low ≼ high.
  bool below() const {
    return relation == Relation::StrictlyBelow || relation == Relation::WeaklyBelow ||
           relation == Relation::Equal;
  }
  /// low ≺ high.
  bool strictly_below() const { return relation == Relation::StrictlyBelow; }
};

DominanceVerdict compare(const Belief& low, const Belief& high, const EventFamily& family,
                         Strictness strictness = Strictness::OneEvent);
DominanceVerdict compare(const Belief& low, const Belief& high, UpperFamilyKind kind,
                         Strictness strictness = Strictness::OneEvent,
                         std::size_t cap = kDefaultUpperSetCap);

/// Strong coordinatewise dominance: F_low(k) > F_high(k) at every interior
/// cdf point k of every axis marginal.
struct StrongCwVerdict {
  bool holds = false;
  std::optional<std::size_t> failing_axis;
  /// Zero-based index k of the failing cdf point F(k).
  std::optional<std::size_t> failing_point;
  /// min over axes and interior points of F_low(k) − F_high(k).
  Rational min_gap;
};

StrongCwVerdict compare_strong_cw(const Belief& low, const Belief& high);

// -- generating functions ----------------------------------------------------

/// Per-state function values in flat state order.
using StateFunction = std::vector<Rational>;

/// u(a) ≤ u(b) whenever a ≤ b.
bool is_increasing(const StateSpace& space, const StateFunction& u);
/// u(θ) = Σ_i f_i(θ_i) with every f_i nondecreasing. Product spaces only.
bool is_sum_of_univariate_increasing(const StateSpace& space, const StateFunction& u);
/// u(θ) = Π_i g_i(θ_i) with every g_i nonnegative and nondecreasing. Product
/// spaces only.
bool is_product_of_nonneg_univariate_increasing(const StateSpace& space, const StateFunction& u);

/// Function class that generates the order of `kind`: increasing functions
/// (st), products of nonnegative univariate increasing functions (uo), sums of
/// univariate increasing functions (cw).
bool in_generating_class(const StateSpace& space, UpperFamilyKind kind, const StateFunction& u);

/// Indicators of the family's proper nonempty events.
std::vector<StateFunction> canonical_generators(const SpacePtr& space, UpperFamilyKind kind,
                                                std::size_t cap = kDefaultUpperSetCap);

/// True iff E_low[u] ≤ E_high[u] for every u in `basis`. Throws
/// PreconditionError when a basis function is outside the order's class.
bool compare_by_generators(const Belief& low, const Belief& high, UpperFamilyKind kind,
                           const std::vector<StateFunction>& basis);

}  // namespace polar
