#pragma once

// One-shot and limit polarization detectors and the per-state direction
// analysis of how two agents' beliefs move after a common realization.

#include "polar/bayes.hpp"
#include "polar/core.hpp"
#include "polar/orders.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polar {

enum class PolarizationMode { OneShot, Limit };
std::string_view to_string(PolarizationMode mode);
/// "oneshot" or "limit".
PolarizationMode parse_mode(std::string_view text);

struct PolarizationOptions {
  Strictness strictness = Strictness::OneEvent;
  /// Compare the priors with strong coordinatewise dominance instead of the
  /// chain's own order. Only meaningful for the cw order.
  bool strong_prior = false;
};

/// Chain Q^L ≺ P^L ≺ P^H ≺ Q^H with the evidence for each link.
struct PolarizationReport {
  UpperFamilyKind kind;
  PolarizationMode mode;
  PolarizationOptions options;

  Belief prior_low;
  Belief prior_high;
  Belief posterior_low;
  Belief posterior_high;

  /// Q^L against P^L; the chain needs strictly_below().
  DominanceVerdict low_move;
  /// P^L against P^H in the chain's order.
  DominanceVerdict prior_order;
  /// Present when options.strong_prior is set.
  std::optional<StrongCwVerdict> strong_prior_order;
  /// P^H against Q^H.
  DominanceVerdict high_move;

  /// Limit mode with the cw order: P^L|Γᶜ against P^L|Γ and P^H|Γ against
  /// P^H|Γᶜ, which must agree with the weak parts of low_move / high_move.
  std::optional<DominanceVerdict> conditional_low;
  std::optional<DominanceVerdict> conditional_high;

  bool verdict = false;

  bool prior_link_holds() const {
    return strong_prior_order ? strong_prior_order->holds : prior_order.strictly_below();
  }
  /// The first failing link ("low", "prior", "high") with its event, or
  /// nothing when the verdict is true.
  std::optional<std::pair<std::string, std::optional<EventWitness>>> failure() const;
};

PolarizationReport one_shot(const EventFamily& family, const Belief& pl, const Belief& ph,
                            const LikelihoodFn& ell, PolarizationOptions options = {});
PolarizationReport one_shot(UpperFamilyKind kind, const Belief& pl, const Belief& ph,
                            const LikelihoodFn& ell, PolarizationOptions options = {});

PolarizationReport limit(const EventFamily& family, const Belief& pl, const Belief& ph,
                         const StateSubset& gamma, PolarizationOptions options = {});
PolarizationReport limit(UpperFamilyKind kind, const Belief& pl, const Belief& ph,
                         const StateSubset& gamma, PolarizationOptions options = {});

/// Limit cw polarization with the strong prior link.
PolarizationReport strong_cw_limit(const Belief& pl, const Belief& ph, const StateSubset& gamma);

/// Sign of Q(θ) − P(θ) per state for two agents updating on the same ℓ.
struct DirectionAnalysis {
  std::vector<int> first;
  std::vector<int> second;
  StateSubset min_likelihood;
  StateSubset max_likelihood;
  /// ℓ is not constant, so beliefs move.
  bool moved = false;
  /// Both agents move down on every min-likelihood state and up on every
  /// max-likelihood state (vacuous when nothing moves).
  bool extremes_agree = true;
  /// Pairs (θ, θ′) where θ shows first-down/second-up divergence and θ′ the
  /// reverse one.
  std::vector<std::pair<StateIndex, StateIndex>> violations;

  bool consistent() const { return extremes_agree && violations.empty(); }
  /// States where the agents move in strictly opposite directions.
  StateSubset opposite_states() const;
};

DirectionAnalysis direction_analysis(const Belief& p, const Belief& pprime, const LikelihoodFn& ell);

}  // namespace polar
