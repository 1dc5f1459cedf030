#pragma once

// Constructive prior builders: strongly ordered distributions on dominating
// antichains, polarizing priors for an identified set, and the explicit
// diagonal-pair and one-shot upper-orthant instances.

#include "polar/bayes.hpp"
#include "polar/classifier.hpp"
#include "polar/core.hpp"
#include "polar/polarization.hpp"

#include <optional>

namespace polar {

struct AcDistributions {
  /// Full support on the lower antichain.
  Belief lower;
  /// Full support on the upper antichain; lower ≺*cw upper.
  Belief upper;
};

/// Throws PreconditionError unless `upper` antichain-dominates `lower`.
AcDistributions ac_distributions(const StateSubset& lower, const StateSubset& upper);

struct ConstructionResult {
  Belief pl;
  Belief ph;
  /// Guaranteed strong-dominance margin used to size the mixture.
  Rational epsilon;
  std::optional<Rational> delta;
  std::optional<long> n;
  PolarizationReport certificate;
  /// Q^L ≺*cw P^L and P^H ≺*cw Q^H, when computed.
  std::optional<StrongCwVerdict> strong_low_move;
  std::optional<StrongCwVerdict> strong_high_move;
};

/// Priors under which observing gamma produces strong coordinatewise
/// polarization. Throws PreconditionError when classify(gamma) says no such
/// priors exist.
ConstructionResult build_polarizing_priors(const StateSubset& gamma);

/// Same construction without the classify gate: returns nothing when one of
/// the three antichain-dominance relations the construction relies on fails.
std::optional<ConstructionResult> attempt_polarizing_priors(const StateSubset& gamma);

/// max over axes of |Θ|(n_i − 2) / (n_i(|Θ| − 2)).
Rational diagonal_threshold(const StateSpace& space);

/// Mirror-image priors 1/|Θ| ± ε/|Θ| on the extreme states, uniform
/// elsewhere, and identified set {θ̲, θ̄}. The certificate is the cw limit
/// report; it holds iff ε ≥ diagonal_threshold.
ConstructionResult diagonal_instance(const SpacePtr& space, const Rational& epsilon);

struct OneShotInstance {
  Belief pl;
  Belief ph;
  LikelihoodFn ell;
  Rational epsilon;
  long n;
  PolarizationReport certificate;
};

/// Priors concentrated on the extremes at rate 1/n with a likelihood equal to
/// 1 at θ̲, 1 − ε at θ̄ and 0 elsewhere. Polarizes under `kind` (upper
/// orthants by default) for n large enough.
OneShotInstance extreme_oneshot_instance(const SpacePtr& space, const Rational& epsilon, long n,
                                         UpperFamilyKind kind = UpperFamilyKind::UpperOrthant);

/// Smallest n ≥ 3 whose upper-orthant instance polarizes, searching up to max_n.
std::optional<OneShotInstance> find_n(const SpacePtr& space, const Rational& epsilon,
                                      long max_n = 100'000);

}  // namespace polar
