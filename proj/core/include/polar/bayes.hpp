#pragma once

// Likelihoods, signals, Bayesian updating, identified sets, limit posteriors
// and i.i.d. signal simulation.

#include "polar/core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace polar {

/// Probability ℓ(θ) of one fixed realization in each state.
class LikelihoodFn {
 public:
  /// Values must lie in [0, 1] with at least one positive value.
  LikelihoodFn(SpacePtr space, std::vector<Rational> values);

  /// 1 on `subset`, 0 elsewhere.
  static LikelihoodFn indicator(const StateSubset& subset);
  static LikelihoodFn constant(SpacePtr space, const Rational& value);

  const Rational& operator[](StateIndex s) const { return values_[s]; }
  const std::vector<Rational>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  const StateSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }

  Rational min_value() const;
  Rational max_value() const;
  StateSubset argmin() const;
  StateSubset argmax() const;
  bool is_constant() const;

 private:
  SpacePtr space_;
  std::vector<Rational> values_;
};

/// Family of likelihoods indexed by realization; each state's column sums to 1.
class Signal {
 public:
  Signal(SpacePtr space, std::vector<std::string> realizations, std::vector<std::vector<Rational>> table);

  const std::vector<std::string>& realizations() const { return realizations_; }
  std::size_t realization_count() const { return realizations_.size(); }
  /// ℓ(x; ·) for realization x.
  LikelihoodFn likelihood(std::size_t realization) const;
  const Rational& probability(std::size_t realization, StateIndex s) const { return table_[realization][s]; }
  const StateSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }

 private:
  SpacePtr space_;
  std::vector<std::string> realizations_;
  std::vector<std::vector<Rational>> table_;
};

/// What a partitional signal reveals about states outside the identified set.
enum class OutsideRevelation {
  /// Every state outside Γ is revealed exactly.
  FullRevelation,
  /// Only the fact that the state lies in Γᶜ is revealed.
  ComplementOnly,
};

/// 0/1 signal with realization "in" on Γ; outside Γ per `outside`.
Signal partitional_signal(const StateSubset& gamma,
                          OutsideRevelation outside = OutsideRevelation::ComplementOnly);

/// Q(θ) = P(θ)ℓ(θ) / Σ P(θ′)ℓ(θ′). Throws NullEventError when the evidence
/// probability is zero.
Belief update(const Belief& prior, const LikelihoodFn& ell);

/// Whether update(prior, ell)(a) > prior(a). Evaluated both directly and via
/// E[ℓ | a] > E[ℓ]; a disagreement throws std::logic_error.
bool posterior_increases(const Belief& prior, const LikelihoodFn& ell, const StateSubset& a);

/// {θ : ℓ(x;θ) = ℓ(x;truth) for every realization x}.
StateSubset identified_set(const Signal& signal, StateIndex truth);

/// prior conditioned on gamma.
Belief limit_posterior(const Belief& prior, const StateSubset& gamma);

struct TrajectoryRecord {
  std::size_t time = 0;
  /// Realization drawn at this step; empty for the initial record.
  std::optional<std::size_t> realization;
  Belief posterior;
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;
  Belief limit;
  Rational final_distance;
};

/// Draws `horizon` i.i.d. realizations from ℓ(·; truth) and updates after
/// each draw. records[0] is the prior. Deterministic given `seed`.
Trajectory simulate(const Belief& prior, const Signal& signal, StateIndex truth,
                    std::size_t horizon, std::uint64_t seed);

}  // namespace polar
