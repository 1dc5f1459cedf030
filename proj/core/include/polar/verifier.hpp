#pragma once

// Batch certification harness: exhaustive and seeded random sweeps over
// priors and signals for one (order, mode) cell, plus the per-state direction
// sweep.

#include "polar/bayes.hpp"
#include "polar/core.hpp"
#include "polar/orders.hpp"
#include "polar/polarization.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace polar {

struct SweepConfig {
  SpacePtr space;
  UpperFamilyKind kind = UpperFamilyKind::UpperSet;
  PolarizationMode mode = PolarizationMode::OneShot;
  /// Limit cw sweeps: require strong coordinatewise prior ordering, and only
  /// draw prior pairs that satisfy it.
  bool strong_prior = false;
  /// Random trials; ignored when denominator_bound > 0.
  std::size_t trials = 1000;
  /// > 0 selects the exhaustive grid: every full-support prior whose masses
  /// are k/D with D ≤ bound, paired with every likelihood on the level grid
  /// (one-shot) or every nonempty identified set (limit).
  std::size_t denominator_bound = 0;
  /// Exhaustive likelihood grid {0, 1/(L−1), …, 1}.
  std::size_t likelihood_levels = 3;
  std::uint64_t seed = 1;
  std::size_t upper_set_cap = kDefaultUpperSetCap;
  /// Limit sweeps: fix the identified set instead of drawing it.
  std::optional<StateSubset> gamma;
};

/// Inputs of one positive trial, enough to replay it.
struct SweepHit {
  std::size_t trial = 0;
  Belief pl;
  Belief ph;
  std::optional<LikelihoodFn> ell;
  std::optional<StateSubset> gamma;
};

struct SweepReport {
  SweepConfig config;
  std::size_t trials_run = 0;
  std::vector<SweepHit> hits;
  double elapsed_seconds = 0;
  /// The cell is impossible (st in either mode, uo limit), so any hit is a
  /// counterexample and fails the run.
  bool expected_empty = false;
  bool passed() const { return !expected_empty || hits.empty(); }
};

/// Cells where polarization cannot occur: st in both modes and uo limit.
bool cell_is_impossible(UpperFamilyKind kind, PolarizationMode mode);

/// Deterministic given the config. Throws PreconditionError for an invalid
/// config (no trials, non-product space outside the st cell, …).
SweepReport sweep(const SweepConfig& config);

/// Re-evaluates a hit through the polarization module.
bool replay(const SweepConfig& config, const SweepHit& hit);

/// Random (P, P′, ℓ) trials checked with direction_analysis; any
/// inconsistency is recorded as a hit and fails the run. The space may be an
/// arbitrary finite point set.
SweepReport direction_sweep(const SweepConfig& config);

/// Three-level likelihood (1/4 at the first state, 1 at the last, 1/2
/// elsewhere) with priors that put their weight on opposite ends, so the
/// agents move in opposite directions on every other state.
struct DirectionWitness {
  Belief p;
  Belief pprime;
  LikelihoodFn ell;
  DirectionAnalysis analysis;
};
DirectionWitness opposite_direction_witness(const SpacePtr& space);

/// All full-support beliefs with masses k/D, D ≤ bound, without duplicates.
std::vector<Belief> grid_beliefs(const SpacePtr& space, std::size_t denominator_bound);

}  // namespace polar
