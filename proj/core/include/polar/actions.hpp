#pragma once

// Expected-utility layer: utility families, action polarization for a single
// utility or a whole family, and the probability/magnitude tradeoff of the
// symmetric 2×2 example.

#include "polar/bayes.hpp"
#include "polar/core.hpp"
#include "polar/orders.hpp"
#include "polar/polarization.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace polar {

enum class UtilityFamilyKind { SumsOfIncreasing, ProductsOfNonnegIncreasing, Increasing };
/// "sums", "products" or "increasing".
std::string_view to_string(UtilityFamilyKind kind);
UtilityFamilyKind parse_utility_family(std::string_view text);
/// The order whose generating class is this family.
UpperFamilyKind generated_order(UtilityFamilyKind kind);

class UtilityFn {
 public:
  /// Throws PreconditionError when `values` is not in the declared family.
  UtilityFn(SpacePtr space, std::vector<Rational> values, UtilityFamilyKind kind);

  const std::vector<Rational>& values() const { return values_; }
  UtilityFamilyKind kind() const { return kind_; }
  const SpacePtr& space_ptr() const { return space_; }
  bool is_constant() const;

 private:
  SpacePtr space_;
  std::vector<Rational> values_;
  UtilityFamilyKind kind_;
};

struct ActionMovement {
  Rational low_prior;
  Rational low_posterior;
  Rational high_prior;
  Rational high_posterior;
  /// low_posterior < low_prior and high_posterior > high_prior.
  bool polarizes = false;
};

ActionMovement action_polarizes(const UtilityFn& u, const Belief& pl, const Belief& ph,
                                const LikelihoodFn& ell);
ActionMovement action_polarizes(const UtilityFn& u, const Belief& pl, const Belief& ph,
                                const StateSubset& gamma);

struct FamilyInstance {
  Belief pl;
  Belief ph;
  /// One-shot realization likelihood; for limit instances the indicator of gamma.
  LikelihoodFn ell;
  std::optional<StateSubset> gamma;
};

struct FamilySearchConfig {
  std::size_t trials = 100'000;
  std::uint64_t seed = 1;
  /// Random family members checked against a found instance.
  std::size_t random_members = 200;
};

struct FamilySearchResult {
  UtilityFamilyKind kind;
  PolarizationMode mode;
  std::optional<FamilyInstance> instance;
  /// Nonconstant canonical generators every instance is checked against.
  std::size_t basis_size = 0;
  std::size_t members_checked = 0;
  /// Random trials of the impossibility sweep (zero for possible cells).
  std::size_t trials_run = 0;
  /// Trials where every basis function polarized; expected empty.
  std::size_t positives = 0;
};

/// Whether the family admits priors and a realization polarizing every one
/// of its members. Possible cells return a verified instance; impossible
/// cells run a seeded random search and report any positives.
FamilySearchResult family_polarization_search(UtilityFamilyKind kind, PolarizationMode mode,
                                              const SpacePtr& space,
                                              const FamilySearchConfig& config = {});

/// Random nonconstant member of the family, for evidence checks.
std::vector<Rational> random_family_member(const StateSpace& space, UtilityFamilyKind kind,
                                           std::uint64_t seed);

/// Priors of the symmetric 2×2 example with parameter δ ∈ (0,1).
std::pair<Belief, Belief> tradeoff_priors(const Rational& delta);

struct TradeoffRow {
  Rational delta;
  /// Growth of the marginal gap at the bottom value: δ/2.
  Rational magnitude;
  /// P^L(Γ) = P^H(Γ) = 1 − δ for the diagonal Γ.
  Rational gamma_probability;
  Belief posterior_low;
  Belief posterior_high;
  bool polarizes_inside = false;
  /// Whether any realization outside Γ polarizes, per signal variant.
  bool polarizes_outside_full = false;
  bool polarizes_outside_complement = false;
};

/// Throws PreconditionError when a δ is outside (0,1); throws
/// std::logic_error if a row deviates from the closed forms.
std::vector<TradeoffRow> tradeoff_curve(const std::vector<Rational>& deltas);

}  // namespace polar
