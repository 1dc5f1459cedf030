#pragma once

// Scenario documents: JSON with rationals written as "p/q" strings and state
// vectors in row-major order over the index lattice (last axis fastest).

#include "polar/actions.hpp"
#include "polar/bayes.hpp"
#include "polar/core.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polar::cli {

using Json = nlohmann::ordered_json;

/// Malformed scenario; the message starts with the offending field path.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct SignalSpec {
  std::vector<std::string> realizations;
  /// table[x][θ] = ℓ(x; θ).
  std::vector<std::vector<Rational>> table;
};

struct UtilitySpec {
  std::string name;
  UtilityFamilyKind family;
  std::vector<Rational> values;
};

struct Scenario {
  std::string name;
  std::optional<std::uint64_t> seed;
  SpacePtr space;
  /// Arbitrary point set instead of a product of axes.
  bool points = false;

  std::optional<std::vector<Rational>> prior_low;
  std::optional<std::vector<Rational>> prior_high;
  std::optional<std::vector<Rational>> likelihood;
  std::optional<std::vector<StateIndex>> identified_set;
  std::optional<SignalSpec> signal;
  std::optional<StateIndex> truth;
  std::vector<UtilitySpec> utilities;
  std::vector<Rational> deltas;

  Belief low() const;
  Belief high() const;
  LikelihoodFn likelihood_fn() const;
  StateSubset gamma() const;
  Signal signal_fn() const;
  std::vector<UtilityFn> utility_fns() const;
};

Scenario parse_scenario(const Json& doc);
Scenario parse_scenario_text(const std::string& text);
Json serialize(const Scenario& scenario);

Json rational_json(const Rational& value);
Json rationals_json(const std::vector<Rational>& values);
Json belief_json(const Belief& belief);
/// Labels "(i,j)" of every state in flat order.
Json states_json(const StateSpace& space);
Json subset_json(const StateSubset& subset);

}  // namespace polar::cli
