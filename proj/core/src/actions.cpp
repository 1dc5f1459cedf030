#include "polar/actions.hpp"

#include "polar/classifier.hpp"
#include "polar/construct.hpp"
#include "polar/errors.hpp"

#include <random>
#include <stdexcept>

namespace polar {

std::string_view to_string(UtilityFamilyKind kind) {
  switch (kind) {
    case UtilityFamilyKind::SumsOfIncreasing: return "sums";
    case UtilityFamilyKind::ProductsOfNonnegIncreasing: return "products";
    case UtilityFamilyKind::Increasing: return "increasing";
  }
  return "?";
}

UtilityFamilyKind parse_utility_family(std::string_view text) {
  if (text == "sums") return UtilityFamilyKind::SumsOfIncreasing;
  if (text == "products") return UtilityFamilyKind::ProductsOfNonnegIncreasing;
  if (text == "increasing") return UtilityFamilyKind::Increasing;
  throw Error("unknown utility family '" + std::string(text) +
              "' (expected sums, products or increasing)");
}

UpperFamilyKind generated_order(UtilityFamilyKind kind) {
  switch (kind) {
    case UtilityFamilyKind::SumsOfIncreasing: return UpperFamilyKind::UpperProjection;
    case UtilityFamilyKind::ProductsOfNonnegIncreasing: return UpperFamilyKind::UpperOrthant;
    case UtilityFamilyKind::Increasing: return UpperFamilyKind::UpperSet;
  }
  return UpperFamilyKind::UpperSet;
}

UtilityFn::UtilityFn(SpacePtr space, std::vector<Rational> values, UtilityFamilyKind kind)
    : space_(std::move(space)), values_(std::move(values)), kind_(kind) {
  if (!space_) throw Error("utility needs a state space");
  if (!in_generating_class(*space_, generated_order(kind_), values_)) {
    throw PreconditionError("utility values are not in the " + std::string(to_string(kind_)) +
                            " family");
  }
}

bool UtilityFn::is_constant() const {
  for (const auto& v : values_) {
    if (v != values_.front()) return false;
  }
  return true;
}

namespace {

ActionMovement movement(const std::vector<Rational>& u, const Belief& pl, const Belief& ph,
                        const Belief& ql, const Belief& qh) {
  ActionMovement m{pl.expectation(u), ql.expectation(u), ph.expectation(u), qh.expectation(u), false};
  m.polarizes = m.low_posterior < m.low_prior && m.high_posterior > m.high_prior;
  return m;
}

}  // namespace

ActionMovement action_polarizes(const UtilityFn& u, const Belief& pl, const Belief& ph,
                                const LikelihoodFn& ell) {
  return movement(u.values(), pl, ph, update(pl, ell), update(ph, ell));
}

ActionMovement action_polarizes(const UtilityFn& u, const Belief& pl, const Belief& ph,
                                const StateSubset& gamma) {
  return movement(u.values(), pl, ph, limit_posterior(pl, gamma), limit_posterior(ph, gamma));
}

std::vector<Rational> random_family_member(const StateSpace& space, UtilityFamilyKind kind,
                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> step(0, 3);
  const std::size_t d = space.dims();
  while (true) {
    std::vector<Rational> u(space.size(), Rational(0));
    if (kind == UtilityFamilyKind::Increasing) {
      std::uniform_int_distribution<std::size_t> pick(0, space.size() - 1);
      std::uniform_int_distribution<int> weight(1, 5);
      for (int term = 0; term < 3; ++term) {
        StateSubset seeds(std::make_shared<const StateSpace>(space));
        seeds.insert(pick(rng));
        if (pick(rng) % 2 == 0) seeds.insert(pick(rng));
        const auto upper = up_closure(seeds);
        const int w = weight(rng);
        for (StateIndex s : upper.members()) u[s] += w;
      }
    } else {
      std::vector<std::vector<Rational>> parts(d);
      for (std::size_t i = 0; i < d; ++i) {
        Rational running = kind == UtilityFamilyKind::SumsOfIncreasing ? 0 : step(rng);
        for (std::size_t k = 0; k < space.axis_size(i); ++k) {
          if (k > 0) running += step(rng);
          parts[i].push_back(running);
        }
      }
      for (StateIndex s = 0; s < space.size(); ++s) {
        Rational value = kind == UtilityFamilyKind::SumsOfIncreasing ? 0 : 1;
        for (std::size_t i = 0; i < d; ++i) {
          if (kind == UtilityFamilyKind::SumsOfIncreasing) {
            value += parts[i][space.coordinate(s, i)];
          } else {
            value *= parts[i][space.coordinate(s, i)];
          }
        }
        u[s] = value;
      }
    }
    for (const auto& v : u) {
      if (v != u.front()) return u;
    }
  }
}

namespace {

std::vector<std::vector<Rational>> nonconstant_basis(const SpacePtr& space, UtilityFamilyKind kind) {
  return canonical_generators(space, generated_order(kind));
}

// Every basis function and `members` random family members polarize.
bool verify_instance(const FamilyInstance& instance, UtilityFamilyKind kind,
                     const std::vector<std::vector<Rational>>& basis,
                     const FamilySearchConfig& config, std::size_t& checked) {
  const Belief ql = update(instance.pl, instance.ell);
  const Belief qh = update(instance.ph, instance.ell);
  for (const auto& u : basis) {
    ++checked;
    if (!movement(u, instance.pl, instance.ph, ql, qh).polarizes) return false;
  }
  for (std::size_t j = 0; j < config.random_members; ++j) {
    const auto u = random_family_member(instance.pl.space(), kind, config.seed + j);
    ++checked;
    if (!movement(u, instance.pl, instance.ph, ql, qh).polarizes) return false;
  }
  return true;
}

Belief random_prior(const SpacePtr& space, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> weight(1, 1000);
  std::vector<Rational> w(space->size());
  for (auto& v : w) v = weight(rng);
  return Belief::from_weights(space, std::move(w));
}

}  // namespace

FamilySearchResult family_polarization_search(UtilityFamilyKind kind, PolarizationMode mode,
                                              const SpacePtr& space,
                                              const FamilySearchConfig& config) {
  FamilySearchResult result{kind, mode, std::nullopt, 0, 0, 0, 0};
  const auto basis = nonconstant_basis(space, kind);
  result.basis_size = basis.size();

  if (kind == UtilityFamilyKind::SumsOfIncreasing) {
    // Strong coordinatewise polarization moves every nonconstant additive
    // utility strictly. Take the first identified set that admits it; the
    // one-shot cell reuses the priors with the 0/1 likelihood of that set.
    if (space->dims() != 2 || !space->is_product() || space->size() > 20) {
      throw PreconditionError("additive instances are searched on small 2-D grids");
    }
    std::optional<StateSubset> chosen;
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << space->size()) && !chosen; ++mask) {
      StateSubset candidate(space);
      for (StateIndex s = 0; s < space->size(); ++s) {
        if (mask >> s & 1U) candidate.insert(s);
      }
      if (classify(candidate).can_strongly_polarize) chosen = candidate;
    }
    if (!chosen) return result;
    const StateSubset gamma = *chosen;
    auto built = attempt_polarizing_priors(gamma);
    if (!built) return result;
    FamilyInstance instance{built->pl, built->ph, LikelihoodFn::indicator(gamma),
                            mode == PolarizationMode::Limit ? std::optional(gamma) : std::nullopt};
    if (verify_instance(instance, kind, basis, config, result.members_checked)) {
      result.instance = std::move(instance);
    }
    return result;
  }

  if (kind == UtilityFamilyKind::ProductsOfNonnegIncreasing && mode == PolarizationMode::OneShot) {
    for (long n = 3; n <= 100'000; ++n) {
      auto built = extreme_oneshot_instance(space, ratio(1, 2), n);
      if (!built.certificate.verdict) continue;
      FamilyInstance instance{built.pl, built.ph, built.ell, std::nullopt};
      std::size_t checked = 0;
      if (verify_instance(instance, kind, basis, config, checked)) {
        result.members_checked = checked;
        result.instance = std::move(instance);
        return result;
      }
    }
    return result;
  }

  // Impossible cells: a trial is positive when every generator polarizes.
  std::vector<std::vector<StateIndex>> supports;
  for (const auto& u : basis) {
    std::vector<StateIndex> members;
    for (StateIndex s = 0; s < u.size(); ++s) {
      if (sgn(u[s]) != 0) members.push_back(s);
    }
    supports.push_back(std::move(members));
  }
  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<int> level(0, 8);
  std::uniform_int_distribution<int> coin(0, 1);
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    const Belief pl = random_prior(space, rng);
    const Belief ph = random_prior(space, rng);
    std::optional<Belief> ql;
    std::optional<Belief> qh;
    if (mode == PolarizationMode::OneShot) {
      std::vector<Rational> ell(space->size());
      bool positive = false;
      for (auto& v : ell) {
        v = ratio(level(rng), 8);
        positive = positive || sgn(v) > 0;
      }
      if (!positive) ell.front() = 1;
      const LikelihoodFn likelihood(space, std::move(ell));
      ql = update(pl, likelihood);
      qh = update(ph, likelihood);
    } else {
      StateSubset gamma(space);
      for (StateIndex s = 0; s < space->size(); ++s) {
        if (coin(rng)) gamma.insert(s);
      }
      if (gamma.empty()) gamma.insert(space->min_state());
      ql = limit_posterior(pl, gamma);
      qh = limit_posterior(ph, gamma);
    }
    ++result.trials_run;
    bool all = true;
    for (const auto& members : supports) {
      if (!(ql->probability(members) < pl.probability(members) &&
            qh->probability(members) > ph.probability(members))) {
        all = false;
        break;
      }
    }
    if (all) ++result.positives;
  }
  return result;
}

std::pair<Belief, Belief> tradeoff_priors(const Rational& delta) {
  if (sgn(delta) <= 0 || delta >= 1) throw PreconditionError("delta must lie in (0,1)");
  const auto space = make_grid({2, 2});
  // Flat order: (1,1), (1,2), (2,1), (2,2).
  const Rational keep = 1 - delta;
  const Rational side = delta / 2;
  Belief low(space, {keep * ratio(3, 4), side, side, keep * ratio(1, 4)});
  Belief high(space, {keep * ratio(1, 4), side, side, keep * ratio(3, 4)});
  return {std::move(low), std::move(high)};
}

std::vector<TradeoffRow> tradeoff_curve(const std::vector<Rational>& deltas) {
  std::vector<TradeoffRow> rows;
  for (const auto& delta : deltas) {
    auto [pl, ph] = tradeoff_priors(delta);
    const auto& space = pl.space_ptr();
    const StateSubset gamma(space, {space->index_of({0, 0}), space->index_of({1, 1})});
    const EventFamily cw(space, UpperFamilyKind::UpperProjection);
    auto inside = limit(cw, pl, ph, gamma);

    std::optional<Rational> magnitude;
    for (std::size_t axis = 0; axis < 2; ++axis) {
      const Rational m = marginal(inside.posterior_low, axis).cdf[0] -
                         marginal(inside.posterior_high, axis).cdf[0] -
                         (marginal(pl, axis).cdf[0] - marginal(ph, axis).cdf[0]);
      if (magnitude && *magnitude != m) {
        throw std::logic_error("tradeoff_curve: axes disagree on the magnitude");
      }
      magnitude = m;
    }
    const Rational gamma_probability = pl.probability(gamma);
    if (*magnitude != delta / 2 || gamma_probability != 1 - delta ||
        ph.probability(gamma) != gamma_probability) {
      throw std::logic_error("tradeoff_curve: row deviates from M = δ/2, P(Γ) = 1 − δ");
    }

    bool outside_full = false;
    for (StateIndex s : gamma.complement().members()) {
      const auto reveal = LikelihoodFn::indicator(StateSubset(space, {s}));
      outside_full = outside_full || one_shot(cw, pl, ph, reveal).verdict;
    }
    const bool outside_complement =
        one_shot(cw, pl, ph, LikelihoodFn::indicator(gamma.complement())).verdict;

    rows.push_back(TradeoffRow{delta, *magnitude, gamma_probability, inside.posterior_low,
                               inside.posterior_high, inside.verdict, outside_full,
                               outside_complement});
  }
  return rows;
}

}  // namespace polar
