#include "polar/construct.hpp"

#include "polar/errors.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace polar {

namespace {

using Masses = std::vector<Rational>;

Masses dirac_masses(std::size_t n, StateIndex s) {
  Masses m(n, Rational(0));
  m[s] = 1;
  return m;
}

Masses uniform_masses(std::size_t n, const std::vector<StateIndex>& support) {
  Masses m(n, Rational(0));
  for (StateIndex s : support) m[s] = ratio(1, static_cast<long>(support.size()));
  return m;
}

Masses mix(const Rational& keep, const Masses& base, const Masses& extra) {
  Masses out(base.size());
  for (std::size_t s = 0; s < base.size(); ++s) out[s] = keep * base[s] + (1 - keep) * extra[s];
  return out;
}

// min over axes and interior box points k of F_lower(k) − F_upper(k).
Rational box_gap(const StateSpace& space, const Masses& lower, const Masses& upper,
                 const GridBox& box) {
  std::optional<Rational> gap;
  for (std::size_t axis = 0; axis < space.dims(); ++axis) {
    Masses lo(space.axis_size(axis), Rational(0));
    Masses hi(space.axis_size(axis), Rational(0));
    for (StateIndex s = 0; s < space.size(); ++s) {
      lo[space.coordinate(s, axis)] += lower[s];
      hi[space.coordinate(s, axis)] += upper[s];
    }
    Rational f_lo = 0;
    Rational f_hi = 0;
    for (std::size_t k = 0; k < box.hi[axis]; ++k) {
      f_lo += lo[k];
      f_hi += hi[k];
      if (k < box.lo[axis]) continue;
      Rational g = f_lo - f_hi;
      if (!gap || g < *gap) gap = g;
    }
  }
  return gap.value_or(Rational(1));
}

class AcRecursion {
 public:
  explicit AcRecursion(const StateSpace& space) : space_(space) {}

  // lower and upper sorted by first coordinate.
  std::pair<Masses, Masses> run(const std::vector<StateIndex>& lower,
                                const std::vector<StateIndex>& upper, const GridBox& box) {
    const std::size_t n = space_.size();
    if (upper.size() == 1) {
      require_corner(upper.front(), box.hi);
      return {uniform_masses(n, lower), dirac_masses(n, upper.front())};
    }
    if (lower.size() == 1) {
      require_corner(lower.front(), box.lo);
      return {dirac_masses(n, lower.front()), uniform_masses(n, upper)};
    }
    const StateIndex d1 = lower[0];
    const StateIndex d2 = lower[1];
    const StateIndex t1 = upper[0];
    const StateIndex t2 = upper[1];
    if (space_.weakly_below(d1, t1) && space_.weakly_below(d1, t2)) {
      // Drop the upper point with the largest second coordinate and shrink
      // the box's second axis to the next one.
      GridBox inner = box;
      inner.hi[1] = space_.coordinate(t2, 1);
      std::vector<StateIndex> rest(upper.begin() + 1, upper.end());
      auto [pa, pb] = run(lower, rest, inner);
      const Rational eps = margin(pa, pb, inner);
      return {std::move(pa), mix(1 - eps, pb, dirac_masses(n, t1))};
    }
    if (space_.weakly_below(d1, t1) && space_.weakly_below(d2, t1)) {
      // Mirror image: drop the lower point with the smallest first
      // coordinate and shrink the box's first axis from below.
      GridBox inner = box;
      inner.lo[0] = space_.coordinate(d2, 0);
      std::vector<StateIndex> rest(lower.begin() + 1, lower.end());
      auto [pa, pb] = run(rest, upper, inner);
      const Rational eps = margin(pa, pb, inner);
      return {mix(1 - eps, pa, dirac_masses(n, d1)), std::move(pb)};
    }
    throw std::logic_error("ac_distributions: neither recursion case applies");
  }

 private:
  void require_corner(StateIndex s, const std::vector<std::size_t>& corner) const {
    for (std::size_t i = 0; i < corner.size(); ++i) {
      if (space_.coordinate(s, i) != corner[i]) {
        throw std::logic_error("ac_distributions: singleton side is not the box corner");
      }
    }
  }

  Rational margin(const Masses& pa, const Masses& pb, const GridBox& box) const {
    const Rational gap = box_gap(space_, pa, pb, box);
    if (sgn(gap) <= 0) throw std::logic_error("ac_distributions: recursive step lost strictness");
    return gap / 4;
  }

  const StateSpace& space_;
};

std::vector<StateIndex> sorted_by_first(const StateSubset& subset) {
  auto members = subset.members();
  const auto& space = subset.space();
  std::sort(members.begin(), members.end(), [&](StateIndex a, StateIndex b) {
    return space.coordinate(a, 0) < space.coordinate(b, 0);
  });
  return members;
}

}  // namespace

AcDistributions ac_distributions(const StateSubset& lower, const StateSubset& upper) {
  const auto verdict = antichain_dominates(lower, upper);
  if (!verdict.holds) {
    throw PreconditionError(upper.to_string() + " does not antichain-dominate " +
                            lower.to_string() + " (" + std::string(to_string(verdict.failure)) +
                            ")");
  }
  const auto& space = lower.space();
  auto [pa, pb] =
      AcRecursion(space).run(sorted_by_first(lower), sorted_by_first(upper), GridBox::full(space));
  AcDistributions out{Belief(lower.space_ptr(), std::move(pa)), Belief(lower.space_ptr(), std::move(pb))};
  if (out.lower.support() != lower || out.upper.support() != upper ||
      !compare_strong_cw(out.lower, out.upper).holds) {
    throw std::logic_error("ac_distributions: result is not strongly ordered with full support");
  }
  return out;
}

namespace {

// (1 − δ)·core + δ·U_rest, or just core when rest is empty.
Belief with_filler(const Belief& core, const StateSubset& rest, const Rational& delta) {
  if (rest.empty()) return core;
  const std::array<Rational, 2> weights{1 - delta, delta};
  const std::array<Belief, 2> parts{core, Belief::uniform_on(rest)};
  return mixture(weights, parts);
}

Belief two_part(const Belief& inside, const Belief& outside, const Rational& delta) {
  const std::array<Rational, 2> weights{1 - delta, delta};
  const std::array<Belief, 2> parts{inside, outside};
  return mixture(weights, parts);
}

}  // namespace

std::optional<ConstructionResult> attempt_polarizing_priors(const StateSubset& gamma) {
  const auto& space = gamma.space();
  if (!space.is_product() || space.dims() != 2) {
    throw PreconditionError("polarizing priors are constructed on two-dimensional grids");
  }
  if (gamma.empty() || gamma.is_full()) {
    throw PreconditionError("identified set must be a nonempty proper subset");
  }
  const auto outside = gamma.complement();
  const auto min_in = min_set(gamma);
  const auto max_in = max_set(gamma);
  const auto min_out = min_set(outside);
  const auto max_out = max_set(outside);
  if (!antichain_dominates(min_in, max_in).holds || !antichain_dominates(min_in, max_out).holds ||
      !antichain_dominates(min_out, max_in).holds) {
    return std::nullopt;
  }

  // The three strong relations share P^L|min(Γ) and P^H|max(Γ). Since θ̲ and
  // θ̄ each sit in Γ or Γᶜ, at least two relations have a singleton extreme
  // on one side, where any full-support partner works; only the remaining
  // relation needs the recursive construction.
  Belief low_min_in = Belief::uniform_on(min_in);
  Belief low_max_out = Belief::uniform_on(max_out);
  Belief high_max_in = Belief::uniform_on(max_in);
  Belief high_min_out = Belief::uniform_on(min_out);
  const bool bottom_in = gamma.contains(space.min_state());
  const bool top_in = gamma.contains(space.max_state());
  if (bottom_in && !top_in) {
    auto ac = ac_distributions(min_out, max_in);
    high_min_out = ac.lower;
    high_max_in = ac.upper;
  } else if (!bottom_in && top_in) {
    auto ac = ac_distributions(min_in, max_out);
    low_min_in = ac.lower;
    low_max_out = ac.upper;
  } else if (!bottom_in && !top_in) {
    auto ac = ac_distributions(min_in, max_in);
    low_min_in = ac.lower;
    high_max_in = ac.upper;
  }

  const std::array<StrongCwVerdict, 3> relations{compare_strong_cw(low_min_in, high_max_in),
                                                 compare_strong_cw(low_min_in, low_max_out),
                                                 compare_strong_cw(high_min_out, high_max_in)};
  std::optional<Rational> gap;
  for (const auto& r : relations) {
    if (!r.holds) throw std::logic_error("polarizing priors: intermediate relation fails");
    if (!gap || r.min_gap < *gap) gap = r.min_gap;
  }
  const Rational epsilon = *gap / 2;

  Rational delta = ratio(1, 2);
  for (int step = 0; step < 64; ++step, delta /= 2) {
    const Belief pl = two_part(with_filler(low_min_in, gamma - min_in, delta),
                               with_filler(low_max_out, outside - max_out, delta), delta);
    const Belief ph = two_part(with_filler(high_max_in, gamma - max_in, delta),
                               with_filler(high_min_out, outside - min_out, delta), delta);
    auto certificate = strong_cw_limit(pl, ph, gamma);
    if (!certificate.verdict) continue;
    auto low_move = compare_strong_cw(certificate.posterior_low, pl);
    auto high_move = compare_strong_cw(ph, certificate.posterior_high);
    if (!low_move.holds || !high_move.holds) continue;
    return ConstructionResult{pl,       ph,       epsilon,  delta, std::nullopt, std::move(certificate),
                              low_move, high_move};
  }
  throw std::logic_error("polarizing priors: mixture weight search exhausted");
}

ConstructionResult build_polarizing_priors(const StateSubset& gamma) {
  const auto report = classify(gamma);
  if (!report.can_strongly_polarize) {
    throw PreconditionError("identified set " + gamma.to_string() +
                            " cannot strongly polarize coordinatewise");
  }
  auto result = attempt_polarizing_priors(gamma);
  if (!result) {
    throw std::logic_error("polarizing priors: classified set fails an antichain relation");
  }
  return std::move(*result);
}

Rational diagonal_threshold(const StateSpace& space) {
  const long total = static_cast<long>(space.size());
  Rational best = 0;
  for (std::size_t i = 0; i < space.dims(); ++i) {
    const long n = static_cast<long>(space.axis_size(i));
    const Rational t = ratio(total * (n - 2), n * (total - 2));
    if (t > best) best = t;
  }
  return best;
}

ConstructionResult diagonal_instance(const SpacePtr& space, const Rational& epsilon) {
  if (sgn(epsilon) <= 0 || epsilon >= 1) throw PreconditionError("epsilon must lie in (0,1)");
  if (space->size() <= 2) throw PreconditionError("the construction needs more than two states");
  if (!space->is_product()) throw PreconditionError("the construction needs a product space");
  const Rational base = ratio(1, static_cast<long>(space->size()));
  const StateIndex bottom = space->min_state();
  const StateIndex top = space->max_state();
  std::vector<Rational> low(space->size(), base);
  std::vector<Rational> high(space->size(), base);
  low[bottom] += epsilon * base;
  low[top] -= epsilon * base;
  high[bottom] -= epsilon * base;
  high[top] += epsilon * base;
  Belief pl(space, std::move(low));
  Belief ph(space, std::move(high));
  const StateSubset gamma(space, {bottom, top});
  auto certificate = limit(UpperFamilyKind::UpperProjection, pl, ph, gamma);
  return ConstructionResult{pl, ph, epsilon, std::nullopt, std::nullopt, std::move(certificate),
                            std::nullopt, std::nullopt};
}

namespace {

OneShotInstance make_extreme_oneshot(const SpacePtr& space, const Rational& epsilon, long n,
                                     const EventFamily& family) {
  if (sgn(epsilon) <= 0 || epsilon >= 1) throw PreconditionError("epsilon must lie in (0,1)");
  if (n < 3) throw PreconditionError("n must be at least 3");
  if (space->size() <= 2) throw PreconditionError("the construction needs more than two states");
  const StateIndex bottom = space->min_state();
  const StateIndex top = space->max_state();
  const Rational big = 1 - ratio(1, n) - ratio(1, n * n);
  const Rational small = ratio(1, n * n);
  const Rational rest = ratio(1, n * static_cast<long>(space->size() - 2));
  std::vector<Rational> low(space->size(), rest);
  std::vector<Rational> high(space->size(), rest);
  std::vector<Rational> ell(space->size(), Rational(0));
  low[bottom] = big;
  low[top] = small;
  high[bottom] = small;
  high[top] = big;
  ell[bottom] = 1;
  ell[top] = 1 - epsilon;
  Belief pl(space, std::move(low));
  Belief ph(space, std::move(high));
  LikelihoodFn likelihood(space, std::move(ell));
  auto certificate = one_shot(family, pl, ph, likelihood);
  return OneShotInstance{pl, ph, likelihood, epsilon, n, std::move(certificate)};
}

}  // namespace

OneShotInstance extreme_oneshot_instance(const SpacePtr& space, const Rational& epsilon, long n,
                                         UpperFamilyKind kind) {
  return make_extreme_oneshot(space, epsilon, n, EventFamily(space, kind));
}

std::optional<OneShotInstance> find_n(const SpacePtr& space, const Rational& epsilon, long max_n) {
  const EventFamily family(space, UpperFamilyKind::UpperOrthant);
  for (long n = 3; n <= max_n; ++n) {
    auto instance = make_extreme_oneshot(space, epsilon, n, family);
    if (instance.certificate.verdict) return instance;
  }
  return std::nullopt;
}

}  // namespace polar
