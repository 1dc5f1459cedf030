#include "polar/verifier.hpp"

#include "polar/classifier.hpp"
#include "polar/errors.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <set>

namespace polar {

namespace {

using Clock = std::chrono::steady_clock;

std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

Belief random_belief(const SpacePtr& space, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> weight(1, 1000);
  std::vector<Rational> w;
  w.reserve(space->size());
  for (std::size_t s = 0; s < space->size(); ++s) w.push_back(Rational(weight(rng)));
  return Belief::from_weights(space, std::move(w));
}

LikelihoodFn random_likelihood(const SpacePtr& space, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> level(0, 1000);
  for (;;) {
    std::vector<Rational> v;
    bool positive = false;
    for (std::size_t s = 0; s < space->size(); ++s) {
      const long k = level(rng);
      positive = positive || k > 0;
      v.push_back(ratio(k, 1000));
    }
    if (positive) return LikelihoodFn(space, std::move(v));
  }
}

StateSubset random_subset(const SpacePtr& space, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  for (;;) {
    StateSubset out(space);
    for (std::size_t s = 0; s < space->size(); ++s) {
      if (coin(rng)) out.insert(s);
    }
    if (!out.empty()) return out;
  }
}

// Random full-support pair with pl ≺*cw ph, by rejection (a reversed pair is
// accepted swapped).
std::pair<Belief, Belief> random_strong_pair(const SpacePtr& space, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 100'000; ++attempt) {
    Belief a = random_belief(space, rng);
    Belief b = random_belief(space, rng);
    if (compare_strong_cw(a, b).holds) return {std::move(a), std::move(b)};
    if (compare_strong_cw(b, a).holds) return {std::move(b), std::move(a)};
  }
  throw std::logic_error("strongly ordered prior pair not found");
}

void compositions(std::size_t total, std::size_t parts, std::vector<long>& current,
                  const std::function<void(const std::vector<long>&)>& visit) {
  if (parts == 1) {
    current.push_back(static_cast<long>(total));
    visit(current);
    current.pop_back();
    return;
  }
  for (std::size_t first = 1; first + parts - 1 <= total; ++first) {
    current.push_back(static_cast<long>(first));
    compositions(total - first, parts - 1, current, visit);
    current.pop_back();
  }
}

std::vector<LikelihoodFn> grid_likelihoods(const SpacePtr& space, std::size_t levels) {
  if (levels < 2) throw PreconditionError("likelihood grid needs at least 2 levels");
  std::vector<LikelihoodFn> out;
  const std::size_t n = space->size();
  std::vector<std::size_t> digits(n, 0);
  for (;;) {
    bool positive = false;
    std::vector<Rational> v;
    for (std::size_t d : digits) {
      positive = positive || d > 0;
      v.push_back(ratio(static_cast<long>(d), static_cast<long>(levels - 1)));
    }
    if (positive) out.emplace_back(space, std::move(v));
    std::size_t i = 0;
    while (i < n && ++digits[i] == levels) digits[i++] = 0;
    if (i == n) break;
  }
  return out;
}

bool fixed_gamma_is_blocked(const SweepConfig& config) {
  if (!config.gamma || !config.strong_prior) return false;
  const StateSpace& space = *config.space;
  if (!space.is_product() || space.dims() != 2) return false;
  if (config.gamma->empty() || config.gamma->is_full()) return true;
  return !classify(*config.gamma).can_strongly_polarize;
}

void validate(const SweepConfig& config) {
  if (!config.space) throw PreconditionError("sweep needs a state space");
  if (config.space->size() < 2) throw PreconditionError("sweep needs at least two states");
  if (config.denominator_bound == 0 && config.trials == 0) {
    throw PreconditionError("sweep needs trials or a denominator bound");
  }
  if (!config.space->is_product() && config.kind != UpperFamilyKind::UpperSet) {
    throw PreconditionError("uo and cw sweeps need a product space");
  }
  if (config.strong_prior &&
      (config.kind != UpperFamilyKind::UpperProjection || config.mode != PolarizationMode::Limit)) {
    throw PreconditionError("strong prior ordering applies to cw limit sweeps only");
  }
  if (config.gamma && !same_space(config.gamma->space_ptr(), config.space)) {
    throw PreconditionError("identified set lives on a different space");
  }
}

struct Evaluator {
  const SweepConfig& config;
  EventFamily family;

  explicit Evaluator(const SweepConfig& c)
      : config(c), family(c.space, c.kind, c.upper_set_cap) {}

  bool operator()(const Belief& pl, const Belief& ph, const std::optional<LikelihoodFn>& ell,
                  const std::optional<StateSubset>& gamma) const {
    PolarizationOptions options;
    options.strong_prior = config.strong_prior;
    if (config.mode == PolarizationMode::OneShot) {
      return one_shot(family, pl, ph, *ell, options).verdict;
    }
    return limit(family, pl, ph, *gamma, options).verdict;
  }
};

}  // namespace

bool cell_is_impossible(UpperFamilyKind kind, PolarizationMode mode) {
  return kind == UpperFamilyKind::UpperSet ||
         (kind == UpperFamilyKind::UpperOrthant && mode == PolarizationMode::Limit);
}

std::vector<Belief> grid_beliefs(const SpacePtr& space, std::size_t denominator_bound) {
  std::set<std::vector<Rational>> seen;
  std::vector<Belief> out;
  const std::size_t n = space->size();
  std::vector<long> current;
  for (std::size_t total = n; total <= denominator_bound; ++total) {
    compositions(total, n, current, [&](const std::vector<long>& parts) {
      std::vector<Rational> mass;
      for (long k : parts) mass.push_back(ratio(k, static_cast<long>(total)));
      if (seen.insert(mass).second) out.emplace_back(space, std::move(mass));
    });
  }
  return out;
}

SweepReport sweep(const SweepConfig& config) {
  validate(config);
  const auto start = Clock::now();
  SweepReport report;
  report.config = config;
  report.expected_empty = cell_is_impossible(config.kind, config.mode) || fixed_gamma_is_blocked(config);
  const Evaluator evaluate(config);
  const SpacePtr& space = config.space;

  auto record = [&](std::size_t trial, const Belief& pl, const Belief& ph,
                    const std::optional<LikelihoodFn>& ell, const std::optional<StateSubset>& gamma) {
    ++report.trials_run;
    if (evaluate(pl, ph, ell, gamma)) report.hits.push_back({trial, pl, ph, ell, gamma});
  };

  if (config.denominator_bound > 0) {
    const auto beliefs = grid_beliefs(space, config.denominator_bound);
    std::vector<LikelihoodFn> ells;
    std::vector<StateSubset> gammas;
    if (config.mode == PolarizationMode::OneShot) {
      ells = grid_likelihoods(space, config.likelihood_levels);
    } else if (config.gamma) {
      gammas.push_back(*config.gamma);
    } else {
      const std::size_t n = space->size();
      if (n >= 63) throw PreconditionError("too many states for an exhaustive identified-set sweep");
      for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
        std::vector<bool> mask(n);
        for (std::size_t s = 0; s < n; ++s) mask[s] = (bits >> s) & 1;
        gammas.push_back(StateSubset::from_mask(space, std::move(mask)));
      }
    }
    std::size_t trial = 0;
    for (const Belief& pl : beliefs) {
      for (const Belief& ph : beliefs) {
        if (config.strong_prior && !compare_strong_cw(pl, ph).holds) continue;
        if (config.mode == PolarizationMode::OneShot) {
          for (const LikelihoodFn& ell : ells) record(trial++, pl, ph, ell, std::nullopt);
        } else {
          for (const StateSubset& gamma : gammas) record(trial++, pl, ph, std::nullopt, gamma);
        }
      }
    }
  } else {
    for (std::size_t trial = 0; trial < config.trials; ++trial) {
      auto rng = trial_rng(config.seed, trial);
      auto [pl, ph] = config.strong_prior
                          ? random_strong_pair(space, rng)
                          : std::pair<Belief, Belief>{random_belief(space, rng), random_belief(space, rng)};
      if (config.mode == PolarizationMode::OneShot) {
        record(trial, pl, ph, random_likelihood(space, rng), std::nullopt);
      } else {
        record(trial, pl, ph, std::nullopt, config.gamma ? *config.gamma : random_subset(space, rng));
      }
    }
  }

  report.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

bool replay(const SweepConfig& config, const SweepHit& hit) {
  validate(config);
  if (config.mode == PolarizationMode::OneShot && !hit.ell) {
    throw PreconditionError("one-shot hit without a likelihood");
  }
  if (config.mode == PolarizationMode::Limit && !hit.gamma) {
    throw PreconditionError("limit hit without an identified set");
  }
  return Evaluator(config)(hit.pl, hit.ph, hit.ell, hit.gamma);
}

SweepReport direction_sweep(const SweepConfig& config) {
  if (!config.space) throw PreconditionError("sweep needs a state space");
  if (config.trials == 0) throw PreconditionError("sweep needs trials");
  const auto start = Clock::now();
  SweepReport report;
  report.config = config;
  report.expected_empty = true;
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    auto rng = trial_rng(config.seed, trial);
    Belief p = random_belief(config.space, rng);
    Belief pprime = random_belief(config.space, rng);
    LikelihoodFn ell = random_likelihood(config.space, rng);
    ++report.trials_run;
    if (!direction_analysis(p, pprime, ell).consistent()) {
      report.hits.push_back({trial, std::move(p), std::move(pprime), std::move(ell), std::nullopt});
    }
  }
  report.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

DirectionWitness opposite_direction_witness(const SpacePtr& space) {
  const std::size_t n = space->size();
  if (n < 3) throw PreconditionError("opposite movement needs at least three states");
  const StateIndex low = 0;
  const StateIndex high = n - 1;
  std::vector<Rational> ell(n, ratio(1, 2));
  ell[low] = ratio(1, 4);
  ell[high] = Rational(1);
  // 3/4 on one extreme, the rest spread evenly: E_P[ℓ] > 1/2 > E_P′[ℓ].
  const Rational rest = ratio(1, 4 * static_cast<long>(n - 1));
  std::vector<Rational> p(n, rest);
  std::vector<Rational> pprime(n, rest);
  p[high] = ratio(3, 4);
  pprime[low] = ratio(3, 4);
  Belief prior(space, std::move(p));
  Belief other(space, std::move(pprime));
  LikelihoodFn fn(space, std::move(ell));
  auto analysis = direction_analysis(prior, other, fn);
  return {std::move(prior), std::move(other), std::move(fn), std::move(analysis)};
}

}  // namespace polar
