#include "polar/bayes.hpp"

#include "polar/errors.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

namespace polar {

LikelihoodFn::LikelihoodFn(SpacePtr space, std::vector<Rational> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw Error("likelihood needs a state space");
  if (values_.size() != space_->size()) {
    throw Error("likelihood has " + std::to_string(values_.size()) + " values for " +
                std::to_string(space_->size()) + " states");
  }
  bool positive = false;
  for (const auto& v : values_) {
    if (sgn(v) < 0 || v > 1) throw Error("likelihood value " + to_string(v) + " outside [0,1]");
    positive = positive || sgn(v) > 0;
  }
  if (!positive) throw Error("likelihood is zero in every state");
}

LikelihoodFn LikelihoodFn::indicator(const StateSubset& subset) {
  std::vector<Rational> values(subset.space().size(), Rational(0));
  for (StateIndex s : subset.members()) values[s] = 1;
  return LikelihoodFn(subset.space_ptr(), std::move(values));
}

LikelihoodFn LikelihoodFn::constant(SpacePtr space, const Rational& value) {
  const std::size_t n = space->size();
  return LikelihoodFn(std::move(space), std::vector<Rational>(n, value));
}

Rational LikelihoodFn::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
Rational LikelihoodFn::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

StateSubset LikelihoodFn::argmin() const {
  const Rational lo = min_value();
  StateSubset out(space_);
  for (StateIndex s = 0; s < values_.size(); ++s) {
    if (values_[s] == lo) out.insert(s);
  }
  return out;
}

StateSubset LikelihoodFn::argmax() const {
  const Rational hi = max_value();
  StateSubset out(space_);
  for (StateIndex s = 0; s < values_.size(); ++s) {
    if (values_[s] == hi) out.insert(s);
  }
  return out;
}

bool LikelihoodFn::is_constant() const { return min_value() == max_value(); }

Signal::Signal(SpacePtr space, std::vector<std::string> realizations,
               std::vector<std::vector<Rational>> table)
    : space_(std::move(space)), realizations_(std::move(realizations)), table_(std::move(table)) {
  if (!space_) throw Error("signal needs a state space");
  if (realizations_.empty() || realizations_.size() != table_.size()) {
    throw Error("signal needs one likelihood row per realization");
  }
  for (const auto& row : table_) {
    if (row.size() != space_->size()) throw Error("signal row has the wrong number of states");
    for (const auto& v : row) {
      if (sgn(v) < 0 || v > 1) throw Error("signal probability " + to_string(v) + " outside [0,1]");
    }
  }
  for (StateIndex s = 0; s < space_->size(); ++s) {
    Rational total = 0;
    for (const auto& row : table_) total += row[s];
    if (total != 1) {
      throw Error("signal probabilities in state " + space_->label(s) + " sum to " +
                  to_string(total) + ", not 1");
    }
  }
}

LikelihoodFn Signal::likelihood(std::size_t realization) const {
  return LikelihoodFn(space_, table_.at(realization));
}

Signal partitional_signal(const StateSubset& gamma, OutsideRevelation outside) {
  const auto& space = gamma.space_ptr();
  std::vector<std::string> names{"in"};
  std::vector<std::vector<Rational>> table;
  std::vector<Rational> inside(space->size(), Rational(0));
  for (StateIndex s : gamma.members()) inside[s] = 1;
  table.push_back(inside);
  const auto rest = gamma.complement().members();
  if (!rest.empty()) {
    if (outside == OutsideRevelation::ComplementOnly) {
      std::vector<Rational> row(space->size(), Rational(0));
      for (StateIndex s : rest) row[s] = 1;
      names.emplace_back("out");
      table.push_back(std::move(row));
    } else {
      for (StateIndex s : rest) {
        std::vector<Rational> row(space->size(), Rational(0));
        row[s] = 1;
        names.push_back("at" + space->label(s));
        table.push_back(std::move(row));
      }
    }
  }
  return Signal(space, std::move(names), std::move(table));
}

Belief update(const Belief& prior, const LikelihoodFn& ell) {
  if (!same_space(prior.space_ptr(), ell.space_ptr())) {
    throw Error("update: prior and likelihood live on different spaces");
  }
  std::vector<Rational> weights(prior.size());
  Rational evidence = 0;
  for (StateIndex s = 0; s < prior.size(); ++s) {
    weights[s] = prior[s] * ell[s];
    evidence += weights[s];
  }
  if (sgn(evidence) == 0) throw NullEventError("realization has zero probability under the prior");
  return Belief::from_weights(prior.space_ptr(), std::move(weights));
}

bool posterior_increases(const Belief& prior, const LikelihoodFn& ell, const StateSubset& a) {
  const Rational prior_mass = prior.probability(a);
  if (sgn(prior_mass) == 0) throw NullEventError("event " + a.to_string() + " has zero prior mass");
  const bool direct = update(prior, ell).probability(a) > prior_mass;

  Rational inside = 0;
  for (StateIndex s : a.members()) inside += prior[s] * ell[s];
  const bool by_expectation = inside / prior_mass > prior.expectation(ell.values());
  if (direct != by_expectation) {
    throw std::logic_error("posterior_increases: direct and expectation tests disagree");
  }
  return direct;
}

StateSubset identified_set(const Signal& signal, StateIndex truth) {
  StateSubset out(signal.space_ptr());
  for (StateIndex s = 0; s < signal.space().size(); ++s) {
    bool same = true;
    for (std::size_t x = 0; x < signal.realization_count() && same; ++x) {
      same = signal.probability(x, s) == signal.probability(x, truth);
    }
    if (same) out.insert(s);
  }
  return out;
}

Belief limit_posterior(const Belief& prior, const StateSubset& gamma) {
  return condition(prior, gamma);
}

namespace {

std::size_t draw(const Signal& signal, StateIndex truth, std::mt19937_64& rng) {
  const std::size_t m = signal.realization_count();
  mpz_class common = 1;
  for (std::size_t x = 0; x < m; ++x) {
    mpz_class den = signal.probability(x, truth).get_den();
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), den.get_mpz_t());
  }
  if (common.fits_ulong_p()) {
    std::uniform_int_distribution<unsigned long> pick(0, common.get_ui() - 1);
    mpz_class r = pick(rng);
    mpz_class running = 0;
    for (std::size_t x = 0; x < m; ++x) {
      const Rational& p = signal.probability(x, truth);
      running += p.get_num() * (common / p.get_den());
      if (r < running) return x;
    }
  } else {
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    const double r = pick(rng);
    double running = 0;
    for (std::size_t x = 0; x < m; ++x) {
      running += to_double(signal.probability(x, truth));
      if (r < running) return x;
    }
  }
  for (std::size_t x = m; x-- > 0;) {
    if (sgn(signal.probability(x, truth)) > 0) return x;
  }
  throw std::logic_error("simulate: no realization has positive probability");
}

}  // namespace

Trajectory simulate(const Belief& prior, const Signal& signal, StateIndex truth,
                    std::size_t horizon, std::uint64_t seed) {
  if (!same_space(prior.space_ptr(), signal.space_ptr())) {
    throw Error("simulate: prior and signal live on different spaces");
  }
  if (truth >= prior.size()) throw Error("simulate: true state out of range");
  if (!prior.full_support()) throw PreconditionError("simulate: prior must have full support");

  std::mt19937_64 rng(seed);
  Trajectory out{{}, limit_posterior(prior, identified_set(signal, truth)), 0};
  out.records.push_back({0, std::nullopt, prior});
  for (std::size_t t = 1; t <= horizon; ++t) {
    const std::size_t x = draw(signal, truth, rng);
    out.records.push_back({t, x, update(out.records.back().posterior, signal.likelihood(x))});
  }
  out.final_distance = total_variation(out.records.back().posterior, out.limit);
  return out;
}

}  // namespace polar
