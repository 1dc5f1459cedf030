#include "polar/polarization.hpp"

#include "polar/errors.hpp"

#include <stdexcept>

namespace polar {

std::string_view to_string(PolarizationMode mode) {
  return mode == PolarizationMode::OneShot ? "oneshot" : "limit";
}

PolarizationMode parse_mode(std::string_view text) {
  if (text == "oneshot" || text == "one-shot") return PolarizationMode::OneShot;
  if (text == "limit") return PolarizationMode::Limit;
  throw Error("unknown mode '" + std::string(text) + "' (expected oneshot or limit)");
}

std::optional<std::pair<std::string, std::optional<EventWitness>>>
PolarizationReport::failure() const {
  auto pick = [](const DominanceVerdict& v) { return v.witness; };
  if (!low_move.strictly_below()) return std::make_pair(std::string("low"), pick(low_move));
  if (!prior_link_holds()) return std::make_pair(std::string("prior"), pick(prior_order));
  if (!high_move.strictly_below()) return std::make_pair(std::string("high"), pick(high_move));
  return std::nullopt;
}

namespace {

void require_priors(const Belief& pl, const Belief& ph) {
  if (!same_space(pl.space_ptr(), ph.space_ptr())) {
    throw Error("priors live on different state spaces");
  }
  if (!pl.full_support() || !ph.full_support()) {
    throw PreconditionError("priors must have full support");
  }
}

PolarizationReport assemble(const EventFamily& family, PolarizationMode mode,
                            PolarizationOptions options, const Belief& pl, const Belief& ph,
                            Belief ql, Belief qh) {
  auto low_move = compare(ql, pl, family, options.strictness);
  auto prior_order = compare(pl, ph, family, options.strictness);
  auto high_move = compare(ph, qh, family, options.strictness);
  PolarizationReport report{family.kind(),
                            mode,
                            options,
                            pl,
                            ph,
                            std::move(ql),
                            std::move(qh),
                            std::move(low_move),
                            std::move(prior_order),
                            std::nullopt,
                            std::move(high_move),
                            std::nullopt,
                            std::nullopt,
                            false};
  if (options.strong_prior) report.strong_prior_order = compare_strong_cw(pl, ph);
  report.verdict = report.low_move.strictly_below() && report.prior_link_holds() &&
                   report.high_move.strictly_below();
  return report;
}

}  // namespace

PolarizationReport one_shot(const EventFamily& family, const Belief& pl, const Belief& ph,
                            const LikelihoodFn& ell, PolarizationOptions options) {
  require_priors(pl, ph);
  return assemble(family, PolarizationMode::OneShot, options, pl, ph, update(pl, ell),
                  update(ph, ell));
}

PolarizationReport one_shot(UpperFamilyKind kind, const Belief& pl, const Belief& ph,
                            const LikelihoodFn& ell, PolarizationOptions options) {
  return one_shot(EventFamily(pl.space_ptr(), kind), pl, ph, ell, options);
}

PolarizationReport limit(const EventFamily& family, const Belief& pl, const Belief& ph,
                         const StateSubset& gamma, PolarizationOptions options) {
  require_priors(pl, ph);
  if (gamma.empty()) throw PreconditionError("identified set is empty");
  auto report = assemble(family, PolarizationMode::Limit, options, pl, ph,
                         limit_posterior(pl, gamma), limit_posterior(ph, gamma));

  if (family.kind() == UpperFamilyKind::UpperProjection && !gamma.is_full()) {
    const auto outside = gamma.complement();
    auto low = compare(condition(pl, gamma), condition(pl, outside), family, options.strictness);
    auto high = compare(condition(ph, outside), condition(ph, gamma), family, options.strictness);
    if (low.below() != report.low_move.below() || high.below() != report.high_move.below()) {
      throw std::logic_error("limit: conditional comparison disagrees with the posterior move");
    }
    report.conditional_low = std::move(low);
    report.conditional_high = std::move(high);
  }
  return report;
}

PolarizationReport limit(UpperFamilyKind kind, const Belief& pl, const Belief& ph,
                         const StateSubset& gamma, PolarizationOptions options) {
  return limit(EventFamily(pl.space_ptr(), kind), pl, ph, gamma, options);
}

PolarizationReport strong_cw_limit(const Belief& pl, const Belief& ph, const StateSubset& gamma) {
  PolarizationOptions options;
  options.strong_prior = true;
  return limit(UpperFamilyKind::UpperProjection, pl, ph, gamma, options);
}

StateSubset DirectionAnalysis::opposite_states() const {
  StateSubset out(min_likelihood.space_ptr());
  for (StateIndex s = 0; s < first.size(); ++s) {
    if (first[s] * second[s] < 0) out.insert(s);
  }
  return out;
}

DirectionAnalysis direction_analysis(const Belief& p, const Belief& pprime, const LikelihoodFn& ell) {
  require_priors(p, pprime);
  const Belief q = update(p, ell);
  const Belief qprime = update(pprime, ell);
  DirectionAnalysis out{{}, {}, ell.argmin(), ell.argmax(), !ell.is_constant(), true, {}};
  for (StateIndex s = 0; s < p.size(); ++s) {
    out.first.push_back(cmp(q[s], p[s]) < 0 ? -1 : (q[s] == p[s] ? 0 : 1));
    out.second.push_back(cmp(qprime[s], pprime[s]) < 0 ? -1 : (qprime[s] == pprime[s] ? 0 : 1));
  }
  if (out.moved) {
    for (StateIndex s : out.min_likelihood.members()) {
      if (out.first[s] != -1 || out.second[s] != -1) out.extremes_agree = false;
    }
    for (StateIndex s : out.max_likelihood.members()) {
      if (out.first[s] != 1 || out.second[s] != 1) out.extremes_agree = false;
    }
  }
  // θ: first ≤ 0 ≤ second with one strict; θ′: first ≥ 0 ≥ second. The
  // mirrored orientation (agents swapped) is checked as well.
  auto weakly_split = [](int down, int up) { return down <= 0 && up >= 0; };
  for (StateIndex a = 0; a < p.size(); ++a) {
    for (int side = 0; side < 2; ++side) {
      const int down = side == 0 ? out.first[a] : out.second[a];
      const int up = side == 0 ? out.second[a] : out.first[a];
      if (!weakly_split(down, up) || (down == 0 && up == 0)) continue;
      for (StateIndex b = 0; b < p.size(); ++b) {
        const int b_down = side == 0 ? out.second[b] : out.first[b];
        const int b_up = side == 0 ? out.first[b] : out.second[b];
        if (weakly_split(b_down, b_up)) out.violations.emplace_back(a, b);
      }
    }
  }
  return out;
}

}  // namespace polar
