#include "polar/cli.hpp"

#include "polar/actions.hpp"
#include "polar/bayes.hpp"
#include "polar/classifier.hpp"
#include "polar/construct.hpp"
#include "polar/errors.hpp"
#include "polar/orders.hpp"
#include "polar/polarization.hpp"
#include "polar/scenario.hpp"
#include "polar/verifier.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

namespace polar::cli {

namespace {

struct Options {
  std::string scenario;
  std::string out;
  std::string table;
  std::optional<std::uint64_t> seed;
  std::size_t trials = 1000;
  std::size_t denominator_bound = 0;
  /// Empty selects the subcommand default: every order for compare, cw otherwise.
  std::string order;
  std::string mode = "limit";
  std::size_t upper_set_cap = kDefaultUpperSetCap;
  std::string strictness = "one";
  bool strong_prior = false;

  // construct
  std::string builder = "gamma";
  std::string epsilon;
  long n = 0;
  // simulate
  std::size_t horizon = 100;
  std::string agent = "both";
  // sweep
  std::string dims;
  std::size_t levels = 3;
  bool direction = false;
  std::size_t max_hits = 10;
  // tradeoff
  std::string deltas;
  std::size_t grid = 0;
};

/// Rows of a plot-ready table; written as CSV with a header row.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  Json json() const { return {{"header", header}, {"rows", rows}}; }
  void write_csv(std::ostream& os) const {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        if (cells[i].find_first_of(",\"\n") == std::string::npos) {
          os << cells[i];
          continue;
        }
        os << '"';
        for (char c : cells[i]) os << (c == '"' ? "\"\"" : std::string(1, c));
        os << '"';
      }
      os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
  }
};

struct Output {
  Json report;
  std::optional<Table> table;
  int status = kOk;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("$", "cannot open scenario file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scenario load(const Options& o) {
  if (o.scenario.empty()) throw ScenarioError("$", "this command needs a scenario file");
  return parse_scenario_text(read_file(o.scenario));
}

Strictness strictness(const Options& o) {
  return o.strictness == "all" ? Strictness::AllEvents : Strictness::OneEvent;
}

Json witness_json(const std::optional<EventWitness>& w) {
  if (!w) return nullptr;
  return {{"event", subset_json(w->event)},
          {"low", rational_json(w->low_mass)},
          {"high", rational_json(w->high_mass)}};
}

Json verdict_json(const DominanceVerdict& v) {
  Json out{{"relation", std::string(to_string(v.relation))}, {"witness", witness_json(v.witness)}};
  if (v.counter_witness) out["counter_witness"] = witness_json(v.counter_witness);
  return out;
}

Json strong_json(const StrongCwVerdict& v) {
  Json out{{"holds", v.holds}, {"min_gap", rational_json(v.min_gap)}};
  if (v.failing_axis) {
    out["failing_axis"] = *v.failing_axis + 1;
    out["failing_point"] = *v.failing_point + 1;
  }
  return out;
}

Json polarization_json(const PolarizationReport& r) {
  Json out{{"order", std::string(to_string(r.kind))},
           {"mode", std::string(to_string(r.mode))},
           {"strictness", std::string(to_string(r.options.strictness))},
           {"strong_prior", r.options.strong_prior},
           {"verdict", r.verdict},
           {"prior_low", belief_json(r.prior_low)},
           {"prior_high", belief_json(r.prior_high)},
           {"posterior_low", belief_json(r.posterior_low)},
           {"posterior_high", belief_json(r.posterior_high)},
           {"low_move", verdict_json(r.low_move)},
           {"prior_order", verdict_json(r.prior_order)},
           {"high_move", verdict_json(r.high_move)}};
  if (r.strong_prior_order) out["strong_prior_order"] = strong_json(*r.strong_prior_order);
  if (r.conditional_low) out["conditional_low"] = verdict_json(*r.conditional_low);
  if (r.conditional_high) out["conditional_high"] = verdict_json(*r.conditional_high);
  if (auto f = r.failure()) out["failure"] = {{"link", f->first}, {"witness", witness_json(f->second)}};
  return out;
}

Json optional_state(const StateSpace& space, const std::optional<StateIndex>& s) {
  if (!s) return nullptr;
  return space.label(*s);
}

Json base_report(const std::string& command, const Scenario* scenario, const StateSpace& space) {
  Json out{{"command", command}};
  if (scenario) out["name"] = scenario->name;
  out["states"] = states_json(space);
  return out;
}

Output cmd_update(const Options& o) {
  const Scenario s = load(o);
  Output res{base_report("update", &s, *s.space), std::nullopt, kOk};
  if (!s.prior_low && !s.prior_high) throw ScenarioError("priors", "missing field");
  const bool limit_update = !s.likelihood && s.identified_set;
  Json agents = Json::object();
  auto one = [&](const char* name, const Belief& prior) {
    Json a{{"prior", belief_json(prior)}};
    if (limit_update) {
      a["posterior"] = belief_json(limit_posterior(prior, s.gamma()));
    } else {
      const LikelihoodFn ell = s.likelihood_fn();
      a["evidence"] = rational_json(prior.expectation(ell.values()));
      a["posterior"] = belief_json(update(prior, ell));
    }
    agents[name] = std::move(a);
  };
  if (s.prior_low) one("L", s.low());
  if (s.prior_high) one("H", s.high());
  res.report["update"] = limit_update ? "identified_set" : "likelihood";
  if (limit_update) res.report["identified_set"] = subset_json(s.gamma());
  res.report["agents"] = std::move(agents);
  return res;
}

UpperFamilyKind single_order(const Options& o) { return parse_family_kind(o.order.empty() ? "cw" : o.order); }

std::vector<UpperFamilyKind> requested_orders(const Options& o, bool all_by_default) {
  if (all_by_default && (o.order.empty() || o.order == "all")) {
    return {UpperFamilyKind::UpperSet, UpperFamilyKind::UpperOrthant, UpperFamilyKind::UpperProjection};
  }
  return {single_order(o)};
}

Output cmd_compare(const Options& o) {
  const Scenario s = load(o);
  Output res{base_report("compare", &s, *s.space), std::nullopt, kOk};
  const Belief pl = s.low();
  const Belief ph = s.high();
  Json orders = Json::array();
  for (auto kind : requested_orders(o, true)) {
    Json v = verdict_json(compare(pl, ph, EventFamily(s.space, kind, o.upper_set_cap), strictness(o)));
    v["order"] = std::string(to_string(kind));
    orders.push_back(std::move(v));
  }
  res.report["strictness"] = std::string(to_string(strictness(o)));
  res.report["orders"] = std::move(orders);
  if (s.space->is_product()) res.report["strong_cw"] = strong_json(compare_strong_cw(pl, ph));
  return res;
}

Output cmd_classify(const Options& o) {
  const Scenario s = load(o);
  Output res{base_report("classify", &s, *s.space), std::nullopt, kOk};
  const StateSubset gamma = s.gamma();
  const auto r = classify(gamma);
  const StateSpace& space = *s.space;
  res.report["identified_set"] = subset_json(gamma);
  res.report["verdict"] = r.can_strongly_polarize;
  res.report["conditions"] = {{"spanning", r.spanning && r.complement_spanning},
                              {"balanced", r.balanced},
                              {"non_compensatory", !r.compensatory}};
  res.report["details"] = {{"spanning", r.spanning},
                           {"complement_spanning", r.complement_spanning},
                           {"biased_down", r.biased_down},
                           {"biased_up", r.biased_up},
                           {"compensatory", r.compensatory},
                           {"biased_down_pivot", optional_state(space, r.biased_down_pivot)},
                           {"biased_up_pivot", optional_state(space, r.biased_up_pivot)},
                           {"compensatory_pivot", optional_state(space, r.compensatory_pivot)}};
  return res;
}

Output cmd_construct(const Options& o) {
  const Scenario s = load(o);
  Output res{base_report("construct", &s, *s.space), std::nullopt, kOk};
  res.report["builder"] = o.builder;
  auto epsilon = [&] {
    if (o.epsilon.empty()) throw PreconditionError("--epsilon is required for this builder");
    return parse_rational(o.epsilon);
  };
  if (o.builder == "gamma") {
    const auto r = build_polarizing_priors(s.gamma());
    res.report["identified_set"] = subset_json(s.gamma());
    res.report["priors"] = {{"L", belief_json(r.pl)}, {"H", belief_json(r.ph)}};
    res.report["epsilon"] = rational_json(r.epsilon);
    if (r.delta) res.report["delta"] = rational_json(*r.delta);
    if (r.strong_low_move) res.report["strong_low_move"] = strong_json(*r.strong_low_move);
    if (r.strong_high_move) res.report["strong_high_move"] = strong_json(*r.strong_high_move);
    res.report["certificate"] = polarization_json(r.certificate);
  } else if (o.builder == "diagonal") {
    const Rational eps = epsilon();
    const auto r = diagonal_instance(s.space, eps);
    res.report["threshold"] = rational_json(diagonal_threshold(*s.space));
    res.report["epsilon"] = rational_json(eps);
    res.report["priors"] = {{"L", belief_json(r.pl)}, {"H", belief_json(r.ph)}};
    res.report["certificate"] = polarization_json(r.certificate);
  } else {
    const Rational eps = epsilon();
    std::optional<OneShotInstance> r;
    if (o.n > 0) {
      r = extreme_oneshot_instance(s.space, eps, o.n);
    } else {
      r = find_n(s.space, eps);
    }
    if (!r) throw PreconditionError("no polarizing n found within the search limit");
    res.report["epsilon"] = rational_json(eps);
    res.report["n"] = r->n;
    res.report["priors"] = {{"L", belief_json(r->pl)}, {"H", belief_json(r->ph)}};
    res.report["likelihood"] = rationals_json(r->ell.values());
    res.report["certificate"] = polarization_json(r->certificate);
  }
  return res;
}

Json movement_json(const std::string& name, const ActionMovement& m) {
  return {{"name", name},
          {"low_prior", rational_json(m.low_prior)},
          {"low_posterior", rational_json(m.low_posterior)},
          {"high_prior", rational_json(m.high_prior)},
          {"high_posterior", rational_json(m.high_posterior)},
          {"polarizes", m.polarizes}};
}

Output cmd_polarize(const Options& o) {
  const Scenario s = load(o);
  Output res{base_report("polarize", &s, *s.space), std::nullopt, kOk};
  const Belief pl = s.low();
  const Belief ph = s.high();
  const auto mode = parse_mode(o.mode);
  const EventFamily family(s.space, single_order(o), o.upper_set_cap);
  PolarizationOptions options{strictness(o), o.strong_prior};
  const auto utilities = s.utility_fns();
  Json moves = Json::array();
  if (mode == PolarizationMode::OneShot) {
    const LikelihoodFn ell = s.likelihood_fn();
    res.report["polarization"] = polarization_json(one_shot(family, pl, ph, ell, options));
    for (std::size_t i = 0; i < utilities.size(); ++i) {
      moves.push_back(movement_json(s.utilities[i].name, action_polarizes(utilities[i], pl, ph, ell)));
    }
  } else {
    const StateSubset gamma = s.gamma();
    res.report["identified_set"] = subset_json(gamma);
    res.report["polarization"] = polarization_json(limit(family, pl, ph, gamma, options));
    for (std::size_t i = 0; i < utilities.size(); ++i) {
      moves.push_back(movement_json(s.utilities[i].name, action_polarizes(utilities[i], pl, ph, gamma)));
    }
  }
  if (!utilities.empty()) res.report["utilities"] = std::move(moves);
  res.report["verdict"] = res.report["polarization"]["verdict"];
  return res;
}

Output cmd_simulate(const Options& o) {
  const Scenario s = load(o);
  Output res{base_report("simulate", &s, *s.space), std::nullopt, kOk};
  if (!s.truth) throw ScenarioError("truth", "missing field");
  const Signal signal = s.signal_fn();
  const std::uint64_t seed = o.seed ? *o.seed : s.seed.value_or(1);
  Table table;
  table.header = {"agent", "time", "realization"};
  for (StateIndex st = 0; st < s.space->size(); ++st) table.header.push_back(s.space->label(st));
  table.header.push_back("distance_to_limit");
  Json agents = Json::object();
  auto one = [&](const std::string& name, const Belief& prior) {
    const Trajectory t = simulate(prior, signal, *s.truth, o.horizon, seed);
    agents[name] = {{"limit", belief_json(t.limit)},
                    {"final", belief_json(t.records.back().posterior)},
                    {"final_distance", rational_json(t.final_distance)},
                    {"final_distance_approx", to_double(t.final_distance)}};
    for (const auto& rec : t.records) {
      std::vector<std::string> row{name, std::to_string(rec.time),
                                   rec.realization ? signal.realizations()[*rec.realization] : ""};
      for (const auto& m : rec.posterior.mass()) row.push_back(polar::to_string(m));
      row.push_back(polar::to_string(total_variation(rec.posterior, t.limit)));
      table.rows.push_back(std::move(row));
    }
  };
  if (o.agent == "L" || o.agent == "both") one("L", s.low());
  if (o.agent == "H" || (o.agent == "both" && s.prior_high)) one("H", s.high());
  res.report["truth"] = s.space->label(*s.truth);
  res.report["identified_set"] = subset_json(identified_set(signal, *s.truth));
  res.report["seed"] = seed;
  res.report["horizon"] = o.horizon;
  res.report["agents"] = std::move(agents);
  res.table = std::move(table);
  return res;
}

SpacePtr sweep_space(const Options& o) {
  if (!o.scenario.empty()) return load(o).space;
  if (o.dims.empty()) throw PreconditionError("sweep needs a scenario file or --dims");
  std::vector<std::size_t> sizes;
  std::stringstream ss(o.dims);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    try {
      sizes.push_back(std::stoul(part));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--dims", "expected sizes like 2x3");
    }
  }
  return make_grid(std::span<const std::size_t>(sizes));
}

Json hit_json(const SweepHit& h) {
  Json out{{"trial", h.trial}, {"L", belief_json(h.pl)}, {"H", belief_json(h.ph)}};
  if (h.ell) out["likelihood"] = rationals_json(h.ell->values());
  if (h.gamma) out["identified_set"] = subset_json(*h.gamma);
  return out;
}

Output cmd_sweep(const Options& o) {
  SweepConfig c;
  c.space = sweep_space(o);
  c.kind = single_order(o);
  c.mode = parse_mode(o.mode);
  c.strong_prior = o.strong_prior;
  c.trials = o.trials;
  c.denominator_bound = o.denominator_bound;
  c.likelihood_levels = o.levels;
  c.seed = o.seed.value_or(1);
  c.upper_set_cap = o.upper_set_cap;
  if (!o.scenario.empty()) {
    const Scenario s = load(o);
    if (s.identified_set) c.gamma = s.gamma();
  }
  const SweepReport r = o.direction ? direction_sweep(c) : sweep(c);
  Output res{base_report("sweep", nullptr, *c.space), std::nullopt, kOk};
  bool replayed = true;
  if (!o.direction) {
    replayed = std::all_of(r.hits.begin(), r.hits.end(), [&](const SweepHit& h) { return replay(c, h); });
  }
  Json hits = Json::array();
  for (std::size_t i = 0; i < r.hits.size() && i < o.max_hits; ++i) hits.push_back(hit_json(r.hits[i]));
  const std::string kind = o.direction ? "direction" : std::string(to_string(c.kind));
  const std::string mode = o.direction ? "oneshot" : std::string(to_string(c.mode));
  res.report["config"] = {{"sweep", o.direction ? "direction" : "polarization"},
                          {"order", kind},
                          {"mode", mode},
                          {"strong_prior", c.strong_prior},
                          {"trials", c.trials},
                          {"denominator_bound", c.denominator_bound},
                          {"likelihood_levels", c.likelihood_levels},
                          {"seed", c.seed},
                          {"upper_set_cap", c.upper_set_cap}};
  if (c.gamma) res.report["config"]["identified_set"] = subset_json(*c.gamma);
  res.report["trials_run"] = r.trials_run;
  res.report["hit_count"] = r.hits.size();
  res.report["expected_empty"] = r.expected_empty;
  res.report["passed"] = r.passed();
  res.report["hits_replay"] = replayed;
  res.report["elapsed_seconds"] = r.elapsed_seconds;
  res.report["hits"] = std::move(hits);
  Table table;
  table.header = {"order", "mode", "trials_run", "hits", "expected_empty", "passed", "elapsed_seconds"};
  table.rows.push_back({kind, mode, std::to_string(r.trials_run), std::to_string(r.hits.size()),
                        r.expected_empty ? "true" : "false", r.passed() ? "true" : "false",
                        std::to_string(r.elapsed_seconds)});
  res.table = std::move(table);
  if (!r.passed() || !replayed) res.status = kDomainError;
  return res;
}

std::vector<Rational> parse_delta_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      out.push_back(parse_rational(part));
    } catch (const polar::Error& e) {
      throw CLI::ValidationError("--deltas", e.what());
    }
  }
  return out;
}

Output cmd_tradeoff(const Options& o) {
  std::vector<Rational> deltas;
  std::optional<Scenario> s;
  if (!o.scenario.empty()) s = load(o);
  if (!o.deltas.empty()) {
    deltas = parse_delta_list(o.deltas);
  } else if (o.grid >= 2) {
    for (std::size_t k = 1; k < o.grid; ++k) deltas.push_back(ratio(static_cast<long>(k), static_cast<long>(o.grid)));
  } else if (s && !s->deltas.empty()) {
    deltas = s->deltas;
  } else {
    for (long k = 1; k < 10; ++k) deltas.push_back(ratio(k, 10));
  }
  const auto rows = tradeoff_curve(deltas);
  const SpacePtr space = rows.front().posterior_low.space_ptr();
  Output res{base_report("tradeoff", s ? &*s : nullptr, *space), std::nullopt, kOk};
  Table table;
  table.header = {"delta", "magnitude", "gamma_probability"};
  for (const char* agent : {"L", "H"}) {
    for (StateIndex st = 0; st < space->size(); ++st) {
      table.header.push_back(std::string("posterior_") + agent + space->label(st));
    }
  }
  for (const char* col : {"polarizes_inside", "polarizes_outside_full", "polarizes_outside_complement"}) {
    table.header.push_back(col);
  }
  Json list = Json::array();
  for (const auto& r : rows) {
    std::vector<std::string> row{polar::to_string(r.delta), polar::to_string(r.magnitude),
                                 polar::to_string(r.gamma_probability)};
    for (const auto& m : r.posterior_low.mass()) row.push_back(polar::to_string(m));
    for (const auto& m : r.posterior_high.mass()) row.push_back(polar::to_string(m));
    for (bool b : {r.polarizes_inside, r.polarizes_outside_full, r.polarizes_outside_complement}) {
      row.push_back(b ? "true" : "false");
    }
    table.rows.push_back(std::move(row));
    list.push_back({{"delta", rational_json(r.delta)},
                    {"magnitude", rational_json(r.magnitude)},
                    {"gamma_probability", rational_json(r.gamma_probability)},
                    {"posterior_low", belief_json(r.posterior_low)},
                    {"posterior_high", belief_json(r.posterior_high)},
                    {"polarizes_inside", r.polarizes_inside},
                    {"polarizes_outside_full", r.polarizes_outside_full},
                    {"polarizes_outside_complement", r.polarizes_outside_complement}});
  }
  res.report["rows"] = std::move(list);
  res.table = std::move(table);
  return res;
}

void add_common(CLI::App* sub, Options& o, bool scenario_required) {
  auto* pos = sub->add_option("scenario", o.scenario, "Scenario JSON file");
  if (scenario_required) pos->required();
  sub->add_option("--out", o.out, "Write the report here instead of stdout");
  sub->add_option("--table", o.table, "Write the plot-ready CSV table here");
  sub->add_option("--seed", o.seed, "Master seed")->envname("POLAR_SEED");
  sub->add_option("--upper-set-cap", o.upper_set_cap, "Upper-set enumeration cap")
      ->envname("POLAR_UPPER_SET_CAP");
  sub->add_option("--strictness", o.strictness, "one: strict on some event; all: on every event")
      ->check(CLI::IsMember({"one", "all"}))
      ->envname("POLAR_STRICTNESS");
}

void add_order(CLI::App* sub, Options& o, bool allow_all) {
  std::vector<std::string> choices{"st", "uo", "cw"};
  if (allow_all) choices.push_back("all");
  sub->add_option("--order", o.order, "Stochastic order")->check(CLI::IsMember(choices))->envname("POLAR_ORDER");
}

void add_mode(CLI::App* sub, Options& o) {
  sub->add_option("--mode", o.mode, "Polarization mode")
      ->check(CLI::IsMember({"oneshot", "limit"}))
      ->envname("POLAR_MODE");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Bayesian belief polarization on finite ordered state spaces", "polar"};
  app.require_subcommand(1);
  Options o;
  std::map<CLI::App*, std::function<Output(const Options&)>> handlers;

  auto* update = app.add_subcommand("update", "Posteriors after a realization or identified set");
  add_common(update, o, true);
  handlers[update] = cmd_update;

  auto* cmp = app.add_subcommand("compare", "Compare the two priors under the stochastic orders");
  add_common(cmp, o, true);
  add_order(cmp, o, true);
  handlers[cmp] = cmd_compare;

  auto* cls = app.add_subcommand("classify", "Whether an identified set admits strong cw polarization");
  add_common(cls, o, true);
  handlers[cls] = cmd_classify;

  auto* cons = app.add_subcommand("construct", "Build polarizing priors");
  add_common(cons, o, true);
  cons->add_option("--builder", o.builder, "gamma | diagonal | oneshot")
      ->check(CLI::IsMember({"gamma", "diagonal", "oneshot"}));
  cons->add_option("--epsilon", o.epsilon, "Rational parameter of the diagonal and oneshot builders");
  cons->add_option("--n", o.n, "Concentration rate of the oneshot builder (searched when omitted)");
  handlers[cons] = cmd_construct;

  auto* pol = app.add_subcommand("polarize", "Certify one-shot or limit polarization");
  add_common(pol, o, true);
  add_order(pol, o, false);
  add_mode(pol, o);
  pol->add_flag("--strong-prior", o.strong_prior, "Require strong cw prior ordering");
  handlers[pol] = cmd_polarize;

  auto* sim = app.add_subcommand("simulate", "Simulate posterior trajectories under a signal");
  add_common(sim, o, true);
  sim->add_option("--horizon", o.horizon, "Number of realizations");
  sim->add_option("--agent", o.agent, "L | H | both")->check(CLI::IsMember({"L", "H", "both"}));
  handlers[sim] = cmd_simulate;

  auto* swp = app.add_subcommand("sweep", "Exhaustive or random certification sweep");
  add_common(swp, o, false);
  add_order(swp, o, false);
  add_mode(swp, o);
  swp->add_option("--trials", o.trials, "Random trials")->envname("POLAR_TRIALS");
  swp->add_option("--denominator-bound", o.denominator_bound, "Exhaustive prior grid bound (0: random)")
      ->envname("POLAR_DENOMINATOR_BOUND");
  swp->add_option("--dims", o.dims, "Grid sizes such as 2x3 when no scenario is given");
  swp->add_option("--levels", o.levels, "Likelihood levels of the exhaustive grid");
  swp->add_flag("--strong-prior", o.strong_prior, "Draw strongly cw-ordered prior pairs");
  swp->add_flag("--direction", o.direction, "Run the per-state direction sweep instead");
  swp->add_option("--max-hits", o.max_hits, "Hits included in the report");
  handlers[swp] = cmd_sweep;

  auto* trd = app.add_subcommand("tradeoff", "Probability/magnitude tradeoff table");
  add_common(trd, o, false);
  trd->add_option("--deltas", o.deltas, "Comma-separated rationals");
  trd->add_option("--grid", o.grid, "Use delta = k/N for k = 1..N-1");
  handlers[trd] = cmd_tradeoff;

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "polar: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    CLI::App* chosen = app.get_subcommands().front();
    Output res = handlers.at(chosen)(o);
    if (res.table) res.report["table"] = res.table->json();
    const std::string text = res.report.dump(2) + "\n";
    if (o.out.empty()) {
      out << text;
    } else {
      std::ofstream f(o.out);
      if (!f || !(f << text)) throw std::runtime_error("cannot write '" + o.out + "'");
    }
    if (res.table && !o.table.empty()) {
      std::ofstream f(o.table);
      if (!f) throw std::runtime_error("cannot write '" + o.table + "'");
      res.table->write_csv(f);
    }
    if (res.status != kOk) err << "polar: sweep found counterexamples\n";
    return res.status;
  } catch (const ScenarioError& e) {
    err << "polar: malformed scenario: " << e.what() << '\n';
    return kUsageError;
  } catch (const CLI::Error& e) {
    err << "polar: " << e.what() << '\n';
    return kUsageError;
  } catch (const polar::Error& e) {
    err << "polar: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::logic_error& e) {
    err << "polar: internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::exception& e) {
    err << "polar: " << e.what() << '\n';
    return kDomainError;
  }
}

}  // namespace polar::cli
