#include "polar/scenario.hpp"

#include "polar/errors.hpp"

namespace polar::cli {

namespace {

const Json& require(const Json& doc, const char* key, const std::string& path) {
  if (!doc.contains(key)) throw ScenarioError(path + key, "missing field");
  return doc.at(key);
}

Rational read_rational(const Json& value, const std::string& field) {
  if (value.is_number_integer()) return Rational(value.get<long>());
  if (!value.is_string()) throw ScenarioError(field, "expected a \"p/q\" string");
  try {
    return parse_rational(value.get<std::string>());
  } catch (const polar::Error& e) {
    throw ScenarioError(field, e.what());
  }
}

std::vector<Rational> read_rationals(const Json& value, const std::string& field,
                                     std::optional<std::size_t> expected) {
  if (!value.is_array()) throw ScenarioError(field, "expected an array");
  if (expected && value.size() != *expected) {
    throw ScenarioError(field, "expected " + std::to_string(*expected) + " entries, got " +
                                   std::to_string(value.size()));
  }
  std::vector<Rational> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(read_rational(value[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::size_t read_count(const Json& value, const std::string& field) {
  if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long>() >= 0)) {
    throw ScenarioError(field, "expected a nonnegative integer");
  }
  return value.get<std::size_t>();
}

StateIndex read_state(const Json& value, const StateSpace& space, const std::string& field) {
  if (!value.is_array() || value.size() != space.dims()) {
    throw ScenarioError(field, "expected " + std::to_string(space.dims()) + " one-based coordinates");
  }
  std::vector<std::size_t> coords;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const std::size_t c = read_count(value[i], field);
    if (c == 0 || c > space.axis_size(i)) throw ScenarioError(field, "coordinate out of range");
    coords.push_back(c - 1);
  }
  const auto s = space.find(coords);
  if (!s) throw ScenarioError(field, "not a state of the space");
  return *s;
}

Json state_json(const StateSpace& space, StateIndex s) {
  Json out = Json::array();
  for (std::size_t c : space.coordinates(s)) out.push_back(c + 1);
  return out;
}

SpacePtr read_space(const Json& doc, bool& points) {
  points = doc.contains("points");
  if (points && doc.contains("dims")) throw ScenarioError("points", "give either dims or points");
  try {
    if (points) {
      const Json& list = doc.at("points");
      if (!list.is_array() || list.empty()) throw ScenarioError("points", "expected a nonempty array");
      std::vector<std::vector<Rational>> pts;
      for (std::size_t i = 0; i < list.size(); ++i) {
        pts.push_back(read_rationals(list[i], "points[" + std::to_string(i) + "]", std::nullopt));
      }
      return make_space(StateSpace::from_points(pts));
    }
    const Json& dims = require(doc, "dims", "");
    if (!dims.is_array() || dims.empty()) throw ScenarioError("dims", "expected a nonempty array");
    std::vector<std::vector<Rational>> axes;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      const std::string field = "dims[" + std::to_string(i) + "]";
      if (dims[i].is_number()) {
        const std::size_t n = read_count(dims[i], field);
        std::vector<Rational> axis;
        for (std::size_t k = 1; k <= n; ++k) axis.emplace_back(static_cast<long>(k));
        axes.push_back(std::move(axis));
      } else {
        axes.push_back(read_rationals(dims[i], field, std::nullopt));
      }
    }
    return make_space(StateSpace(std::move(axes)));
  } catch (const polar::Error& e) {
    throw ScenarioError(points ? "points" : "dims", e.what());
  }
}

template <typename F>
auto checked(const std::string& field, F&& build) {
  try {
    return build();
  } catch (const polar::Error& e) {
    throw ScenarioError(field, e.what());
  }
}

}  // namespace

Belief Scenario::low() const {
  if (!prior_low) throw ScenarioError("priors.L", "missing field");
  return checked("priors.L", [&] { return Belief(space, *prior_low); });
}

Belief Scenario::high() const {
  if (!prior_high) throw ScenarioError("priors.H", "missing field");
  return checked("priors.H", [&] { return Belief(space, *prior_high); });
}

LikelihoodFn Scenario::likelihood_fn() const {
  if (!likelihood) throw ScenarioError("likelihood", "missing field");
  return checked("likelihood", [&] { return LikelihoodFn(space, *likelihood); });
}

StateSubset Scenario::gamma() const {
  if (!identified_set) throw ScenarioError("identified_set", "missing field");
  return StateSubset(space, std::span<const StateIndex>(*identified_set));
}

Signal Scenario::signal_fn() const {
  if (!signal) throw ScenarioError("signal", "missing field");
  return checked("signal", [&] { return Signal(space, signal->realizations, signal->table); });
}

std::vector<UtilityFn> Scenario::utility_fns() const {
  std::vector<UtilityFn> out;
  for (std::size_t i = 0; i < utilities.size(); ++i) {
    out.push_back(checked("utilities[" + std::to_string(i) + "]", [&] {
      return UtilityFn(space, utilities[i].values, utilities[i].family);
    }));
  }
  return out;
}

Scenario parse_scenario(const Json& doc) {
  if (!doc.is_object()) throw ScenarioError("$", "expected an object");
  Scenario out;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ScenarioError("name", "expected a string");
    out.name = doc["name"].get<std::string>();
  }
  if (doc.contains("seed")) out.seed = read_count(doc["seed"], "seed");
  out.space = read_space(doc, out.points);
  const StateSpace& space = *out.space;
  const std::size_t n = space.size();

  if (doc.contains("states")) {
    const Json expected = states_json(space);
    if (doc["states"] != expected) {
      throw ScenarioError("states", "does not match the row-major state order " + expected.dump());
    }
  }
  if (doc.contains("priors")) {
    const Json& priors = doc["priors"];
    if (!priors.is_object()) throw ScenarioError("priors", "expected an object");
    for (const auto& [key, value] : priors.items()) {
      if (key != "L" && key != "H") throw ScenarioError("priors." + key, "unknown agent (use L or H)");
    }
    if (priors.contains("L")) out.prior_low = read_rationals(priors["L"], "priors.L", n);
    if (priors.contains("H")) out.prior_high = read_rationals(priors["H"], "priors.H", n);
    if (out.prior_low) out.low();
    if (out.prior_high) out.high();
  }
  if (doc.contains("likelihood")) {
    out.likelihood = read_rationals(doc["likelihood"], "likelihood", n);
    out.likelihood_fn();
  }
  if (doc.contains("identified_set")) {
    const Json& list = doc["identified_set"];
    if (!list.is_array()) throw ScenarioError("identified_set", "expected an array of states");
    std::vector<StateIndex> states;
    for (std::size_t i = 0; i < list.size(); ++i) {
      states.push_back(read_state(list[i], space, "identified_set[" + std::to_string(i) + "]"));
    }
    std::sort(states.begin(), states.end());
    states.erase(std::unique(states.begin(), states.end()), states.end());
    out.identified_set = std::move(states);
  }
  if (doc.contains("signal")) {
    const Json& sig = doc["signal"];
    if (!sig.is_object()) throw ScenarioError("signal", "expected an object");
    const Json& names = require(sig, "realizations", "signal.");
    const Json& table = require(sig, "table", "signal.");
    if (!names.is_array() || !table.is_array() || names.size() != table.size()) {
      throw ScenarioError("signal.table", "needs one row per realization");
    }
    SignalSpec spec;
    for (std::size_t x = 0; x < names.size(); ++x) {
      if (!names[x].is_string()) {
        throw ScenarioError("signal.realizations[" + std::to_string(x) + "]", "expected a string");
      }
      spec.realizations.push_back(names[x].get<std::string>());
      spec.table.push_back(read_rationals(table[x], "signal.table[" + std::to_string(x) + "]", n));
    }
    out.signal = std::move(spec);
    out.signal_fn();
  }
  if (doc.contains("truth")) out.truth = read_state(doc["truth"], space, "truth");
  if (doc.contains("utilities")) {
    const Json& list = doc["utilities"];
    if (!list.is_array()) throw ScenarioError("utilities", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "utilities[" + std::to_string(i) + "].";
      const Json& entry = list[i];
      if (!entry.is_object()) throw ScenarioError(path, "expected an object");
      UtilitySpec spec;
      spec.name = entry.value("name", "u" + std::to_string(i + 1));
      const Json& family = require(entry, "family", path);
      try {
        spec.family = parse_utility_family(family.get<std::string>());
      } catch (const std::exception& e) {
        throw ScenarioError(path + "family", e.what());
      }
      spec.values = read_rationals(require(entry, "values", path), path + "values", n);
      out.utilities.push_back(std::move(spec));
    }
    out.utility_fns();
  }
  if (doc.contains("deltas")) out.deltas = read_rationals(doc["deltas"], "deltas", std::nullopt);
  return out;
}

Scenario parse_scenario_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ScenarioError("$", e.what());
  }
  return parse_scenario(doc);
}

Json serialize(const Scenario& s) {
  Json out;
  out["name"] = s.name;
  if (s.seed) out["seed"] = *s.seed;
  const StateSpace& space = *s.space;
  if (s.points) {
    Json pts = Json::array();
    for (StateIndex st = 0; st < space.size(); ++st) {
      Json p = Json::array();
      for (std::size_t i = 0; i < space.dims(); ++i) p.push_back(rational_json(space.value(st, i)));
      pts.push_back(std::move(p));
    }
    out["points"] = std::move(pts);
  } else {
    Json dims = Json::array();
    for (std::size_t i = 0; i < space.dims(); ++i) dims.push_back(rationals_json(space.axis(i)));
    out["dims"] = std::move(dims);
  }
  out["states"] = states_json(space);
  if (s.prior_low || s.prior_high) {
    Json priors = Json::object();
    if (s.prior_low) priors["L"] = rationals_json(*s.prior_low);
    if (s.prior_high) priors["H"] = rationals_json(*s.prior_high);
    out["priors"] = std::move(priors);
  }
  if (s.likelihood) out["likelihood"] = rationals_json(*s.likelihood);
  if (s.identified_set) {
    Json list = Json::array();
    for (StateIndex st : *s.identified_set) list.push_back(state_json(space, st));
    out["identified_set"] = std::move(list);
  }
  if (s.signal) {
    Json table = Json::array();
    for (const auto& row : s.signal->table) table.push_back(rationals_json(row));
    out["signal"] = {{"realizations", s.signal->realizations}, {"table", std::move(table)}};
  }
  if (s.truth) out["truth"] = state_json(space, *s.truth);
  if (!s.utilities.empty()) {
    Json list = Json::array();
    for (const auto& u : s.utilities) {
      list.push_back({{"name", u.name},
                      {"family", std::string(to_string(u.family))},
                      {"values", rationals_json(u.values)}});
    }
    out["utilities"] = std::move(list);
  }
  if (!s.deltas.empty()) out["deltas"] = rationals_json(s.deltas);
  return out;
}

Json rational_json(const Rational& value) { return polar::to_string(value); }

Json rationals_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(rational_json(v));
  return out;
}

Json belief_json(const Belief& belief) { return rationals_json(belief.mass()); }

Json states_json(const StateSpace& space) {
  Json out = Json::array();
  for (StateIndex s = 0; s < space.size(); ++s) out.push_back(space.label(s));
  return out;
}

Json subset_json(const StateSubset& subset) {
  Json out = Json::array();
  for (StateIndex s : subset.members()) out.push_back(subset.space().label(s));
  return out;
}

}  // namespace polar::cli
