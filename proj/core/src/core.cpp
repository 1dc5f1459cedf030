#include "polar/core.hpp"

#include "polar/errors.hpp"

#include <algorithm>
#include <sstream>

namespace polar {

StateSpace::StateSpace(std::vector<std::vector<Rational>> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw Error("state space needs at least one axis");
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    const auto& axis = axes_[i];
    if (axis.size() < 2) {
      throw Error("axis " + std::to_string(i) + " needs at least two values");
    }
    for (std::size_t k = 1; k < axis.size(); ++k) {
      if (!(axis[k - 1] < axis[k])) {
        throw Error("axis " + std::to_string(i) + " is not strictly increasing");
      }
    }
  }
  finish_product();
}

void StateSpace::finish_product() {
  const std::size_t d = axes_.size();
  strides_.assign(d, 1);
  count_ = 1;
  for (std::size_t i = d; i-- > 0;) {
    strides_[i] = count_;
    count_ *= axes_[i].size();
  }
  coords_.resize(count_ * d);
  for (std::size_t s = 0; s < count_; ++s) {
    std::size_t rest = s;
    for (std::size_t i = 0; i < d; ++i) {
      coords_[s * d + i] = rest / strides_[i];
      rest %= strides_[i];
    }
  }
  product_ = true;
}

StateSpace StateSpace::grid(std::span<const std::size_t> sizes) {
  std::vector<std::vector<Rational>> axes;
  axes.reserve(sizes.size());
  for (std::size_t n : sizes) {
    std::vector<Rational> axis;
    for (std::size_t k = 1; k <= n; ++k) axis.emplace_back(static_cast<unsigned long>(k));
    axes.push_back(std::move(axis));
  }
  return StateSpace(std::move(axes));
}

StateSpace StateSpace::grid(std::initializer_list<std::size_t> sizes) {
  return grid(std::span<const std::size_t>(sizes.begin(), sizes.size()));
}

StateSpace StateSpace::from_points(const std::vector<std::vector<Rational>>& points) {
  if (points.empty()) throw Error("point set is empty");
  const std::size_t d = points.front().size();
  if (d == 0) throw Error("points need at least one coordinate");
  for (const auto& p : points) {
    if (p.size() != d) throw Error("points have inconsistent dimensions");
  }

  StateSpace space;
  space.axes_.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    auto& axis = space.axes_[i];
    for (const auto& p : points) axis.push_back(p[i]);
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
  }

  std::vector<std::vector<std::size_t>> indexed;
  indexed.reserve(points.size());
  for (const auto& p : points) {
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < d; ++i) {
      const auto& axis = space.axes_[i];
      idx[i] = static_cast<std::size_t>(std::lower_bound(axis.begin(), axis.end(), p[i]) -
                                        axis.begin());
    }
    indexed.push_back(std::move(idx));
  }
  std::sort(indexed.begin(), indexed.end());
  if (std::adjacent_find(indexed.begin(), indexed.end()) != indexed.end()) {
    throw Error("point set contains duplicate points");
  }

  std::size_t product_size = 1;
  for (const auto& axis : space.axes_) product_size *= axis.size();
  const bool axes_ok = std::all_of(space.axes_.begin(), space.axes_.end(),
                                   [](const auto& axis) { return axis.size() >= 2; });
  if (product_size == indexed.size() && axes_ok) {
    space.finish_product();
    return space;
  }

  space.count_ = indexed.size();
  space.coords_.reserve(indexed.size() * d);
  for (const auto& idx : indexed) space.coords_.insert(space.coords_.end(), idx.begin(), idx.end());
  space.product_ = false;
  return space;
}

std::optional<StateIndex> StateSpace::find(std::span<const std::size_t> coords) const {
  const std::size_t d = axes_.size();
  if (coords.size() != d) return std::nullopt;
  for (std::size_t i = 0; i < d; ++i) {
    if (coords[i] >= axes_[i].size()) return std::nullopt;
  }
  if (product_) {
    StateIndex s = 0;
    for (std::size_t i = 0; i < d; ++i) s += coords[i] * strides_[i];
    return s;
  }
  for (StateIndex s = 0; s < count_; ++s) {
    if (std::equal(coords.begin(), coords.end(), coords_.begin() + s * d)) return s;
  }
  return std::nullopt;
}

StateIndex StateSpace::index_of(std::span<const std::size_t> coords) const {
  if (auto s = find(coords)) return *s;
  std::ostringstream out;
  out << "no state with coordinates (";
  for (std::size_t i = 0; i < coords.size(); ++i) out << (i ? "," : "") << coords[i] + 1;
  out << ")";
  throw Error(out.str());
}

StateIndex StateSpace::index_of(std::initializer_list<std::size_t> coords) const {
  return index_of(std::span<const std::size_t>(coords.begin(), coords.size()));
}

StateIndex StateSpace::min_state() const {
  for (StateIndex s = 0; s < count_; ++s) {
    bool below_all = true;
    for (StateIndex t = 0; t < count_ && below_all; ++t) below_all = weakly_below(s, t);
    if (below_all) return s;
  }
  throw Error("state space has no unique minimum");
}

StateIndex StateSpace::max_state() const {
  for (StateIndex s = count_; s-- > 0;) {
    bool above_all = true;
    for (StateIndex t = 0; t < count_ && above_all; ++t) above_all = weakly_below(t, s);
    if (above_all) return s;
  }
  throw Error("state space has no unique maximum");
}

bool StateSpace::weakly_below(StateIndex a, StateIndex b) const {
  const std::size_t d = axes_.size();
  const std::size_t* ca = coords_.data() + a * d;
  const std::size_t* cb = coords_.data() + b * d;
  for (std::size_t i = 0; i < d; ++i) {
    if (ca[i] > cb[i]) return false;
  }
  return true;
}

bool StateSpace::strictly_below(StateIndex a, StateIndex b) const {
  const std::size_t d = axes_.size();
  const std::size_t* ca = coords_.data() + a * d;
  const std::size_t* cb = coords_.data() + b * d;
  for (std::size_t i = 0; i < d; ++i) {
    if (ca[i] >= cb[i]) return false;
  }
  return true;
}

std::string StateSpace::label(StateIndex s) const {
  std::string out = "(";
  for (std::size_t i = 0; i < dims(); ++i) {
    if (i) out += ',';
    out += std::to_string(coordinate(s, i) + 1);
  }
  out += ')';
  return out;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------------------

StateSubset::StateSubset(SpacePtr space) : space_(std::move(space)) {
  if (!space_) throw Error("subset needs a state space");
  mask_.assign(space_->size(), false);
}

StateSubset::StateSubset(SpacePtr space, std::initializer_list<StateIndex> members)
    : StateSubset(std::move(space), std::span<const StateIndex>(members.begin(), members.size())) {}

StateSubset::StateSubset(SpacePtr space, std::span<const StateIndex> members)
    : StateSubset(std::move(space)) {
  for (StateIndex s : members) insert(s);
}

StateSubset StateSubset::all(SpacePtr space) {
  StateSubset subset(std::move(space));
  subset.mask_.assign(subset.mask_.size(), true);
  return subset;
}

StateSubset StateSubset::from_mask(SpacePtr space, std::vector<bool> mask) {
  StateSubset subset(std::move(space));
  if (mask.size() != subset.mask_.size()) throw Error("subset mask has the wrong length");
  subset.mask_ = std::move(mask);
  return subset;
}

void StateSubset::insert(StateIndex s) {
  if (s >= mask_.size()) throw Error("state index " + std::to_string(s) + " out of range");
  mask_[s] = true;
}

void StateSubset::erase(StateIndex s) {
  if (s >= mask_.size()) throw Error("state index " + std::to_string(s) + " out of range");
  mask_[s] = false;
}

std::size_t StateSubset::count() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true));
}

std::vector<StateIndex> StateSubset::members() const {
  std::vector<StateIndex> out;
  for (StateIndex s = 0; s < mask_.size(); ++s) {
    if (mask_[s]) out.push_back(s);
  }
  return out;
}

StateSubset StateSubset::complement() const {
  StateSubset out(space_);
  for (std::size_t s = 0; s < mask_.size(); ++s) out.mask_[s] = !mask_[s];
  return out;
}

namespace {

void require_same(const StateSubset& a, const StateSubset& b) {
  if (!same_space(a.space_ptr(), b.space_ptr())) {
    throw Error("subsets belong to different state spaces");
  }
}

}  // namespace

StateSubset operator&(const StateSubset& a, const StateSubset& b) {
  require_same(a, b);
  StateSubset out(a.space_);
  for (std::size_t s = 0; s < a.mask_.size(); ++s) out.mask_[s] = a.mask_[s] && b.mask_[s];
  return out;
}

StateSubset operator|(const StateSubset& a, const StateSubset& b) {
  require_same(a, b);
  StateSubset out(a.space_);
  for (std::size_t s = 0; s < a.mask_.size(); ++s) out.mask_[s] = a.mask_[s] || b.mask_[s];
  return out;
}

StateSubset operator-(const StateSubset& a, const StateSubset& b) {
  require_same(a, b);
  StateSubset out(a.space_);
  for (std::size_t s = 0; s < a.mask_.size(); ++s) out.mask_[s] = a.mask_[s] && !b.mask_[s];
  return out;
}

bool StateSubset::is_subset_of(const StateSubset& other) const {
  require_same(*this, other);
  for (std::size_t s = 0; s < mask_.size(); ++s) {
    if (mask_[s] && !other.mask_[s]) return false;
  }
  return true;
}

std::string StateSubset::to_string() const {
  std::string out = "{";
  bool first = true;
  for (StateIndex s = 0; s < mask_.size(); ++s) {
    if (!mask_[s]) continue;
    if (!first) out += ',';
    out += space_->label(s);
    first = false;
  }
  out += '}';
  return out;
}

// ---------------------------------------------------------------------------

Belief::Belief(SpacePtr space, std::vector<Rational> mass, Unchecked)
    : space_(std::move(space)), mass_(std::move(mass)) {}

Belief::Belief(SpacePtr space, std::vector<Rational> mass)
    : space_(std::move(space)), mass_(std::move(mass)) {
  if (!space_) throw Error("belief needs a state space");
  if (mass_.size() != space_->size()) {
    throw Error("belief has " + std::to_string(mass_.size()) + " masses for " +
                std::to_string(space_->size()) + " states");
  }
  Rational total = 0;
  for (const auto& m : mass_) {
    if (sgn(m) < 0) throw Error("belief has a negative mass " + polar::to_string(m));
    total += m;
  }
  if (total != 1) throw Error("belief masses sum to " + polar::to_string(total) + ", not 1");
}

Belief Belief::from_weights(SpacePtr space, std::vector<Rational> weights) {
  Rational total = 0;
  for (const auto& w : weights) {
    if (sgn(w) < 0) throw Error("negative weight " + polar::to_string(w));
    total += w;
  }
  if (sgn(total) <= 0) throw Error("weights have zero total");
  for (auto& w : weights) w /= total;
  return Belief(std::move(space), std::move(weights));
}

Belief Belief::uniform(SpacePtr space) {
  const std::size_t n = space->size();
  return Belief(std::move(space), std::vector<Rational>(n, ratio(1, n)));
}

Belief Belief::dirac(SpacePtr space, StateIndex s) {
  if (s >= space->size()) throw Error("state index " + std::to_string(s) + " out of range");
  std::vector<Rational> mass(space->size(), Rational(0));
  mass[s] = 1;
  return Belief(std::move(space), std::move(mass));
}

Belief Belief::uniform_on(const StateSubset& subset) {
  const std::size_t n = subset.count();
  if (n == 0) throw Error("uniform distribution over an empty set");
  std::vector<Rational> mass(subset.space().size(), Rational(0));
  for (StateIndex s : subset.members()) mass[s] = ratio(1, n);
  return Belief(subset.space_ptr(), std::move(mass));
}

bool Belief::full_support() const {
  return std::all_of(mass_.begin(), mass_.end(), [](const Rational& m) { return sgn(m) > 0; });
}

StateSubset Belief::support() const {
  StateSubset out(space_);
  for (StateIndex s = 0; s < mass_.size(); ++s) {
    if (sgn(mass_[s]) > 0) out.insert(s);
  }
  return out;
}

Rational Belief::probability(const StateSubset& event) const {
  if (!same_space(space_, event.space_ptr())) throw Error("event belongs to another space");
  Rational total = 0;
  const auto& mask = event.mask();
  for (StateIndex s = 0; s < mass_.size(); ++s) {
    if (mask[s]) total += mass_[s];
  }
  return total;
}

Rational Belief::probability(std::span<const StateIndex> states) const {
  Rational total = 0;
  for (StateIndex s : states) total += mass_[s];
  return total;
}

Rational Belief::expectation(std::span<const Rational> values) const {
  if (values.size() != mass_.size()) throw Error("expectation: value vector has the wrong length");
  Rational total = 0;
  for (StateIndex s = 0; s < mass_.size(); ++s) {
    if (sgn(mass_[s]) != 0) total += mass_[s] * values[s];
  }
  return total;
}

Marginal marginal(const Belief& belief, std::size_t axis) {
  const auto& space = belief.space();
  if (axis >= space.dims()) {
    throw Error("axis " + std::to_string(axis) + " out of range for a " +
                std::to_string(space.dims()) + "-dimensional space");
  }
  Marginal out;
  out.mass.assign(space.axis_size(axis), Rational(0));
  for (StateIndex s = 0; s < belief.size(); ++s) out.mass[space.coordinate(s, axis)] += belief[s];
  out.cdf.resize(out.mass.size());
  Rational running = 0;
  for (std::size_t k = 0; k < out.mass.size(); ++k) {
    running += out.mass[k];
    out.cdf[k] = running;
  }
  return out;
}

Belief condition(const Belief& belief, const StateSubset& subset) {
  const Rational total = belief.probability(subset);
  if (sgn(total) == 0) throw NullEventError("conditioning on null event " + subset.to_string());
  std::vector<Rational> mass(belief.size(), Rational(0));
  const auto& mask = subset.mask();
  for (StateIndex s = 0; s < belief.size(); ++s) {
    if (mask[s]) mass[s] = belief[s] / total;
  }
  return Belief(belief.space_ptr(), std::move(mass), Belief::Unchecked{});
}

Belief mixture(std::span<const Rational> weights, std::span<const Belief> beliefs) {
  if (weights.size() != beliefs.size() || beliefs.empty()) {
    throw Error("mixture needs one weight per belief");
  }
  Rational total = 0;
  for (const auto& w : weights) {
    if (sgn(w) < 0) throw Error("mixture weight " + to_string(w) + " is negative");
    total += w;
  }
  if (total != 1) throw Error("mixture weights sum to " + to_string(total) + ", not 1");
  const auto& space = beliefs.front().space_ptr();
  for (const auto& b : beliefs) {
    if (!same_space(space, b.space_ptr())) throw Error("mixture of beliefs on different spaces");
  }
  std::vector<Rational> mass(space->size(), Rational(0));
  for (std::size_t j = 0; j < beliefs.size(); ++j) {
    if (sgn(weights[j]) == 0) continue;
    for (StateIndex s = 0; s < mass.size(); ++s) mass[s] += weights[j] * beliefs[j][s];
  }
  return Belief(space, std::move(mass), Belief::Unchecked{});
}

Rational total_variation(const Belief& a, const Belief& b) {
  if (!same_space(a.space_ptr(), b.space_ptr())) throw Error("total variation across spaces");
  Rational total = 0;
  for (StateIndex s = 0; s < a.size(); ++s) total += abs(Rational(a[s] - b[s]));
  return total / 2;
}

}  // namespace polar
