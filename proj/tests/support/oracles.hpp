#pragma once

// Test-side reference implementations. These recompute quantities from
// definitions by brute force and never call the library routine under test.

#include "polar/core.hpp"

#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace polar::testing {

inline bool coords_leq(const StateSpace& space, StateIndex a, StateIndex b) {
  for (std::size_t i = 0; i < space.dims(); ++i) {
    if (space.value(a, i) > space.value(b, i)) return false;
  }
  return true;
}

inline std::vector<std::vector<bool>> all_masks(std::size_t n) {
  std::vector<std::vector<bool>> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    std::vector<bool> m(n);
    for (std::size_t s = 0; s < n; ++s) m[s] = (bits >> s) & 1;
    out.push_back(std::move(m));
  }
  return out;
}

inline bool brute_is_upper(const StateSpace& space, const std::vector<bool>& mask) {
  for (StateIndex a = 0; a < space.size(); ++a) {
    if (!mask[a]) continue;
    for (StateIndex b = 0; b < space.size(); ++b) {
      if (coords_leq(space, a, b) && !mask[b]) return false;
    }
  }
  return true;
}

inline bool proper(const std::vector<bool>& mask) {
  bool any = false, all = true;
  for (bool b : mask) {
    any = any || b;
    all = all && b;
  }
  return any && !all;
}

/// Proper nonempty upper sets, by scanning every subset.
inline std::set<std::vector<bool>> brute_upper_sets(const StateSpace& space) {
  std::set<std::vector<bool>> out;
  for (auto& m : all_masks(space.size())) {
    if (proper(m) && brute_is_upper(space, m)) out.insert(m);
  }
  return out;
}

/// Proper nonempty upper orthants {θ : θ_i ≥ t_i for all i}.
inline std::set<std::vector<bool>> brute_orthants(const StateSpace& space) {
  std::set<std::vector<bool>> out;
  for (StateIndex t = 0; t < space.size(); ++t) {
    std::vector<bool> m(space.size());
    for (StateIndex s = 0; s < space.size(); ++s) m[s] = coords_leq(space, t, s);
    if (proper(m)) out.insert(m);
  }
  return out;
}

/// Proper nonempty upper projections {θ : θ_i ≥ t}.
inline std::set<std::vector<bool>> brute_projections(const StateSpace& space) {
  std::set<std::vector<bool>> out;
  for (std::size_t i = 0; i < space.dims(); ++i) {
    for (const auto& t : space.axis(i)) {
      std::vector<bool> m(space.size());
      for (StateIndex s = 0; s < space.size(); ++s) m[s] = space.value(s, i) >= t;
      if (proper(m)) out.insert(m);
    }
  }
  return out;
}

inline Rational mass_of(const std::vector<Rational>& p, const std::vector<bool>& mask) {
  Rational total = 0;
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (mask[s]) total += p[s];
  }
  return total;
}

/// Weak dominance on every event and strict on at least one.
inline bool brute_strictly_below(const std::vector<Rational>& low, const std::vector<Rational>& high,
                                 const std::set<std::vector<bool>>& events) {
  bool strict = false;
  for (const auto& e : events) {
    const Rational a = mass_of(low, e), b = mass_of(high, e);
    if (a > b) return false;
    strict = strict || a < b;
  }
  return strict;
}

inline std::vector<Rational> brute_posterior(const std::vector<Rational>& prior,
                                             const std::vector<Rational>& ell) {
  Rational evidence = 0;
  for (std::size_t s = 0; s < prior.size(); ++s) evidence += prior[s] * ell[s];
  std::vector<Rational> out;
  for (std::size_t s = 0; s < prior.size(); ++s) out.push_back(prior[s] * ell[s] / evidence);
  return out;
}

/// P(θ_axis ≤ axis value k).
inline Rational brute_cdf(const StateSpace& space, const std::vector<Rational>& p, std::size_t axis,
                          std::size_t k) {
  Rational total = 0;
  for (StateIndex s = 0; s < space.size(); ++s) {
    if (space.value(s, axis) <= space.axis(axis)[k]) total += p[s];
  }
  return total;
}

/// Strict cdf gap F_low > F_high at every interior point of every marginal.
inline bool brute_strong_cw(const StateSpace& space, const std::vector<Rational>& low,
                            const std::vector<Rational>& high) {
  for (std::size_t i = 0; i < space.dims(); ++i) {
    for (std::size_t k = 0; k + 1 < space.axis_size(i); ++k) {
      if (!(brute_cdf(space, low, i, k) > brute_cdf(space, high, i, k))) return false;
    }
  }
  return true;
}

inline Rational expectation(const std::vector<Rational>& p, const std::vector<Rational>& u) {
  Rational total = 0;
  for (std::size_t s = 0; s < p.size(); ++s) total += p[s] * u[s];
  return total;
}

/// Hand-rolled generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  std::vector<Rational> simplex(std::size_t n, long max_weight = 50) {
    std::vector<Rational> w;
    Rational total = 0;
    for (std::size_t s = 0; s < n; ++s) {
      w.emplace_back(integer(1, max_weight));
      total += w.back();
    }
    for (auto& x : w) x /= total;
    return w;
  }

  Belief belief(const SpacePtr& space, long max_weight = 50) {
    return Belief(space, simplex(space->size(), max_weight));
  }

  /// Values k/levels with at least one positive entry.
  std::vector<Rational> likelihood(std::size_t n, long levels = 8) {
    for (;;) {
      std::vector<Rational> v;
      bool positive = false;
      for (std::size_t s = 0; s < n; ++s) {
        const long k = integer(0, levels);
        positive = positive || k > 0;
        v.push_back(Rational(k, levels));
        v.back().canonicalize();
      }
      if (positive) return v;
    }
  }

  std::vector<bool> mask(std::size_t n, bool proper_only) {
    for (;;) {
      std::vector<bool> m(n);
      for (std::size_t s = 0; s < n; ++s) m[s] = integer(0, 1) == 1;
      if (!proper_only || proper(m)) return m;
    }
  }

  std::vector<std::size_t> grid_sizes(std::size_t max_dims, std::size_t max_side) {
    std::vector<std::size_t> out(static_cast<std::size_t>(integer(1, static_cast<long>(max_dims))));
    for (auto& n : out) n = static_cast<std::size_t>(integer(2, static_cast<long>(max_side)));
    return out;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace polar::testing
