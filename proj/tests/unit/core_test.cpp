#include "polar/core.hpp"
#include "polar/errors.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace polar;
using polar::testing::Gen;

namespace {

std::vector<Rational> q(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (const char* x : xs) out.push_back(parse_rational(x));
  return out;
}

}  // namespace

TEST(Rational, ParsesAndCanonicalizes) {
  EXPECT_EQ(parse_rational("2/4"), ratio(1, 2));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_EQ(to_string(parse_rational("6/8")), "3/4");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("0.5"), Error);
  EXPECT_THROW(parse_rational("1/-2"), Error);
  EXPECT_THROW(parse_rational(""), Error);
}

TEST(StateSpace, RowMajorIndexing) {
  const auto space = StateSpace::grid({2, 3});
  ASSERT_EQ(space.size(), 6u);
  EXPECT_EQ(space.index_of({0, 0}), 0u);
  EXPECT_EQ(space.index_of({0, 2}), 2u);
  EXPECT_EQ(space.index_of({1, 0}), 3u);
  EXPECT_EQ(space.label(4), "(2,2)");
  EXPECT_EQ(space.min_state(), 0u);
  EXPECT_EQ(space.max_state(), 5u);
  EXPECT_TRUE(space.is_product());
}

TEST(StateSpace, PartialOrder) {
  const auto space = StateSpace::grid({2, 2});
  const auto a = space.index_of({0, 1});
  const auto b = space.index_of({1, 0});
  EXPECT_FALSE(space.comparable(a, b));
  EXPECT_TRUE(space.weakly_below(0, a));
  EXPECT_TRUE(space.strictly_below(0, 3));
  EXPECT_FALSE(space.strictly_below(0, a));
}

TEST(StateSpace, RejectsBadAxes) {
  EXPECT_THROW(StateSpace(std::vector<std::vector<Rational>>{}), Error);
  EXPECT_THROW(StateSpace({{Rational(1)}}), Error);
  EXPECT_THROW(StateSpace({{Rational(2), Rational(1)}}), Error);
}

TEST(StateSpace, FromPointsDetectsProducts) {
  const auto grid = StateSpace::from_points({{Rational(0), Rational(0)},
                                             {Rational(0), Rational(1)},
                                             {Rational(1), Rational(0)},
                                             {Rational(1), Rational(1)}});
  EXPECT_TRUE(grid.is_product());
  const auto vee = StateSpace::from_points({{Rational(0), Rational(0)},
                                            {Rational(1), Rational(0)},
                                            {Rational(0), Rational(1)}});
  EXPECT_FALSE(vee.is_product());
  EXPECT_EQ(vee.size(), 3u);
  EXPECT_THROW(vee.max_state(), Error);
  EXPECT_THROW(StateSpace::from_points({{Rational(0)}, {Rational(0)}}), Error);
}

TEST(StateSubset, SetAlgebra) {
  const auto space = make_grid({2, 2});
  StateSubset diag(space, {0, 3});
  EXPECT_EQ(diag.to_string(), "{(1,1),(2,2)}");
  const auto off = diag.complement();
  EXPECT_EQ(off.members(), (std::vector<StateIndex>{1, 2}));
  EXPECT_TRUE((diag & off).empty());
  EXPECT_TRUE((diag | off).is_full());
  EXPECT_TRUE(StateSubset(space, {0}).is_subset_of(diag));
  EXPECT_EQ((diag - StateSubset(space, {0})).members(), (std::vector<StateIndex>{3}));
  EXPECT_THROW(diag.insert(4), Error);
}

TEST(Belief, ValidatesMasses) {
  const auto space = make_grid({2, 2});
  EXPECT_THROW(Belief(space, q({"1/2", "1/2", "0", "1/4"})), Error);
  EXPECT_THROW(Belief(space, q({"1/2", "1/2"})), Error);
  EXPECT_THROW(Belief(space, q({"3/2", "-1/2", "0", "0"})), Error);
  EXPECT_THROW(Belief::from_weights(space, q({"0", "0", "0", "0"})), Error);
  const auto w = Belief::from_weights(space, q({"3", "2", "2", "1"}));
  EXPECT_EQ(w[0], ratio(3, 8));
}

TEST(Belief, ConstructorsAndProbability) {
  const auto space = make_grid({2, 2});
  const auto u = Belief::uniform(space);
  EXPECT_EQ(u[2], ratio(1, 4));
  EXPECT_TRUE(u.full_support());
  const auto d = Belief::dirac(space, 2);
  EXPECT_EQ(d.support().members(), (std::vector<StateIndex>{2}));
  const auto on = Belief::uniform_on(StateSubset(space, {1, 2}));
  EXPECT_EQ(on[1], ratio(1, 2));
  EXPECT_FALSE(on.full_support());
  EXPECT_EQ(u.probability(StateSubset(space, {0, 1, 3})), ratio(3, 4));
  const std::vector<Rational> values = q({"0", "1", "1", "2"});
  EXPECT_EQ(u.expectation(values), Rational(1));
}

TEST(Belief, MarginalOfSymmetricPrior) {
  const auto space = make_grid({2, 2});
  const Belief pl(space, q({"3/8", "1/4", "1/4", "1/8"}));
  for (std::size_t axis = 0; axis < 2; ++axis) {
    const auto m = marginal(pl, axis);
    EXPECT_EQ(m.mass, q({"5/8", "3/8"}));
    EXPECT_EQ(m.cdf, q({"5/8", "1"}));
  }
  EXPECT_THROW(marginal(pl, 2), Error);
}

TEST(Belief, ConditionAndMixture) {
  const auto space = make_grid({2, 2});
  const Belief pl(space, q({"3/8", "1/4", "1/4", "1/8"}));
  const auto c = condition(pl, StateSubset(space, {0, 3}));
  EXPECT_EQ(c.mass(), q({"3/4", "0", "0", "1/4"}));
  EXPECT_THROW(condition(Belief::dirac(space, 0), StateSubset(space, {3})), NullEventError);

  const std::vector<Rational> w = q({"1/2", "1/2"});
  const std::vector<Belief> parts{Belief::dirac(space, 0), Belief::dirac(space, 3)};
  EXPECT_EQ(mixture(w, parts).mass(), q({"1/2", "0", "0", "1/2"}));
  EXPECT_EQ(total_variation(parts[0], parts[1]), Rational(1));
}

TEST(BeliefProperty, ConditioningMatchesDefinition) {
  Gen gen(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto sizes = gen.grid_sizes(3, 3);
    const auto space = make_grid(std::span<const std::size_t>(sizes));
    const auto p = gen.belief(space);
    const auto gamma = StateSubset::from_mask(space, gen.mask(space->size(), false));
    if (gamma.empty()) {
      EXPECT_THROW(condition(p, gamma), NullEventError);
      continue;
    }
    const auto c = condition(p, gamma);
    const Rational pg = polar::testing::mass_of(p.mass(), gamma.mask());
    for (StateIndex s = 0; s < space->size(); ++s) {
      EXPECT_EQ(c[s], gamma.contains(s) ? p[s] / pg : Rational(0));
    }
  }
}

TEST(BeliefProperty, MixtureStaysOnSimplexAndTvIsMetric) {
  Gen gen(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto space = make_grid({2, 3});
    const auto a = gen.belief(space), b = gen.belief(space), c = gen.belief(space);
    const std::vector<Rational> w = gen.simplex(2);
    const std::vector<Belief> parts{a, b};
    const auto m = mixture(w, parts);
    Rational total = 0;
    for (const auto& x : m.mass()) total += x;
    EXPECT_EQ(total, 1);
    EXPECT_EQ(total_variation(a, b), total_variation(b, a));
    EXPECT_LE(total_variation(a, c), total_variation(a, b) + total_variation(b, c));
    EXPECT_EQ(total_variation(a, a), 0);
  }
}
