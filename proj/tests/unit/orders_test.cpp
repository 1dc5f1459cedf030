#include "polar/errors.hpp"
#include "polar/orders.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace polar;
using polar::testing::Gen;

namespace {

constexpr UpperFamilyKind kKinds[] = {UpperFamilyKind::UpperSet, UpperFamilyKind::UpperOrthant,
                                      UpperFamilyKind::UpperProjection};

std::vector<Rational> q(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (const char* x : xs) out.push_back(parse_rational(x));
  return out;
}

std::set<std::vector<bool>> masks(const std::vector<StateSubset>& events) {
  std::set<std::vector<bool>> out;
  for (const auto& e : events) out.insert(e.mask());
  return out;
}

std::set<std::vector<bool>> brute_family(const StateSpace& space, UpperFamilyKind kind) {
  switch (kind) {
    case UpperFamilyKind::UpperSet: return polar::testing::brute_upper_sets(space);
    case UpperFamilyKind::UpperOrthant: return polar::testing::brute_orthants(space);
    case UpperFamilyKind::UpperProjection: return polar::testing::brute_projections(space);
  }
  return {};
}

struct SymmetricExample {
  SpacePtr space = make_grid({2, 2});
  Belief pl{space, q({"3/8", "1/4", "1/4", "1/8"})};
  Belief ph{space, q({"1/8", "1/4", "1/4", "3/8"})};
  Belief ql{space, q({"3/4", "0", "0", "1/4"})};
  Belief qh{space, q({"1/4", "0", "0", "3/4"})};
};

}  // namespace

TEST(Families, NamesRoundTrip) {
  for (auto kind : kKinds) EXPECT_EQ(parse_family_kind(to_string(kind)), kind);
  EXPECT_THROW(parse_family_kind("xx"), Error);
}

TEST(Families, SmallGridCounts) {
  const auto space = make_grid({2, 2});
  EXPECT_EQ(enumerate_events(space, UpperFamilyKind::UpperSet).size(), 4u);
  EXPECT_EQ(enumerate_events(space, UpperFamilyKind::UpperOrthant).size(), 3u);
  EXPECT_EQ(enumerate_events(space, UpperFamilyKind::UpperProjection).size(), 2u);
  const auto with_trivial = enumerate_events(space, UpperFamilyKind::UpperSet, true);
  EXPECT_TRUE(masks(with_trivial).count(std::vector<bool>(4, true)));
}

TEST(Families, TwoDimensionalUpperSetsAreLatticePaths) {
  for (std::size_t a = 2; a <= 4; ++a) {
    for (std::size_t b = 2; b <= 4; ++b) {
      const auto space = make_grid({a, b});
      EXPECT_EQ(enumerate_events(space, UpperFamilyKind::UpperSet).size(),
                polar::testing::binomial(a + b, a) - 2)
          << a << "x" << b;
    }
  }
}

TEST(Families, MatchBruteForceOnRandomGrids) {
  Gen gen(21);
  for (int trial = 0; trial < 40; ++trial) {
    auto sizes = gen.grid_sizes(3, 3);
    std::size_t total = 1;
    for (auto n : sizes) total *= n;
    if (total > 16) continue;
    const auto space = make_grid(std::span<const std::size_t>(sizes));
    for (auto kind : kKinds) {
      const auto events = enumerate_events(space, kind);
      EXPECT_EQ(events.size(), masks(events).size()) << "duplicates";
      EXPECT_EQ(masks(events), brute_family(*space, kind));
    }
  }
}

TEST(Families, UpperSetsOnNonProductPoset) {
  // Five points: a diamond with an extra incomparable point.
  const auto space = make_space(StateSpace::from_points({{Rational(0), Rational(0)},
                                                         {Rational(1), Rational(0)},
                                                         {Rational(0), Rational(1)},
                                                         {Rational(1), Rational(1)},
                                                         {Rational(2), Rational(0)}}));
  const auto events = enumerate_events(space, UpperFamilyKind::UpperSet);
  EXPECT_EQ(masks(events), polar::testing::brute_upper_sets(*space));
  for (const auto& e : events) EXPECT_TRUE(is_upper_set(e));
}

TEST(Families, CapIsEnforced) {
  const auto space = make_grid({3, 3});
  EXPECT_THROW(enumerate_events(space, UpperFamilyKind::UpperSet, false, 5), CapExceededError);
  EXPECT_NO_THROW(EventFamily(space, UpperFamilyKind::UpperOrthant, 5));
}

TEST(Families, UpClosure) {
  const auto space = make_grid({2, 2});
  const auto c = up_closure(StateSubset(space, {1}));
  EXPECT_EQ(c.members(), (std::vector<StateIndex>{1, 3}));
  EXPECT_FALSE(is_upper_set(StateSubset(space, {1})));
}

TEST(Compare, SymmetricExampleChainUnderCw) {
  SymmetricExample ex;
  const auto cw = UpperFamilyKind::UpperProjection;
  EXPECT_EQ(compare(ex.ql, ex.pl, cw).relation, Relation::StrictlyBelow);
  EXPECT_EQ(compare(ex.pl, ex.ph, cw).relation, Relation::StrictlyBelow);
  EXPECT_EQ(compare(ex.ph, ex.qh, cw).relation, Relation::StrictlyBelow);
  EXPECT_EQ(compare(ex.ph, ex.pl, cw).relation, Relation::StrictlyAbove);
  EXPECT_EQ(compare(ex.pl, ex.pl, cw).relation, Relation::Equal);
}

TEST(Compare, SymmetricExampleHighMoveFailsUnderSt) {
  SymmetricExample ex;
  const auto v = compare(ex.ph, ex.qh, UpperFamilyKind::UpperSet);
  EXPECT_EQ(v.relation, Relation::Incomparable);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.witness->event.to_string(), "{(1,2),(2,1),(2,2)}");
  EXPECT_EQ(v.witness->low_mass, ratio(7, 8));
  EXPECT_EQ(v.witness->high_mass, ratio(3, 4));
  ASSERT_TRUE(v.counter_witness);
  EXPECT_LT(v.counter_witness->low_mass, v.counter_witness->high_mass);
}

TEST(Compare, AllEventsStrictness) {
  const auto space = make_grid({2, 2});
  const Belief a(space, q({"1/2", "0", "0", "1/2"}));
  const Belief b(space, q({"0", "1/2", "0", "1/2"}));
  const auto one = compare(a, b, UpperFamilyKind::UpperProjection, Strictness::OneEvent);
  const auto all = compare(a, b, UpperFamilyKind::UpperProjection, Strictness::AllEvents);
  EXPECT_EQ(one.relation, Relation::StrictlyBelow);
  EXPECT_EQ(all.relation, Relation::WeaklyBelow);
  ASSERT_TRUE(all.witness);
  EXPECT_EQ(all.witness->low_mass, all.witness->high_mass);
}

TEST(CompareProperty, AgreesWithBruteForce) {
  Gen gen(22);
  for (int trial = 0; trial < 300; ++trial) {
    const auto space = make_grid({2, 3});
    const auto a = gen.belief(space, 4), b = gen.belief(space, 4);
    for (auto kind : kKinds) {
      const auto events = brute_family(*space, kind);
      EXPECT_EQ(compare(a, b, kind).strictly_below(),
                polar::testing::brute_strictly_below(a.mass(), b.mass(), events));
    }
  }
}

TEST(CompareProperty, ImplicationChainStUoCw) {
  Gen gen(23);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto space = make_grid({2, 2});
    const auto a = gen.belief(space, 3), b = gen.belief(space, 3);
    const bool st = compare(a, b, UpperFamilyKind::UpperSet).below();
    const bool uo = compare(a, b, UpperFamilyKind::UpperOrthant).below();
    const bool cw = compare(a, b, UpperFamilyKind::UpperProjection).below();
    if (st) EXPECT_TRUE(uo);
    if (uo) EXPECT_TRUE(cw);
  }
}

TEST(Compare, ConversesFail) {
  const auto space = make_grid({2, 2});
  // uo-below but not st-below: mass on the anti-diagonal against the diagonal.
  const Belief a(space, q({"0", "1/2", "1/2", "0"}));
  const Belief b(space, q({"1/2", "0", "0", "1/2"}));
  EXPECT_TRUE(compare(a, b, UpperFamilyKind::UpperOrthant).strictly_below());
  EXPECT_FALSE(compare(a, b, UpperFamilyKind::UpperSet).below());
  // cw-below but not uo-below.
  const Belief c(space, q({"1/2", "1/8", "0", "3/8"}));
  const Belief d(space, q({"0", "1/2", "1/2", "0"}));
  EXPECT_TRUE(compare(c, d, UpperFamilyKind::UpperProjection).strictly_below());
  EXPECT_FALSE(compare(c, d, UpperFamilyKind::UpperOrthant).below());
}

TEST(StrongCw, SymmetricExample) {
  SymmetricExample ex;
  const auto v = compare_strong_cw(ex.pl, ex.ph);
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.min_gap, ratio(1, 4));
  const auto back = compare_strong_cw(ex.ph, ex.pl);
  EXPECT_FALSE(back.holds);
  EXPECT_EQ(back.failing_axis, 0u);
  EXPECT_EQ(back.failing_point, 0u);
}

TEST(StrongCwProperty, MatchesCdfOracle) {
  Gen gen(24);
  for (int trial = 0; trial < 500; ++trial) {
    const auto space = make_grid({3, 2});
    const auto a = gen.belief(space), b = gen.belief(space);
    EXPECT_EQ(compare_strong_cw(a, b).holds, polar::testing::brute_strong_cw(*space, a.mass(), b.mass()));
  }
}

TEST(Generators, ClassMembership) {
  const auto space = make_grid({2, 2});
  const StateFunction additive = q({"0", "1", "1", "2"});
  const StateFunction top = q({"0", "0", "0", "1"});
  const StateFunction lshape = q({"0", "1", "1", "1"});
  EXPECT_TRUE(is_sum_of_univariate_increasing(*space, additive));
  EXPECT_FALSE(is_product_of_nonneg_univariate_increasing(*space, additive));
  EXPECT_TRUE(is_product_of_nonneg_univariate_increasing(*space, top));
  EXPECT_FALSE(is_sum_of_univariate_increasing(*space, top));
  EXPECT_TRUE(is_increasing(*space, lshape));
  EXPECT_FALSE(is_product_of_nonneg_univariate_increasing(*space, lshape));
  EXPECT_FALSE(is_increasing(*space, q({"1", "0", "0", "0"})));
  const auto vee = StateSpace::from_points({{Rational(0), Rational(0)},
                                            {Rational(1), Rational(0)},
                                            {Rational(0), Rational(1)}});
  EXPECT_THROW(is_sum_of_univariate_increasing(vee, q({"0", "1", "1"})), PreconditionError);
}

TEST(Generators, CanonicalGeneratorsAreInClass) {
  for (auto kind : kKinds) {
    const auto space = make_grid({2, 3});
    for (const auto& g : canonical_generators(space, kind)) {
      EXPECT_TRUE(in_generating_class(*space, kind, g));
    }
  }
  const auto space = make_grid({2, 2});
  EXPECT_THROW(compare_by_generators(Belief::uniform(space), Belief::uniform(space),
                                     UpperFamilyKind::UpperProjection, {q({"0", "0", "0", "1"})}),
               PreconditionError);
}

TEST(GeneratorsProperty, DualityWithEventComparison) {
  // Every belief on 2×2 with masses k/D, D ≤ 4 (zeros allowed).
  const auto space = make_grid({2, 2});
  std::vector<Belief> grid;
  std::set<std::vector<Rational>> seen;
  for (long d = 1; d <= 4; ++d) {
    for (long a = 0; a <= d; ++a)
      for (long b = 0; a + b <= d; ++b)
        for (long c = 0; a + b + c <= d; ++c) {
          std::vector<Rational> m{ratio(a, d), ratio(b, d), ratio(c, d), ratio(d - a - b - c, d)};
          if (seen.insert(m).second) grid.emplace_back(space, m);
        }
  }
  for (auto kind : kKinds) {
    const auto basis = canonical_generators(space, kind);
    for (const auto& x : grid) {
      for (const auto& y : grid) {
        ASSERT_EQ(compare_by_generators(x, y, kind, basis), compare(x, y, kind).below());
      }
    }
  }
}

TEST(GeneratorsProperty, StrongCwGivesStrictGapForAdditiveUtilities) {
  Gen gen(25);
  const auto space = make_grid({3, 3});
  int checked = 0;
  while (checked < 200) {
    const auto a = gen.belief(space), b = gen.belief(space);
    if (!compare_strong_cw(a, b).holds) continue;
    // u = f1(θ1) + f2(θ2) with nondecreasing steps, not all zero.
    std::vector<long> f1{0, gen.integer(0, 3)}, f2{0, gen.integer(0, 3)};
    f1.push_back(f1.back() + gen.integer(0, 3));
    f2.push_back(f2.back() + gen.integer(0, 3));
    if (f1.back() == 0 && f2.back() == 0) continue;
    StateFunction u;
    for (StateIndex s = 0; s < space->size(); ++s) {
      u.emplace_back(f1[space->coordinate(s, 0)] + f2[space->coordinate(s, 1)]);
    }
    EXPECT_LT(polar::testing::expectation(a.mass(), u), polar::testing::expectation(b.mass(), u));
    ++checked;
  }
}
