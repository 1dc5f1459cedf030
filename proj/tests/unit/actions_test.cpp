#include "polar/actions.hpp"
#include "polar/errors.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace polar;

namespace {

std::vector<Rational> q(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (const char* x : xs) out.push_back(parse_rational(x));
  return out;
}

struct Symmetric {
  SpacePtr space = make_grid({2, 2});
  Belief pl{space, q({"3/8", "1/4", "1/4", "1/8"})};
  Belief ph{space, q({"1/8", "1/4", "1/4", "3/8"})};
  StateSubset diag{space, {0, 3}};
};

// Every basis function moves L strictly down and H strictly up.
bool all_generators_polarize(const FamilyInstance& inst, UtilityFamilyKind kind) {
  const auto ql = polar::testing::brute_posterior(inst.pl.mass(), inst.ell.values());
  const auto qh = polar::testing::brute_posterior(inst.ph.mass(), inst.ell.values());
  for (const auto& u : canonical_generators(inst.pl.space_ptr(), generated_order(kind))) {
    using polar::testing::expectation;
    if (!(expectation(ql, u) < expectation(inst.pl.mass(), u))) return false;
    if (!(expectation(qh, u) > expectation(inst.ph.mass(), u))) return false;
  }
  return true;
}

}  // namespace

TEST(Utility, FamilyNames) {
  for (auto k : {UtilityFamilyKind::SumsOfIncreasing, UtilityFamilyKind::ProductsOfNonnegIncreasing,
                 UtilityFamilyKind::Increasing}) {
    EXPECT_EQ(parse_utility_family(to_string(k)), k);
  }
  EXPECT_THROW(parse_utility_family("concave"), Error);
  EXPECT_EQ(generated_order(UtilityFamilyKind::SumsOfIncreasing), UpperFamilyKind::UpperProjection);
}

TEST(Utility, MembershipIsValidated) {
  const auto space = make_grid({2, 2});
  EXPECT_THROW(UtilityFn(space, q({"0", "0", "0", "1"}), UtilityFamilyKind::SumsOfIncreasing),
               PreconditionError);
  EXPECT_THROW(UtilityFn(space, q({"0", "1", "1", "2"}), UtilityFamilyKind::ProductsOfNonnegIncreasing),
               PreconditionError);
  EXPECT_NO_THROW(UtilityFn(space, q({"0", "1", "1", "1"}), UtilityFamilyKind::Increasing));
  EXPECT_TRUE(UtilityFn(space, q({"2", "2", "2", "2"}), UtilityFamilyKind::SumsOfIncreasing).is_constant());
}

TEST(ActionPolarizes, AdditiveUtilityUnderSymmetricPriors) {
  Symmetric ex;
  const UtilityFn u(ex.space, q({"0", "1", "1", "2"}), UtilityFamilyKind::SumsOfIncreasing);
  const auto m = action_polarizes(u, ex.pl, ex.ph, ex.diag);
  EXPECT_EQ(m.low_prior, ratio(3, 4));
  EXPECT_EQ(m.low_posterior, ratio(1, 2));
  EXPECT_EQ(m.high_prior, ratio(5, 4));
  EXPECT_EQ(m.high_posterior, ratio(3, 2));
  EXPECT_TRUE(m.polarizes);
  const auto same = action_polarizes(u, ex.pl, ex.ph, LikelihoodFn::indicator(ex.diag));
  EXPECT_EQ(same.low_posterior, m.low_posterior);
}

TEST(ActionPolarizes, TopIndicatorMovesBothUp) {
  Symmetric ex;
  const UtilityFn top(ex.space, q({"0", "0", "0", "1"}), UtilityFamilyKind::ProductsOfNonnegIncreasing);
  const auto m = action_polarizes(top, ex.pl, ex.ph, ex.diag);
  EXPECT_EQ(m.low_prior, ratio(1, 8));
  EXPECT_EQ(m.low_posterior, ratio(1, 4));
  EXPECT_EQ(m.high_prior, ratio(3, 8));
  EXPECT_EQ(m.high_posterior, ratio(3, 4));
  EXPECT_FALSE(m.polarizes);
}

TEST(FamilySearch, PossibleCellsReturnCheckedInstances) {
  const auto space = make_grid({2, 2});
  FamilySearchConfig config;
  config.random_members = 50;
  for (auto [kind, mode] : {std::pair{UtilityFamilyKind::SumsOfIncreasing, PolarizationMode::OneShot},
                            std::pair{UtilityFamilyKind::SumsOfIncreasing, PolarizationMode::Limit},
                            std::pair{UtilityFamilyKind::ProductsOfNonnegIncreasing, PolarizationMode::OneShot}}) {
    const auto r = family_polarization_search(kind, mode, space, config);
    ASSERT_TRUE(r.instance) << to_string(kind) << "/" << to_string(mode);
    EXPECT_GT(r.basis_size, 0u);
    EXPECT_TRUE(all_generators_polarize(*r.instance, kind));
    EXPECT_EQ(r.instance->gamma.has_value(), mode == PolarizationMode::Limit);
  }
}

TEST(FamilySearch, ImpossibleCellsFindNothing) {
  for (auto sizes : {std::vector<std::size_t>{2, 2}, std::vector<std::size_t>{2, 3}}) {
    const auto space = make_grid(std::span<const std::size_t>(sizes));
    FamilySearchConfig config;
    config.trials = 3000;
    for (auto [kind, mode] :
         {std::pair{UtilityFamilyKind::ProductsOfNonnegIncreasing, PolarizationMode::Limit},
          std::pair{UtilityFamilyKind::Increasing, PolarizationMode::OneShot},
          std::pair{UtilityFamilyKind::Increasing, PolarizationMode::Limit}}) {
      const auto r = family_polarization_search(kind, mode, space, config);
      EXPECT_FALSE(r.instance);
      EXPECT_EQ(r.trials_run, config.trials);
      EXPECT_EQ(r.positives, 0u);
    }
  }
}

TEST(FamilySearch, RandomMembersStayInFamily) {
  const auto space = make_grid({3, 2});
  for (auto k : {UtilityFamilyKind::SumsOfIncreasing, UtilityFamilyKind::ProductsOfNonnegIncreasing,
                 UtilityFamilyKind::Increasing}) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const auto u = random_family_member(*space, k, seed);
      EXPECT_TRUE(in_generating_class(*space, generated_order(k), u));
      EXPECT_EQ(u, random_family_member(*space, k, seed));
    }
  }
}

TEST(Tradeoff, ClosedFormsOnFineGrid) {
  std::vector<Rational> deltas;
  for (long k = 1; k < 100; ++k) deltas.push_back(ratio(k, 100));
  const auto rows = tradeoff_curve(deltas);
  ASSERT_EQ(rows.size(), 99u);
  for (const auto& r : rows) {
    const auto& space = r.posterior_low.space();
    const auto [pl, ph] = tradeoff_priors(r.delta);
    for (std::size_t axis = 0; axis < 2; ++axis) {
      using polar::testing::brute_cdf;
      const Rational growth = brute_cdf(space, r.posterior_low.mass(), axis, 0) -
                              brute_cdf(space, r.posterior_high.mass(), axis, 0) -
                              (brute_cdf(space, pl.mass(), axis, 0) - brute_cdf(space, ph.mass(), axis, 0));
      EXPECT_EQ(growth, r.delta / 2);
    }
    EXPECT_EQ(r.magnitude, r.delta / 2);
    EXPECT_EQ(r.gamma_probability, 1 - r.delta);
    EXPECT_TRUE(r.polarizes_inside);
    EXPECT_FALSE(r.polarizes_outside_full);
    EXPECT_FALSE(r.polarizes_outside_complement);
  }
}

TEST(Tradeoff, QuarterDeltaPosteriors) {
  const auto rows = tradeoff_curve({ratio(1, 4)});
  const auto [pl, ph] = tradeoff_priors(ratio(1, 4));
  EXPECT_EQ(pl.mass(), q({"9/16", "1/8", "1/8", "3/16"}));
  EXPECT_EQ(ph.mass(), q({"3/16", "1/8", "1/8", "9/16"}));
  EXPECT_EQ(rows[0].posterior_low.mass(), q({"3/4", "0", "0", "1/4"}));
  EXPECT_EQ(rows[0].posterior_high.mass(), q({"1/4", "0", "0", "3/4"}));
  EXPECT_THROW(tradeoff_curve({Rational(1)}), PreconditionError);
}
