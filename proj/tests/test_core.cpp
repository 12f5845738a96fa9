#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "banditlab/core.hpp"

using namespace banditlab;

TEST(ArmModel, FactoryValidation) {
  EXPECT_THROW(ArmModel::bernoulli(-0.1), std::invalid_argument);
  EXPECT_THROW(ArmModel::bernoulli(1.1), std::invalid_argument);
  EXPECT_THROW(ArmModel::constant(2.0), std::invalid_argument);
  EXPECT_THROW(ArmModel::uniform(0.6, 0.4), std::invalid_argument);
  EXPECT_THROW(ArmModel::uniform(-0.2, 0.5), std::invalid_argument);
  EXPECT_THROW(ArmModel::scaled_beta(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(ArmModel::scaled_beta(1.0, -2.0), std::invalid_argument);
  EXPECT_THROW(ArmModel::discrete({0.5}, {0.9}), std::invalid_argument);       // probs sum != 1
  EXPECT_THROW(ArmModel::discrete({1.5}, {1.0}), std::invalid_argument);       // value outside [0,1]
  EXPECT_THROW(ArmModel::discrete({0.5, 0.6}, {1.0}), std::invalid_argument);  // length mismatch
  EXPECT_THROW(ArmModel::discrete({}, {}), std::invalid_argument);
  EXPECT_THROW(ArmModel::discrete({0.2, 0.4}, {0.5, -0.5}), std::invalid_argument);
}

TEST(ArmModel, MeansStoredAtConstruction) {
  EXPECT_DOUBLE_EQ(ArmModel::bernoulli(0.37).mean(), 0.37);
  EXPECT_DOUBLE_EQ(ArmModel::constant(0.7).mean(), 0.7);
  EXPECT_DOUBLE_EQ(ArmModel::uniform(0.2, 0.8).mean(), 0.5);
  EXPECT_DOUBLE_EQ(ArmModel::scaled_beta(2.0, 2.0).mean(), 0.5);
  EXPECT_DOUBLE_EQ(ArmModel::scaled_beta(1.0, 3.0).mean(), 0.25);
  const auto d = ArmModel::discrete({0.1, 0.5, 0.9}, {0.3, 0.2, 0.5});
  EXPECT_NEAR(d.mean(), 0.58, 1e-15);
}

TEST(BanditInstance, GapsAndOptimalSet) {
  const BanditInstance inst({ArmModel::bernoulli(0.5), ArmModel::bernoulli(0.4),
                             ArmModel::bernoulli(0.5), ArmModel::bernoulli(0.1)});
  EXPECT_EQ(inst.n_arms(), 4u);
  EXPECT_DOUBLE_EQ(inst.mu_star(), 0.5);
  EXPECT_DOUBLE_EQ(inst.gap(0), 0.0);
  EXPECT_DOUBLE_EQ(inst.gap(1), 0.1);
  EXPECT_DOUBLE_EQ(inst.gap(2), 0.0);
  EXPECT_DOUBLE_EQ(inst.gap(3), 0.4);
  EXPECT_EQ(inst.optimal_arms(), (std::vector<std::size_t>{0, 2}));
  const auto sub = inst.suboptimal_gaps();
  ASSERT_EQ(sub.size(), 2u);
  EXPECT_DOUBLE_EQ(sub[0], 0.1);
  EXPECT_DOUBLE_EQ(sub[1], 0.4);
  EXPECT_EQ(inst.means(), (std::vector<double>{0.5, 0.4, 0.5, 0.1}));
}

TEST(BanditInstance, UniqueOptimumEnforcement) {
  EXPECT_NO_THROW(BanditInstance({ArmModel::bernoulli(0.5), ArmModel::bernoulli(0.4)}, true));
  try {
    BanditInstance({ArmModel::bernoulli(0.5), ArmModel::bernoulli(0.5)}, true);
    FAIL() << "duplicate optimum not rejected";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("arm 1"), std::string::npos) << e.what();
  }
  EXPECT_THROW(BanditInstance({ArmModel::bernoulli(0.5)}), std::invalid_argument);
}

TEST(DrawReward, RespectsEachLaw) {
  const BanditInstance inst({
      ArmModel::constant(0.7),
      ArmModel::bernoulli(0.4),
      ArmModel::uniform(0.2, 0.8),
      ArmModel::discrete({0.1, 0.5, 0.9}, {0.3, 0.2, 0.5}),
      ArmModel::scaled_beta(2.0, 5.0),
  });
  RngStream rng(31);
  const std::set<double> discrete_support = {0.1, 0.5, 0.9};
  for (int i = 0; i < 5000; ++i) {
    EXPECT_EQ(draw_reward(inst, 0, rng), 0.7);
    const double b = draw_reward(inst, 1, rng);
    EXPECT_TRUE(b == 0.0 || b == 1.0);
    const double u = draw_reward(inst, 2, rng);
    EXPECT_GE(u, 0.2);
    EXPECT_LT(u, 0.8);
    EXPECT_TRUE(discrete_support.count(draw_reward(inst, 3, rng)) == 1);
    const double s = draw_reward(inst, 4, rng);
    EXPECT_GT(s, 0.0);
    EXPECT_LT(s, 1.0);
  }
}

TEST(DrawReward, DiscreteFrequencies) {
  const BanditInstance inst(
      {ArmModel::discrete({0.0, 1.0}, {0.25, 0.75}), ArmModel::bernoulli(0.5)});
  RngStream rng(32);
  const int n = 200000;
  int ones = 0;
  for (int i = 0; i < n; ++i) ones += draw_reward(inst, 0, rng) == 1.0;
  EXPECT_NEAR(static_cast<double>(ones) / n, 0.75, 4.0 * std::sqrt(0.1875 / n));
}

TEST(Binarize, DegenerateInputsAndDomain) {
  RngStream rng(33);
  for (int i = 0; i < 200; ++i) {
    EXPECT_EQ(binarize(0.0, rng), 0);
    EXPECT_EQ(binarize(1.0, rng), 1);
  }
  EXPECT_THROW(binarize(-0.01, rng), std::domain_error);
  EXPECT_THROW(binarize(1.01, rng), std::domain_error);
}

TEST(Binarize, ConsumesExactlyOneUniform) {
  RngStream a(77), b(77);
  (void)binarize(0.3, a);
  (void)b.next_double();
  EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Binarize, MeanMatchesRawReward) {
  RngStream rng(34);
  const int n = 200000;
  int ones = 0;
  for (int i = 0; i < n; ++i) ones += binarize(0.62, rng);
  EXPECT_NEAR(static_cast<double>(ones) / n, 0.62, 4.0 * std::sqrt(0.62 * 0.38 / n));
}

TEST(PosteriorState, UpdateAndRegretIncrement) {
  PosteriorState state(3);
  EXPECT_EQ(state.size(), 3u);
  EXPECT_EQ(state.successes, (std::vector<std::uint64_t>{0, 0, 0}));
  update_posterior(state, 1, 1);
  update_posterior(state, 1, 0);
  update_posterior(state, 2, 0);
  EXPECT_EQ(state.successes, (std::vector<std::uint64_t>{0, 1, 0}));
  EXPECT_EQ(state.failures, (std::vector<std::uint64_t>{0, 1, 1}));
  EXPECT_THROW(update_posterior(state, 0, 2), std::domain_error);
  EXPECT_THROW(update_posterior(state, 9, 1), std::out_of_range);

  const BanditInstance inst({ArmModel::bernoulli(0.5), ArmModel::bernoulli(0.2)});
  EXPECT_DOUBLE_EQ(pseudo_regret_increment(inst, 0), 0.0);
  EXPECT_DOUBLE_EQ(pseudo_regret_increment(inst, 1), 0.3);
}
