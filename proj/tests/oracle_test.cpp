#include "fsp/oracle.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace fsp {
namespace {

using testing::job;
using testing::q;

const Instance kThreeJobs{1, {job(1, "0.5", "0.3", "10"), job(2, "0.3", "0.5", "10"),
                              job(3, "0.2", "0.2", "5")}, 1};

TEST(ExactOptTest, ThreeJobExample) {
  // Subsets {1,3} and {2,3} have makespan exactly 1; {1,2} and all three do not fit.
  const Solution s = exact_opt(kThreeJobs);
  EXPECT_EQ(s.total_profit, q(15));
  EXPECT_TRUE(s.feasible);
  // Lexicographically smallest optimum leaves job 1 out.
  EXPECT_EQ(s.per_flowshop[0], (std::vector<JobId>{3, 2}));
  EXPECT_EQ(s.per_flowshop_makespan[0], q(1));
}

TEST(ExactOptTest, EmptyInstance) {
  EXPECT_EQ(exact_opt({2, {}, 1}).total_profit, 0);
  EXPECT_EQ(exact_opt({2, {}, 1}).per_flowshop.size(), 2u);
}

TEST(ExactOptTest, OversizedJobNeverFits) {
  EXPECT_EQ(exact_opt({1, {job(1, "0.7", "0.7", "9")}, 1}).total_profit, 0);
}

TEST(ExactOptTest, RefusesOverBudget) {
  testing::Rng rng(1);
  EXPECT_THROW(exact_opt(testing::random_instance(rng, 15, 1)), BudgetExceeded);
  EXPECT_THROW(exact_opt(testing::random_instance(rng, 13, 2)), BudgetExceeded);
  EXPECT_NO_THROW(exact_opt(testing::random_instance(rng, 14, 1)));
  ExactOptions tiny;
  tiny.limits.max_assignments = 8;
  EXPECT_THROW(exact_opt(testing::random_instance(rng, 4, 1), tiny), BudgetExceeded);
}

TEST(ExactOptTest, RequiresNormalizedBound) {
  EXPECT_THROW(exact_opt({1, {}, 2}), InputError);
}

TEST(ExactOptTest, PrunedSearchMatchesPlainEnumeration) {
  testing::Rng rng(42);
  ExactOptions plain;
  plain.prune = false;
  for (int trial = 0; trial < 120; ++trial) {
    const int m = static_cast<int>(rng.uniform(1, 3));
    const std::size_t n = static_cast<std::size_t>(rng.uniform(0, m == 3 ? 6 : 8));
    // Coarse profits so that ties between optima are common.
    const Instance instance = testing::random_instance(rng, n, m, 1, 10, 20, 4);
    EXPECT_EQ(exact_opt(instance), exact_opt(instance, plain)) << "trial " << trial;
  }
}

TEST(ExactOptTest, MonotoneInJobsAndFlowshops) {
  testing::Rng rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    Instance instance = testing::random_instance(rng, 7, 1);
    const Rational base = exact_opt(instance).total_profit;
    Instance more_jobs = instance;
    more_jobs.jobs.push_back({100, rng.fraction(0, 10, 20), rng.fraction(0, 10, 20), q(3)});
    EXPECT_GE(exact_opt(more_jobs).total_profit, base);
    Instance more_shops = instance;
    more_shops.m = 2;
    EXPECT_GE(exact_opt(more_shops).total_profit, base);
  }
}

TEST(ExactOptTest, AgreesWithKnapsackWhenSecondStageIsZero) {
  testing::Rng rng(44);
  for (int trial = 0; trial < 60; ++trial) {
    Instance instance = testing::random_instance(rng, 10, 1);
    std::vector<Rational> profits, weights;
    for (Job& j : instance.jobs) {
      j.b = 0;
      profits.push_back(j.p);
      weights.push_back(j.a);
    }
    const auto [ints, scale] = integral_profits(profits);
    EXPECT_EQ(exact_opt(instance).total_profit,
              knapsack_dp_opt(ints, weights, q(1)) / Rational(scale));
  }
}

TEST(BruteForceMakespanTest, Examples) {
  const std::vector<Job> two = {job(1, "0.5", "0.3"), job(2, "0.3", "0.5")};
  EXPECT_EQ(brute_force_min_makespan(two), q(11, 10));
  const std::vector<Job> one = {job(1, "0.2", "0.7")};
  EXPECT_EQ(brute_force_min_makespan(one), q(9, 10));
  const std::vector<Job> flat = {job(1, "0.2", "0"), job(2, "0.3", "0")};
  EXPECT_EQ(brute_force_min_makespan(flat), q(1, 2));
  EXPECT_EQ(brute_force_min_makespan({}), 0);
}

TEST(BruteForceMakespanTest, RefusesOverBudget) {
  testing::Rng rng(1);
  EXPECT_THROW(brute_force_min_makespan(testing::random_jobs(rng, 9)), BudgetExceeded);
}

TEST(KnapsackDpTest, Examples) {
  const std::vector<std::int64_t> p = {10, 10, 5};
  const std::vector<Rational> w = {q(1, 2), q(3, 10), q(1, 5)};
  EXPECT_EQ(knapsack_dp_opt(p, w, q(1)), q(25));
  EXPECT_EQ(knapsack_dp_opt(p, w, q(0)), q(0));
  EXPECT_EQ(knapsack_dp_opt(std::vector<std::int64_t>{7}, std::vector<Rational>{q(1, 3)}, q(1)),
            q(7));
  EXPECT_EQ(knapsack_dp_opt(p, w, q(4, 5)), q(20));
  EXPECT_EQ(knapsack_dp_opt(p, w, q(7, 10)), q(15));
}

TEST(KnapsackDpTest, MatchesSubsetEnumeration) {
  testing::Rng rng(45);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(0, 10));
    std::vector<std::int64_t> p;
    std::vector<Rational> w;
    for (std::size_t i = 0; i < n; ++i) {
      p.push_back(rng.uniform(0, 30));
      w.push_back(rng.fraction(0, 10, 20));
    }
    const Rational cap = rng.fraction(0, 20, 20);
    Rational best = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      Rational weight = 0, profit = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) weight += w[i], profit += p[i];
      }
      if (weight <= cap && profit > best) best = profit;
    }
    EXPECT_EQ(knapsack_dp_opt(p, w, cap), best);
  }
}

TEST(KnapsackDpTest, RefusesHugeProfits) {
  const std::vector<std::int64_t> p = {20'000'000};
  const std::vector<Rational> w = {q(1)};
  EXPECT_THROW(knapsack_dp_opt(p, w, q(1)), BudgetExceeded);
}

TEST(IntegralProfitsTest, ScalesByCommonDenominator) {
  const std::vector<Rational> p = {q(1, 2), q(2, 3), q(3)};
  const auto [ints, scale] = integral_profits(p);
  EXPECT_EQ(scale, 6);
  EXPECT_EQ(ints, (std::vector<std::int64_t>{3, 4, 18}));
}

}  // namespace
}  // namespace fsp
