#include "fsp/lp.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace fsp {
namespace {

using testing::q;

LinearProgram knapsack_lp(const std::vector<Rational>& profits,
                          const std::vector<Rational>& weights, const Rational& capacity) {
  LinearProgram lp;
  for (const Rational& p : profits) lp.add_variable(p, {});
  lp.add_dense_row(weights, Relation::kLessEqual, capacity);
  return lp;
}

TEST(SolveToVertexTest, TwoItemFractionalKnapsack) {
  const LinearProgram lp = knapsack_lp({q(10), q(10)}, {q(1), q(1)}, q(3, 2));
  const BasicSolution s = solve_to_vertex(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_EQ(s.objective_value, q(15));
  EXPECT_EQ(count_strictly_between(lp, s.values), 1u);
  EXPECT_TRUE(satisfies(lp, s.values));
  const std::vector<Rational> p = {q(10), q(10)}, w = {q(1), q(1)};
  EXPECT_EQ(fractional_knapsack_oracle(p, w, q(3, 2)), q(15));
}

TEST(SolveToVertexTest, FixedVariable) {
  LinearProgram lp;
  lp.add_variable(q(1), {});
  lp.add_dense_row(std::vector<Rational>{q(1)}, Relation::kEqual, q(1));
  const BasicSolution s = solve_to_vertex(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_EQ(s.values[0], q(1));
  EXPECT_EQ(s.objective_value, q(1));
}

TEST(SolveToVertexTest, EmptyRegionIsInfeasible) {
  LinearProgram lp;
  lp.add_variable(q(1), {});
  lp.add_dense_row(std::vector<Rational>{q(1)}, Relation::kLessEqual, q(-1));
  EXPECT_EQ(solve_to_vertex(lp).status, LpStatus::kInfeasible);
}

TEST(SolveToVertexTest, ContradictoryFixedBoundsAreInfeasible) {
  LinearProgram lp;
  lp.add_variable(q(3), {q(1), q(1)});
  lp.add_variable(q(2), {q(1), q(1)});
  lp.add_dense_row(std::vector<Rational>{q(3, 5), q(1, 2)}, Relation::kLessEqual, q(1));
  EXPECT_EQ(solve_to_vertex(lp).status, LpStatus::kInfeasible);
}

TEST(SolveToVertexTest, UnboundedIsReported) {
  LinearProgram lp;
  lp.add_variable(q(1), {q(0), std::nullopt});
  lp.add_variable(q(0), {q(0), std::nullopt});
  lp.add_dense_row(std::vector<Rational>{q(1), q(-1)}, Relation::kLessEqual, q(2));
  EXPECT_EQ(solve_to_vertex(lp).status, LpStatus::kUnbounded);
}

TEST(SolveToVertexTest, GreaterEqualAndEqualityRows) {
  // max x + 2y, x + y = 1, x >= 1/4, bounds [0,1].
  LinearProgram lp;
  lp.add_variable(q(1), {});
  lp.add_variable(q(2), {});
  lp.add_dense_row(std::vector<Rational>{q(1), q(1)}, Relation::kEqual, q(1));
  lp.add_dense_row(std::vector<Rational>{q(1), q(0)}, Relation::kGreaterEqual, q(1, 4));
  const BasicSolution s = solve_to_vertex(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_EQ(s.values[0], q(1, 4));
  EXPECT_EQ(s.values[1], q(3, 4));
  EXPECT_EQ(s.objective_value, q(7, 4));
}

TEST(SolveToVertexTest, NonzeroLowerBounds) {
  LinearProgram lp;
  lp.add_variable(q(-1), {q(1, 2), q(2)});
  lp.add_variable(q(1), {q(-1), q(3)});
  lp.add_dense_row(std::vector<Rational>{q(1), q(1)}, Relation::kLessEqual, q(2));
  const BasicSolution s = solve_to_vertex(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_EQ(s.values[0], q(1, 2));
  EXPECT_EQ(s.values[1], q(3, 2));
  EXPECT_EQ(s.objective_value, q(1));
}

TEST(SolveToVertexTest, NoRows) {
  LinearProgram lp;
  lp.add_variable(q(2), {});
  lp.add_variable(q(-1), {});
  const BasicSolution s = solve_to_vertex(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_EQ(s.values, (std::vector<Rational>{q(1), q(0)}));
}

TEST(LinearProgramTest, RejectsMalformedInput) {
  LinearProgram lp;
  EXPECT_THROW(lp.add_variable(q(1), {q(2), q(1)}), std::invalid_argument);
  lp.add_variable(q(1), {});
  EXPECT_THROW(lp.add_row({{3, q(1)}}, Relation::kLessEqual, q(1)), std::invalid_argument);
  EXPECT_THROW(lp.add_dense_row(std::vector<Rational>{q(1), q(2)}, Relation::kLessEqual, q(1)),
               std::invalid_argument);
}

TEST(FractionalKnapsackTest, Examples) {
  const std::vector<Rational> p = {q(3), q(4), q(5)}, w = {q(1, 5), q(1, 2), q(1, 4)};
  EXPECT_EQ(fractional_knapsack_oracle(p, w, q(19, 20)), q(12));
  EXPECT_EQ(fractional_knapsack_oracle(p, w, q(0)), q(0));
  const std::vector<Rational> zw = {q(0), q(1)};
  const std::vector<Rational> zp = {q(2), q(3)};
  EXPECT_EQ(fractional_knapsack_oracle(zp, zw, q(0)), q(2));
}

std::vector<Rational> random_row(testing::Rng& rng, std::size_t n, std::int64_t lo,
                                 std::int64_t hi, std::int64_t den) {
  std::vector<Rational> row;
  for (std::size_t j = 0; j < n; ++j) row.push_back(rng.fraction(lo, hi, den));
  return row;
}

TEST(LpPropertyTest, SingleRowAgreesWithGreedy) {
  testing::Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 9));
    const auto p = random_row(rng, n, 0, 20, 1);
    const auto w = random_row(rng, n, 0, 10, 10);
    const Rational cap = rng.fraction(0, 30, 10);
    const LinearProgram lp = knapsack_lp(p, w, cap);
    const BasicSolution s = solve_to_vertex(lp);
    ASSERT_EQ(s.status, LpStatus::kOptimal);
    EXPECT_EQ(s.objective_value, fractional_knapsack_oracle(p, w, cap));
    EXPECT_TRUE(satisfies(lp, s.values));
    EXPECT_LE(count_strictly_between(lp, s.values), 1u);
  }
}

TEST(LpPropertyTest, MatchesVertexEnumeration) {
  testing::Rng rng(8);
  int feasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 6));
    const std::size_t rows = static_cast<std::size_t>(rng.uniform(0, 2));
    LinearProgram lp;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational lo = rng.fraction(-2, 1, 2);
      lp.add_variable(rng.fraction(-5, 10, 1), {lo, lo + rng.fraction(0, 4, 2)});
    }
    for (std::size_t r = 0; r < rows; ++r) {
      const auto rel = static_cast<Relation>(rng.uniform(0, 2));
      lp.add_dense_row(random_row(rng, n, -3, 3, 2), rel, rng.fraction(-4, 4, 2));
    }
    const BasicSolution s = solve_to_vertex(lp);
    const auto expected = testing::vertex_enumeration_optimum(lp);
    ASSERT_NE(s.status, LpStatus::kUnbounded);
    ASSERT_EQ(s.status == LpStatus::kOptimal, expected.has_value()) << "trial " << trial;
    if (!expected) continue;
    ++feasible;
    EXPECT_EQ(s.objective_value, *expected) << "trial " << trial;
    EXPECT_TRUE(satisfies(lp, s.values));
    EXPECT_LE(count_strictly_between(lp, s.values), lp.num_rows());
  }
  EXPECT_GT(feasible, 100);
}

TEST(LpPropertyTest, SameInputSameVertex) {
  testing::Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    // Many equal-ratio items so the optimum is degenerate.
    const std::size_t n = 8;
    const auto p = std::vector<Rational>(n, q(1));
    const auto w = std::vector<Rational>(n, q(1, 4));
    const LinearProgram lp = knapsack_lp(p, w, rng.fraction(1, 9, 4));
    EXPECT_EQ(solve_to_vertex(lp).values, solve_to_vertex(lp).values);
  }
}

}  // namespace
}  // namespace fsp
