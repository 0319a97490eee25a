#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fsp/core.hpp"

namespace fsp {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

// Flowshop index used for the dummy flowshop's variables.
inline constexpr int kDummyFlowshop = -1;

// Reverse mapping from an LP column to the (job, flowshop) pair it models.
struct VariableLabel {
  JobId job = 0;
  int flowshop = 0;

  friend bool operator==(const VariableLabel&, const VariableLabel&) = default;
};

struct LpRow {
  std::vector<std::pair<std::size_t, Rational>> terms;  // sparse, by column
  Relation relation = Relation::kLessEqual;
  Rational rhs = 0;
};

struct VariableBounds {
  Rational lower = 0;
  std::optional<Rational> upper = Rational(1);  // nullopt: no upper bound
};

// max c'x  s.t.  rows,  lower <= x <= upper.
class LinearProgram {
 public:
  std::size_t add_variable(Rational objective, VariableBounds bounds,
                           VariableLabel label = {}) {
    if (bounds.upper && *bounds.upper < bounds.lower) {
      throw std::invalid_argument("variable upper bound below lower bound");
    }
    objective_.push_back(std::move(objective));
    bounds_.push_back(std::move(bounds));
    labels_.push_back(label);
    return objective_.size() - 1;
  }

  void add_row(std::vector<std::pair<std::size_t, Rational>> terms,
               Relation relation, Rational rhs) {
    for (const auto& [col, coef] : terms) {
      if (col >= num_variables()) {
        throw std::invalid_argument("row references unknown variable " +
                                    std::to_string(col));
      }
    }
    rows_.push_back({std::move(terms), relation, std::move(rhs)});
  }

  // Dense convenience overload; zero coefficients are dropped.
  void add_dense_row(std::span<const Rational> coefficients, Relation relation,
                     Rational rhs) {
    if (coefficients.size() != num_variables()) {
      throw std::invalid_argument("dense row has wrong length");
    }
    std::vector<std::pair<std::size_t, Rational>> terms;
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
      if (coefficients[j] != 0) terms.emplace_back(j, coefficients[j]);
    }
    add_row(std::move(terms), relation, std::move(rhs));
  }

  std::size_t num_variables() const { return objective_.size(); }
  std::size_t num_rows() const { return rows_.size(); }
  const std::vector<Rational>& objective() const { return objective_; }
  const std::vector<LpRow>& rows() const { return rows_; }
  const std::vector<VariableBounds>& bounds() const { return bounds_; }
  const std::vector<VariableLabel>& labels() const { return labels_; }

 private:
  std::vector<Rational> objective_;
  std::vector<VariableBounds> bounds_;
  std::vector<VariableLabel> labels_;
  std::vector<LpRow> rows_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct BasicSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<Rational> values;  // structural variables, when optimal
  Rational objective_value = 0;
  std::size_t pivots = 0;
};

// Exact feasibility check of `values` against every row and bound.
inline bool satisfies(const LinearProgram& lp, std::span<const Rational> values) {
  if (values.size() != lp.num_variables()) return false;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const auto& bound = lp.bounds()[j];
    if (values[j] < bound.lower) return false;
    if (bound.upper && values[j] > *bound.upper) return false;
  }
  for (const LpRow& row : lp.rows()) {
    Rational lhs = 0;
    for (const auto& [col, coef] : row.terms) lhs += coef * values[col];
    switch (row.relation) {
      case Relation::kLessEqual:
        if (lhs > row.rhs) return false;
        break;
      case Relation::kEqual:
        if (lhs != row.rhs) return false;
        break;
      case Relation::kGreaterEqual:
        if (lhs < row.rhs) return false;
        break;
    }
  }
  return true;
}

// Variables strictly inside their bounds. A vertex has at most num_rows().
inline std::size_t count_strictly_between(const LinearProgram& lp,
                                          std::span<const Rational> values) {
  std::size_t count = 0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const auto& bound = lp.bounds()[j];
    if (values[j] > bound.lower && (!bound.upper || values[j] < *bound.upper)) {
      ++count;
    }
  }
  return count;
}

namespace detail {

// Dense tableau for the bounded-variable primal simplex. Columns are the
// non-fixed structural variables, then one slack per inequality row, then
// artificials. Fixed variables (lower == upper) are folded into the right-hand
// side. Nonbasic columns sit at a bound; basic columns carry the tableau rows.
class BoundedSimplex {
 public:
  explicit BoundedSimplex(const LinearProgram& lp)
      : num_structural_(lp.num_variables()), num_rows_(lp.num_rows()) {
    lower_.reserve(num_structural_ + 2 * num_rows_);
    column_of_.resize(num_structural_);
    for (std::size_t j = 0; j < num_structural_; ++j) {
      const auto& bound = lp.bounds()[j];
      if (bound.upper && *bound.upper == bound.lower) continue;
      column_of_[j] = add_column(bound.lower, bound.upper);
    }
    // Slack/surplus columns.
    std::vector<std::optional<std::size_t>> slack_of_row(num_rows_);
    std::vector<Rational> slack_sign(num_rows_, Rational(0));
    for (std::size_t i = 0; i < num_rows_; ++i) {
      const Relation rel = lp.rows()[i].relation;
      if (rel == Relation::kEqual) continue;
      slack_of_row[i] = add_column(Rational(0), std::nullopt);
      slack_sign[i] = rel == Relation::kLessEqual ? 1 : -1;
    }
    const std::size_t first_artificial = lower_.size();

    // Residuals with every structural column at its lower bound.
    std::vector<Rational> residual(num_rows_);
    for (std::size_t i = 0; i < num_rows_; ++i) {
      residual[i] = lp.rows()[i].rhs;
      for (const auto& [col, coef] : lp.rows()[i].terms) {
        residual[i] -= coef * lp.bounds()[col].lower;
      }
    }

    basis_.assign(num_rows_, 0);
    std::vector<Rational> diag(num_rows_);
    for (std::size_t i = 0; i < num_rows_; ++i) {
      if (slack_of_row[i] && sgn(residual[i] * slack_sign[i]) >= 0) {
        basis_[i] = *slack_of_row[i];
        diag[i] = slack_sign[i];
      } else {
        basis_[i] = add_column(Rational(0), Rational(0));
        upper_.back() = std::nullopt;  // free until phase 1 ends
        artificial_.push_back(basis_[i]);
        diag[i] = residual[i] >= 0 ? 1 : -1;
      }
    }
    num_columns_ = lower_.size();
    first_artificial_ = first_artificial;

    tableau_.assign(num_rows_, std::vector<Rational>(num_columns_, Rational(0)));
    for (std::size_t i = 0; i < num_rows_; ++i) {
      auto& row = tableau_[i];
      for (const auto& [col, coef] : lp.rows()[i].terms) {
        if (column_of_[col]) row[*column_of_[col]] += coef;
      }
      if (slack_of_row[i]) row[*slack_of_row[i]] = slack_sign[i];
      if (basis_[i] >= first_artificial_) row[basis_[i]] = diag[i];
      if (diag[i] != 1) {
        for (auto& v : row) v /= diag[i];
      }
    }

    value_ = lower_;
    at_upper_.assign(num_columns_, false);
    is_basic_.assign(num_columns_, false);
    for (std::size_t i = 0; i < num_rows_; ++i) {
      value_[basis_[i]] = residual[i] / diag[i];
      is_basic_[basis_[i]] = true;
    }
  }

  BasicSolution solve(const LinearProgram& lp) {
    const std::vector<Rational>& objective = lp.objective();
    BasicSolution result;
    if (!artificial_.empty()) {
      std::vector<Rational> phase1(num_columns_, Rational(0));
      for (std::size_t col : artificial_) phase1[col] = -1;
      const LpStatus status = optimize(phase1);
      if (status != LpStatus::kOptimal) {
        throw std::logic_error("phase 1 cannot be unbounded");
      }
      for (std::size_t col : artificial_) {
        if (value_[col] != 0) {
          result.status = LpStatus::kInfeasible;
          result.pivots = pivots_;
          return result;
        }
        upper_[col] = Rational(0);
      }
    }
    std::vector<Rational> phase2(num_columns_, Rational(0));
    for (std::size_t j = 0; j < num_structural_; ++j) {
      if (column_of_[j]) phase2[*column_of_[j]] = objective[j];
    }
    result.status = optimize(phase2);
    result.pivots = pivots_;
    if (result.status != LpStatus::kOptimal) return result;
    result.values.reserve(num_structural_);
    for (std::size_t j = 0; j < num_structural_; ++j) {
      result.values.push_back(column_of_[j] ? value_[*column_of_[j]] : lp.bounds()[j].lower);
    }
    for (std::size_t j = 0; j < num_structural_; ++j) {
      result.objective_value += objective[j] * result.values[j];
    }
    return result;
  }

 private:
  std::size_t add_column(Rational lower, std::optional<Rational> upper) {
    lower_.push_back(std::move(lower));
    upper_.push_back(std::move(upper));
    return lower_.size() - 1;
  }

  bool fixed(std::size_t col) const {
    return upper_[col] && *upper_[col] == lower_[col];
  }

  // Maximizes cost'x from the current basis with Bland's smallest-index rule
  // for both the entering and the leaving choice.
  LpStatus optimize(const std::vector<Rational>& cost) {
    std::vector<Rational> reduced = cost;
    for (std::size_t i = 0; i < num_rows_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < num_columns_; ++j) {
        if (tableau_[i][j] != 0) reduced[j] -= cb * tableau_[i][j];
      }
    }

    while (true) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < num_columns_; ++j) {
        if (is_basic_[j] || fixed(j)) continue;
        const int s = sgn(reduced[j]);
        if ((!at_upper_[j] && s > 0) || (at_upper_[j] && s < 0)) {
          entering = j;
          break;
        }
      }
      if (!entering) return LpStatus::kOptimal;
      const std::size_t q = *entering;
      const int dir = at_upper_[q] ? -1 : 1;

      // Ratio test. Candidates are (step, column); ties go to the smaller
      // column index, with the entering column standing for a bound flip.
      std::optional<Rational> best_step;
      std::size_t best_col = 0;
      std::optional<std::size_t> best_row;
      auto consider = [&](Rational step, std::size_t col,
                          std::optional<std::size_t> row) {
        if (!best_step || step < *best_step ||
            (step == *best_step && col < best_col)) {
          best_step = std::move(step);
          best_col = col;
          best_row = row;
        }
      };
      if (upper_[q]) consider(*upper_[q] - lower_[q], q, std::nullopt);
      for (std::size_t i = 0; i < num_rows_; ++i) {
        const Rational& alpha = tableau_[i][q];
        if (alpha == 0) continue;
        const std::size_t k = basis_[i];
        const bool decreases = (sgn(alpha) > 0) == (dir > 0);
        if (decreases) {
          consider((value_[k] - lower_[k]) / abs(alpha), k, i);
        } else if (upper_[k]) {
          consider((*upper_[k] - value_[k]) / abs(alpha), k, i);
        }
      }
      if (!best_step) return LpStatus::kUnbounded;

      const Rational step = *best_step;
      if (step != 0) {
        for (std::size_t i = 0; i < num_rows_; ++i) {
          const Rational& alpha = tableau_[i][q];
          if (alpha == 0) continue;
          if (dir > 0) {
            value_[basis_[i]] -= alpha * step;
          } else {
            value_[basis_[i]] += alpha * step;
          }
        }
        if (dir > 0) {
          value_[q] += step;
        } else {
          value_[q] -= step;
        }
      }

      if (!best_row) {
        at_upper_[q] = !at_upper_[q];
        value_[q] = at_upper_[q] ? *upper_[q] : lower_[q];
        continue;
      }

      const std::size_t r = *best_row;
      const std::size_t leaving = basis_[r];
      const bool leaves_at_lower = (sgn(tableau_[r][q]) > 0) == (dir > 0);
      at_upper_[leaving] = !leaves_at_lower;
      value_[leaving] = leaves_at_lower ? lower_[leaving] : *upper_[leaving];
      is_basic_[leaving] = false;
      pivot(r, q, reduced);
      basis_[r] = q;
      is_basic_[q] = true;
      at_upper_[q] = false;
      ++pivots_;
    }
  }

  void pivot(std::size_t r, std::size_t q, std::vector<Rational>& reduced) {
    auto& pivot_row = tableau_[r];
    const Rational inv = 1 / pivot_row[q];
    for (auto& v : pivot_row) {
      if (v != 0) v *= inv;
    }
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < num_columns_; ++j) {
      if (pivot_row[j] != 0) support.push_back(j);
    }
    for (std::size_t i = 0; i < num_rows_; ++i) {
      if (i == r || tableau_[i][q] == 0) continue;
      const Rational factor = tableau_[i][q];
      for (std::size_t j : support) tableau_[i][j] -= factor * pivot_row[j];
    }
    if (reduced[q] != 0) {
      const Rational factor = reduced[q];
      for (std::size_t j : support) reduced[j] -= factor * pivot_row[j];
    }
  }

  std::size_t num_structural_;
  std::vector<std::optional<std::size_t>> column_of_;
  std::size_t num_rows_;
  std::size_t num_columns_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<Rational> lower_;
  std::vector<std::optional<Rational>> upper_;
  std::vector<std::size_t> artificial_;
  std::vector<std::size_t> basis_;
  std::vector<std::vector<Rational>> tableau_;
  std::vector<Rational> value_;
  std::vector<bool> at_upper_;
  std::vector<bool> is_basic_;
  std::size_t pivots_ = 0;
};

}  // namespace detail

// Optimal basic feasible solution in exact arithmetic. Two-phase bounded
// simplex; Bland's rule keeps it finite and deterministic.
inline BasicSolution solve_to_vertex(const LinearProgram& lp) {
  detail::BoundedSimplex simplex(lp);
  return simplex.solve(lp);
}

// LP optimum of max sum p_i x_i s.t. sum w_i x_i <= capacity, x in [0,1]^n,
// by the density greedy.
inline Rational fractional_knapsack_oracle(std::span<const Rational> profits,
                                           std::span<const Rational> weights,
                                           const Rational& capacity) {
  if (profits.size() != weights.size()) {
    throw std::invalid_argument("profits and weights differ in length");
  }
  std::vector<std::size_t> order(profits.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Weight-0 items first, then by decreasing p/w (cross-multiplied).
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if ((weights[x] == 0) != (weights[y] == 0)) return weights[x] == 0;
    if (weights[x] == 0) return false;
    return profits[x] * weights[y] > profits[y] * weights[x];
  });
  Rational remaining = capacity;
  Rational value = 0;
  for (std::size_t i : order) {
    if (weights[i] <= remaining) {
      value += profits[i];
      remaining -= weights[i];
    } else {
      value += profits[i] * remaining / weights[i];
      break;
    }
  }
  return value;
}

}  // namespace fsp
