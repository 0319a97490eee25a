#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fsp/core.hpp"
#include "fsp/johnson.hpp"

namespace fsp {

struct OracleLimits {
  std::size_t max_jobs_single = 14;         // m = 1
  std::uint64_t max_assignments = 531441;   // (m + 1)^n, i.e. 3^12
  std::size_t max_permutation_jobs = 8;
  std::int64_t max_knapsack_profit = 10'000'000;
};

struct ExactOptions {
  OracleLimits limits;
  // Profit-bound and partial-feasibility pruning plus flowshop symmetry
  // breaking. Off means plain enumeration of every job -> flowshop map.
  bool prune = true;
};

namespace detail {

inline std::uint64_t saturating_power(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (out > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= base;
  }
  return out;
}

// Incremental per-flowshop makespan in global Johnson order.
class FlowshopLoad {
 public:
  FlowshopLoad(const Instance& instance, const std::vector<std::size_t>& rank)
      : instance_(instance), rank_(rank) {}

  Rational makespan_with(std::size_t extra) const {
    Rational first = 0;
    Rational second = 0;
    bool placed = false;
    auto step = [&](std::size_t i) {
      const Job& job = instance_.jobs[i];
      first += job.a;
      if (first > second) second = first;
      second += job.b;
    };
    for (std::size_t i : members_) {
      if (!placed && rank_[extra] < rank_[i]) {
        step(extra);
        placed = true;
      }
      step(i);
    }
    if (!placed) step(extra);
    return second;
  }

  void push(std::size_t i) {
    auto it = std::lower_bound(members_.begin(), members_.end(), i,
                               [&](std::size_t x, std::size_t y) {
                                 return rank_[x] < rank_[y];
                               });
    members_.insert(it, i);
  }
  void pop(std::size_t i) {
    members_.erase(std::find(members_.begin(), members_.end(), i));
  }
  bool empty() const { return members_.empty(); }

 private:
  const Instance& instance_;
  const std::vector<std::size_t>& rank_;
  std::vector<std::size_t> members_;  // sorted by Johnson rank
};

}  // namespace detail

// Exact optimum over every map jobs -> {unselected, F_1..F_m}. Among optimal
// maps the lexicographically smallest (in instance order, unselected first,
// then flowshops by index) is returned. Refuses instances over budget.
inline Solution exact_opt(const Instance& instance, const ExactOptions& options = {}) {
  const std::size_t n = instance.jobs.size();
  const int m = instance.m;
  if (m < 1) throw InputError("number of flowshops must be positive");
  if (instance.makespan_bound != 1) {
    throw InputError("exact oracle expects a normalized instance");
  }
  if (m == 1 && n > options.limits.max_jobs_single) {
    throw BudgetExceeded("exact oracle: " + std::to_string(n) +
                         " jobs exceed the single-flowshop budget of " +
                         std::to_string(options.limits.max_jobs_single));
  }
  const std::uint64_t maps =
      detail::saturating_power(static_cast<std::uint64_t>(m) + 1, n);
  if (maps > options.limits.max_assignments) {
    throw BudgetExceeded("exact oracle: (m+1)^n = " +
                         (maps == std::numeric_limits<std::uint64_t>::max()
                              ? std::string("overflow")
                              : std::to_string(maps)) +
                         " exceeds the budget of " +
                         std::to_string(options.limits.max_assignments));
  }

  Assignment current(n, kUnassigned);
  std::optional<Assignment> best;
  Rational best_profit = 0;

  if (!options.prune) {
    // Odometer over labels kUnassigned, 0, .., m-1 with position 0 most
    // significant, which visits maps in lexicographic order.
    auto advance = [&]() {
      for (std::size_t i = n; i-- > 0;) {
        if (current[i] + 1 < m) {
          ++current[i];
          return true;
        }
        current[i] = kUnassigned;
      }
      return false;
    };
    do {
      const Solution s = schedule_assignment(instance, current);
      if (s.feasible && (!best || s.total_profit > best_profit)) {
        best = current;
        best_profit = s.total_profit;
      }
    } while (advance());
    return schedule_assignment(instance, best.value_or(Assignment(n, kUnassigned)));
  }

  std::vector<std::size_t> rank(n);
  {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return johnson_less(instance.jobs[x], instance.jobs[y]);
    });
    for (std::size_t r = 0; r < n; ++r) rank[order[r]] = r;
  }
  std::vector<Rational> remaining(n + 1, Rational(0));
  for (std::size_t i = n; i > 0; --i) {
    remaining[i - 1] = remaining[i] + instance.jobs[i - 1].p;
  }
  std::vector<detail::FlowshopLoad> loads(static_cast<std::size_t>(m),
                                          detail::FlowshopLoad(instance, rank));

  // Depth-first in lexicographic order. A later map with equal profit is
  // lexicographically larger than the incumbent, so bounds prune on <=.
  // Flowshop labels are opened in increasing order; the lexicographically
  // smallest member of each relabeling orbit has that form.
  Rational profit = 0;
  auto recurse = [&](auto&& self, std::size_t pos, int opened) -> void {
    if (best && profit + remaining[pos] <= best_profit) return;
    if (pos == n) {
      best = current;
      best_profit = profit;
      return;
    }
    const Job& job = instance.jobs[pos];
    current[pos] = kUnassigned;
    self(self, pos + 1, opened);
    const int limit = std::min(m, opened + 1);
    for (int f = 0; f < limit; ++f) {
      auto& load = loads[static_cast<std::size_t>(f)];
      if (load.makespan_with(pos) > 1) continue;
      load.push(pos);
      current[pos] = f;
      profit += job.p;
      self(self, pos + 1, std::max(opened, f + 1));
      profit -= job.p;
      current[pos] = kUnassigned;
      load.pop(pos);
    }
  };
  recurse(recurse, 0, 0);
  return schedule_assignment(instance, best.value_or(Assignment(n, kUnassigned)));
}

// Minimum makespan over all n! orders, by simulation.
inline Rational brute_force_min_makespan(std::span<const Job> jobs,
                                         const OracleLimits& limits = {}) {
  if (jobs.size() > limits.max_permutation_jobs) {
    throw BudgetExceeded("permutation oracle: " + std::to_string(jobs.size()) +
                         " jobs exceed the budget of " +
                         std::to_string(limits.max_permutation_jobs));
  }
  std::vector<Job> perm(jobs.begin(), jobs.end());
  std::sort(perm.begin(), perm.end(),
            [](const Job& x, const Job& y) { return x.id < y.id; });
  std::optional<Rational> best;
  do {
    Rational value = simulate_makespan(perm);
    if (!best || value < *best) best = std::move(value);
  } while (std::next_permutation(perm.begin(), perm.end(),
                                 [](const Job& x, const Job& y) { return x.id < y.id; }));
  return *best;
}

// 0/1 knapsack optimum by dynamic programming over total profit: the lightest
// weight reaching each profit value.
inline Rational knapsack_dp_opt(std::span<const std::int64_t> profits,
                                std::span<const Rational> weights,
                                const Rational& capacity,
                                const OracleLimits& limits = {}) {
  if (profits.size() != weights.size()) {
    throw InputError("profits and weights differ in length");
  }
  std::int64_t total = 0;
  for (std::int64_t p : profits) {
    if (p < 0) throw InputError("knapsack profits must be nonnegative");
    total += p;
    if (total > limits.max_knapsack_profit) {
      throw BudgetExceeded("knapsack oracle: total profit exceeds the budget of " +
                           std::to_string(limits.max_knapsack_profit));
    }
  }
  const auto size = static_cast<std::size_t>(total) + 1;
  std::vector<std::optional<Rational>> lightest(size);
  lightest[0] = Rational(0);
  for (std::size_t i = 0; i < profits.size(); ++i) {
    const auto p = static_cast<std::size_t>(profits[i]);
    for (std::size_t v = size; v-- > p;) {
      const auto& from = lightest[v - p];
      if (!from) continue;
      Rational w = *from + weights[i];
      if (w <= capacity && (!lightest[v] || w < *lightest[v])) lightest[v] = std::move(w);
    }
  }
  for (std::size_t v = size; v-- > 0;) {
    if (lightest[v]) return Rational(static_cast<long>(v));
  }
  return 0;
}

// Scales rational profits to integers by their common denominator. Returns the
// integer profits and the scale; knapsack value = integer value / scale.
inline std::pair<std::vector<std::int64_t>, BigInt> integral_profits(
    std::span<const Rational> profits) {
  BigInt scale = 1;
  for (const Rational& p : profits) {
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), p.get_den_mpz_t());
  }
  std::vector<std::int64_t> out;
  for (const Rational& p : profits) {
    const BigInt v = p.get_num() * (scale / p.get_den());
    if (!v.fits_slong_p()) throw BudgetExceeded("knapsack oracle: profit overflow");
    out.push_back(v.get_si());
  }
  return {out, scale};
}

}  // namespace fsp
