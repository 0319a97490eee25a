#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fsp/core.hpp"
#include "fsp/johnson.hpp"
#include "fsp/lp.hpp"

namespace fsp {

// Requested accuracy, the number K of most profitable jobs that get guessed,
// and the accuracy 1/(K-1) actually guaranteed by that K.
struct EpsilonParameter {
  Rational requested;
  int k = 0;
  Rational effective;
};

inline EpsilonParameter compute_k(const Rational& epsilon) {
  if (epsilon <= 0 || epsilon >= 1) {
    throw InputError("epsilon must lie in (0, 1), got " +
                     format_rational(epsilon));
  }
  const BigInt k = ceil_of(Rational((1 + epsilon) / epsilon));
  if (!k.fits_sint_p() || k > 64) {
    throw InputError("epsilon " + format_rational(epsilon) +
                     " needs an impractically large guess size");
  }
  EpsilonParameter param;
  param.requested = epsilon;
  param.k = static_cast<int>(k.get_si());
  param.effective = Rational(1, param.k - 1);
  return param;
}

enum class DistributionMode {
  kCanonical,  // one representative per flowshop relabeling orbit
  kLabeled,    // all m^K maps
};

enum class CandidateSource { kSmallSubset, kLpRounding };

struct Candidate {
  std::map<JobId, int> assignment;  // selected job -> flowshop
  CandidateSource source = CandidateSource::kSmallSubset;
  Rational profit = 0;
};

// A guessed substructure of an optimal solution.
struct Guess {
  std::vector<JobId> profitable;
  std::vector<int> distribution;  // flowshop of profitable[i]
  // Critical job per real flowshop; nullopt marks a flowshop guessed empty.
  std::vector<std::optional<JobId>> criticals;
  Rational p_min;
  std::vector<JobId> cheap_pool;
};

struct CheapPool {
  Rational p_min;
  std::vector<JobId> members;  // ascending id
};

// p_min is the smallest profit in `profitable`; the pool is `profitable` plus
// every job whose profit is at most p_min.
inline CheapPool cheap_pool(std::span<const Job> jobs,
                            std::span<const JobId> profitable) {
  if (profitable.empty()) {
    throw std::invalid_argument("profitable set must be nonempty");
  }
  std::set<JobId> chosen(profitable.begin(), profitable.end());
  std::optional<Rational> p_min;
  for (const Job& job : jobs) {
    if (chosen.count(job.id) && (!p_min || job.p < *p_min)) p_min = job.p;
  }
  if (!p_min) throw std::invalid_argument("profitable job not in job list");
  CheapPool pool{*p_min, {}};
  for (const Job& job : jobs) {
    if (chosen.count(job.id) || job.p <= pool.p_min) {
      pool.members.push_back(job.id);
    }
  }
  std::sort(pool.members.begin(), pool.members.end());
  return pool;
}

// Every map from `count` items to m flowshops. Canonical mode keeps restricted
// growth strings: labels appear in increasing order of first use.
inline std::vector<std::vector<int>> enumerate_distributions(
    std::size_t count, int m, DistributionMode mode) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(count, 0);
  auto recurse = [&](auto&& self, std::size_t pos, int used) -> void {
    if (pos == count) {
      out.push_back(current);
      return;
    }
    const int limit = mode == DistributionMode::kCanonical ? std::min(m, used + 1) : m;
    for (int f = 0; f < limit; ++f) {
      current[pos] = f;
      self(self, pos + 1, std::max(used, f + 1));
    }
  };
  if (m >= 1) recurse(recurse, 0, 0);
  return out;
}

// All subsets of at most k jobs, each expanded over flowshop assignments.
inline std::vector<Candidate> enumerate_small_candidates(
    const Instance& instance, int k,
    DistributionMode mode = DistributionMode::kLabeled) {
  std::vector<Candidate> out;
  const std::size_t n = instance.jobs.size();
  const std::size_t limit = std::min<std::size_t>(n, static_cast<std::size_t>(k));
  std::vector<std::size_t> chosen;
  auto emit = [&]() {
    for (const auto& dist : enumerate_distributions(chosen.size(), instance.m, mode)) {
      Candidate c;
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        const Job& job = instance.jobs[chosen[i]];
        c.assignment.emplace(job.id, dist[i]);
        c.profit += job.p;
      }
      out.push_back(std::move(c));
    }
  };
  auto recurse = [&](auto&& self, std::size_t start) -> void {
    emit();
    if (chosen.size() == limit) return;
    for (std::size_t i = start; i < n; ++i) {
      chosen.push_back(i);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  recurse(recurse, 0);
  return out;
}

namespace detail {

inline std::size_t position_of(const OrderedSequence& seq, JobId id) {
  for (std::size_t i = 0; i < seq.jobs.size(); ++i) {
    if (seq.jobs[i].id == id) return i;
  }
  throw std::invalid_argument("job " + std::to_string(id) +
                              " is not in the cheap pool");
}

// Coefficient of job at `pos` in the makespan row whose critical position is
// `critical`: a before it, b after it, a + b at it.
inline Rational makespan_coefficient(const Job& job, std::size_t pos,
                                     std::size_t critical) {
  if (pos < critical) return job.a;
  if (pos > critical) return job.b;
  return job.a + job.b;
}

}  // namespace detail

// Single-flowshop LP: one makespan row anchored at the guessed critical job;
// profitable jobs and the critical job fixed to 1.
inline LinearProgram build_lp_single(const OrderedSequence& pool_sorted,
                                     std::span<const JobId> profitable,
                                     JobId critical) {
  const std::size_t s = detail::position_of(pool_sorted, critical);
  const std::set<JobId> fixed_one(profitable.begin(), profitable.end());
  LinearProgram lp;
  std::vector<std::pair<std::size_t, Rational>> row;
  for (std::size_t i = 0; i < pool_sorted.jobs.size(); ++i) {
    const Job& job = pool_sorted.jobs[i];
    VariableBounds bounds;
    if (fixed_one.count(job.id) || job.id == critical) bounds.lower = 1;
    const std::size_t col = lp.add_variable(job.p, bounds, {job.id, 0});
    Rational coef = detail::makespan_coefficient(job, i, s);
    if (coef != 0) row.emplace_back(col, std::move(coef));
  }
  lp.add_row(std::move(row), Relation::kLessEqual, Rational(1));
  return lp;
}

// Multi-flowshop LP with a dummy flowshop that absorbs unselected pool jobs.
// Variables x[job][flowshop] for every pool job and every real flowshop with
// a critical guess, plus the dummy. Every free job gets an equality row.
inline LinearProgram build_lp_multi(const OrderedSequence& pool_sorted,
                                    const Guess& guess, const Instance& instance) {
  const int m = instance.m;
  if (guess.criticals.size() != static_cast<std::size_t>(m) ||
      guess.distribution.size() != guess.profitable.size()) {
    throw std::invalid_argument("guess does not match the instance");
  }
  std::map<JobId, int> fixed;  // guessed job -> flowshop
  for (std::size_t i = 0; i < guess.profitable.size(); ++i) {
    fixed[guess.profitable[i]] = guess.distribution[i];
  }
  for (int j = 0; j < m; ++j) {
    const auto& c = guess.criticals[static_cast<std::size_t>(j)];
    if (!c) continue;
    auto [it, inserted] = fixed.emplace(*c, j);
    if (!inserted && it->second != j) {
      throw std::invalid_argument("critical job guessed on two flowshops");
    }
  }
  for (const auto& [id, f] : fixed) {
    if (!guess.criticals[static_cast<std::size_t>(f)]) {
      throw std::invalid_argument("flowshop guessed empty holds a guessed job");
    }
  }

  std::vector<std::size_t> critical_pos(static_cast<std::size_t>(m), 0);
  for (int j = 0; j < m; ++j) {
    if (const auto& c = guess.criticals[static_cast<std::size_t>(j)]) {
      critical_pos[static_cast<std::size_t>(j)] = detail::position_of(pool_sorted, *c);
    }
  }
  // The dummy row holds for any assignment, so its critical position is
  // pinned to the last pool job.
  const std::size_t dummy_critical =
      pool_sorted.jobs.empty() ? 0 : pool_sorted.jobs.size() - 1;
  Rational dummy_capacity = 0;
  for (const Job& job : instance.jobs) dummy_capacity += job.a + job.b;

  LinearProgram lp;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> makespan_rows(
      static_cast<std::size_t>(m));
  std::vector<std::pair<std::size_t, Rational>> dummy_row;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> assignment_rows;

  for (std::size_t i = 0; i < pool_sorted.jobs.size(); ++i) {
    const Job& job = pool_sorted.jobs[i];
    const auto fixed_it = fixed.find(job.id);
    const bool is_free = fixed_it == fixed.end();
    std::vector<std::pair<std::size_t, Rational>> assign_row;
    for (int j = 0; j < m; ++j) {
      if (!guess.criticals[static_cast<std::size_t>(j)]) continue;
      VariableBounds bounds;
      if (!is_free) {
        const Rational v = fixed_it->second == j ? 1 : 0;
        bounds = {v, v};
      }
      const std::size_t col = lp.add_variable(job.p, bounds, {job.id, j});
      Rational coef = detail::makespan_coefficient(job, i, critical_pos[static_cast<std::size_t>(j)]);
      if (coef != 0) makespan_rows[static_cast<std::size_t>(j)].emplace_back(col, std::move(coef));
      if (is_free) assign_row.emplace_back(col, Rational(1));
    }
    VariableBounds dummy_bounds;
    if (!is_free) dummy_bounds = {Rational(0), Rational(0)};
    const std::size_t dummy_col =
        lp.add_variable(Rational(0), dummy_bounds, {job.id, kDummyFlowshop});
    Rational coef = detail::makespan_coefficient(job, i, dummy_critical);
    if (coef != 0) dummy_row.emplace_back(dummy_col, std::move(coef));
    if (is_free) {
      assign_row.emplace_back(dummy_col, Rational(1));
      assignment_rows.push_back(std::move(assign_row));
    }
  }
  for (int j = 0; j < m; ++j) {
    if (!guess.criticals[static_cast<std::size_t>(j)]) continue;
    lp.add_row(std::move(makespan_rows[static_cast<std::size_t>(j)]),
               Relation::kLessEqual, Rational(1));
  }
  lp.add_row(std::move(dummy_row), Relation::kLessEqual, dummy_capacity);
  for (auto& row : assignment_rows) {
    lp.add_row(std::move(row), Relation::kEqual, Rational(1));
  }
  return lp;
}

struct RoundedCandidate {
  Candidate candidate;
  std::size_t fractional_variables = 0;  // strictly inside (0, 1)
  std::size_t fractional_jobs = 0;       // positive only via fractional values
};

// Keeps exactly the real-flowshop variables equal to 1.
inline RoundedCandidate round_solution(const BasicSolution& basic,
                                       const LinearProgram& lp) {
  if (basic.status != LpStatus::kOptimal) {
    throw std::invalid_argument("rounding needs an optimal basic solution");
  }
  RoundedCandidate out;
  out.candidate.source = CandidateSource::kLpRounding;
  std::map<JobId, std::pair<bool, bool>> seen;  // job -> (has one, has fraction)
  for (std::size_t col = 0; col < lp.num_variables(); ++col) {
    const Rational& v = basic.values[col];
    const VariableLabel& label = lp.labels()[col];
    auto& [has_one, has_fraction] = seen[label.job];
    if (v == 1) {
      has_one = true;
      if (label.flowshop != kDummyFlowshop) {
        out.candidate.assignment[label.job] = label.flowshop;
        out.candidate.profit += lp.objective()[col];
      }
    } else if (v > 0 && v < 1) {
      has_fraction = true;
      ++out.fractional_variables;
    }
  }
  for (const auto& [job, flags] : seen) {
    if (!flags.first && flags.second) ++out.fractional_jobs;
  }
  return out;
}

struct PtasOptions {
  // For m >= 2, run with epsilon / (m + 1) so the result is within 1 - epsilon.
  bool scale_epsilon = true;
  DistributionMode distributions = DistributionMode::kCanonical;
};

struct PtasStats {
  EpsilonParameter epsilon;
  std::uint64_t subset_guesses = 0;
  std::uint64_t distribution_guesses = 0;
  std::uint64_t critical_guesses = 0;
  std::uint64_t lp_solves = 0;
  std::uint64_t lp_infeasible = 0;
  std::uint64_t candidates = 0;  // distinct canonical assignments in C
  std::uint64_t rounded_candidates = 0;
  std::uint64_t rounded_infeasible = 0;  // LP-rounded sets failing makespan <= 1
  std::optional<Rational> best_lp_objective;
  std::size_t max_fractional_variables = 0;
  std::size_t max_fractional_jobs = 0;
};

struct PtasResult {
  Solution solution;
  PtasStats stats;
};

namespace detail {

// The candidate collection C: deduplicated by canonical assignment, with the
// best feasible member tracked as candidates arrive. Ties on profit go to the
// lexicographically smallest canonical assignment, so the result does not
// depend on insertion order.
class CandidatePool {
 public:
  CandidatePool(const Instance& instance, const OrderedSequence& order)
      : instance_(instance), index_(index_by_id(instance)) {
    rank_.resize(instance.jobs.size());
    for (std::size_t r = 0; r < order.jobs.size(); ++r) {
      rank_[index_.at(order.jobs[r].id)] = r;
    }
    by_rank_.resize(order.jobs.size());
    for (std::size_t i = 0; i < rank_.size(); ++i) by_rank_[rank_[i]] = i;
  }

  // Returns whether the candidate admits a feasible schedule.
  bool add(const Candidate& candidate) {
    Assignment assignment(instance_.jobs.size(), kUnassigned);
    for (const auto& [id, f] : candidate.assignment) {
      assignment[index_.at(id)] = f;
    }
    assignment = canonicalize(assignment, instance_.m);
    const auto [it, inserted] = seen_.emplace(assignment, false);
    if (!inserted) return it->second;
    it->second = feasible(assignment);
    if (it->second) {
      const Rational profit = total_profit(instance_, assignment);
      if (!best_ || profit > best_profit_ ||
          (profit == best_profit_ && assignment < *best_)) {
        best_ = assignment;
        best_profit_ = profit;
      }
    }
    return it->second;
  }

  std::size_t size() const { return seen_.size(); }

  // Makespan check of a subset on one flowshop, in global Johnson order.
  bool fits(const std::vector<char>& member) const {
    Rational first = 0;
    Rational second = 0;
    for (std::size_t i : by_rank_) {
      if (!member[i]) continue;
      const Job& job = instance_.jobs[i];
      first += job.a;
      if (first > second) second = first;
      second += job.b;
      if (second > 1) return false;
    }
    return true;
  }

  Solution best_solution() const {
    if (!best_) {
      return schedule_assignment(instance_,
                                 Assignment(instance_.jobs.size(), kUnassigned));
    }
    return schedule_assignment(instance_, *best_);
  }

  std::size_t position(JobId id) const { return index_.at(id); }

 private:
  bool feasible(const Assignment& assignment) const {
    for (int f = 0; f < instance_.m; ++f) {
      std::vector<char> member(assignment.size(), 0);
      bool any = false;
      for (std::size_t i = 0; i < assignment.size(); ++i) {
        if (assignment[i] == f) member[i] = 1, any = true;
      }
      if (any && !fits(member)) return false;
    }
    return true;
  }

  const Instance& instance_;
  std::unordered_map<JobId, std::size_t> index_;
  std::vector<std::size_t> rank_;
  std::vector<std::size_t> by_rank_;
  std::map<Assignment, bool> seen_;
  std::optional<Assignment> best_;
  Rational best_profit_ = 0;
};

inline void record_lp(PtasStats& stats, const BasicSolution& basic,
                      const RoundedCandidate& rounded) {
  if (!stats.best_lp_objective || basic.objective_value > *stats.best_lp_objective) {
    stats.best_lp_objective = basic.objective_value;
  }
  stats.max_fractional_variables =
      std::max(stats.max_fractional_variables, rounded.fractional_variables);
  stats.max_fractional_jobs =
      std::max(stats.max_fractional_jobs, rounded.fractional_jobs);
}

// Calls visit(ids) for every k-subset of `jobs`, ids in instance order.
template <class Visit>
void for_each_subset(std::span<const Job> jobs, std::size_t k, Visit&& visit) {
  std::vector<JobId> ids;
  auto recurse = [&](auto&& self, std::size_t start) -> void {
    if (ids.size() == k) {
      visit(std::as_const(ids));
      return;
    }
    for (std::size_t i = start; i + (k - ids.size()) <= jobs.size(); ++i) {
      ids.push_back(jobs[i].id);
      self(self, i + 1);
      ids.pop_back();
    }
  };
  recurse(recurse, 0);
}

inline OrderedSequence restrict_order(const OrderedSequence& order,
                                      const std::vector<JobId>& members) {
  const std::set<JobId> keep(members.begin(), members.end());
  OrderedSequence out;
  for (const Job& job : order.jobs) {
    if (keep.count(job.id)) out.jobs.push_back(job);
  }
  return out;
}

}  // namespace detail

// One flowshop. Exhausts all subsets of at most K jobs, then for every K-subset
// taken as the most profitable part of the optimum and every critical job in
// its cheap pool, rounds an optimal vertex of the single-row LP. Returns the
// most profitable candidate whose Johnson schedule fits in makespan 1.
inline PtasResult ptas_single(const Instance& instance, const Rational& epsilon) {
  if (instance.m != 1) {
    throw InputError("ptas_single needs exactly one flowshop");
  }
  PtasResult result;
  PtasStats& stats = result.stats;
  stats.epsilon = compute_k(epsilon);
  const std::size_t k = static_cast<std::size_t>(stats.epsilon.k);

  const OrderedSequence order = johnson_order(instance.jobs);
  detail::CandidatePool pool(instance, order);
  for (const Candidate& c : enumerate_small_candidates(
           instance, stats.epsilon.k, DistributionMode::kLabeled)) {
    pool.add(c);
  }

  if (instance.jobs.size() >= k) {
    const std::size_t n = instance.jobs.size();
    detail::for_each_subset(instance.jobs, k, [&](const std::vector<JobId>& profitable) {
      ++stats.subset_guesses;
      ++stats.distribution_guesses;
      std::vector<char> fixed(n, 0);
      for (JobId id : profitable) fixed[pool.position(id)] = 1;
      // Every rounded set contains the profitable set, so an overfull
      // profitable set can only produce infeasible candidates.
      if (!pool.fits(fixed)) return;
      const CheapPool cheap = cheap_pool(instance.jobs, profitable);
      const OrderedSequence pool_sorted = detail::restrict_order(order, cheap.members);
      for (const Job& critical : pool_sorted.jobs) {
        const std::size_t pos = pool.position(critical.id);
        const char was = fixed[pos];
        fixed[pos] = 1;
        const bool fits = pool.fits(fixed);
        fixed[pos] = was;
        if (!fits) continue;
        ++stats.critical_guesses;
        const LinearProgram lp = build_lp_single(pool_sorted, profitable, critical.id);
        const BasicSolution basic = solve_to_vertex(lp);
        ++stats.lp_solves;
        if (basic.status != LpStatus::kOptimal) {
          ++stats.lp_infeasible;
          continue;
        }
        const RoundedCandidate rounded = round_solution(basic, lp);
        detail::record_lp(stats, basic, rounded);
        ++stats.rounded_candidates;
        if (!pool.add(rounded.candidate)) ++stats.rounded_infeasible;
      }
    });
  }
  stats.candidates = pool.size();
  result.solution = pool.best_solution();
  return result;
}

// m flowshops. Like ptas_single, but each K-subset is also split over the
// flowshops, a critical job (or "empty") is guessed per flowshop, and the LP
// carries a dummy flowshop so its vertices leave at most m + 1 jobs split.
inline PtasResult ptas_multi(const Instance& instance, const Rational& epsilon,
                             const PtasOptions& options = {}) {
  PtasResult result;
  PtasStats& stats = result.stats;
  const int m = instance.m;
  const Rational internal_epsilon =
      options.scale_epsilon && m >= 2 ? Rational(epsilon / (m + 1)) : epsilon;
  if (epsilon <= 0 || epsilon >= 1) compute_k(epsilon);  // rejects
  stats.epsilon = compute_k(internal_epsilon);
  const std::size_t k = static_cast<std::size_t>(stats.epsilon.k);

  const OrderedSequence order = johnson_order(instance.jobs);
  detail::CandidatePool pool(instance, order);
  for (const Candidate& c :
       enumerate_small_candidates(instance, stats.epsilon.k, options.distributions)) {
    pool.add(c);
  }

  const std::size_t n = instance.jobs.size();
  if (n < k) {
    stats.candidates = pool.size();
    result.solution = pool.best_solution();
    return result;
  }

  const auto distributions = enumerate_distributions(k, m, options.distributions);
  detail::for_each_subset(instance.jobs, k, [&](const std::vector<JobId>& profitable) {
    ++stats.subset_guesses;
    const CheapPool cheap = cheap_pool(instance.jobs, profitable);
    const OrderedSequence pool_sorted = detail::restrict_order(order, cheap.members);

    for (const auto& dist : distributions) {
      ++stats.distribution_guesses;
      // Per-flowshop membership of the guessed jobs.
      std::vector<std::vector<char>> members(
          static_cast<std::size_t>(m), std::vector<char>(n, 0));
      std::vector<bool> has_profitable(static_cast<std::size_t>(m), false);
      for (std::size_t i = 0; i < k; ++i) {
        const auto f = static_cast<std::size_t>(dist[i]);
        members[f][pool.position(profitable[i])] = 1;
        has_profitable[f] = true;
      }
      bool overfull = false;
      for (int j = 0; j < m && !overfull; ++j) {
        if (has_profitable[static_cast<std::size_t>(j)] &&
            !pool.fits(members[static_cast<std::size_t>(j)])) {
          overfull = true;
        }
      }
      if (overfull) continue;

      std::map<JobId, int> profitable_flowshop;
      for (std::size_t i = 0; i < k; ++i) profitable_flowshop[profitable[i]] = dist[i];

      // Options per flowshop: any pool job, or "empty" when no profitable job
      // sits there. Guesses that put one job on two flowshops are skipped.
      Guess guess{profitable, dist, std::vector<std::optional<JobId>>(static_cast<std::size_t>(m)),
                  cheap.p_min, cheap.members};
      std::set<JobId> used_free;
      auto recurse = [&](auto&& self, int j) -> void {
        if (j == m) {
          ++stats.critical_guesses;
          const LinearProgram lp = build_lp_multi(pool_sorted, guess, instance);
          const BasicSolution basic = solve_to_vertex(lp);
          ++stats.lp_solves;
          if (basic.status != LpStatus::kOptimal) {
            ++stats.lp_infeasible;
            return;
          }
          const RoundedCandidate rounded = round_solution(basic, lp);
          detail::record_lp(stats, basic, rounded);
          ++stats.rounded_candidates;
          if (!pool.add(rounded.candidate)) ++stats.rounded_infeasible;
          return;
        }
        const auto ju = static_cast<std::size_t>(j);
        if (!has_profitable[ju]) {
          guess.criticals[ju] = std::nullopt;
          self(self, j + 1);
        }
        for (const Job& critical : pool_sorted.jobs) {
          const auto it = profitable_flowshop.find(critical.id);
          if (it != profitable_flowshop.end() && it->second != j) continue;
          const bool is_free = it == profitable_flowshop.end();
          if (is_free && used_free.count(critical.id)) continue;
          const std::size_t pos = pool.position(critical.id);
          const char was = members[ju][pos];
          members[ju][pos] = 1;
          const bool fits = pool.fits(members[ju]);
          members[ju][pos] = was;
          if (!fits) continue;
          guess.criticals[ju] = critical.id;
          if (is_free) used_free.insert(critical.id);
          self(self, j + 1);
          if (is_free) used_free.erase(critical.id);
        }
        guess.criticals[ju] = std::nullopt;
      };
      recurse(recurse, 0);
    }
  });
  stats.candidates = pool.size();
  result.solution = pool.best_solution();
  return result;
}

// Single-flowshop scheme for m = 1, the multi-flowshop scheme otherwise.
inline PtasResult ptas(const Instance& instance, const Rational& epsilon,
                       const PtasOptions& options = {}) {
  if (instance.m == 1) return ptas_single(instance, epsilon);
  return ptas_multi(instance, epsilon, options);
}

}  // namespace fsp
