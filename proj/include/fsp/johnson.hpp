#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "fsp/core.hpp"

namespace fsp {

// Jobs arranged so that each job precedes every later one under Johnson's
// relation min{a_i, b_j} <= min{a_j, b_i}.
struct OrderedSequence {
  std::vector<Job> jobs;
};

struct MakespanReport {
  Rational makespan = 0;
  // 1-based index of the first position attaining the maximum; 0 when empty.
  std::size_t critical_position = 0;
};

inline bool johnson_precedes(const Job& first, const Job& second) {
  const Rational& lhs = first.a < second.b ? first.a : second.b;
  const Rational& rhs = second.a < first.b ? second.a : first.b;
  return lhs <= rhs;
}

inline bool is_johnson_ordered(std::span<const Job> jobs) {
  for (std::size_t i = 0; i + 1 < jobs.size(); ++i) {
    if (!johnson_precedes(jobs[i], jobs[i + 1])) return false;
  }
  return true;
}

// Strict weak order behind johnson_order: jobs with a <= b first by ascending
// a, then jobs with a > b by descending b, ties by ascending id. The order is
// total, so the Johnson order of any subset is the restriction of this one.
inline bool johnson_less(const Job& x, const Job& y) {
  const bool x_head = x.a <= x.b;
  const bool y_head = y.a <= y.b;
  if (x_head != y_head) return x_head;
  if (x_head) {
    if (x.a != y.a) return x.a < y.a;
  } else {
    if (x.b != y.b) return x.b > y.b;
  }
  return x.id < y.id;
}

inline OrderedSequence johnson_order(std::span<const Job> jobs) {
  OrderedSequence seq{std::vector<Job>(jobs.begin(), jobs.end())};
  std::sort(seq.jobs.begin(), seq.jobs.end(), johnson_less);
  return seq;
}

// max over s of (a_1 + ... + a_s) + (b_s + ... + b_n), for any permutation.
inline MakespanReport makespan_closed_form(std::span<const Job> seq) {
  MakespanReport report;
  if (seq.empty()) return report;
  Rational suffix_b = 0;
  for (const Job& job : seq) suffix_b += job.b;
  Rational prefix_a = 0;
  for (std::size_t s = 0; s < seq.size(); ++s) {
    prefix_a += seq[s].a;
    Rational value = prefix_a + suffix_b;
    if (report.critical_position == 0 || value > report.makespan) {
      report.makespan = std::move(value);
      report.critical_position = s + 1;
    }
    suffix_b -= seq[s].b;
  }
  return report;
}

inline MakespanReport makespan_closed_form(const OrderedSequence& seq) {
  return makespan_closed_form(std::span<const Job>(seq.jobs));
}

// Two-machine event simulation; completion time of the last job.
inline Rational simulate_makespan(std::span<const Job> seq) {
  Rational first_machine = 0;
  Rational second_machine = 0;
  for (const Job& job : seq) {
    first_machine += job.a;
    if (first_machine > second_machine) second_machine = first_machine;
    second_machine += job.b;
  }
  return second_machine;
}

struct Schedule {
  OrderedSequence sequence;
  MakespanReport report;
};

inline Schedule min_makespan_schedule(std::span<const Job> jobs) {
  Schedule schedule{johnson_order(jobs), {}};
  schedule.report = makespan_closed_form(schedule.sequence);
  return schedule;
}

// Builds the per-flowshop Johnson schedules for an assignment and checks them
// against the unit makespan bound.
inline Solution schedule_assignment(const Instance& instance,
                                    const Assignment& assignment) {
  std::vector<std::vector<Job>> groups(static_cast<std::size_t>(instance.m));
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] != kUnassigned) {
      groups[static_cast<std::size_t>(assignment[i])].push_back(
          instance.jobs[i]);
    }
  }
  Solution solution;
  solution.total_profit = total_profit(instance, assignment);
  for (const auto& group : groups) {
    const Schedule schedule = min_makespan_schedule(group);
    std::vector<JobId> ids;
    ids.reserve(schedule.sequence.jobs.size());
    for (const Job& job : schedule.sequence.jobs) ids.push_back(job.id);
    solution.per_flowshop.push_back(std::move(ids));
    solution.per_flowshop_makespan.push_back(schedule.report.makespan);
    if (schedule.report.makespan > 1) solution.feasible = false;
  }
  return solution;
}

}  // namespace fsp
