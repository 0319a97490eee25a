#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "fsp/errors.hpp"
#include "fsp/rational.hpp"

namespace fsp {

using JobId = std::int64_t;

// A two-stage job: workload `a` on the first machine, `b` on the second,
// earning `p` when scheduled.
struct Job {
  JobId id = 0;
  Rational a;
  Rational b;
  Rational p;

  friend bool operator==(const Job&, const Job&) = default;
};

struct Instance {
  int m = 1;
  std::vector<Job> jobs;
  Rational makespan_bound = 1;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Flowshop index per job position of an Instance; kUnassigned for jobs left out.
inline constexpr int kUnassigned = -1;
using Assignment = std::vector<int>;

struct Solution {
  std::vector<std::vector<JobId>> per_flowshop;
  Rational total_profit = 0;
  std::vector<Rational> per_flowshop_makespan;
  bool feasible = true;

  friend bool operator==(const Solution&, const Solution&) = default;
};

// Throws InputError for non-positive m or bound, duplicate ids, or negative
// workloads/profits.
inline void validate_instance(const Instance& instance) {
  if (instance.m < 1) {
    throw InputError("number of flowshops must be positive, got " +
                     std::to_string(instance.m));
  }
  if (instance.makespan_bound <= 0) {
    throw InputError("makespan bound must be positive, got " +
                     format_rational(instance.makespan_bound));
  }
  std::set<JobId> seen;
  for (const Job& job : instance.jobs) {
    if (!seen.insert(job.id).second) {
      throw InputError("duplicate job id " + std::to_string(job.id));
    }
    if (job.a < 0 || job.b < 0) {
      throw InputError("job " + std::to_string(job.id) +
                       " has a negative workload");
    }
    if (job.p < 0) {
      throw InputError("job " + std::to_string(job.id) +
                       " has a negative profit");
    }
  }
}

// Scales workloads so the makespan bound becomes 1, drops jobs that cannot
// fit on a flowshop alone (a + b > 1), and sorts jobs by ascending id.
// Dropped ids are appended to `dropped` when given.
inline Instance normalize_instance(const Instance& raw,
                                   std::vector<JobId>* dropped = nullptr) {
  validate_instance(raw);
  Instance out;
  out.m = raw.m;
  out.makespan_bound = 1;
  out.jobs.reserve(raw.jobs.size());
  for (const Job& job : raw.jobs) {
    Job scaled{job.id, job.a / raw.makespan_bound, job.b / raw.makespan_bound,
               job.p};
    if (scaled.a + scaled.b > 1) {
      if (dropped != nullptr) dropped->push_back(job.id);
      continue;
    }
    out.jobs.push_back(std::move(scaled));
  }
  std::sort(out.jobs.begin(), out.jobs.end(),
            [](const Job& x, const Job& y) { return x.id < y.id; });
  return out;
}

// Position of each job id within instance.jobs.
inline std::unordered_map<JobId, std::size_t> index_by_id(
    const Instance& instance) {
  std::unordered_map<JobId, std::size_t> index;
  index.reserve(instance.jobs.size());
  for (std::size_t i = 0; i < instance.jobs.size(); ++i) {
    index.emplace(instance.jobs[i].id, i);
  }
  return index;
}

inline Rational total_profit(const Instance& instance,
                             const Assignment& assignment) {
  Rational sum = 0;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] != kUnassigned) sum += instance.jobs[i].p;
  }
  return sum;
}

// Relabels flowshops in order of first appearance when scanning jobs in
// instance order. Identical flowshops make this the orbit representative.
inline Assignment canonicalize(const Assignment& assignment, int m) {
  std::vector<int> relabel(static_cast<std::size_t>(m), kUnassigned);
  int next = 0;
  Assignment out(assignment.size(), kUnassigned);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const int f = assignment[i];
    if (f == kUnassigned) continue;
    if (relabel[static_cast<std::size_t>(f)] == kUnassigned) {
      relabel[static_cast<std::size_t>(f)] = next++;
    }
    out[i] = relabel[static_cast<std::size_t>(f)];
  }
  return out;
}

}  // namespace fsp
