#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "fsp/core.hpp"

namespace fsp {

enum class Profile { kUniform, kCorrelated, kKnapsack, kTight };

inline Profile parse_profile(std::string_view name) {
  if (name == "uniform") return Profile::kUniform;
  if (name == "correlated") return Profile::kCorrelated;
  if (name == "knapsack-degenerate") return Profile::kKnapsack;
  if (name == "tight") return Profile::kTight;
  throw InputError("unknown profile \"" + std::string(name) +
                   "\" (expected uniform, correlated, knapsack-degenerate, tight)");
}

inline std::string profile_name(Profile profile) {
  switch (profile) {
    case Profile::kUniform: return "uniform";
    case Profile::kCorrelated: return "correlated";
    case Profile::kKnapsack: return "knapsack-degenerate";
    case Profile::kTight: return "tight";
  }
  return "uniform";
}

namespace detail {

// Uniform integer in [lo, hi] straight from the engine, so instances do not
// depend on the standard library's distribution implementation.
inline std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

}  // namespace detail

// Workloads are multiples of 1/100 and profits are integers.
//   uniform:             a, b in (0, 1/2], p in [1, 100]
//   correlated:          a, b in (0, 1/2], p = 100 (a + b) + noise in [0, 10]
//   knapsack-degenerate: a in (0, 1/2], b = 0, p in [1, 100]
//   tight:               a, b in [1/5, 2/5], p in [1, 100]; two or three
//                        jobs fill a flowshop
inline Instance generate_instance(std::size_t n, int m, std::uint64_t seed,
                                  Profile profile) {
  if (m < 1) throw InputError("number of flowshops must be positive");
  std::mt19937_64 rng(seed);
  Instance instance;
  instance.m = m;
  for (std::size_t i = 0; i < n; ++i) {
    Job job;
    job.id = static_cast<JobId>(i + 1);
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t p = 0;
    switch (profile) {
      case Profile::kUniform:
        a = detail::draw(rng, 1, 50);
        b = detail::draw(rng, 1, 50);
        p = detail::draw(rng, 1, 100);
        break;
      case Profile::kCorrelated:
        a = detail::draw(rng, 1, 50);
        b = detail::draw(rng, 1, 50);
        p = a + b + detail::draw(rng, 0, 10);
        break;
      case Profile::kKnapsack:
        a = detail::draw(rng, 1, 50);
        b = 0;
        p = detail::draw(rng, 1, 100);
        break;
      case Profile::kTight:
        a = detail::draw(rng, 20, 40);
        b = detail::draw(rng, 20, 40);
        p = detail::draw(rng, 1, 100);
        break;
    }
    job.a = make_rational(a, 100);
    job.b = make_rational(b, 100);
    job.p = p;
    instance.jobs.push_back(std::move(job));
  }
  return instance;
}

}  // namespace fsp
