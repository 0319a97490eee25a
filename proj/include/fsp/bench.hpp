#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fsp/io.hpp"
#include "fsp/oracle.hpp"
#include "fsp/ptas.hpp"

namespace fsp {

inline constexpr const char* kBenchHeader =
    "instance,n,m,epsilon,algorithm,profit,opt,ratio,feasible,ms,"
    "subset_guesses,distribution_guesses,critical_guesses,lp_solves";

struct BenchmarkRow {
  std::string instance;
  std::size_t n = 0;
  int m = 1;
  Rational epsilon;
  std::string algorithm = "ptas";
  Rational profit;
  std::optional<Rational> opt;  // nullopt when the oracle refused
  bool feasible = true;
  std::optional<long long> ms;  // nullopt when timing is disabled
  PtasStats stats;

  std::optional<Rational> ratio() const {
    if (!opt) return std::nullopt;
    if (*opt == 0) return Rational(1);
    return Rational(profit / *opt);
  }
};

inline std::string format_row(const BenchmarkRow& row) {
  std::ostringstream out;
  const auto ratio = row.ratio();
  out << row.instance << ',' << row.n << ',' << row.m << ','
      << format_rational(row.epsilon) << ',' << row.algorithm << ','
      << format_rational(row.profit) << ','
      << (row.opt ? format_rational(*row.opt) : "") << ','
      << (ratio ? format_rational(*ratio) : "") << ','
      << (row.feasible ? "true" : "false") << ','
      << (row.ms ? std::to_string(*row.ms) : "") << ','
      << row.stats.subset_guesses << ',' << row.stats.distribution_guesses << ','
      << row.stats.critical_guesses << ',' << row.stats.lp_solves;
  return out.str();
}

struct BenchOptions {
  std::vector<Rational> epsilons;
  PtasOptions ptas;
  ExactOptions exact;
  unsigned threads = 1;
  bool timing = true;
};

inline BenchmarkRow bench_instance(const std::string& name, const Instance& instance,
                                   const Rational& epsilon, const BenchOptions& options) {
  BenchmarkRow row;
  row.instance = name;
  row.n = instance.jobs.size();
  row.m = instance.m;
  row.epsilon = epsilon;
  const auto start = std::chrono::steady_clock::now();
  const PtasResult result = ptas(instance, epsilon, options.ptas);
  const auto stop = std::chrono::steady_clock::now();
  if (options.timing) {
    row.ms = std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
  }
  row.profit = result.solution.total_profit;
  row.feasible = result.solution.feasible;
  row.stats = result.stats;
  try {
    row.opt = exact_opt(instance, options.exact).total_profit;
  } catch (const BudgetExceeded&) {
    row.opt.reset();
  }
  return row;
}

// Runs every *.json instance in `dir` at every epsilon. Rows are sorted by
// instance name, then by position in the epsilon list, whatever the thread
// count.
inline std::string run_bench(const std::filesystem::path& dir,
                             const BenchOptions& options) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  struct Task {
    std::string name;
    const Instance* instance;
    std::size_t epsilon_index;
  };
  std::vector<Instance> instances;
  instances.reserve(files.size());
  for (const auto& path : files) instances.push_back(parse_instance_file(path.string()));
  std::vector<Task> tasks;
  for (std::size_t f = 0; f < files.size(); ++f) {
    for (std::size_t e = 0; e < options.epsilons.size(); ++e) {
      tasks.push_back({files[f].stem().string(), &instances[f], e});
    }
  }

  std::vector<BenchmarkRow> rows(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      try {
        rows[t] = bench_instance(tasks[t].name, *tasks[t].instance,
                                 options.epsilons[tasks[t].epsilon_index], options);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, options.threads);
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  std::ostringstream csv;
  csv << kBenchHeader << '\n';
  for (const auto& row : rows) csv << format_row(row) << '\n';
  return csv.str();
}

}  // namespace fsp
