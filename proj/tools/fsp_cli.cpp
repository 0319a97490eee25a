// Command-line front end: solve, verify, gen, bench.
//
// Exit codes: 0 success, 1 infeasibility or violation, 2 input error,
// 3 oracle budget refusal.

#include <CLI11.hpp>

#include <cassert>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fsp/fsp.hpp"

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fsp::InputError("cannot write " + path);
  out << text;
}

std::vector<fsp::Rational> parse_epsilon_list(const std::string& text) {
  std::vector<fsp::Rational> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(fsp::parse_rational(item));
  }
  if (out.empty()) throw fsp::InputError("no epsilon values given");
  for (const auto& e : out) fsp::compute_k(e);
  return out;
}

fsp::Instance load_instance(const std::string& path) {
  std::vector<fsp::JobId> dropped;
  fsp::Instance instance = fsp::parse_instance_file(path, &dropped);
  for (fsp::JobId id : dropped) {
    std::cerr << "warning: job " << id
              << " cannot fit on a flowshop alone and was dropped\n";
  }
  return instance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Profit-maximizing job selection on parallel two-stage flowshops"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string epsilon_text = "1/2";
  std::string algorithm = "ptas";
  std::string out_path;
  bool raw_epsilon = false;
  auto* solve = app.add_subcommand("solve", "Select and schedule jobs");
  solve->add_option("--instance", instance_path, "Instance JSON file")->required();
  solve->add_option("--epsilon", epsilon_text, "Accuracy in (0,1), decimal or fraction");
  solve->add_option("--algorithm", algorithm, "ptas or exact")
      ->check(CLI::IsMember({"ptas", "exact"}));
  solve->add_flag("--raw-epsilon", raw_epsilon,
                  "Use epsilon as given for m >= 2 (guarantee 1 - epsilon (m+1))");
  solve->add_option("--out", out_path, "Solution JSON file (default stdout)");

  std::string solution_path;
  auto* verify = app.add_subcommand("verify", "Recheck a solution file");
  verify->add_option("--instance", instance_path, "Instance JSON file")->required();
  verify->add_option("--solution", solution_path, "Solution JSON file")->required();

  std::size_t gen_n = 10;
  int gen_m = 1;
  std::uint64_t gen_seed = 1;
  std::string gen_profile = "uniform";
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--n", gen_n, "Number of jobs");
  gen->add_option("--m", gen_m, "Number of flowshops")->check(CLI::Range(1, 64));
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--profile", gen_profile,
                  "uniform, correlated, knapsack-degenerate or tight");
  gen->add_option("--out", out_path, "Instance JSON file (default stdout)");

  std::string bench_dir;
  std::string epsilon_list = "1/2";
  std::string csv_path;
  unsigned threads = 1;
  bool no_timing = false;
  auto* bench = app.add_subcommand("bench", "Run PTAS and exact oracle over a directory");
  bench->add_option("--dir", bench_dir, "Directory of instance JSON files")->required();
  bench->add_option("--epsilons", epsilon_list, "Comma-separated epsilon values");
  bench->add_option("--csv", csv_path, "CSV output file (default stdout)");
  bench->add_option("--jobs", threads, "Worker threads");
  bench->add_flag("--raw-epsilon", raw_epsilon, "Use epsilon as given for m >= 2");
  bench->add_flag("--no-timing", no_timing, "Leave the ms column empty");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*solve) {
      const fsp::Instance instance = load_instance(instance_path);
      fsp::SolutionFile file;
      file.instance_digest = fsp::instance_digest(instance);
      file.algorithm = algorithm;
      if (algorithm == "exact") {
        file.solution = fsp::exact_opt(instance);
      } else {
        const fsp::Rational epsilon = fsp::parse_rational(epsilon_text);
        fsp::PtasOptions options;
        options.scale_epsilon = !raw_epsilon;
        file.epsilon = fsp::format_rational(epsilon);
        file.solution = fsp::ptas(instance, epsilon, options).solution;
      }
      // The empty selection is always feasible, so this cannot trigger.
      assert(file.solution.feasible);
      if (!file.solution.feasible) {
        std::cerr << "error: no feasible candidate\n";
        return kExitViolation;
      }
      write_text(out_path, fsp::write_solution(file));
      return 0;
    }
    if (*verify) {
      const fsp::Instance instance = load_instance(instance_path);
      std::ifstream in(solution_path);
      if (!in) throw fsp::InputError("cannot open " + solution_path);
      const fsp::SolutionFile file = fsp::read_solution(in, solution_path);
      const auto problems = fsp::verify_solution(instance, file);
      for (const auto& p : problems) std::cerr << "violation: " << p << '\n';
      if (!problems.empty()) return kExitViolation;
      std::cout << "ok: profit " << fsp::format_rational(file.solution.total_profit) << '\n';
      return 0;
    }
    if (*gen) {
      const fsp::Instance instance =
          fsp::generate_instance(gen_n, gen_m, gen_seed, fsp::parse_profile(gen_profile));
      write_text(out_path, fsp::write_instance(instance));
      return 0;
    }
    if (*bench) {
      fsp::BenchOptions options;
      options.epsilons = parse_epsilon_list(epsilon_list);
      options.ptas.scale_epsilon = !raw_epsilon;
      options.threads = threads;
      options.timing = !no_timing;
      write_text(csv_path, fsp::run_bench(bench_dir, options));
      return 0;
    }
  } catch (const fsp::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const fsp::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
