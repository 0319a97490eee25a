#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fsp/core.hpp"
#include "fsp/johnson.hpp"

namespace fsp {

inline constexpr const char* kInstanceVersion = "fsp-instance/1";
inline constexpr const char* kSolutionVersion = "fsp-solution/1";

namespace detail {

using nlohmann::ordered_json;

inline void reject_unknown(const ordered_json& object,
                           std::initializer_list<const char*> allowed,
                           const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (const char* name : allowed) known = known || key == name;
    if (!known) throw InputError("unknown field \"" + key + "\" in " + where);
  }
}

inline const ordered_json& require(const ordered_json& object, const char* key,
                                   const std::string& where) {
  const auto it = object.find(key);
  if (it == object.end()) {
    throw InputError("missing field \"" + std::string(key) + "\" in " + where);
  }
  return *it;
}

// Numbers travel as strings; bare JSON integers are tolerated on input.
inline Rational rational_field(const ordered_json& object, const char* key,
                               const std::string& where) {
  const auto& value = require(object, key, where);
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.dump());
  throw InputError("field \"" + std::string(key) + "\" in " + where +
                   " must be a decimal or fraction string");
}

inline ordered_json parse_json(std::istream& in, const std::string& what) {
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("malformed JSON in " + what + ": " + e.what());
  }
}

inline std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

}  // namespace detail

// Reads an instance as written (no normalization).
inline Instance read_instance_raw(std::istream& in, const std::string& what = "instance") {
  using detail::ordered_json;
  const ordered_json doc = detail::parse_json(in, what);
  if (!doc.is_object()) throw InputError(what + " must be a JSON object");
  detail::reject_unknown(doc, {"version", "m", "makespan_bound", "jobs"}, what);
  if (const auto it = doc.find("version"); it != doc.end()) {
    if (!it->is_string() || it->get<std::string>() != kInstanceVersion) {
      throw InputError("unsupported instance version in " + what);
    }
  }
  Instance instance;
  const auto& m = detail::require(doc, "m", what);
  if (!m.is_number_integer()) throw InputError("\"m\" must be an integer in " + what);
  if (m.get<std::int64_t>() < 1 || m.get<std::int64_t>() > 64) {
    throw InputError("\"m\" must lie in [1, 64] in " + what);
  }
  instance.m = m.get<int>();
  instance.makespan_bound = doc.contains("makespan_bound")
                                ? detail::rational_field(doc, "makespan_bound", what)
                                : Rational(1);
  const auto& jobs = detail::require(doc, "jobs", what);
  if (!jobs.is_array()) throw InputError("\"jobs\" must be an array in " + what);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& entry = jobs[i];
    const std::string where = what + " job #" + std::to_string(i);
    if (!entry.is_object()) throw InputError(where + " must be an object");
    detail::reject_unknown(entry, {"id", "a", "b", "p"}, where);
    const auto& id = detail::require(entry, "id", where);
    if (!id.is_number_integer()) throw InputError("\"id\" must be an integer in " + where);
    instance.jobs.push_back({id.get<JobId>(), detail::rational_field(entry, "a", where),
                             detail::rational_field(entry, "b", where),
                             detail::rational_field(entry, "p", where)});
  }
  validate_instance(instance);
  return instance;
}

// Reads and normalizes. Ids of jobs too large to ever fit go to `dropped`.
inline Instance parse_instance(std::istream& in, std::vector<JobId>* dropped = nullptr,
                               const std::string& what = "instance") {
  return normalize_instance(read_instance_raw(in, what), dropped);
}

inline Instance parse_instance_file(const std::string& path,
                                    std::vector<JobId>* dropped = nullptr) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse_instance(in, dropped, path);
}

inline std::string write_instance(const Instance& instance) {
  detail::ordered_json doc;
  doc["version"] = kInstanceVersion;
  doc["m"] = instance.m;
  doc["makespan_bound"] = format_rational(instance.makespan_bound);
  doc["jobs"] = detail::ordered_json::array();
  for (const Job& job : instance.jobs) {
    doc["jobs"].push_back({{"id", job.id},
                           {"a", format_rational(job.a)},
                           {"b", format_rational(job.b)},
                           {"p", format_rational(job.p)}});
  }
  return doc.dump(2) + "\n";
}

// Stable fingerprint of the normalized instance.
inline std::string instance_digest(const Instance& instance) {
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0')
      << detail::fnv1a(write_instance(instance));
  return out.str();
}

struct SolutionFile {
  std::string instance_digest;
  std::string algorithm;
  std::string epsilon;  // empty for the exact algorithm
  Solution solution;
};

inline std::string write_solution(const SolutionFile& file) {
  detail::ordered_json doc;
  doc["version"] = kSolutionVersion;
  doc["instance_digest"] = file.instance_digest;
  doc["algorithm"] = file.algorithm;
  if (!file.epsilon.empty()) doc["epsilon"] = file.epsilon;
  doc["total_profit"] = format_rational(file.solution.total_profit);
  doc["feasible"] = file.solution.feasible;
  doc["flowshops"] = detail::ordered_json::array();
  for (std::size_t j = 0; j < file.solution.per_flowshop.size(); ++j) {
    doc["flowshops"].push_back(
        {{"jobs", file.solution.per_flowshop[j]},
         {"makespan", format_rational(file.solution.per_flowshop_makespan.at(j))}});
  }
  return doc.dump(2) + "\n";
}

inline SolutionFile read_solution(std::istream& in, const std::string& what = "solution") {
  using detail::ordered_json;
  const ordered_json doc = detail::parse_json(in, what);
  if (!doc.is_object()) throw InputError(what + " must be a JSON object");
  detail::reject_unknown(doc,
                         {"version", "instance_digest", "algorithm", "epsilon",
                          "total_profit", "feasible", "flowshops"},
                         what);
  const auto& version = detail::require(doc, "version", what);
  if (!version.is_string() || version.get<std::string>() != kSolutionVersion) {
    throw InputError("unsupported solution version in " + what);
  }
  SolutionFile file;
  try {
    file.instance_digest = detail::require(doc, "instance_digest", what).get<std::string>();
    file.algorithm = detail::require(doc, "algorithm", what).get<std::string>();
    if (doc.contains("epsilon")) file.epsilon = doc["epsilon"].get<std::string>();
    file.solution.total_profit = detail::rational_field(doc, "total_profit", what);
    file.solution.feasible = detail::require(doc, "feasible", what).get<bool>();
    const auto& shops = detail::require(doc, "flowshops", what);
    if (!shops.is_array()) throw InputError("\"flowshops\" must be an array in " + what);
    for (const auto& shop : shops) {
      detail::reject_unknown(shop, {"jobs", "makespan"}, what + " flowshop");
      file.solution.per_flowshop.push_back(
          detail::require(shop, "jobs", what).get<std::vector<JobId>>());
      file.solution.per_flowshop_makespan.push_back(
          detail::rational_field(shop, "makespan", what + " flowshop"));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError("bad field type in " + what + ": " + e.what());
  }
  return file;
}

// Independent recheck of a solution against its instance. Returns the list of
// violations; empty means the solution is valid.
inline std::vector<std::string> verify_solution(const Instance& instance,
                                                const SolutionFile& file) {
  std::vector<std::string> problems;
  if (file.instance_digest != instance_digest(instance)) {
    problems.push_back("instance digest mismatch");
  }
  const Solution& s = file.solution;
  if (s.per_flowshop.size() != static_cast<std::size_t>(instance.m)) {
    problems.push_back("expected " + std::to_string(instance.m) + " flowshops, found " +
                       std::to_string(s.per_flowshop.size()));
  }
  const auto index = index_by_id(instance);
  std::set<JobId> used;
  Rational profit = 0;
  bool all_fit = true;
  for (std::size_t j = 0; j < s.per_flowshop.size(); ++j) {
    std::vector<Job> seq;
    for (JobId id : s.per_flowshop[j]) {
      const auto it = index.find(id);
      if (it == index.end()) {
        problems.push_back("unknown job " + std::to_string(id));
        continue;
      }
      if (!used.insert(id).second) {
        problems.push_back("job " + std::to_string(id) + " scheduled twice");
        continue;
      }
      seq.push_back(instance.jobs[it->second]);
      profit += instance.jobs[it->second].p;
    }
    const Rational makespan = simulate_makespan(seq);
    if (makespan > 1) {
      all_fit = false;
      problems.push_back("flowshop " + std::to_string(j) + " has makespan " +
                         format_rational(makespan) + " > 1");
    }
    if (j < s.per_flowshop_makespan.size() && s.per_flowshop_makespan[j] != makespan) {
      problems.push_back("flowshop " + std::to_string(j) + " reports makespan " +
                         format_rational(s.per_flowshop_makespan[j]) + ", actual " +
                         format_rational(makespan));
    }
  }
  if (profit != s.total_profit) {
    problems.push_back("reported profit " + format_rational(s.total_profit) +
                       " differs from recomputed " + format_rational(profit));
  }
  if (s.feasible != all_fit) problems.push_back("feasible flag is wrong");
  return problems;
}

}  // namespace fsp
