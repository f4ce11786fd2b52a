// Copyright 2026 The mmo Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON readers and writers for profiles, task sets, configs and solutions.

#ifndef MMO_IO_HPP
#define MMO_IO_HPP

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmo/core_model.hpp"
#include "mmo/ilp.hpp"
#include "mmo/pareto.hpp"

namespace mmo::io {

using json = nlohmann::json;

/// Input file problem, reported with the file and the JSON pointer involved.
class JsonError : public InvalidInput {
 public:
  JsonError(const std::string& file, const std::string& pointer, const std::string& what)
      : InvalidInput(file + ": " + (pointer.empty() ? "/" : pointer) + ": " + what) {}
};

namespace detail {

inline const json& require(const json& j, const char* key, const std::string& file,
                           const std::string& at) {
  if (!j.is_object()) throw JsonError(file, at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw JsonError(file, at + "/" + key, "missing field");
  return *it;
}

inline double number(const json& j, const std::string& file, const std::string& at) {
  if (!j.is_number()) throw JsonError(file, at, "expected a number");
  return j.get<double>();
}

inline int integer(const json& j, const std::string& file, const std::string& at) {
  if (!j.is_number_integer()) throw JsonError(file, at, "expected an integer");
  return j.get<int>();
}

inline std::string string(const json& j, const std::string& file, const std::string& at) {
  if (!j.is_string()) throw JsonError(file, at, "expected a string");
  return j.get<std::string>();
}

}  // namespace detail

[[nodiscard]] inline json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw JsonError(path.string(), "", std::string("malformed JSON: ") + e.what());
  }
}

inline void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << "\n";
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

// --- profiles -------------------------------------------------------------

[[nodiscard]] inline ProfilePtr profile_from_json(const json& j, const std::string& file) {
  using namespace detail;
  const std::string name = string(require(j, "name", file, ""), file, "/name");
  const int B = integer(require(j, "B", file, ""), file, "/B");
  const int K = integer(require(j, "K", file, ""), file, "/K");
  const json& grid = require(j, "grid", file, "");
  if (B < 1 || K < 1) throw JsonError(file, "", "B and K must be >= 1");
  if (!grid.is_array() || grid.size() != static_cast<std::size_t>(B)) {
    throw JsonError(file, "/grid", "expected " + std::to_string(B) + " rows");
  }
  std::vector<double> cells;
  cells.reserve(static_cast<std::size_t>(B) * K);
  for (int b = 0; b < B; ++b) {
    const std::string row_at = "/grid/" + std::to_string(b);
    const json& row = grid[b];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(K)) {
      throw JsonError(file, row_at, "expected " + std::to_string(K) + " entries");
    }
    for (int k = 0; k < K; ++k) {
      const json& v = row[k];
      const std::string at = row_at + "/" + std::to_string(k);
      if (v.is_null()) {
        cells.push_back(kInfiniteUtilization);
      } else {
        const double s = number(v, file, at);
        if (!(s > 0.0)) throw JsonError(file, at, "slowdown must be > 0");
        cells.push_back(s);
      }
    }
  }
  try {
    return std::make_shared<const SlowdownProfile>(name, B, K, std::move(cells));
  } catch (const InvalidInput& e) {
    throw JsonError(file, "/grid", e.what());
  }
}

[[nodiscard]] inline json profile_to_json(const SlowdownProfile& p) {
  json grid = json::array();
  for (int b = 1; b <= p.B(); ++b) {
    json row = json::array();
    for (int k = 1; k <= p.K(); ++k) {
      const double v = p.raw_at(b, k);
      row.push_back(std::isfinite(v) ? json(v) : json(nullptr));
    }
    grid.push_back(std::move(row));
  }
  return {{"name", p.name()}, {"B", p.B()}, {"K", p.K()}, {"grid", std::move(grid)}};
}

[[nodiscard]] inline ProfilePtr load_profile(const std::filesystem::path& path) {
  return profile_from_json(read_json(path), path.string());
}

using ProfileMap = std::map<std::string, ProfilePtr>;

/// Every *.json file in `dir`, keyed by profile name (sorted by file name).
[[nodiscard]] inline ProfileMap load_profile_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw InvalidInput("profile directory '" + dir.string() + "' does not exist");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  ProfileMap out;
  for (const auto& f : files) {
    ProfilePtr p = load_profile(f);
    const std::string name = p->name();
    if (!out.emplace(name, std::move(p)).second) {
      throw JsonError(f.string(), "/name", "duplicate profile name '" + name + "'");
    }
  }
  return out;
}

// --- task sets ------------------------------------------------------------

[[nodiscard]] inline TaskSet task_set_from_json(const json& j, const ProfileMap& profiles,
                                                const std::string& file) {
  using namespace detail;
  const json& arr = require(j, "tasks", file, "");
  if (!arr.is_array()) throw JsonError(file, "/tasks", "expected an array");
  std::vector<TaskSpec> tasks;
  tasks.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = "/tasks/" + std::to_string(i);
    const json& t = arr[i];
    TaskSpec spec;
    spec.id = string(require(t, "id", file, at), file, at + "/id");
    spec.period = number(require(t, "period", file, at), file, at + "/period");
    spec.ref_wcet = number(require(t, "ref_wcet", file, at), file, at + "/ref_wcet");
    const std::string pname = string(require(t, "profile", file, at), file, at + "/profile");
    auto it = profiles.find(pname);
    if (it == profiles.end()) {
      throw JsonError(file, at + "/profile", "unknown profile '" + pname + "'");
    }
    spec.profile = it->second;
    try {
      spec.validate();
    } catch (const InvalidInput& e) {
      throw JsonError(file, at, e.what());
    }
    tasks.push_back(std::move(spec));
  }
  try {
    return TaskSet(std::move(tasks));
  } catch (const InvalidInput& e) {
    throw JsonError(file, "/tasks", e.what());
  }
}

[[nodiscard]] inline json task_set_to_json(const TaskSet& set) {
  json arr = json::array();
  for (const auto& t : set) {
    arr.push_back({{"id", t.id},
                   {"period", t.period},
                   {"ref_wcet", t.ref_wcet},
                   {"profile", t.profile->name()}});
  }
  return {{"tasks", std::move(arr)}};
}

[[nodiscard]] inline TaskSet load_task_set(const std::filesystem::path& path,
                                           const ProfileMap& profiles) {
  return task_set_from_json(read_json(path), profiles, path.string());
}

// --- system config --------------------------------------------------------

[[nodiscard]] inline SystemConfig config_from_json(const json& j, const std::string& file) {
  SystemConfig cfg;
  if (!j.is_object()) throw JsonError(file, "", "expected an object");
  if (j.contains("M")) cfg.M = detail::integer(j["M"], file, "/M");
  if (j.contains("B")) cfg.B = detail::integer(j["B"], file, "/B");
  if (j.contains("K")) cfg.K = detail::integer(j["K"], file, "/K");
  try {
    cfg.validate();
  } catch (const InvalidInput& e) {
    throw JsonError(file, "", e.what());
  }
  return cfg;
}

[[nodiscard]] inline json config_to_json(const SystemConfig& cfg) {
  return {{"M", cfg.M}, {"B", cfg.B}, {"K", cfg.K}};
}

// --- solutions ------------------------------------------------------------

[[nodiscard]] inline json solution_to_json(const CompleteSolution& s, const TaskSet& set) {
  json cores = json::array();
  for (const auto& c : s.cores) {
    json ids = json::array();
    for (std::size_t t : c.tasks) ids.push_back(set[t].id);
    cores.push_back({{"tasks", std::move(ids)}, {"b", c.b}, {"k", c.k}});
  }
  return {{"cores", std::move(cores)}, {"used_b", s.used_b}, {"used_k", s.used_k}};
}

/// Unknown task ids raise StructuralError; a solution whose used_b/used_k
/// disagree with its cores is malformed.
[[nodiscard]] inline CompleteSolution solution_from_json(const json& j, const TaskSet& set,
                                                         const std::string& file,
                                                         const std::string& at = "") {
  using namespace detail;
  const json& cores = require(j, "cores", file, at);
  if (!cores.is_array()) throw JsonError(file, at + "/cores", "expected an array");
  std::vector<CoreAllocation> out;
  for (std::size_t c = 0; c < cores.size(); ++c) {
    const std::string cat = at + "/cores/" + std::to_string(c);
    const json& core = cores[c];
    CoreAllocation alloc;
    alloc.b = integer(require(core, "b", file, cat), file, cat + "/b");
    alloc.k = integer(require(core, "k", file, cat), file, cat + "/k");
    const json& ids = require(core, "tasks", file, cat);
    if (!ids.is_array()) throw JsonError(file, cat + "/tasks", "expected an array");
    for (std::size_t t = 0; t < ids.size(); ++t) {
      const std::string id = string(ids[t], file, cat + "/tasks/" + std::to_string(t));
      const std::size_t idx = set.find(id);
      if (idx == set.size()) {
        throw StructuralError(file + ": " + cat + "/tasks/" + std::to_string(t) +
                              ": unknown task id '" + id + "'");
      }
      alloc.tasks.push_back(idx);
    }
    out.push_back(std::move(alloc));
  }
  CompleteSolution s = CompleteSolution::from_cores(std::move(out));
  if (j.contains("used_b") && integer(j["used_b"], file, at + "/used_b") != s.used_b) {
    throw JsonError(file, at + "/used_b", "does not match the sum of core b values");
  }
  if (j.contains("used_k") && integer(j["used_k"], file, at + "/used_k") != s.used_k) {
    throw JsonError(file, at + "/used_k", "does not match the sum of core k values");
  }
  return s;
}

/// Front document: the members sorted by (used_b, used_k).
[[nodiscard]] inline json front_to_json(const ParetoSet& front, const TaskSet& set) {
  json arr = json::array();
  for (const auto& s : front.sorted()) arr.push_back(solution_to_json(s, set));
  return arr;
}

[[nodiscard]] inline json verdict_to_json(const Verdict& v) {
  json arr = json::array();
  for (const auto& viol : v.violations) {
    json item{{"constraint", std::string(row_label(viol.kind))}, {"message", viol.message}};
    if (viol.core) item["core"] = viol.core;
    if (viol.task) item["task"] = viol.task;
    arr.push_back(std::move(item));
  }
  return {{"ok", v.ok()}, {"violations", std::move(arr)}};
}

}  // namespace mmo::io

#endif  // MMO_IO_HPP
