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

#ifndef MMO_CAMPAIGN_IO_HPP
#define MMO_CAMPAIGN_IO_HPP

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "mmo/evaluate.hpp"
#include "mmo/generator.hpp"
#include "mmo/io.hpp"

namespace mmo::io {

inline constexpr const char* kCampaignFormat = "mmo-campaign/1";

[[nodiscard]] inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Relative file name of one campaign member, e.g. "tasksets/p/N20_U1.5_r007.json".
[[nodiscard]] inline std::string campaign_file(const std::string& pool, std::size_t N,
                                               double U, std::size_t replica) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "N%zu_U%s_r%03zu.json", N,
                mmo::detail::format_number(U).c_str(), replica);
  return "tasksets/" + pool + "/" + buf;
}

/// Manifest describing a generated campaign; lists every task-set file.
[[nodiscard]] inline json campaign_manifest(const CampaignSpec& spec,
                                            const std::vector<CampaignEntry>& entries) {
  json pools = json::array();
  for (const auto& p : spec.pools) {
    json names = json::array();
    for (const auto& prof : p.profiles) names.push_back(prof->name());
    pools.push_back({{"name", p.name},
                     {"fingerprint", hex64(pool_fingerprint(p))},
                     {"profile_dir", "profiles/" + p.name},
                     {"profiles", std::move(names)}});
  }
  json sets = json::array();
  for (const auto& e : entries) {
    const std::string& pool = spec.pools[e.pool].name;
    sets.push_back({{"file", campaign_file(pool, e.N, e.utilization, e.replica)},
                    {"pool", pool},
                    {"N", e.N},
                    {"U", e.utilization},
                    {"replica", e.replica},
                    {"seed", hex64(e.seed)}});
  }
  return {{"format", kCampaignFormat},
          {"seed", spec.seed},
          {"sizes", spec.sizes},
          {"utilizations", spec.utilizations},
          {"per_cell", spec.per_cell},
          {"period_range", {spec.period_min, spec.period_max}},
          {"pools", std::move(pools)},
          {"task_sets", std::move(sets)}};
}

/// Digest over the manifest and every task-set document, in manifest order.
[[nodiscard]] inline std::uint64_t campaign_digest(const CampaignSpec& spec,
                                                   const std::vector<CampaignEntry>& entries) {
  std::uint64_t h = fnv1a(campaign_manifest(spec, entries).dump());
  for (const auto& e : entries) h = fnv1a(task_set_to_json(e.tasks).dump(), h);
  return h;
}

/// Writes manifest.json, profiles/<pool>/*.json and tasksets/<pool>/*.json
/// under `dir`. Returns the manifest path.
inline std::filesystem::path write_campaign(const std::filesystem::path& dir,
                                            const CampaignSpec& spec,
                                            const std::vector<CampaignEntry>& entries) {
  namespace fs = std::filesystem;
  for (const auto& p : spec.pools) {
    fs::create_directories(dir / "profiles" / p.name);
    fs::create_directories(dir / "tasksets" / p.name);
    for (const auto& prof : p.profiles) {
      write_json(dir / "profiles" / p.name / (prof->name() + ".json"), profile_to_json(*prof));
    }
  }
  for (const auto& e : entries) {
    write_json(dir / campaign_file(spec.pools[e.pool].name, e.N, e.utilization, e.replica),
               task_set_to_json(e.tasks));
  }
  const fs::path manifest = dir / "manifest.json";
  write_json(manifest, campaign_manifest(spec, entries));
  return manifest;
}

/// Loads every task set listed in a manifest, resolving profiles through the
/// per-pool profile directories next to it.
[[nodiscard]] inline std::vector<EvalItem> load_campaign(const std::filesystem::path& manifest_path) {
  const json m = read_json(manifest_path);
  const std::string file = manifest_path.string();
  const auto root = manifest_path.parent_path();
  const json& pools = detail::require(m, "pools", file, "");
  std::map<std::string, ProfileMap> profiles;
  for (std::size_t i = 0; i < pools.size(); ++i) {
    const std::string at = "/pools/" + std::to_string(i);
    const std::string name = detail::string(detail::require(pools[i], "name", file, at), file, at + "/name");
    const std::string dir = detail::string(detail::require(pools[i], "profile_dir", file, at), file, at + "/profile_dir");
    profiles[name] = load_profile_dir(root / dir);
  }
  const json& sets = detail::require(m, "task_sets", file, "");
  std::vector<EvalItem> items;
  items.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const std::string at = "/task_sets/" + std::to_string(i);
    const json& s = sets[i];
    EvalItem item;
    item.pool = detail::string(detail::require(s, "pool", file, at), file, at + "/pool");
    item.N = static_cast<std::size_t>(detail::integer(detail::require(s, "N", file, at), file, at + "/N"));
    item.utilization = detail::number(detail::require(s, "U", file, at), file, at + "/U");
    const std::string rel = detail::string(detail::require(s, "file", file, at), file, at + "/file");
    auto pit = profiles.find(item.pool);
    if (pit == profiles.end()) throw JsonError(file, at + "/pool", "unknown pool '" + item.pool + "'");
    item.tasks = load_task_set(root / rel, pit->second);
    items.push_back(std::move(item));
  }
  return items;
}

}  // namespace mmo::io

#endif  // MMO_CAMPAIGN_IO_HPP
