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

#ifndef MMO_ORACLE_HPP
#define MMO_ORACLE_HPP

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mmo/core_model.hpp"
#include "mmo/pareto.hpp"

namespace mmo {

/// Instance too large for exhaustive search without an explicit override.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

struct OracleGuard {
  std::size_t max_tasks = 8;
  int max_cores = 3;
  int max_b = 5;
  int max_k = 5;
};

struct OracleOptions {
  OracleGuard guard;
  bool override_guard = false;
  /// Every core takes at least one partition of each resource, as the ILP
  /// requires. Idle cores then cost (1, 1) each.
  bool ilp_compat = false;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct OracleResult {
  ParetoSet front;
  std::size_t partitions = 0;  // task partitions enumerated
  bool timed_out = false;
};

namespace detail {

/// Pareto-minimal (b, k) cells under which `group` passes the EDF test.
inline std::vector<std::pair<int, int>> minimal_cells(const TaskSet& set,
                                                      std::span<const std::size_t> group,
                                                      const SystemConfig& cfg) {
  std::vector<std::pair<int, int>> ok;
  for (int b = 1; b <= cfg.B; ++b) {
    for (int k = 1; k <= cfg.K; ++k) {
      if (edf_schedulable(set, group, b, k)) ok.emplace_back(b, k);
    }
  }
  std::vector<std::pair<int, int>> minimal;
  for (const auto& c : ok) {
    const bool dominated = std::any_of(ok.begin(), ok.end(), [&](const auto& d) {
      return d != c && d.first <= c.first && d.second <= c.second;
    });
    if (!dominated) minimal.push_back(c);
  }
  return minimal;
}

/// Partial combination of per-core cells: totals plus the chosen cells.
struct Combo {
  int b = 0;
  int k = 0;
  std::vector<std::pair<int, int>> cells;
};

/// Keeps combos not dominated in (b, k); the first of equal totals wins.
inline std::vector<Combo> prune_combos(std::vector<Combo> in) {
  std::vector<Combo> out;
  for (auto& c : in) {
    bool dominated = false;
    for (const auto& o : out) {
      if (o.b <= c.b && o.k <= c.k) {
        dominated = true;
        break;
      }
    }
    if (dominated) continue;
    std::erase_if(out, [&](const Combo& o) { return c.b <= o.b && c.k <= o.k; });
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace detail

/// Exact Pareto front over (used_b, used_k) by exhaustive search: every
/// partition of the tasks into at most M cores (cores are interchangeable, so
/// each partition is visited once in canonical order), combined with every
/// per-core resource choice. Per core only Pareto-minimal feasible cells are
/// kept, which leaves the set of reachable front vectors unchanged.
[[nodiscard]] inline OracleResult oracle_search(const TaskSet& set,
                                                const SystemConfig& cfg,
                                                const OracleOptions& opts = {}) {
  cfg.validate();
  set.check_against(cfg);
  const auto& g = opts.guard;
  if (!opts.override_guard &&
      (set.size() > g.max_tasks || cfg.M > g.max_cores || cfg.B > g.max_b ||
       cfg.K > g.max_k)) {
    throw GuardExceeded("oracle guard: N=" + std::to_string(set.size()) +
                        ", M=" + std::to_string(cfg.M) + ", B=" + std::to_string(cfg.B) +
                        ", K=" + std::to_string(cfg.K) + " exceeds N<=" +
                        std::to_string(g.max_tasks) + ", M<=" +
                        std::to_string(g.max_cores) + ", B<=" + std::to_string(g.max_b) +
                        ", K<=" + std::to_string(g.max_k));
  }

  OracleResult result;
  const std::size_t n = set.size();
  if (n == 0) return result;

  // Restricted growth string: label[i] <= 1 + max(label[0..i-1]).
  std::vector<int> label(n, 0);
  std::vector<int> prefix_max(n, 0);
  while (true) {
    if (opts.deadline && std::chrono::steady_clock::now() >= *opts.deadline) {
      result.timed_out = true;
      return result;
    }
    const int groups = prefix_max[n - 1] + 1;
    if (groups <= cfg.M) {
      ++result.partitions;
      std::vector<std::vector<std::size_t>> members(groups);
      for (std::size_t i = 0; i < n; ++i) members[label[i]].push_back(i);

      std::vector<detail::Combo> combos(1);
      if (opts.ilp_compat) {
        const int idle = cfg.M - groups;
        combos[0].b = idle;
        combos[0].k = idle;
      }
      for (int c = 0; c < groups && !combos.empty(); ++c) {
        const auto cells = detail::minimal_cells(set, members[c], cfg);
        std::vector<detail::Combo> grown;
        for (const auto& combo : combos) {
          for (const auto& cell : cells) {
            detail::Combo next = combo;
            next.b += cell.first;
            next.k += cell.second;
            if (next.b > cfg.B || next.k > cfg.K) continue;
            next.cells.push_back(cell);
            grown.push_back(std::move(next));
          }
        }
        combos = detail::prune_combos(std::move(grown));
      }
      for (const auto& combo : combos) {
        std::vector<CoreAllocation> cores;
        for (int c = 0; c < groups; ++c) {
          cores.push_back({members[c], combo.cells[c].first, combo.cells[c].second});
        }
        if (opts.ilp_compat) {
          for (int c = groups; c < cfg.M; ++c) cores.push_back({{}, 1, 1});
        }
        result.front.insert(CompleteSolution::from_cores(std::move(cores)));
      }
    }

    // Advance to the next restricted growth string.
    std::size_t i = n - 1;
    while (i > 0) {
      const int limit = std::min(prefix_max[i - 1] + 1, cfg.M - 1);
      if (label[i] < limit) break;
      --i;
    }
    if (i == 0) break;
    ++label[i];
    prefix_max[i] = std::max(prefix_max[i - 1], label[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      label[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
  return result;
}

[[nodiscard]] inline ParetoSet oracle_solve(const TaskSet& set, const SystemConfig& cfg,
                                            const OracleOptions& opts = {}) {
  return oracle_search(set, cfg, opts).front;
}

}  // namespace mmo

#endif  // MMO_ORACLE_HPP
