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

#ifndef MMO_SEARCH_HPP
#define MMO_SEARCH_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <optional>
#include <thread>
#include <vector>

#include "mmo/core_model.hpp"
#include "mmo/knapsack.hpp"
#include "mmo/pareto.hpp"

namespace mmo {

/// Capacity bound. Returns false when the remaining tasks, each given all
/// remaining resources, already need more than the M - depth cores left. Only
/// sound for monotone profiles, which SlowdownProfile guarantees.
[[nodiscard]] inline bool feasible_lower_bound(const TaskSet& set,
                                               const PartialSolution& w,
                                               int depth,
                                               const SystemConfig& cfg) {
  double demand = 0.0;
  for (std::size_t i : w.remaining) {
    demand += utilization(set[i], w.remaining_b, w.remaining_k);
  }
  return !(demand > static_cast<double>(cfg.M - depth));
}

struct MmoOptions {
  int gamma = kDefaultGamma;
  unsigned threads = 1;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct MmoStats {
  std::vector<std::size_t> live_after_iteration;
  std::size_t max_live = 0;  // largest live set seen after any pruning pass
  std::size_t allocations = 0;  // inner-layer invocations
  std::size_t front_pruned = 0;
  std::size_t bound_pruned = 0;
};

struct MmoResult {
  ParetoSet front;
  MmoStats stats;
  bool timed_out = false;
};

namespace detail {

struct Candidate {
  std::size_t parent;
  int b;
  int k;
};

[[nodiscard]] inline CompleteSolution to_complete(PartialSolution&& w) {
  return CompleteSolution::from_cores(std::move(w.cores));
}

/// Runs `fn(i)` for i in [0, n) on up to `threads` workers.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  const unsigned workers = std::min<std::size_t>(threads, n);
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        fn(i);
      }
    });
  }
}

}  // namespace detail

/// Outer layer: breadth-first, core-by-core search over (b, k) allocations
/// with the inner knapsack assigning tasks. Candidates are pruned against the
/// complete front, by the capacity bound and by partial dominance.
///
/// With threads > 1 the inner-layer calls of one iteration are evaluated
/// speculatively in parallel, then merged in the serial (parent, b, k) order
/// with the front check repeated at merge time, so the front equals the
/// serial one.
[[nodiscard]] inline MmoResult mmo_search(const TaskSet& set,
                                          const SystemConfig& cfg,
                                          const MmoOptions& opts = {}) {
  cfg.validate();
  set.check_against(cfg);
  if (opts.gamma < 1) throw InvalidInput("gamma must be >= 1");

  MmoResult result;
  if (set.empty()) return result;

  constexpr std::size_t kBatch = 4096;
  std::vector<PartialSolution> live{PartialSolution::initial(set, cfg)};
  const unsigned threads = std::max(1u, opts.threads);

  auto expired = [&] {
    return opts.deadline && std::chrono::steady_clock::now() >= *opts.deadline;
  };

  for (int m = 1; m <= cfg.M && !live.empty(); ++m) {
    PartialFront next;
    auto absorb = [&](PartialSolution&& w) {
      ++result.stats.allocations;
      if (w.complete()) {
        result.front.insert(detail::to_complete(std::move(w)));
      } else if (feasible_lower_bound(set, w, m, cfg)) {
        next.insert(std::move(w));
        result.stats.max_live = std::max(result.stats.max_live, next.size());
      } else {
        ++result.stats.bound_pruned;
      }
    };

    if (threads == 1) {
      for (const PartialSolution& w : live) {
        for (int b = 1; b <= w.remaining_b; ++b) {
          for (int k = 1; k <= w.remaining_k; ++k) {
            if (expired()) {
              result.timed_out = true;
              return result;
            }
            if (!not_dominated_by_complete(w.remaining_b - b, w.remaining_k - k,
                                           result.front, cfg)) {
              ++result.stats.front_pruned;
              continue;
            }
            absorb(allocate_tasks(set, w, b, k, opts.gamma));
          }
        }
      }
    } else {
      std::vector<detail::Candidate> batch;
      std::vector<std::optional<PartialSolution>> out;
      auto flush = [&] {
        const ParetoSet snapshot = result.front;
        out.assign(batch.size(), std::nullopt);
        detail::parallel_for(batch.size(), threads, [&](std::size_t i) {
          const auto& c = batch[i];
          const PartialSolution& w = live[c.parent];
          if (not_dominated_by_complete(w.remaining_b - c.b,
                                        w.remaining_k - c.k, snapshot, cfg)) {
            out[i] = allocate_tasks(set, w, c.b, c.k, opts.gamma);
          }
        });
        for (std::size_t i = 0; i < batch.size(); ++i) {
          const auto& c = batch[i];
          const PartialSolution& w = live[c.parent];
          if (!out[i] || !not_dominated_by_complete(w.remaining_b - c.b,
                                                    w.remaining_k - c.k,
                                                    result.front, cfg)) {
            ++result.stats.front_pruned;
            continue;
          }
          absorb(std::move(*out[i]));
        }
        batch.clear();
      };
      for (std::size_t p = 0; p < live.size(); ++p) {
        for (int b = 1; b <= live[p].remaining_b; ++b) {
          for (int k = 1; k <= live[p].remaining_k; ++k) {
            batch.push_back({p, b, k});
            if (batch.size() == kBatch) {
              if (expired()) {
                result.timed_out = true;
                return result;
              }
              flush();
            }
          }
        }
      }
      if (expired()) {
        result.timed_out = true;
        return result;
      }
      flush();
    }

    result.stats.live_after_iteration.push_back(next.size());
    live = std::move(next).release();
  }
  return result;
}

/// Front-only convenience wrapper over mmo_search.
[[nodiscard]] inline ParetoSet mmo_solve(const TaskSet& set,
                                         const SystemConfig& cfg,
                                         int gamma = kDefaultGamma) {
  MmoOptions opts;
  opts.gamma = gamma;
  return mmo_search(set, cfg, opts).front;
}

}  // namespace mmo

#endif  // MMO_SEARCH_HPP
