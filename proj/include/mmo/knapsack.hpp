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

#ifndef MMO_KNAPSACK_HPP
#define MMO_KNAPSACK_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mmo/core_model.hpp"
#include "mmo/pareto.hpp"

namespace mmo {

inline constexpr int kDefaultGamma = 1000;

/// Smallest integer s with s >= u * gamma in exact arithmetic, or gamma + 1
/// when u is infinite or the item cannot fit regardless.
///
/// The fma residual corrects the case where the rounded product u * gamma
/// lands on an integer below the exact product.
[[nodiscard]] inline std::int64_t scaled_size(double u, int gamma) noexcept {
  const auto oversize = static_cast<std::int64_t>(gamma) + 1;
  if (!std::isfinite(u)) return oversize;
  const double g = static_cast<double>(gamma);
  double c = std::ceil(u * g);
  if (std::fma(u, g, -c) > 0.0) c += 1.0;
  if (c > g) return oversize;
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(c));
}

struct KnapsackItem {
  std::size_t task = 0;  // index into the TaskSet
  std::string id;
  std::int64_t size = 0;
  double value = 0.0;
};

struct KnapsackInstance {
  std::vector<KnapsackItem> items;
  int capacity = kDefaultGamma;
};

struct KnapsackResult {
  double value = 0.0;
  std::vector<std::size_t> chosen;  // positions in instance.items, ascending
};

/// Items are the `remaining` tasks in order: size is the scaled utilization
/// under (b, k), value the reference utilization.
[[nodiscard]] inline KnapsackInstance make_instance(
    const TaskSet& set, std::span<const std::size_t> remaining, int b, int k,
    int gamma) {
  KnapsackInstance inst;
  inst.capacity = gamma;
  inst.items.reserve(remaining.size());
  for (std::size_t i : remaining) {
    const TaskSpec& t = set[i];
    inst.items.push_back(
        {i, t.id, scaled_size(utilization(t, b, k), gamma), t.ref_utilization()});
  }
  return inst;
}

/// 0-1 knapsack by dynamic programming over capacities 0..gamma, followed by
/// backtracking through the table. Inclusion happens only on strict value
/// improvement, so an item is part of the answer exactly when its row differs
/// from the previous one at the current capacity.
[[nodiscard]] inline KnapsackResult solve_knapsack(const KnapsackInstance& inst) {
  if (inst.capacity < 1) throw InvalidInput("knapsack capacity must be >= 1");
  const std::size_t n = inst.items.size();
  const auto width = static_cast<std::size_t>(inst.capacity) + 1;
  std::vector<double> dp((n + 1) * width, 0.0);

  for (std::size_t i = 1; i <= n; ++i) {
    const double* prev = dp.data() + (i - 1) * width;
    double* cur = dp.data() + i * width;
    const KnapsackItem& item = inst.items[i - 1];
    const auto u = static_cast<std::size_t>(
        std::min<std::int64_t>(item.size, static_cast<std::int64_t>(width)));
    std::copy(prev, prev + u, cur);
    for (std::size_t j = u; j < width; ++j) {
      const double with = prev[j - u] + item.value;
      cur[j] = with > prev[j] ? with : prev[j];
    }
  }

  KnapsackResult result;
  result.value = dp[n * width + width - 1];
  std::size_t j = width - 1;
  for (std::size_t i = n; i >= 1; --i) {
    if (dp[i * width + j] != dp[(i - 1) * width + j]) {
      result.chosen.push_back(i - 1);
      j -= static_cast<std::size_t>(inst.items[i - 1].size);
    }
  }
  std::reverse(result.chosen.begin(), result.chosen.end());
  return result;
}

/// Exhaustive reference: best value over all 2^n subsets, ties broken toward
/// the lexicographically smallest sorted id list. Values are summed in item
/// order, the same order the DP accumulates them.
[[nodiscard]] inline KnapsackResult knapsack_oracle(const KnapsackInstance& inst) {
  constexpr std::size_t kMaxItems = 20;
  const std::size_t n = inst.items.size();
  if (n > kMaxItems) {
    throw InvalidInput("knapsack oracle limited to " + std::to_string(kMaxItems) +
                       " items (got " + std::to_string(n) + ")");
  }
  KnapsackResult best;
  std::vector<std::string> best_ids;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    std::int64_t size = 0;
    double value = 0.0;
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint32_t{1} << i)) {
        size += inst.items[i].size;
        value += inst.items[i].value;
        chosen.push_back(i);
      }
    }
    if (size > inst.capacity) continue;
    std::vector<std::string> ids;
    for (std::size_t i : chosen) ids.push_back(inst.items[i].id);
    std::sort(ids.begin(), ids.end());
    if (mask == 0 || value > best.value ||
        (value == best.value && ids < best_ids)) {
      best.value = value;
      best.chosen = std::move(chosen);
      best_ids = std::move(ids);
    }
  }
  return best;
}

/// Inner layer: give the next core b bandwidth and k cache partitions and
/// pack into it the subset of remaining tasks with the largest reference
/// demand that passes the scaled EDF bound. The core may end up empty.
[[nodiscard]] inline PartialSolution allocate_tasks(const TaskSet& set,
                                                    const PartialSolution& w,
                                                    int b, int k, int gamma) {
  if (b < 1 || b > w.remaining_b || k < 1 || k > w.remaining_k) {
    throw InvalidInput("allocate_tasks: (b,k) = (" + std::to_string(b) + "," +
                       std::to_string(k) + ") outside remaining resources");
  }
  if (gamma < 1) throw InvalidInput("gamma must be >= 1");

  const KnapsackInstance inst = make_instance(set, w.remaining, b, k, gamma);
  const KnapsackResult picked = solve_knapsack(inst);

  PartialSolution next;
  next.cores = w.cores;
  CoreAllocation core{{}, b, k};
  std::vector<bool> taken(inst.items.size(), false);
  for (std::size_t pos : picked.chosen) {
    taken[pos] = true;
    core.tasks.push_back(inst.items[pos].task);
  }
  std::sort(core.tasks.begin(), core.tasks.end());
  next.cores.push_back(std::move(core));
  next.remaining.reserve(w.remaining.size() - picked.chosen.size());
  for (std::size_t pos = 0; pos < inst.items.size(); ++pos) {
    if (!taken[pos]) {
      next.remaining.push_back(inst.items[pos].task);
      next.remaining_demand += inst.items[pos].value;
    }
  }
  next.remaining_b = w.remaining_b - b;
  next.remaining_k = w.remaining_k - k;
  return next;
}

}  // namespace mmo

#endif  // MMO_KNAPSACK_HPP
