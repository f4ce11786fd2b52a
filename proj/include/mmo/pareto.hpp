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

#ifndef MMO_PARETO_HPP
#define MMO_PARETO_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "mmo/core_model.hpp"

namespace mmo {

/// Resources and tasks placed on one core.
struct CoreAllocation {
  std::vector<std::size_t> tasks;  // indices into the TaskSet, ascending
  int b = 0;
  int k = 0;

  friend bool operator==(const CoreAllocation&, const CoreAllocation&) = default;
};

/// Allocation prefix over the first cores plus what is still unassigned.
struct PartialSolution {
  std::vector<CoreAllocation> cores;
  std::vector<std::size_t> remaining;  // unassigned task indices, set order
  int remaining_b = 0;
  int remaining_k = 0;
  double remaining_demand = 0.0;  // sum of reference utilizations of `remaining`

  /// The root of the search: nothing allocated, everything remaining.
  static PartialSolution initial(const TaskSet& set, const SystemConfig& cfg) {
    PartialSolution w;
    w.remaining.resize(set.size());
    std::iota(w.remaining.begin(), w.remaining.end(), std::size_t{0});
    w.remaining_b = cfg.B;
    w.remaining_k = cfg.K;
    for (const auto& t : set) w.remaining_demand += t.ref_utilization();
    return w;
  }

  [[nodiscard]] bool complete() const noexcept { return remaining.empty(); }
};

/// A full allocation: every task placed, objectives are total partitions used.
struct CompleteSolution {
  std::vector<CoreAllocation> cores;
  int used_b = 0;
  int used_k = 0;

  static CompleteSolution from_cores(std::vector<CoreAllocation> cores) {
    CompleteSolution s;
    s.cores = std::move(cores);
    for (const auto& c : s.cores) {
      s.used_b += c.b;
      s.used_k += c.k;
    }
    return s;
  }

  [[nodiscard]] std::pair<int, int> objectives() const noexcept {
    return {used_b, used_k};
  }
};

/// Front check. A candidate with remaining resources (rem_b, rem_k)
/// survives iff, against every complete solution, it keeps strictly more of
/// at least one resource. Equality in both is dominated.
template <typename Front>
[[nodiscard]] bool not_dominated_by_complete(int rem_b, int rem_k,
                                             const Front& front,
                                             const SystemConfig& cfg) {
  for (const CompleteSolution& s : front) {
    const int sb = cfg.B - s.used_b;
    const int sk = cfg.K - s.used_k;
    if (!(rem_b > sb || rem_k > sk)) return false;
  }
  return true;
}

[[nodiscard]] inline bool complete_dominates(const CompleteSolution& a,
                                             const CompleteSolution& b) noexcept {
  return a.used_b <= b.used_b && a.used_k <= b.used_k &&
         (a.used_b < b.used_b || a.used_k < b.used_k);
}

/// Mutually non-dominated complete solutions, one per objective vector.
/// The first solution inserted with a given vector is kept.
class ParetoSet {
 public:
  /// Returns true when `s` became a member.
  bool insert(CompleteSolution s) {
    for (const auto& m : members_) {
      if (complete_dominates(m, s) || m.objectives() == s.objectives()) {
        return false;
      }
    }
    std::erase_if(members_, [&](const CompleteSolution& m) {
      return complete_dominates(s, m);
    });
    members_.push_back(std::move(s));
    return true;
  }

  [[nodiscard]] const std::vector<CompleteSolution>& members() const noexcept {
    return members_;
  }
  [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
  [[nodiscard]] bool empty() const noexcept { return members_.empty(); }
  [[nodiscard]] auto begin() const noexcept { return members_.begin(); }
  [[nodiscard]] auto end() const noexcept { return members_.end(); }

  /// Objective vectors sorted by (used_b, used_k).
  [[nodiscard]] std::vector<std::pair<int, int>> objective_vectors() const {
    std::vector<std::pair<int, int>> v;
    v.reserve(members_.size());
    for (const auto& m : members_) v.push_back(m.objectives());
    std::sort(v.begin(), v.end());
    return v;
  }

  /// Members ordered by ascending used_b, then used_k.
  [[nodiscard]] std::vector<CompleteSolution> sorted() const {
    auto v = members_;
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
      return a.objectives() < b.objectives();
    });
    return v;
  }

 private:
  std::vector<CompleteSolution> members_;
};

/// Merges `s` into `front` (PruneCompleteSols).
inline ParetoSet insert_complete(ParetoSet front, CompleteSolution s) {
  front.insert(std::move(s));
  return front;
}

/// Remaining demands this close (relative) are treated as equal.
inline constexpr double kDemandRelTolerance = 1e-12;

[[nodiscard]] inline bool demand_less(double a, double b) noexcept {
  const double scale = std::max(std::abs(a), std::abs(b));
  return a < b - kDemandRelTolerance * scale;
}

/// Partial dominance: w1 survives w2 iff it keeps more bandwidth, more cache,
/// or strictly less remaining reference demand.
[[nodiscard]] inline bool partial_not_dominated(const PartialSolution& w1,
                                                const PartialSolution& w2) noexcept {
  return w1.remaining_b > w2.remaining_b || w1.remaining_k > w2.remaining_k ||
         demand_less(w1.remaining_demand, w2.remaining_demand);
}

/// Incremental form of prune_partials. Holds the live partials of one search
/// depth; every insertion leaves the set mutually non-dominated, with exact
/// ties resolved in favour of the earlier member.
class PartialFront {
 public:
  /// Returns true when `w` was kept.
  bool insert(PartialSolution w) {
    for (const auto& m : members_) {
      if (!partial_not_dominated(w, m)) return false;
    }
    std::erase_if(members_, [&](const PartialSolution& m) {
      return !partial_not_dominated(m, w);
    });
    members_.push_back(std::move(w));
    return true;
  }

  [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
  [[nodiscard]] bool empty() const noexcept { return members_.empty(); }
  [[nodiscard]] const std::vector<PartialSolution>& members() const noexcept {
    return members_;
  }
  [[nodiscard]] std::vector<PartialSolution> release() && {
    return std::move(members_);
  }

 private:
  std::vector<PartialSolution> members_;
};

/// Batch form of PartialFront over a list in generation order.
[[nodiscard]] inline std::vector<PartialSolution> prune_partials(
    std::vector<PartialSolution> partials) {
  PartialFront front;
  for (auto& w : partials) front.insert(std::move(w));
  return std::move(front).release();
}

/// Area dominated by a minimization front inside the box bounded by
/// `ref` = (ref_b, ref_k). Points outside the box contribute nothing.
[[nodiscard]] inline double hypervolume(std::vector<std::pair<int, int>> points,
                                        std::pair<int, int> ref) {
  std::sort(points.begin(), points.end());
  double area = 0.0;
  int best_k = ref.second;
  for (const auto& [b, k] : points) {
    if (b >= ref.first || k >= best_k) continue;
    area += static_cast<double>(ref.first - b) * (best_k - k);
    best_k = k;
  }
  return area;
}

}  // namespace mmo

#endif  // MMO_PARETO_HPP
