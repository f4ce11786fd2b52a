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

#ifndef MMO_CORE_MODEL_HPP
#define MMO_CORE_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace mmo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (profiles, task sets, solutions).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Utilization sentinel for a task that cannot run under a given allocation.
inline constexpr double kInfiniteUtilization =
    std::numeric_limits<double>::infinity();

/// Platform shape: M cores sharing B bandwidth and K cache partitions.
struct SystemConfig {
  int M = 4;
  int B = 15;
  int K = 16;

  void validate() const {
    if (M < 1 || B < 1 || K < 1) {
      throw InvalidInput("system config requires M, B, K >= 1 (got M=" +
                         std::to_string(M) + ", B=" + std::to_string(B) +
                         ", K=" + std::to_string(K) + ")");
    }
  }

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

/// Slowdown factors of one benchmark over every (b, k) allocation, relative
/// to its execution with all B bandwidth and K cache partitions.
///
/// Unavailable measurements are stored as +inf. The effective grid is the
/// monotone closure of the raw grid: each cell is raised to at least the value
/// of every cell with more resources, so slowdown never increases with b or k.
class SlowdownProfile {
 public:
  /// `raw` is row-major with b as the row index: raw[(b-1)*K + (k-1)].
  SlowdownProfile(std::string name, int B, int K, std::vector<double> raw)
      : name_(std::move(name)), B_(B), K_(K), raw_(std::move(raw)) {
    if (B_ < 1 || K_ < 1) {
      throw InvalidInput("profile '" + name_ + "': B and K must be >= 1");
    }
    if (raw_.size() != static_cast<std::size_t>(B_) * K_) {
      throw InvalidInput("profile '" + name_ + "': grid has " +
                         std::to_string(raw_.size()) + " cells, expected " +
                         std::to_string(B_ * K_));
    }
    for (double v : raw_) {
      if (std::isnan(v) || v <= 0.0) {
        throw InvalidInput("profile '" + name_ +
                           "': slowdown entries must be > 0 (inf marks unavailable)");
      }
    }
    if (raw_.back() != 1.0) {
      throw InvalidInput("profile '" + name_ +
                         "': slowdown at full resources (B,K) must be 1.0");
    }
    normalize();
  }

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] int B() const noexcept { return B_; }
  [[nodiscard]] int K() const noexcept { return K_; }

  /// Effective (monotone) slowdown; +inf when unavailable.
  [[nodiscard]] double at(int b, int k) const {
    check_cell(b, k);
    return grid_[index(b, k)];
  }

  /// Measured slowdown before normalization; +inf when unavailable.
  [[nodiscard]] double raw_at(int b, int k) const {
    check_cell(b, k);
    return raw_[index(b, k)];
  }

  [[nodiscard]] bool available(int b, int k) const {
    return std::isfinite(at(b, k));
  }

  [[nodiscard]] std::span<const double> raw_grid() const noexcept {
    return raw_;
  }

  /// Number of available cells the monotone closure had to raise.
  [[nodiscard]] std::size_t normalized_cells() const noexcept {
    return altered_;
  }

  /// Share of cells changed by normalization; profiles above 1% are flagged
  /// by the loaders.
  [[nodiscard]] double normalized_fraction() const noexcept {
    return static_cast<double>(altered_) / static_cast<double>(grid_.size());
  }

 private:
  [[nodiscard]] std::size_t index(int b, int k) const noexcept {
    return static_cast<std::size_t>(b - 1) * K_ + static_cast<std::size_t>(k - 1);
  }

  void check_cell(int b, int k) const {
    if (b < 1 || b > B_ || k < 1 || k > K_) {
      throw std::out_of_range("profile '" + name_ + "': cell (" +
                              std::to_string(b) + "," + std::to_string(k) +
                              ") outside 1.." + std::to_string(B_) + " x 1.." +
                              std::to_string(K_));
    }
  }

  void normalize() {
    grid_ = raw_;
    for (int b = B_; b >= 1; --b) {
      for (int k = K_; k >= 1; --k) {
        double& cell = grid_[index(b, k)];
        if (b < B_) cell = std::max(cell, grid_[index(b + 1, k)]);
        if (k < K_) cell = std::max(cell, grid_[index(b, k + 1)]);
      }
    }
    altered_ = 0;
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      if (grid_[i] != raw_[i]) ++altered_;
    }
  }

  std::string name_;
  int B_;
  int K_;
  std::vector<double> raw_;
  std::vector<double> grid_;
  std::size_t altered_ = 0;
};

using ProfilePtr = std::shared_ptr<const SlowdownProfile>;

/// A sporadic task with implicit deadline: period T, reference WCET C^ at
/// full resources, and the slowdown profile scaling C^ under (b, k).
struct TaskSpec {
  std::string id;
  double period = 0.0;
  double ref_wcet = 0.0;
  ProfilePtr profile;

  [[nodiscard]] double ref_utilization() const noexcept {
    return ref_wcet / period;
  }

  void validate() const {
    if (!(period > 0.0) || !std::isfinite(period)) {
      throw InvalidInput("task '" + id + "': period must be positive");
    }
    if (!(ref_wcet > 0.0) || !std::isfinite(ref_wcet)) {
      throw InvalidInput("task '" + id + "': ref_wcet must be positive");
    }
    if (ref_utilization() > 1.0) {
      throw InvalidInput("task '" + id +
                         "': reference utilization exceeds 1");
    }
    if (!profile) {
      throw InvalidInput("task '" + id + "': missing slowdown profile");
    }
  }
};

/// Utilization of `task` with b bandwidth and k cache partitions:
/// (C^ * slowdown(b, k)) / T, or kInfiniteUtilization when the profile has no
/// measurement for (b, k) or either resource count is zero.
[[nodiscard]] inline double utilization(const TaskSpec& task, int b, int k) {
  if (b < 1 || k < 1) return kInfiniteUtilization;
  const double s = task.profile->at(b, k);
  if (!std::isfinite(s)) return kInfiniteUtilization;
  return (task.ref_wcet * s) / task.period;
}

/// Ordered task collection. Order is significant: the knapsack DP and every
/// tie-break follow it.
class TaskSet {
 public:
  TaskSet() = default;
  explicit TaskSet(std::vector<TaskSpec> tasks) : tasks_(std::move(tasks)) {
    std::unordered_set<std::string> seen;
    for (const auto& t : tasks_) {
      t.validate();
      if (!seen.insert(t.id).second) {
        throw InvalidInput("duplicate task id '" + t.id + "'");
      }
    }
  }

  [[nodiscard]] std::size_t size() const noexcept { return tasks_.size(); }
  [[nodiscard]] bool empty() const noexcept { return tasks_.empty(); }
  [[nodiscard]] const TaskSpec& operator[](std::size_t i) const {
    return tasks_[i];
  }
  [[nodiscard]] const std::vector<TaskSpec>& tasks() const noexcept {
    return tasks_;
  }
  [[nodiscard]] auto begin() const noexcept { return tasks_.begin(); }
  [[nodiscard]] auto end() const noexcept { return tasks_.end(); }

  [[nodiscard]] double total_ref_utilization() const noexcept {
    double sum = 0.0;
    for (const auto& t : tasks_) sum += t.ref_utilization();
    return sum;
  }

  /// Index of the task with the given id, or size() when absent.
  [[nodiscard]] std::size_t find(const std::string& id) const noexcept {
    for (std::size_t i = 0; i < tasks_.size(); ++i) {
      if (tasks_[i].id == id) return i;
    }
    return tasks_.size();
  }

  /// Every profile must span exactly the configured B x K grid.
  void check_against(const SystemConfig& cfg) const {
    cfg.validate();
    for (const auto& t : tasks_) {
      if (t.profile->B() != cfg.B || t.profile->K() != cfg.K) {
        throw InvalidInput("task '" + t.id + "': profile '" +
                           t.profile->name() + "' is " +
                           std::to_string(t.profile->B()) + "x" +
                           std::to_string(t.profile->K()) +
                           " but the system has B=" + std::to_string(cfg.B) +
                           ", K=" + std::to_string(cfg.K));
      }
    }
  }

 private:
  std::vector<TaskSpec> tasks_;
};

/// EDF utilization test on one core: sum of utilizations <= 1, no epsilon.
[[nodiscard]] inline bool edf_schedulable(std::span<const TaskSpec* const> tasks,
                                          int b, int k) {
  double sum = 0.0;
  for (const TaskSpec* t : tasks) sum += utilization(*t, b, k);
  return sum <= 1.0;
}

/// Same test over a subset of a task set given by indices.
[[nodiscard]] inline bool edf_schedulable(const TaskSet& set,
                                          std::span<const std::size_t> subset,
                                          int b, int k) {
  double sum = 0.0;
  for (std::size_t i : subset) sum += utilization(set[i], b, k);
  return sum <= 1.0;
}

}  // namespace mmo

#endif  // MMO_CORE_MODEL_HPP
