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

#ifndef MMO_EVALUATE_HPP
#define MMO_EVALUATE_HPP

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "mmo/core_model.hpp"
#include "mmo/ilp.hpp"
#include "mmo/oracle.hpp"
#include "mmo/search.hpp"

namespace mmo {

enum class Algorithm { kMmo, kOracle };

[[nodiscard]] inline std::string algorithm_name(Algorithm a) {
  return a == Algorithm::kMmo ? "MMO" : "ORACLE";
}

enum class SetStatus { kSchedulable, kUnschedulable, kTimeout, kSkipped };

[[nodiscard]] inline std::string status_name(SetStatus s) {
  switch (s) {
    case SetStatus::kSchedulable: return "schedulable";
    case SetStatus::kUnschedulable: return "unschedulable";
    case SetStatus::kTimeout: return "timeout";
    case SetStatus::kSkipped: return "skipped";
  }
  return "?";
}

/// One task set of a campaign together with the cell it belongs to.
struct EvalItem {
  std::string pool;
  std::size_t N = 0;
  double utilization = 0.0;
  TaskSet tasks;
};

struct SetOutcome {
  Algorithm algorithm;
  std::size_t item = 0;
  SetStatus status = SetStatus::kUnschedulable;
  int min_b = 0;  // smallest used_b on the front, B when not schedulable
  int min_k = 0;
  std::size_t front_size = 0;
  double seconds = 0.0;
};

struct CellKey {
  Algorithm algorithm;
  std::string pool;
  std::size_t N;
  double utilization;

  friend bool operator<(const CellKey& a, const CellKey& b) {
    return std::tie(a.algorithm, a.pool, a.N, a.utilization) <
           std::tie(b.algorithm, b.pool, b.N, b.utilization);
  }
};

struct CellMetrics {
  std::size_t sets = 0;  // evaluated, skipped ones excluded
  std::size_t schedulable = 0;
  std::size_t timeouts = 0;
  std::size_t skipped = 0;
  double sum_min_b = 0.0;
  double sum_min_k = 0.0;
  std::map<std::size_t, std::size_t> front_sizes;  // schedulable sets only
  double sum_seconds = 0.0;
  double min_seconds = std::numeric_limits<double>::infinity();
  double max_seconds = 0.0;

  [[nodiscard]] double ratio() const {
    return sets ? 100.0 * static_cast<double>(schedulable) / sets : 0.0;
  }
  [[nodiscard]] double mean_min_b() const { return sets ? sum_min_b / sets : 0.0; }
  [[nodiscard]] double mean_min_k() const { return sets ? sum_min_k / sets : 0.0; }
  [[nodiscard]] double mean_seconds() const { return sets ? sum_seconds / sets : 0.0; }
};

struct MetricsTable {
  std::map<CellKey, CellMetrics> cells;
  std::vector<SetOutcome> outcomes;
};

struct EvalOptions {
  std::vector<Algorithm> algorithms{Algorithm::kMmo};
  int gamma = kDefaultGamma;
  std::optional<double> timeout_seconds;
  unsigned threads = 1;
  OracleOptions oracle;
};

/// Minimum bandwidth and minimum cache over a front, picked independently.
[[nodiscard]] inline std::pair<int, int> front_minima(const ParetoSet& front) {
  int mb = std::numeric_limits<int>::max(), mk = std::numeric_limits<int>::max();
  for (const auto& s : front) {
    mb = std::min(mb, s.used_b);
    mk = std::min(mk, s.used_k);
  }
  return {mb, mk};
}

[[nodiscard]] inline SetOutcome evaluate_set(const TaskSet& set, const SystemConfig& cfg,
                                             Algorithm algorithm, const EvalOptions& opts) {
  using clock = std::chrono::steady_clock;
  SetOutcome out{algorithm};
  const auto start = clock::now();
  std::optional<clock::time_point> deadline;
  if (opts.timeout_seconds) {
    deadline = start + std::chrono::duration_cast<clock::duration>(
                           std::chrono::duration<double>(*opts.timeout_seconds));
  }
  ParetoSet front;
  bool timed_out = false;
  if (algorithm == Algorithm::kMmo) {
    MmoOptions mo;
    mo.gamma = opts.gamma;
    mo.deadline = deadline;
    MmoResult r = mmo_search(set, cfg, mo);
    front = std::move(r.front);
    timed_out = r.timed_out;
  } else {
    OracleOptions oo = opts.oracle;
    oo.deadline = deadline;
    try {
      OracleResult r = oracle_search(set, cfg, oo);
      front = std::move(r.front);
      timed_out = r.timed_out;
    } catch (const GuardExceeded&) {
      out.status = SetStatus::kSkipped;
      return out;
    }
  }
  out.seconds = std::chrono::duration<double>(clock::now() - start).count();
  if (timed_out) {
    out.status = SetStatus::kTimeout;
  } else if (front.empty()) {
    out.status = SetStatus::kUnschedulable;
  } else {
    out.status = SetStatus::kSchedulable;
  }
  if (out.status == SetStatus::kSchedulable) {
    std::tie(out.min_b, out.min_k) = front_minima(front);
    out.front_size = front.size();
  } else {
    out.min_b = cfg.B;
    out.min_k = cfg.K;
  }
  return out;
}

/// Runs every algorithm on every item and aggregates per (algorithm, pool,
/// N, U) cell. Unschedulable and timed-out sets count as using all B and K.
[[nodiscard]] inline MetricsTable run_campaign(const std::vector<EvalItem>& items,
                                               const SystemConfig& cfg,
                                               const EvalOptions& opts) {
  MetricsTable table;
  const std::size_t n_alg = opts.algorithms.size();
  table.outcomes.resize(items.size() * n_alg);
  detail::parallel_for(table.outcomes.size(), opts.threads, [&](std::size_t job) {
    const std::size_t item = job / n_alg;
    SetOutcome o = evaluate_set(items[item].tasks, cfg, opts.algorithms[job % n_alg], opts);
    o.item = item;
    table.outcomes[job] = o;
  });
  for (const SetOutcome& o : table.outcomes) {
    const EvalItem& it = items[o.item];
    CellMetrics& c = table.cells[{o.algorithm, it.pool, it.N, it.utilization}];
    if (o.status == SetStatus::kSkipped) {
      ++c.skipped;
      continue;
    }
    ++c.sets;
    c.sum_min_b += o.min_b;
    c.sum_min_k += o.min_k;
    c.sum_seconds += o.seconds;
    c.min_seconds = std::min(c.min_seconds, o.seconds);
    c.max_seconds = std::max(c.max_seconds, o.seconds);
    if (o.status == SetStatus::kSchedulable) {
      ++c.schedulable;
      ++c.front_sizes[o.front_size];
    } else if (o.status == SetStatus::kTimeout) {
      ++c.timeouts;
    }
  }
  return table;
}

/// Long-format CSV: one row per cell and metric.
inline void write_metrics_csv(const MetricsTable& table, std::ostream& os) {
  os << "algorithm,pool,N,U,metric,value\n";
  for (const auto& [key, c] : table.cells) {
    const std::string prefix = algorithm_name(key.algorithm) + "," + key.pool + "," +
                               std::to_string(key.N) + "," +
                               detail::format_number(key.utilization) + ",";
    auto row = [&](const std::string& metric, double value) {
      os << prefix << metric << "," << detail::format_number(value) << "\n";
    };
    row("sets", static_cast<double>(c.sets));
    row("skipped", static_cast<double>(c.skipped));
    row("schedulability_ratio", c.ratio());
    row("mean_min_bandwidth", c.mean_min_b());
    row("mean_min_cache", c.mean_min_k());
    row("timeouts", static_cast<double>(c.timeouts));
    row("time_avg_s", c.mean_seconds());
    row("time_min_s", c.sets ? c.min_seconds : 0.0);
    row("time_max_s", c.max_seconds);
    for (const auto& [size, count] : c.front_sizes) {
      row("front_size_" + std::to_string(size), static_cast<double>(count));
    }
  }
}

}  // namespace mmo

#endif  // MMO_EVALUATE_HPP
