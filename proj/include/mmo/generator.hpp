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

#ifndef MMO_GENERATOR_HPP
#define MMO_GENERATOR_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mmo/core_model.hpp"

namespace mmo {

/// SplitMix64 finalizer; used to derive independent seeds.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                                  std::uint64_t a, std::uint64_t b = 0,
                                                  std::uint64_t c = 0,
                                                  std::uint64_t d = 0) noexcept {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t v : {a, b, c, d}) h = splitmix64(h ^ v);
  return h;
}

/// Random source with a pinned algorithm (std::mt19937_64, whose output is
/// fixed by the standard) and hand-written conversions, so sequences do not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open_low() { return 1.0 - uniform(); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  /// Uniform integer on [0, n) by rejection.
  std::size_t index(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return static_cast<std::size_t>(r % bound);
  }

  double exponential() { return -std::log(uniform_open_low()); }

 private:
  std::mt19937_64 engine_;
};

/// Utilization vector of length n summing to `total`, every entry in (0, 1].
///
/// A flat Dirichlet draw scaled to `total`, then repeated rescaling: entries
/// above 1 are clamped and the excess is spread over the others in proportion
/// to their value. A final pass spreads any leftover in proportion to the
/// remaining headroom, which always fits because total <= n.
[[nodiscard]] inline std::vector<double> bounded_simplex(std::size_t n, double total,
                                                         Rng& rng) {
  if (n == 0) throw InvalidInput("utilization vector needs n >= 1");
  if (!(total > 0.0) || total > static_cast<double>(n)) {
    throw InvalidInput("target utilization " + std::to_string(total) +
                       " infeasible for " + std::to_string(n) + " tasks");
  }
  std::vector<double> u(n);
  double sum = 0.0;
  for (auto& v : u) {
    v = rng.exponential();
    sum += v;
  }
  for (auto& v : u) v = v / sum * total;

  constexpr int kRounds = 32;
  for (int round = 0; round < kRounds; ++round) {
    double excess = 0.0, free_mass = 0.0;
    for (double v : u) {
      if (v > 1.0) {
        excess += v - 1.0;
      } else if (v < 1.0) {
        free_mass += v;
      }
    }
    if (excess == 0.0) break;
    for (auto& v : u) {
      if (v > 1.0) {
        v = 1.0;
      } else if (v < 1.0) {
        v += excess * v / free_mass;
      }
    }
  }
  double excess = 0.0, slack = 0.0;
  for (double v : u) {
    if (v > 1.0) excess += v - 1.0;
    else slack += 1.0 - v;
  }
  if (excess > 0.0) {
    for (auto& v : u) {
      if (v > 1.0) v = 1.0;
      else v += excess * (1.0 - v) / slack;
    }
  }
  for (auto& v : u) v = std::min(v, 1.0);
  return u;
}

struct GenSpec {
  std::size_t N = 20;
  double total_utilization = 2.0;
  std::vector<ProfilePtr> pool;
  double period_min = 10.0;
  double period_max = 1000.0;
  std::uint64_t seed = 1;
};

/// Task set per the generation protocol: reference utilizations on the
/// bounded simplex, periods log-uniform, profiles uniform with replacement.
[[nodiscard]] inline TaskSet generate_task_set(const GenSpec& spec) {
  if (spec.N == 0) throw InvalidInput("task count must be >= 1");
  if (spec.pool.empty()) throw InvalidInput("profile pool is empty");
  if (!(spec.period_min > 0.0) || spec.period_max < spec.period_min) {
    throw InvalidInput("period range must be positive and ordered");
  }
  Rng rng(spec.seed);
  const std::vector<double> u = bounded_simplex(spec.N, spec.total_utilization, rng);
  std::vector<TaskSpec> tasks;
  tasks.reserve(spec.N);
  for (std::size_t i = 0; i < spec.N; ++i) {
    TaskSpec t;
    t.id = "t" + std::to_string(i + 1);
    t.period = spec.period_min == spec.period_max
                   ? spec.period_min
                   : rng.log_uniform(spec.period_min, spec.period_max);
    t.ref_wcet = u[i] * t.period;
    if (t.ref_wcet > t.period) t.ref_wcet = t.period;
    t.profile = spec.pool[rng.index(spec.pool.size())];
    tasks.push_back(std::move(t));
  }
  return TaskSet(std::move(tasks));
}

struct ProfilePool {
  std::string name;
  std::vector<ProfilePtr> profiles;
};

struct CampaignSpec {
  std::vector<std::size_t> sizes{20, 40, 60};
  std::vector<double> utilizations;
  std::size_t per_cell = 100;
  std::vector<ProfilePool> pools;
  double period_min = 10.0;
  double period_max = 1000.0;
  std::uint64_t seed = 1;
};

struct CampaignEntry {
  std::size_t pool = 0;  // index into CampaignSpec::pools
  std::size_t N = 0;
  double utilization = 0.0;
  std::size_t replica = 0;
  std::uint64_t seed = 0;
  TaskSet tasks;
};

/// Points lo + i*step up to hi, each computed from its index and rounded to
/// nine decimals, so 1.0 + 2*0.1 is stored as 1.2.
[[nodiscard]] inline std::vector<double> utilization_grid(double lo, double hi,
                                                          double step) {
  if (!(step > 0.0) || hi < lo) throw InvalidInput("bad utilization grid");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double v = lo + static_cast<double>(i) * step;
    grid.push_back(std::round(v * 1e9) / 1e9);
  }
  return grid;
}

/// Default campaign grid: 1.0 to M in steps of 0.1.
[[nodiscard]] inline std::vector<double> default_utilization_grid(int M) {
  return utilization_grid(1.0, static_cast<double>(M), 0.1);
}

/// Every (pool, N, U) cell gets `per_cell` task sets, each with a seed
/// derived from the campaign seed and the cell coordinates.
[[nodiscard]] inline std::vector<CampaignEntry> generate_campaign(const CampaignSpec& spec) {
  std::vector<CampaignEntry> out;
  out.reserve(spec.pools.size() * spec.sizes.size() * spec.utilizations.size() *
              spec.per_cell);
  for (std::size_t p = 0; p < spec.pools.size(); ++p) {
    for (std::size_t n = 0; n < spec.sizes.size(); ++n) {
      for (std::size_t u = 0; u < spec.utilizations.size(); ++u) {
        for (std::size_t r = 0; r < spec.per_cell; ++r) {
          CampaignEntry e;
          e.pool = p;
          e.N = spec.sizes[n];
          e.utilization = spec.utilizations[u];
          e.replica = r;
          e.seed = derive_seed(spec.seed, p, n, u, r);
          GenSpec g;
          g.N = e.N;
          g.total_utilization = e.utilization;
          g.pool = spec.pools[p].profiles;
          g.period_min = spec.period_min;
          g.period_max = spec.period_max;
          g.seed = e.seed;
          e.tasks = generate_task_set(g);
          out.push_back(std::move(e));
        }
      }
    }
  }
  return out;
}

struct SyntheticProfileParams {
  double max_b_slowdown = 1.5;  // extra slowdown at b = 1 with full cache
  double max_k_slowdown = 1.5;  // extra slowdown at k = 1 with full bandwidth
  double max_joint = 1.0;       // extra slowdown when both are minimal
};

/// Smooth monotone profile: 1 + a*db^p + c*dk^q + d*db*dk with db, dk the
/// normalized distance from full resources; exponents and coefficients are
/// drawn from `rng` within the bounds in `params`.
[[nodiscard]] inline ProfilePtr synthetic_profile(std::string name, int B, int K,
                                                  Rng& rng,
                                                  const SyntheticProfileParams& params = {}) {
  const double a = rng.uniform(0.0, params.max_b_slowdown);
  const double c = rng.uniform(0.0, params.max_k_slowdown);
  const double d = rng.uniform(0.0, params.max_joint);
  const double p = rng.uniform(0.5, 3.0);
  const double q = rng.uniform(0.5, 3.0);
  std::vector<double> grid(static_cast<std::size_t>(B) * K);
  for (int b = 1; b <= B; ++b) {
    for (int k = 1; k <= K; ++k) {
      const double db = B > 1 ? static_cast<double>(B - b) / (B - 1) : 0.0;
      const double dk = K > 1 ? static_cast<double>(K - k) / (K - 1) : 0.0;
      grid[static_cast<std::size_t>(b - 1) * K + (k - 1)] =
          1.0 + a * std::pow(db, p) + c * std::pow(dk, q) + d * db * dk;
    }
  }
  grid.back() = 1.0;
  return std::make_shared<const SlowdownProfile>(std::move(name), B, K, std::move(grid));
}

[[nodiscard]] inline ProfilePool synthetic_pool(std::string name, std::size_t count,
                                                int B, int K, std::uint64_t seed,
                                                const SyntheticProfileParams& params = {}) {
  ProfilePool pool{std::move(name), {}};
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    pool.profiles.push_back(
        synthetic_profile(pool.name + "-" + std::to_string(i + 1), B, K, rng, params));
  }
  return pool;
}

/// FNV-1a over bytes.
[[nodiscard]] inline std::uint64_t fnv1a(std::string_view bytes,
                                         std::uint64_t h = 0xcbf29ce484222325ULL) noexcept {
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Content fingerprint of a profile (name, shape, raw cells).
[[nodiscard]] inline std::uint64_t profile_fingerprint(const SlowdownProfile& p) {
  std::string text = p.name() + ":" + std::to_string(p.B()) + "x" + std::to_string(p.K());
  char buf[32];
  for (double v : p.raw_grid()) {
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    text += ',';
    text.append(buf, r.ptr);
  }
  return fnv1a(text);
}

[[nodiscard]] inline std::uint64_t pool_fingerprint(const ProfilePool& pool) {
  std::uint64_t h = fnv1a(pool.name);
  for (const auto& p : pool.profiles) h = splitmix64(h ^ profile_fingerprint(*p));
  return h;
}

}  // namespace mmo

#endif  // MMO_GENERATOR_HPP
