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

#include "mmo/generator.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"

namespace mmo {
namespace {

TEST(RngTest, UniformRangeAndDeterminism) {
  Rng a(5), b(5), c(6);
  bool differs = false;
  for (int i = 0; i < 100000; ++i) {
    const double u = a.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_EQ(u, b.uniform());
    differs = differs || u != c.uniform();
    const double p = a.log_uniform(10, 1000);
    b.log_uniform(10, 1000);
    EXPECT_GE(p, 10.0 * (1 - 1e-12));
    EXPECT_LE(p, 1000.0 * (1 + 1e-12));
    EXPECT_LT(a.index(7), 7u);
    b.index(7);
  }
  EXPECT_TRUE(differs);
}

TEST(RngTest, DeriveSeedSeparatesCoordinates) {
  EXPECT_NE(derive_seed(1, 0, 0, 0, 1), derive_seed(1, 0, 0, 1, 0));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(9, 1, 2, 3, 4), derive_seed(9, 1, 2, 3, 4));
}

TEST(SimplexTest, SumsAndBoundsProperty) {
  Rng rng(61);
  for (int trial = 0; trial < 100000; ++trial) {
    const std::size_t n = 1 + rng.index(60);
    const double total = rng.uniform(0.01, 1.0) * static_cast<double>(n);
    const auto u = bounded_simplex(n, total, rng);
    ASSERT_EQ(u.size(), n);
    const double sum = std::accumulate(u.begin(), u.end(), 0.0);
    ASSERT_NEAR(sum, total, 1e-9) << "n=" << n << " total=" << total;
    for (double v : u) {
      ASSERT_GT(v, 0.0);
      ASSERT_LE(v, 1.0);
    }
  }
}

TEST(SimplexTest, Edges) {
  Rng rng(62);
  EXPECT_EQ(bounded_simplex(1, 0.7, rng), std::vector<double>{0.7});
  const auto full = bounded_simplex(4, 4.0, rng);
  for (double v : full) EXPECT_NEAR(v, 1.0, 1e-9);
  EXPECT_THROW((void)bounded_simplex(3, 3.5, rng), InvalidInput);
  EXPECT_THROW((void)bounded_simplex(3, 0.0, rng), InvalidInput);
  EXPECT_THROW((void)bounded_simplex(0, 0.5, rng), InvalidInput);
}

TEST(GenerateTest, TaskSetAndDeterminism) {
  GenSpec g;
  g.N = 30;
  g.total_utilization = 3.3;
  g.pool = synthetic_pool("s", 4, 15, 16, 3).profiles;
  g.seed = 77;
  const TaskSet a = generate_task_set(g);
  const TaskSet b = generate_task_set(g);
  ASSERT_EQ(a.size(), 30u);
  EXPECT_NEAR(a.total_ref_utilization(), 3.3, 1e-9);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, "t" + std::to_string(i + 1));
    EXPECT_EQ(a[i].period, b[i].period);
    EXPECT_EQ(a[i].ref_wcet, b[i].ref_wcet);
    EXPECT_EQ(a[i].profile, b[i].profile);
    EXPECT_GE(a[i].period, 10.0 * (1 - 1e-12));
    EXPECT_LE(a[i].period, 1000.0 * (1 + 1e-12));
    EXPECT_LE(a[i].ref_wcet, a[i].period);
  }
  g.seed = 78;
  EXPECT_NE(generate_task_set(g)[0].period, a[0].period);
  g.total_utilization = 31;
  EXPECT_THROW((void)generate_task_set(g), InvalidInput);
}

TEST(SyntheticProfileTest, MonotoneWithUnitCorner) {
  Rng rng(63);
  for (int i = 0; i < 50; ++i) {
    auto p = synthetic_profile("p", 15, 16, rng);
    EXPECT_EQ(p->at(15, 16), 1.0);
    EXPECT_EQ(p->normalized_cells(), 0u);
    const SyntheticProfileParams params;
    EXPECT_LE(p->at(1, 1), 1.0 + params.max_b_slowdown + params.max_k_slowdown + params.max_joint);
  }
  EXPECT_EQ(profile_fingerprint(*synthetic_pool("a", 1, 3, 3, 1).profiles[0]),
            profile_fingerprint(*synthetic_pool("a", 1, 3, 3, 1).profiles[0]));
}

TEST(CampaignTest, GridAndCounts) {
  const auto grid = default_utilization_grid(4);
  ASSERT_EQ(grid.size(), 31u);
  EXPECT_EQ(grid.front(), 1.0);
  EXPECT_EQ(grid[2], 1.2);
  EXPECT_EQ(grid.back(), 4.0);
  EXPECT_EQ(utilization_grid(1.0, 4.0, 0.5), (std::vector<double>{1, 1.5, 2, 2.5, 3, 3.5, 4}));

  CampaignSpec spec;
  spec.sizes = {4};
  spec.utilizations = {1.5};
  spec.per_cell = 1;
  spec.pools = {synthetic_pool("s", 2, 3, 3, 1)};
  EXPECT_EQ(generate_campaign(spec).size(), 1u);
  spec.per_cell = 0;
  EXPECT_TRUE(generate_campaign(spec).empty());
  spec.per_cell = 3;
  spec.utilizations = {5.0};
  EXPECT_THROW((void)generate_campaign(spec), InvalidInput);
}

TEST(CampaignTest, SeedsAreDistinctAndStable) {
  CampaignSpec spec;
  spec.sizes = {5, 6};
  spec.utilizations = {1.0, 2.0};
  spec.per_cell = 3;
  spec.pools = {synthetic_pool("a", 2, 3, 3, 1), synthetic_pool("b", 2, 3, 3, 2)};
  const auto x = generate_campaign(spec), y = generate_campaign(spec);
  ASSERT_EQ(x.size(), 24u);
  std::set<std::uint64_t> seeds;
  for (std::size_t i = 0; i < x.size(); ++i) {
    seeds.insert(x[i].seed);
    EXPECT_EQ(x[i].seed, y[i].seed);
    EXPECT_NEAR(x[i].tasks.total_ref_utilization(), x[i].utilization, 1e-9);
  }
  EXPECT_EQ(seeds.size(), x.size());
}

}  // namespace
}  // namespace mmo
