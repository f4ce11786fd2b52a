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

#include "mmo/oracle.hpp"

#include <vector>

#include "gtest/gtest.h"
#include "mmo/ilp.hpp"
#include "test_util.hpp"

namespace mmo {
namespace {

using testing::flat_profile;
using testing::make_profile;
using testing::make_task;
using Vectors = std::vector<std::pair<int, int>>;

TEST(OracleTest, SingleTask) {
  const TaskSet set({make_task("a", 10, 3, flat_profile(2, 2))});
  EXPECT_EQ(oracle_solve(set, {2, 2, 2}).objective_vectors(), (Vectors{{1, 1}}));
}

TEST(OracleTest, TradeOffFront) {
  // Fits with two partitions of either resource, but not with one of each.
  auto p = make_profile("p", {{2.0, 1.0}, {1.0, 1.0}});
  const TaskSet set({make_task("a", 10, 6, p)});
  EXPECT_EQ(oracle_solve(set, {1, 2, 2}).objective_vectors(), (Vectors{{1, 2}, {2, 1}}));
}

TEST(OracleTest, Infeasible) {
  auto p = flat_profile(1, 1);
  const TaskSet set({make_task("a", 10, 6, p), make_task("b", 10, 6, p)});
  EXPECT_TRUE(oracle_solve(set, {1, 1, 1}).empty());
}

TEST(OracleTest, SmallFixture) {
  const SystemConfig cfg{2, 3, 3};
  EXPECT_EQ(oracle_solve(testing::small4(), cfg).objective_vectors(),
            (Vectors{{2, 3}, {3, 2}}));
  OracleOptions compat;
  compat.ilp_compat = true;
  EXPECT_EQ(oracle_solve(testing::small4(), cfg, compat).objective_vectors(),
            (Vectors{{2, 3}, {3, 2}}));
}

TEST(OracleTest, IdleCoresCostOneEachInIlpMode) {
  const TaskSet set({make_task("a", 10, 3, flat_profile(4, 4))});
  OracleOptions compat;
  compat.ilp_compat = true;
  const auto front = oracle_solve(set, {3, 4, 4}, compat);
  EXPECT_EQ(front.objective_vectors(), (Vectors{{3, 3}}));
  EXPECT_TRUE(verify_solution(front.members()[0], set, {3, 4, 4}, VerifyMode::kIlpStrict).ok());
  EXPECT_TRUE(oracle_solve(set, {5, 4, 4}, {OracleGuard{8, 5, 5, 5}, false, true, {}}).empty());
}

TEST(OracleTest, Guard) {
  const TaskSet set({make_task("a", 10, 3, flat_profile(6, 2))});
  EXPECT_THROW((void)oracle_solve(set, {1, 6, 2}), GuardExceeded);
  OracleOptions o;
  o.override_guard = true;
  EXPECT_EQ(oracle_solve(set, {1, 6, 2}, o).objective_vectors(), (Vectors{{1, 1}}));
}

TEST(OracleTest, PartitionCountIsStirlingSum) {
  auto p = flat_profile(1, 1);
  std::vector<TaskSpec> tasks;
  for (int i = 0; i < 5; ++i) tasks.push_back(make_task("t" + std::to_string(i), 10, 1, p));
  // S(5,1) + S(5,2) + S(5,3) = 1 + 15 + 25.
  EXPECT_EQ(oracle_search(TaskSet(tasks), {3, 1, 1}).partitions, 41u);
}

TEST(OracleTest, MatchesBruteForceProperty) {
  Rng rng(51);
  for (int trial = 0; trial < 150; ++trial) {
    const auto inst = testing::random_instance(rng, 6, 3, 4, 4, 1.0);
    for (bool compat : {false, true}) {
      OracleOptions o;
      o.ilp_compat = compat;
      const auto front = oracle_solve(inst.tasks, inst.cfg, o);
      const auto truth = testing::minimal_vectors(
          testing::feasible_vectors(inst.tasks, inst.cfg, compat));
      EXPECT_EQ(front.objective_vectors(), truth) << "trial " << trial << " compat " << compat;
      for (const auto& s : front) {
        EXPECT_TRUE(verify_solution(s, inst.tasks, inst.cfg,
                                    compat ? VerifyMode::kIlpStrict : VerifyMode::kUsedCores)
                        .ok());
      }
    }
  }
}

TEST(OracleTest, TaskOrderDoesNotMatterProperty) {
  Rng rng(52);
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = testing::random_instance(rng, 7, 3, 4, 4);
    std::vector<TaskSpec> rev(inst.tasks.begin(), inst.tasks.end());
    std::reverse(rev.begin(), rev.end());
    EXPECT_EQ(oracle_solve(inst.tasks, inst.cfg).objective_vectors(),
              oracle_solve(TaskSet(rev), inst.cfg).objective_vectors());
  }
}

}  // namespace
}  // namespace mmo
