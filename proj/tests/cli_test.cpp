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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "gtest/gtest.h"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct Outcome {
  int code;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(MMO_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const std::string kData = MMO_TEST_DATA;
const std::string kSmall = "--tasks " + kData + "/small4/tasks.json --profiles " + kData +
                           "/small4/profiles --M 2 --B 3 --K 3";

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("mmo_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

TEST(CliTest, SolvePrintsFront) {
  const Outcome r = run("solve " + kSmall + " --stats");
  ASSERT_EQ(r.code, 0) << r.out;
  const json doc = json::parse(r.out);
  ASSERT_EQ(doc["front"].size(), 2u);
  EXPECT_EQ(doc["front"][0]["used_b"], 2);
  EXPECT_EQ(doc["front"][0]["used_k"], 3);
  EXPECT_EQ(doc["front"][1]["used_b"], 3);
  EXPECT_TRUE(doc.contains("stats"));
}

TEST(CliTest, SolveEmptyFrontExitsTwo) {
  const fs::path dir = scratch("empty");
  write(dir / "tasks.json",
        R"({"tasks": [{"id": "a", "period": 10, "ref_wcet": 9, "profile": "alpha"},
                      {"id": "b", "period": 10, "ref_wcet": 9, "profile": "alpha"}]})");
  const Outcome r = run("solve --tasks " + (dir / "tasks.json").string() + " --profiles " +
                        kData + "/small4/profiles --M 1 --B 3 --K 3");
  EXPECT_EQ(r.code, 2) << r.out;
  EXPECT_EQ(json::parse(r.out)["front"].size(), 0u);
}

TEST(CliTest, OracleMatchesSolve) {
  const Outcome r = run("oracle " + kSmall + " --ilp-compat");
  ASSERT_EQ(r.code, 0) << r.out;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["mode"], "ilp-compat");
  EXPECT_EQ(doc["front"].size(), 2u);
}

TEST(CliTest, VerifyReportsViolatedCore) {
  const fs::path dir = scratch("verify");
  write(dir / "sol.json",
        R"({"cores": [{"tasks": ["t1", "t2", "t3", "t4"], "b": 1, "k": 1}]})");
  const Outcome r = run("verify " + kSmall + " --solution " + (dir / "sol.json").string());
  EXPECT_EQ(r.code, 3) << r.out;
  const json doc = json::parse(r.out);
  EXPECT_FALSE(doc["ok"]);
  EXPECT_EQ(doc["violations"][0]["constraint"], "utilization");
  EXPECT_EQ(doc["violations"][0]["core"], 1);
}

TEST(CliTest, VerifyAcceptsSolveOutput) {
  const fs::path dir = scratch("verify_front");
  ASSERT_EQ(run("solve " + kSmall + " --out " + (dir / "front.json").string()).code, 0);
  const Outcome r = run("verify " + kSmall + " --solution " + (dir / "front.json").string());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(json::parse(r.out)["ok"]);
}

TEST(CliTest, VerifyAssignment) {
  const fs::path dir = scratch("assignment");
  write(dir / "ok.sol",
        "x_1_1 1\nx_2_1 1\nx_3_2 1\nx_4_2 1\ny_1_1 1\nz_2_1 1\ny_1_2 1\nz_1_2 1\n");
  Outcome r = run("verify " + kSmall + " --assignment " + (dir / "ok.sol").string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(json::parse(r.out)["solution"]["used_b"], 2);
  EXPECT_EQ(json::parse(r.out)["solution"]["used_k"], 3);
  // t3 moved onto core 1: 0.5 + 0.45 + 0.5 > 1 at (1, 2).
  write(dir / "over.sol",
        "x_1_1 1\nx_2_1 1\nx_3_1 1\nx_4_2 1\ny_1_1 1\nz_2_1 1\ny_1_2 1\nz_1_2 1\n");
  r = run("verify " + kSmall + " --assignment " + (dir / "over.sol").string());
  EXPECT_EQ(r.code, 3) << r.out;
  EXPECT_EQ(json::parse(r.out)["violations"][0]["core"], 1);
  write(dir / "bad.sol", "x_1_1 0.5\n");
  r = run("verify " + kSmall + " --assignment " + (dir / "bad.sol").string());
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_NE(r.out.find("non-binary"), std::string::npos);
}

TEST(CliTest, ExportIlpDeclaresBinaries) {
  const fs::path dir = scratch("ilp");
  write(dir / "tasks.json",
        R"({"tasks": [{"id": "a", "period": 10, "ref_wcet": 1, "profile": "f"},
                      {"id": "b", "period": 10, "ref_wcet": 1, "profile": "f"},
                      {"id": "c", "period": 10, "ref_wcet": 1, "profile": "f"}]})");
  fs::create_directories(dir / "profiles");
  write(dir / "profiles" / "f.json",
        R"({"name": "f", "B": 2, "K": 2, "grid": [[1.5, 1.2], [1.2, 1.0]]})");
  const Outcome r = run("export-ilp --tasks " + (dir / "tasks.json").string() + " --profiles " +
                    (dir / "profiles").string() + " --M 2 --B 2 --K 2 --objective k");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto start = r.out.find("Binaries\n"), end = r.out.find("End\n");
  std::istringstream vars(r.out.substr(start + 9, end - start - 9));
  std::size_t n = 0;
  for (std::string v; vars >> v;) ++n;
  EXPECT_EQ(n, 38u);
  EXPECT_NE(r.out.find(" obj: z_1_1 + 2 z_2_1 + z_1_2 + 2 z_2_2\n"), std::string::npos) << r.out;
}

TEST(CliTest, UnknownFlagPrintsUsage) {
  const Outcome r = run("solve " + kSmall + " --bogus");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("--bogus"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("--tasks"), std::string::npos) << r.out;
}

TEST(CliTest, BadInputIsReported) {
  const fs::path dir = scratch("badinput");
  write(dir / "tasks.json", R"({"tasks": [{"id": "a", "period": 10, "profile": "alpha"}]})");
  const Outcome r = run("solve --tasks " + (dir / "tasks.json").string() + " --profiles " + kData +
                    "/small4/profiles --M 2 --B 3 --K 3");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("/tasks/0/ref_wcet: missing field"), std::string::npos) << r.out;
}

TEST(CliTest, GenerateAndEvaluate) {
  const fs::path dir = scratch("campaign");
  Outcome r = run("generate --synthetic-pools 1 --synthetic-profiles 3 --sizes 4 --utils 1.0:2.0:0.5 "
              "--per-cell 2 --M 2 --B 3 --K 3 --out " + (dir / "c").string());
  ASSERT_EQ(r.code, 0) << r.out;
  const json g = json::parse(r.out);
  EXPECT_EQ(g["task_sets"], 6);
  const Outcome again = run("generate --synthetic-pools 1 --synthetic-profiles 3 --sizes 4 "
                        "--utils 1.0:2.0:0.5 --per-cell 2 --M 2 --B 3 --K 3 --out " +
                        (dir / "d").string());
  EXPECT_EQ(json::parse(again.out)["digest"], g["digest"]);
  write(dir / "cfg.json", R"({"M": 2, "B": 3, "K": 3})");
  r = run("evaluate --campaign " + (dir / "c" / "manifest.json").string() + " --config " +
          (dir / "cfg.json").string() + " --algorithms mmo,oracle --out " +
          (dir / "eval").string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::exists(dir / "eval" / "metrics.csv"));
  EXPECT_TRUE(fs::exists(dir / "eval" / "sets.csv"));
  EXPECT_TRUE(fs::exists(dir / "eval" / "summary.json"));
}

}  // namespace
