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

// mmo: command-line front end for the co-allocation solver.
//
// Exit codes: 0 success, 1 error, 2 empty front (solve/oracle), 3 verification
// found violations.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mmo/campaign_io.hpp"
#include "mmo/io.hpp"
#include "mmo/mmo.hpp"

namespace fs = std::filesystem;
using mmo::io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitEmptyFront = 2;
constexpr int kExitViolations = 3;

struct InstanceArgs {
  std::string tasks;
  std::string profiles;
  mmo::SystemConfig cfg;
};

void add_instance_options(CLI::App* cmd, InstanceArgs& args) {
  cmd->add_option("--tasks", args.tasks, "Task-set JSON file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--profiles", args.profiles, "Directory of profile JSON files")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmd->add_option("--M", args.cfg.M, "Number of cores")->capture_default_str();
  cmd->add_option("--B", args.cfg.B, "Memory-bandwidth partitions")->capture_default_str();
  cmd->add_option("--K", args.cfg.K, "Cache partitions")->capture_default_str();
}

void warn_normalized(const mmo::io::ProfileMap& profiles) {
  for (const auto& [name, p] : profiles) {
    if (p->normalized_fraction() > 0.01) {
      std::cerr << "warning: profile '" << name << "': monotone normalization raised "
                << p->normalized_cells() << " of " << p->B() * p->K() << " cells\n";
    }
  }
}

mmo::TaskSet load_instance(const InstanceArgs& args) {
  const auto profiles = mmo::io::load_profile_dir(args.profiles);
  warn_normalized(profiles);
  mmo::TaskSet set = mmo::io::load_task_set(args.tasks, profiles);
  set.check_against(args.cfg);
  return set;
}

void emit(const json& doc, const std::string& out) {
  if (out.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    mmo::io::write_json(out, doc);
  }
}

json front_document(const mmo::ParetoSet& front, const mmo::TaskSet& set,
                    const mmo::SystemConfig& cfg) {
  return {{"config", mmo::io::config_to_json(cfg)},
          {"front", mmo::io::front_to_json(front, set)}};
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoul(item));
  return out;
}

/// "lo:hi:step" or a comma list.
std::vector<double> parse_utils(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    std::string lo, hi, step;
    std::getline(ss, lo, ':');
    std::getline(ss, hi, ':');
    std::getline(ss, step, ':');
    return mmo::utilization_grid(std::stod(lo), std::stod(hi), std::stod(step));
  }
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Task, memory-bandwidth and cache co-allocation for partitioned EDF"};
  app.require_subcommand(1);

  // solve
  InstanceArgs solve_args;
  int gamma = mmo::kDefaultGamma;
  unsigned threads = 1;
  std::string out;
  bool with_stats = false;
  auto* solve = app.add_subcommand("solve", "Pareto front of resource allocations");
  add_instance_options(solve, solve_args);
  solve->add_option("--gamma", gamma, "Knapsack scaling factor")->capture_default_str()
      ->check(CLI::PositiveNumber);
  solve->add_option("--threads", threads, "Worker threads")->capture_default_str();
  solve->add_option("--out", out, "Write the front here instead of stdout");
  solve->add_flag("--stats", with_stats, "Include search statistics");

  // oracle
  InstanceArgs oracle_args;
  bool ilp_compat = false;
  bool override_guard = false;
  auto* oracle = app.add_subcommand("oracle", "Exact front by exhaustive search (small instances)");
  add_instance_options(oracle, oracle_args);
  oracle->add_flag("--ilp-compat", ilp_compat, "Give every core at least one partition of each resource");
  oracle->add_flag("--override-guard", override_guard, "Run beyond the instance-size guard");
  oracle->add_option("--out", out, "Write the front here instead of stdout");

  // export-ilp
  InstanceArgs ilp_args;
  std::string objective = "b";
  double weight_b = 1.0, weight_k = 1.0;
  auto* export_ilp = app.add_subcommand("export-ilp", "Write the 0-1 ILP in LP format");
  add_instance_options(export_ilp, ilp_args);
  export_ilp->add_option("--objective", objective, "b, k or weighted")
      ->check(CLI::IsMember({"b", "k", "weighted"}))
      ->capture_default_str();
  export_ilp->add_option("--wb", weight_b, "Bandwidth weight (weighted objective)");
  export_ilp->add_option("--wk", weight_k, "Cache weight (weighted objective)");
  export_ilp->add_option("--out", out, "LP file to write (stdout if omitted)");

  // verify
  InstanceArgs verify_args;
  std::string solution_path, assignment_path;
  bool strict = false;
  auto* verify = app.add_subcommand("verify", "Check a solution against every constraint");
  add_instance_options(verify, verify_args);
  auto* sol_opt = verify->add_option("--solution", solution_path,
                                     "Solution JSON (single solution or a front document)")
                      ->check(CLI::ExistingFile);
  auto* asg_opt = verify->add_option("--assignment", assignment_path,
                                     "Solver output: one '<variable> <value>' per line")
                      ->check(CLI::ExistingFile);
  sol_opt->excludes(asg_opt);
  verify->add_flag("--strict", strict, "Require a bandwidth and cache level on every core");
  verify->add_option("--out", out, "Write the verdict here instead of stdout");

  // generate
  std::vector<std::string> pool_dirs;
  std::size_t synthetic_pools = 0, synthetic_profiles = 8;
  std::string sizes_text = "20,40,60", utils_text;
  std::size_t per_cell = 100;
  std::uint64_t seed = 1;
  double period_min = 10.0, period_max = 1000.0;
  mmo::SystemConfig gen_cfg;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Generate a task-set campaign");
  generate->add_option("--profiles", pool_dirs, "Profile directory per pool (repeatable)")
      ->check(CLI::ExistingDirectory);
  generate->add_option("--synthetic-pools", synthetic_pools, "Number of synthetic profile pools");
  generate->add_option("--synthetic-profiles", synthetic_profiles, "Profiles per synthetic pool")
      ->capture_default_str();
  generate->add_option("--sizes", sizes_text, "Comma-separated task counts")->capture_default_str();
  generate->add_option("--utils", utils_text, "lo:hi:step or comma list (default 1.0:M:0.1)");
  generate->add_option("--per-cell", per_cell, "Task sets per (N, U) cell")->capture_default_str();
  generate->add_option("--seed", seed, "Campaign seed")->capture_default_str();
  generate->add_option("--period-min", period_min)->capture_default_str();
  generate->add_option("--period-max", period_max)->capture_default_str();
  generate->add_option("--M", gen_cfg.M, "Cores (default utilization grid)")->capture_default_str();
  generate->add_option("--B", gen_cfg.B, "Bandwidth partitions (synthetic profiles)")->capture_default_str();
  generate->add_option("--K", gen_cfg.K, "Cache partitions (synthetic profiles)")->capture_default_str();
  generate->add_option("--out", gen_out, "Output directory")->required();

  // evaluate
  std::string campaign_path, config_path, eval_out, algorithms_text = "mmo";
  std::optional<double> timeout;
  auto* evaluate = app.add_subcommand("evaluate", "Run algorithms over a campaign and report metrics");
  evaluate->add_option("--campaign", campaign_path, "Campaign manifest")->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--config", config_path, "System config JSON {M, B, K}")
      ->check(CLI::ExistingFile);
  evaluate->add_option("--gamma", gamma)->capture_default_str()->check(CLI::PositiveNumber);
  evaluate->add_option("--timeout", timeout, "Per-set time limit in seconds");
  evaluate->add_option("--algorithms", algorithms_text, "Comma list of mmo, oracle")
      ->capture_default_str();
  evaluate->add_option("--threads", threads)->capture_default_str();
  evaluate->add_option("--out", eval_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const CLI::App* failing = &app;
    for (auto* sub : app.get_subcommands()) failing = sub;
    std::cerr << failing->help();
    return kExitError;
  }

  try {
    if (*solve) {
      const mmo::TaskSet set = load_instance(solve_args);
      mmo::MmoOptions opts;
      opts.gamma = gamma;
      opts.threads = threads;
      const mmo::MmoResult r = mmo::mmo_search(set, solve_args.cfg, opts);
      json doc = front_document(r.front, set, solve_args.cfg);
      doc["gamma"] = gamma;
      if (with_stats) {
        doc["stats"] = {{"allocations", r.stats.allocations},
                        {"max_live", r.stats.max_live},
                        {"live_after_iteration", r.stats.live_after_iteration},
                        {"front_pruned", r.stats.front_pruned},
                        {"bound_pruned", r.stats.bound_pruned}};
      }
      emit(doc, out);
      return r.front.empty() ? kExitEmptyFront : kExitOk;
    }
    if (*oracle) {
      const mmo::TaskSet set = load_instance(oracle_args);
      mmo::OracleOptions opts;
      opts.ilp_compat = ilp_compat;
      opts.override_guard = override_guard;
      const mmo::ParetoSet front = mmo::oracle_solve(set, oracle_args.cfg, opts);
      json doc = front_document(front, set, oracle_args.cfg);
      doc["mode"] = ilp_compat ? "ilp-compat" : "default";
      emit(doc, out);
      return front.empty() ? kExitEmptyFront : kExitOk;
    }
    if (*export_ilp) {
      const mmo::TaskSet set = load_instance(ilp_args);
      const mmo::Objective obj = objective == "b"   ? mmo::Objective::bandwidth()
                                 : objective == "k" ? mmo::Objective::cache()
                                                    : mmo::Objective::weighted(weight_b, weight_k);
      const mmo::IlpModel model = mmo::build_model(set, ilp_args.cfg, obj);
      if (out.empty()) {
        mmo::export_lp(model, std::cout);
      } else {
        mmo::export_lp(model, out);
      }
      return kExitOk;
    }
    if (*verify) {
      const mmo::TaskSet set = load_instance(verify_args);
      const auto mode = strict ? mmo::VerifyMode::kIlpStrict : mmo::VerifyMode::kUsedCores;
      json doc;
      bool ok = true;
      if (!assignment_path.empty()) {
        const mmo::ImportResult r =
            mmo::import_solver_solution(assignment_path, set, verify_args.cfg, mode);
        doc = mmo::io::verdict_to_json(r.verdict);
        if (r.solution) doc["solution"] = mmo::io::solution_to_json(*r.solution, set);
        ok = r.verdict.ok();
      } else if (!solution_path.empty()) {
        const json j = mmo::io::read_json(solution_path);
        std::vector<mmo::CompleteSolution> sols;
        if (j.contains("front")) {
          const json& arr = j["front"];
          for (std::size_t i = 0; i < arr.size(); ++i) {
            sols.push_back(mmo::io::solution_from_json(arr[i], set, solution_path,
                                                       "/front/" + std::to_string(i)));
          }
        } else {
          sols.push_back(mmo::io::solution_from_json(j, set, solution_path));
        }
        json results = json::array();
        for (const auto& s : sols) {
          const mmo::Verdict v = mmo::verify_solution(s, set, verify_args.cfg, mode);
          ok = ok && v.ok();
          results.push_back(mmo::io::verdict_to_json(v));
        }
        doc = sols.size() == 1 && !j.contains("front") ? results[0]
                                                       : json{{"ok", ok}, {"solutions", results}};
      } else {
        throw mmo::InvalidInput("verify needs --solution or --assignment");
      }
      emit(doc, out);
      return ok ? kExitOk : kExitViolations;
    }
    if (*generate) {
      mmo::CampaignSpec spec;
      spec.sizes = parse_sizes(sizes_text);
      spec.utilizations = utils_text.empty() ? mmo::default_utilization_grid(gen_cfg.M)
                                             : parse_utils(utils_text);
      spec.per_cell = per_cell;
      spec.seed = seed;
      spec.period_min = period_min;
      spec.period_max = period_max;
      for (const auto& dir : pool_dirs) {
        mmo::ProfilePool pool{fs::path(dir).filename().string(), {}};
        if (pool.name.empty()) pool.name = fs::path(dir).parent_path().filename().string();
        const auto profiles = mmo::io::load_profile_dir(dir);
        warn_normalized(profiles);
        for (const auto& [name, p] : profiles) pool.profiles.push_back(p);
        spec.pools.push_back(std::move(pool));
      }
      for (std::size_t i = 0; i < synthetic_pools; ++i) {
        spec.pools.push_back(mmo::synthetic_pool("synthetic" + std::to_string(i + 1),
                                                 synthetic_profiles, gen_cfg.B, gen_cfg.K,
                                                 mmo::derive_seed(seed, 0x9001, i)));
      }
      if (spec.pools.empty()) {
        throw mmo::InvalidInput("generate needs --profiles or --synthetic-pools");
      }
      const auto entries = mmo::generate_campaign(spec);
      const fs::path manifest = mmo::io::write_campaign(gen_out, spec, entries);
      std::cout << json{{"manifest", manifest.string()},
                        {"task_sets", entries.size()},
                        {"digest", mmo::io::hex64(mmo::io::campaign_digest(spec, entries))}}
                       .dump(2)
                << "\n";
      return kExitOk;
    }
    if (*evaluate) {
      mmo::SystemConfig cfg;
      if (!config_path.empty()) {
        cfg = mmo::io::config_from_json(mmo::io::read_json(config_path), config_path);
      }
      mmo::EvalOptions opts;
      opts.gamma = gamma;
      opts.timeout_seconds = timeout;
      opts.threads = threads;
      opts.algorithms.clear();
      std::stringstream ss(algorithms_text);
      std::string a;
      while (std::getline(ss, a, ',')) {
        if (a == "mmo") {
          opts.algorithms.push_back(mmo::Algorithm::kMmo);
        } else if (a == "oracle") {
          opts.algorithms.push_back(mmo::Algorithm::kOracle);
        } else if (!a.empty()) {
          throw mmo::InvalidInput("unknown algorithm '" + a + "'");
        }
      }
      const auto items = mmo::io::load_campaign(campaign_path);
      for (const auto& it : items) it.tasks.check_against(cfg);
      const mmo::MetricsTable table = mmo::run_campaign(items, cfg, opts);

      fs::create_directories(eval_out);
      {
        std::ofstream csv(fs::path(eval_out) / "metrics.csv", std::ios::binary);
        mmo::write_metrics_csv(table, csv);
      }
      {
        std::ofstream csv(fs::path(eval_out) / "sets.csv", std::ios::binary);
        csv << "algorithm,pool,N,U,index,status,min_b,min_k,front_size,seconds\n";
        for (const auto& o : table.outcomes) {
          const auto& it = items[o.item];
          csv << mmo::algorithm_name(o.algorithm) << "," << it.pool << "," << it.N << ","
              << mmo::detail::format_number(it.utilization) << "," << o.item << ","
              << mmo::status_name(o.status) << "," << o.min_b << "," << o.min_k << ","
              << o.front_size << "," << mmo::detail::format_number(o.seconds) << "\n";
        }
      }
      json cells = json::array();
      for (const auto& [key, c] : table.cells) {
        json hist = json::object();
        for (const auto& [size, count] : c.front_sizes) hist[std::to_string(size)] = count;
        cells.push_back({{"algorithm", mmo::algorithm_name(key.algorithm)},
                         {"pool", key.pool},
                         {"N", key.N},
                         {"U", key.utilization},
                         {"sets", c.sets},
                         {"skipped", c.skipped},
                         {"schedulable", c.schedulable},
                         {"timeouts", c.timeouts},
                         {"schedulability_ratio", c.ratio()},
                         {"mean_min_bandwidth", c.mean_min_b()},
                         {"mean_min_cache", c.mean_min_k()},
                         {"front_size_histogram", std::move(hist)},
                         {"time_avg_s", c.mean_seconds()},
                         {"time_min_s", c.sets ? c.min_seconds : 0.0},
                         {"time_max_s", c.max_seconds}});
      }
      mmo::io::write_json(fs::path(eval_out) / "summary.json",
                          {{"config", mmo::io::config_to_json(cfg)},
                           {"gamma", gamma},
                           {"cells", std::move(cells)}});
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
