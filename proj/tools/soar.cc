// Copyright 2026 The Soar Authors
//
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

// Command-line front end for the glider fleet planner.

#include <iostream>

#include "CLI11.hpp"
#include "soar/cli.h"

int main(int argc, char** argv) {
  soar::RunConfig config;
  CLI::App app{"Plans glider paths through interest points and thermals"};
  app.require_subcommand(1);

  auto scenario_opt = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", config.scenario_path, "Scenario JSON file")
        ->required();
  };

  CLI::App* validate = app.add_subcommand("validate", "Check a scenario");
  scenario_opt(validate);

  CLI::App* plan = app.add_subcommand("plan", "Plan paths for a scenario");
  scenario_opt(plan);
  plan->add_option("--algo", config.algorithm, "Allocation search")
      ->check(CLI::IsMember({"bnb", "brute"}));
  plan->add_option("--out", config.out_path, "Plan JSON output");
  plan->add_option("--svg", config.svg_path, "SVG rendering output");
  plan->add_option("--json-stats", config.json_stats_path,
                   "Search statistics output");
  plan->add_option("--threads", config.threads, "Lower-level solve workers")
      ->check(CLI::PositiveNumber);
  plan->add_option("--sample-step", config.sample_step,
                   "Polyline sample spacing in metres")
      ->check(CLI::PositiveNumber);
  plan->add_option("--tol-endpoint", config.tol_endpoint,
                   "Relative endpoint tolerance for the audit");

  CLI::App* audit = app.add_subcommand("audit", "Audit a plan file");
  scenario_opt(audit);
  audit->add_option("--plan", config.plan_path, "Plan JSON file")->required();
  audit->add_option("--out", config.out_path, "Audit report output");
  audit->add_option("--tol-endpoint", config.tol_endpoint,
                    "Relative endpoint tolerance");

  CLI::App* render = app.add_subcommand("render", "Render SVG");
  scenario_opt(render);
  render->add_option("--plan", config.plan_path, "Plan JSON file");
  render->add_option("--svg", config.svg_path, "Output file (default stdout)");

  auto generator_opts = [&](CLI::App* cmd) {
    cmd->add_option("--seed", config.seed, "First RNG seed");
    cmd->add_option("--gliders", config.generator.n_gliders)
        ->check(CLI::PositiveNumber);
    cmd->add_option("--interest-points", config.generator.n_interest_points)
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--thermals", config.generator.n_thermals)
        ->check(CLI::NonNegativeNumber);
  };

  CLI::App* bench =
      app.add_subcommand("bench", "Compare branch and bound with brute force");
  generator_opts(bench);
  bench->add_option("--count", config.count, "Number of scenarios")
      ->check(CLI::NonNegativeNumber);
  bench->add_option("--out", config.out_path, "CSV output (default stdout)");
  bench->add_option("--threads", config.threads)->check(CLI::PositiveNumber);
  bench->add_option("--tol-endpoint", config.tol_endpoint);
  bool no_timing = false;
  bench->add_flag("--no-timing", no_timing, "Write zeros for wall times");

  CLI::App* generate =
      app.add_subcommand("generate", "Write a random admissible scenario");
  generator_opts(generate);
  generate->add_option("--out", config.out_path, "Output (default stdout)");

  app.add_flag("-v,--verbose", config.verbosity);

  CLI11_PARSE(app, argc, argv);
  config.timing = !no_timing;
  config.command = app.get_subcommands().front()->get_name();
  return soar::RunCommand(config, std::cout, std::cerr);
}
