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

#ifndef SOAR_CLI_H_
#define SOAR_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "soar/scenario.h"

namespace soar {

enum ExitCode {
  kExitOk = 0,
  kExitValidation = 1,
  kExitInfeasible = 2,
  kExitInvariant = 3,
};

struct RunConfig {
  std::string command;
  std::string scenario_path;
  std::string plan_path;  // audit/render input
  std::string algorithm = "bnb";
  std::string out_path;
  std::string svg_path;
  std::string json_stats_path;
  std::uint64_t seed = 1;
  int count = 100;
  int threads = 1;
  double tol_endpoint = 1e-6;
  double sample_step = 1.0;
  bool timing = true;  // bench: write wall times, else zeros
  GeneratorOptions generator;
  int verbosity = 0;
};

// Each command writes diagnostics to `err` and returns an ExitCode.
int CmdValidate(const RunConfig& config, std::ostream& out, std::ostream& err);
int CmdPlan(const RunConfig& config, std::ostream& out, std::ostream& err);
int CmdAudit(const RunConfig& config, std::ostream& out, std::ostream& err);
int CmdRender(const RunConfig& config, std::ostream& out, std::ostream& err);
int CmdBench(const RunConfig& config, std::ostream& out, std::ostream& err);
int CmdGenerate(const RunConfig& config, std::ostream& out, std::ostream& err);

int RunCommand(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace soar

#endif  // SOAR_CLI_H_
