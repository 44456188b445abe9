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

#include "soar/cli.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "soar/lower_search.h"
#include "soar/pathcheck.h"
#include "soar/upper_search.h"

namespace soar {

namespace {

// Loads and validates, reporting problems as exit code 1.
std::optional<Scenario> Load(const RunConfig& config, std::ostream& err) {
  if (config.scenario_path.empty()) {
    err << "error: --scenario is required\n";
    return std::nullopt;
  }
  try {
    return LoadScenario(config.scenario_path);
  } catch (const ParseError& e) {
    err << config.scenario_path << ": parse error: " << e.what() << "\n";
  } catch (const ValidationError& e) {
    err << config.scenario_path << ": " << e.what() << "\n";
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
  }
  return std::nullopt;
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

nlohmann::json StatsJson(const PlanResult& r) {
  const SearchStats& s = r.stats;
  return {{"algorithm", r.algorithm},
          {"upper_nodes_expanded", s.upper_nodes_expanded},
          {"upper_nodes_generated", s.upper_nodes_generated},
          {"allocations_evaluated", s.allocations_evaluated},
          {"lower_solves", s.lower_solves},
          {"pruned_count", s.pruned_count},
          {"wall_time_s", s.wall_time_s}};
}

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

int CmdValidate(const RunConfig& config, std::ostream& out,
                std::ostream& err) {
  std::optional<Scenario> s = Load(config, err);
  if (!s) return kExitValidation;
  const Spacing sp = MinSpacing(*s);
  const CcConstants c = ComputeCcConstants(s->limits);
  out << "ok: " << s->gliders.size() << " gliders, "
      << s->interest_points.size() << " interest points, "
      << s->thermals.size() << " thermals\n";
  out << "theta_lim " << ThetaLim(s->limits) << " rad, R_T " << c.r_t
      << " m, l_min " << sp.l_min << " m (" << sp.first << ", " << sp.second
      << "), R_max " << RatioBound(sp.l_min, c, s->limits) << "\n";
  return kExitOk;
}

int CmdPlan(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::optional<Scenario> s = Load(config, err);
  if (!s) return kExitValidation;
  try {
    PlanningContext ctx(std::move(*s));
    SolveOptions options;
    options.threads = config.threads;
    PlanResult result;
    if (config.algorithm == "bnb") {
      result = SolveBnb(ctx, options);
    } else if (config.algorithm == "brute") {
      result = SolveBrute(ctx, options);
    } else {
      err << "error: unknown algorithm " << config.algorithm << "\n";
      return kExitValidation;
    }
    const Plan plan = MakePlan(ctx, result, config.sample_step);
    if (!config.out_path.empty()) SavePlan(plan, config.out_path);
    if (!config.svg_path.empty()) {
      WriteSvg(ctx.scenario(), &plan, config.svg_path);
    }
    if (!config.json_stats_path.empty()) {
      WriteText(config.json_stats_path, StatsJson(result).dump(2) + "\n");
    }
    out << "allocation " << AllocationKey(ctx.scenario(), result.best.allocation)
        << "\n";
    for (const auto& gp : plan.gliders) {
      out << gp.glider_id << ":";
      for (const auto& id : gp.order) out << " " << id;
      out << "  S_L=" << gp.s_l << " K_L=" << gp.k_l << "\n";
    }
    out << "K_U=" << plan.k_u << " S_U=" << plan.s_u
        << " lower_solves=" << result.stats.lower_solves << "\n";

    AuditTolerances tol;
    tol.endpoint_rel = config.tol_endpoint;
    const AuditReport report = AuditPlan(ctx.scenario(), plan, tol);
    if (!report.passed()) {
      err << "audit failed:\n" << AuditToJson(report).dump(2) << "\n";
      return kExitInvariant;
    }
    return kExitOk;
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const TooLarge& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
}

int CmdAudit(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::optional<Scenario> s = Load(config, err);
  if (!s) return kExitValidation;
  try {
    const Plan plan = LoadPlan(config.plan_path);
    AuditTolerances tol;
    tol.endpoint_rel = config.tol_endpoint;
    const AuditReport report = AuditPlan(*s, plan, tol);
    const std::string text = AuditToJson(report).dump(2) + "\n";
    if (!config.out_path.empty()) WriteText(config.out_path, text);
    out << (report.passed() ? "audit passed" : "audit FAILED") << "\n";
    if (!report.height_strict_ok) {
      out << "note: strict arrival-credit height rule is violated\n";
    }
    return report.passed() ? kExitOk : kExitInvariant;
  } catch (const ParseError& e) {
    err << config.plan_path << ": parse error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const StructureError& e) {
    err << "plan does not match scenario: " << e.what() << "\n";
    return kExitInvariant;
  }
}

int CmdRender(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::optional<Scenario> s = Load(config, err);
  if (!s) return kExitValidation;
  try {
    std::optional<Plan> plan;
    if (!config.plan_path.empty()) plan = LoadPlan(config.plan_path);
    const std::string svg = RenderSvg(*s, plan ? &*plan : nullptr);
    if (config.svg_path.empty()) {
      out << svg;
    } else {
      WriteText(config.svg_path, svg);
    }
    return kExitOk;
  } catch (const ParseError& e) {
    err << config.plan_path << ": parse error: " << e.what() << "\n";
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitValidation;
}

int CmdGenerate(const RunConfig& config, std::ostream& out,
                std::ostream& err) {
  try {
    const GeneratedScenario g = RandomScenario(config.seed, config.generator);
    const std::string text = ScenarioToJson(g.scenario).dump(2) + "\n";
    if (config.out_path.empty()) {
      out << text;
    } else {
      WriteText(config.out_path, text);
    }
    err << "rejected draws: " << g.rejected << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

int CmdBench(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream csv;
  csv << "seed,n_g,n_ip,n_t,k_u,s_u,lower_solves_bnb,lower_solves_brute,"
         "time_bnb,time_brute,equivalent\n";
  bool all_equivalent = true, all_audits = true, solves_ok = true;
  long rejected = 0;
  const GeneratorOptions& gen = config.generator;
  for (int i = 0; i < config.count; ++i) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(i);
    GeneratedScenario g;
    try {
      g = RandomScenario(seed, gen);
    } catch (const std::exception& e) {
      err << "seed " << seed << ": " << e.what() << "\n";
      return kExitValidation;
    }
    rejected += g.rejected;
    PlanningContext ctx(std::move(g.scenario));
    SolveOptions options;
    options.threads = config.threads;
    std::optional<PlanResult> bnb, brute;
    try {
      bnb = SolveBnb(ctx, options);
    } catch (const Infeasible&) {
    }
    try {
      brute = SolveBrute(ctx, options);
    } catch (const Infeasible&) {
    }
    bool equivalent = bnb.has_value() == brute.has_value();
    if (bnb && brute) {
      equivalent =
          bnb->best.k_u == brute->best.k_u &&
          std::abs(bnb->best.s_u - brute->best.s_u) <=
              1e-9 * std::max(1.0, std::abs(brute->best.s_u));
      for (const PlanResult* r : {&*bnb, &*brute}) {
        AuditTolerances tol;
        tol.endpoint_rel = config.tol_endpoint;
        if (!AuditPlan(ctx.scenario(), MakePlan(ctx, *r), tol).passed()) {
          err << "seed " << seed << ": audit failed for " << r->algorithm
              << "\n";
          all_audits = false;
        }
      }
      if (bnb->stats.lower_solves > brute->stats.lower_solves) {
        solves_ok = false;
      }
    }
    all_equivalent = all_equivalent && equivalent;
    auto time = [&](const std::optional<PlanResult>& r) {
      return config.timing && r ? Num(r->stats.wall_time_s) : std::string("0");
    };
    csv << seed << "," << gen.n_gliders << "," << gen.n_interest_points << ","
        << gen.n_thermals << "," << (bnb ? bnb->best.k_u : -1) << ","
        << Num(bnb ? bnb->best.s_u : 0.0) << ","
        << (bnb ? bnb->stats.lower_solves : 0) << ","
        << (brute ? brute->stats.lower_solves : 0) << "," << time(bnb) << ","
        << time(brute) << "," << (equivalent ? "true" : "false") << "\n";
  }
  if (config.out_path.empty()) {
    out << csv.str();
  } else {
    try {
      WriteText(config.out_path, csv.str());
    } catch (const IoError& e) {
      err << "error: " << e.what() << "\n";
      return kExitValidation;
    }
  }
  err << config.count << " scenarios, " << rejected
      << " draws rejected for spacing ("
      << (config.count + rejected > 0
              ? 100.0 * rejected / (config.count + rejected)
              : 0.0)
      << "% rejection rate)\n";
  if (!solves_ok) {
    err << "note: branch and bound needed more lower solves than brute force "
           "on some scenario\n";
  }
  if (!all_equivalent) {
    err << "error: branch and bound and brute force disagree\n";
    return kExitInvariant;
  }
  return all_audits ? kExitOk : kExitInvariant;
}

int RunCommand(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.command == "validate") return CmdValidate(config, out, err);
  if (config.command == "plan") return CmdPlan(config, out, err);
  if (config.command == "audit") return CmdAudit(config, out, err);
  if (config.command == "render") return CmdRender(config, out, err);
  if (config.command == "bench") return CmdBench(config, out, err);
  if (config.command == "generate") return CmdGenerate(config, out, err);
  err << "unknown command " << config.command << "\n";
  return kExitValidation;
}

}  // namespace soar
