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

#ifndef SOAR_UPPER_SEARCH_H_
#define SOAR_UPPER_SEARCH_H_

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "soar/lower_search.h"
#include "soar/scenario.h"

namespace soar {

class TooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Per-glider sorted indices into Scenario::interest_points.
using AllocationMap = std::vector<std::vector<int>>;

struct AllocationSet {
  AllocationMap allocation;
  bool is_goal = false;  // every interest point is allocated
  int k_u = 0;
  double s_u = 0.0;
  double v_u = 0.0;
  double v_weak = 0.0;
  std::vector<std::shared_ptr<const LowerSolution>> lower;
};

struct SearchStats {
  std::size_t upper_nodes_expanded = 0;
  std::size_t upper_nodes_generated = 0;
  std::size_t allocations_evaluated = 0;
  std::size_t lower_solves = 0;  // distinct (glider, allocation) requests
  std::size_t pruned_count = 0;
  double wall_time_s = 0.0;
  std::vector<double> incumbent_history;
};

struct PlanResult {
  std::string algorithm;
  AllocationSet best;
  std::vector<VisitationOrder> orders;  // best.lower[i]->best for each glider
  SearchStats stats;
};

struct SolveOptions {
  int threads = 1;
  // Shared memo; a private one is used when null.
  LowerCache* cache = nullptr;
  double brute_guard = 1e6;
};

// Penalty per unvisited interest point at the fleet level.
double PenaltyUpper(const Scenario& scenario);

// One child per (glider, unallocated interest point), glider-major.
std::vector<AllocationMap> ChildrenUpper(const AllocationMap& node, int n_ip);

bool IsExhaustive(const AllocationMap& node, int n_ip);

// Stable text key such as "g1{ip2,ip4}|g2{ip1,ip3}".
std::string AllocationKey(const Scenario& scenario, const AllocationMap& node);

Allocation AllocationIds(const Scenario& scenario, const std::vector<int>& ips);

AllocationSet EvaluateAllocation(const PlanningContext& ctx, LowerCache& cache,
                                 const AllocationMap& node);

// Deterministic order on allocation sets: cost, unvisited, arclength, key.
bool AllocationBefore(const Scenario& scenario, const AllocationSet& a,
                      const AllocationSet& b);

// Branch-and-bound over allocations. Throws Infeasible.
PlanResult SolveBnb(const PlanningContext& ctx, const SolveOptions& options = {});

// Enumerates every exhaustive allocation set. Throws TooLarge when there
// are more than options.brute_guard of them, and Infeasible.
PlanResult SolveBrute(const PlanningContext& ctx,
                      const SolveOptions& options = {});

// Plan document with legs sampled every `sample_step` metres.
Plan MakePlan(const PlanningContext& ctx, const PlanResult& result,
              double sample_step = 1.0);

}  // namespace soar

#endif  // SOAR_UPPER_SEARCH_H_
