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

#ifndef SOAR_LOWER_SEARCH_H_
#define SOAR_LOWER_SEARCH_H_

#include <cstddef>
#include <memory>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "soar/geometry.h"
#include "soar/scenario.h"

namespace soar {

// No valid visitation order reaches the glider's final position.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Interest point ids assigned to one glider, sorted.
using Allocation = std::vector<std::string>;

// Quantities shared by every search over one scenario.
class PlanningContext {
 public:
  // Throws ValidationError if the scenario is not valid.
  explicit PlanningContext(Scenario scenario);

  const Scenario& scenario() const { return scenario_; }
  const CcConstants& constants() const { return constants_; }
  const GliderLimits& limits() const { return scenario_.limits; }
  double l_min() const { return l_min_; }
  double r_max() const { return r_max_; }
  double tan_gamma() const { return tan_gamma_; }

 private:
  Scenario scenario_;
  CcConstants constants_;
  double l_min_ = 0.0;
  double r_max_ = 0.0;
  double tan_gamma_ = 0.0;
};

struct VisitationOrder {
  std::string glider_id;
  std::vector<std::string> waypoints;
  std::vector<Leg> legs;
  std::vector<double> height_start;  // per leg
  std::vector<double> height_end;    // per leg, before any thermal gain
  double s_l = 0.0;
  int k_l = 0;
  bool is_goal = false;
  bool valid = false;         // every prefix has S_L < S_L^max
  bool weakly_valid = false;  // every prefix has S_L / R_max < S_L^max
};

struct LowerStats {
  std::size_t phase1_expanded = 0;
  std::size_t phase2_expanded = 0;
  std::size_t generated = 0;
  std::size_t dropped_legs = 0;  // children whose leg could not be built
};

struct LowerSolution {
  VisitationOrder best;
  VisitationOrder weak;
  double s_l_best = 0.0;
  int k_l_best = 0;
  double s_l_weak = 0.0;
  int k_l_weak = 0;
  double cost_best = 0.0;  // V_L of best
  double weak_cost = 0.0;  // weak V_L of weak
  LowerStats stats;
};

// Penalty per unvisited interest point: exceeds any arclength the glider
// can fly even after visiting every thermal.
double PenaltyLower(const Scenario& scenario, int glider);

// Arclength budget of an order: start height plus the gain of every
// thermal in the order, divided by tan(gamma_d_min).
double MaxArclength(const Scenario& scenario, int glider,
                    const std::vector<std::string>& order);

double NodeCost(double s_l, int k_l, bool is_goal, double p_l);
double WeakCost(double s_l, int k_l, bool is_goal, double p_l, double r_max);

// Builds the legs of `order` from the glider's start and evaluates it
// against `allocation`. Throws NoSolution if a leg cannot be built.
VisitationOrder EvaluateOrder(const PlanningContext& ctx, int glider,
                              const Allocation& allocation,
                              const std::vector<std::string>& order);

// Children of a non-goal node: one per allocated interest point, thermal
// or the final position not yet in the order. Children whose leg cannot
// be built are skipped and counted in `dropped`.
std::vector<VisitationOrder> Expand(const PlanningContext& ctx, int glider,
                                    const Allocation& allocation,
                                    const VisitationOrder& node,
                                    std::size_t* dropped = nullptr);

// Uniform-cost search for the valid goal order of least cost, then for
// the weakly valid goal order of least weak cost. Throws Infeasible.
LowerSolution SolveLower(const PlanningContext& ctx, int glider,
                         const Allocation& allocation);

// Memo of lower solutions keyed by (glider, allocation). Safe for
// concurrent use; concurrent misses on one key may solve twice and keep
// the first result.
class LowerCache {
 public:
  explicit LowerCache(const PlanningContext& ctx) : ctx_(ctx) {}

  std::shared_ptr<const LowerSolution> Get(int glider,
                                           const Allocation& allocation);
  bool Contains(int glider, const Allocation& allocation) const;
  std::size_t size() const;

  static std::string Key(int glider, const Allocation& allocation);

 private:
  const PlanningContext& ctx_;
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<const LowerSolution>> map_;
};

}  // namespace soar

#endif  // SOAR_LOWER_SEARCH_H_
