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

#ifndef SOAR_SCENARIO_H_
#define SOAR_SCENARIO_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "soar/geometry.h"

namespace soar {

enum class WaypointKind { kInterestPoint, kThermal, kFinal };

const char* WaypointKindName(WaypointKind kind);

struct Waypoint {
  std::string id;
  WaypointKind kind = WaypointKind::kInterestPoint;
  Vec2 position;
  double height_gain = 0.0;  // metres; nonzero only for thermals
};

struct GliderSpec {
  std::string id;
  Pose start;
  double start_height = 0.0;
  Vec2 final_position;

  // Id of the glider-specific final waypoint, e.g. "f:g2".
  std::string final_id() const { return "f:" + id; }
  Waypoint final_waypoint() const {
    return {final_id(), WaypointKind::kFinal, final_position, 0.0};
  }
};

struct Scenario {
  std::vector<GliderSpec> gliders;
  std::vector<Waypoint> interest_points;
  std::vector<Waypoint> thermals;
  GliderLimits limits;

  // Interest point or thermal by id; nullptr if absent.
  const Waypoint* FindWaypoint(const std::string& id) const;
  int FindGlider(const std::string& id) const;
};

// Closest pair among all waypoints, glider starts and glider finals.
struct Spacing {
  double l_min = 0.0;
  std::string first;
  std::string second;
};
// Starts are labelled by glider id, finals by their final waypoint id.
Spacing MinSpacing(const Scenario& scenario);

struct Violation {
  std::string rule;    // "turn-limit", "spacing", "ids", ...
  std::string detail;
};

// Empty iff the scenario is usable by the planner.
std::vector<Violation> Validate(const Scenario& scenario);

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json ScenarioToJson(const Scenario& scenario);
// Throws ParseError naming the offending field.
Scenario ScenarioFromJson(const nlohmann::json& doc);

// Parses and validates. Throws ParseError, ValidationError or IoError.
Scenario LoadScenario(const std::string& path);
Scenario ParseScenario(const std::string& text);
void SaveScenario(const Scenario& scenario, const std::string& path);

// A planned leg as written to a plan file.
struct PlannedLeg {
  std::string from;  // glider id for the first leg
  std::string to;
  Pose start;
  double beta = 0.0;
  TurnSide side = TurnSide::kLeft;
  double l_e = 0.0;
  double l_cc = 0.0;
  double l_f = 0.0;
  double height_start = 0.0;
  double height_end = 0.0;  // before any thermal gain at `to`
  CurvatureProfile profile;
  std::vector<Vec2> samples;
};

struct GliderPlan {
  std::string glider_id;
  std::vector<std::string> allocation;
  std::vector<std::string> order;  // ends with the final waypoint id
  std::vector<PlannedLeg> legs;
  double s_l = 0.0;
  int k_l = 0;
};

struct Plan {
  std::string algorithm;
  std::vector<GliderPlan> gliders;
  int k_u = 0;
  double s_u = 0.0;
  double v_u = 0.0;
  nlohmann::json stats = nlohmann::json::object();
};

nlohmann::json PlanToJson(const Plan& plan);
Plan PlanFromJson(const nlohmann::json& doc);
void SavePlan(const Plan& plan, const std::string& path);
Plan LoadPlan(const std::string& path);

struct GeneratorOptions {
  int n_gliders = 2;
  int n_interest_points = 4;
  int n_thermals = 3;
  double extent = 1000.0;  // square side, metres
  double min_height = 300.0;
  double max_height = 700.0;
  double min_gain = 100.0;
  double max_gain = 300.0;
  GliderLimits limits{0.045, 0.001, 0.349};
  int max_attempts = 100000;
};

struct GeneratedScenario {
  Scenario scenario;
  int rejected = 0;  // draws discarded for violating the spacing assumption
};

// Deterministic for a given seed on every platform.
GeneratedScenario RandomScenario(std::uint64_t seed,
                                 const GeneratorOptions& options);

}  // namespace soar

#endif  // SOAR_SCENARIO_H_
