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

#ifndef SOAR_PATHCHECK_H_
#define SOAR_PATHCHECK_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "soar/geometry.h"
#include "soar/scenario.h"

namespace soar {

// Plan and scenario do not describe the same problem.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LegIntegration {
  std::vector<double> arclength;
  std::vector<Vec2> points;
  std::vector<double> heading;
  std::vector<double> curvature;
  Vec2 endpoint;
  double end_heading = 0.0;
  double length = 0.0;          // sum of profile segment lengths
  double error_estimate = 0.0;  // Richardson estimate for the endpoint
};

// Integrates the position from the exact heading of `profile` with
// Simpson's rule on panels no longer than `step`. Straight segments are
// advanced in closed form. The endpoint error estimate comes from a
// second pass at half the panel width.
LegIntegration IntegrateLeg(const Pose& start, const CurvatureProfile& profile,
                            double step);

struct AuditTolerances {
  double endpoint_rel = 1e-6;   // times l_e
  double curvature_rel = 1e-9;
  double sharpness_rel = 1e-9;
  double continuity = 1e-9;
  double length_rel = 1e-6;
  double step = 0.1;
};

struct LegAudit {
  std::string from;
  std::string to;
  double l_e = 0.0;
  double l_f_stated = 0.0;
  double l_f_recomputed = 0.0;
  double endpoint_error = 0.0;
  double endpoint_error_estimate = 0.0;
  double start_error = 0.0;
  double max_abs_curvature = 0.0;
  double max_abs_sharpness = 0.0;
  double heading_continuity_error = 0.0;
  double curvature_continuity_error = 0.0;
  double ratio = 0.0;  // l_f / l_e
  bool endpoint_ok = false;
  bool curvature_ok = false;
  bool sharpness_ok = false;
  bool continuity_ok = false;
  bool length_ok = false;
  bool ratio_ok = false;
};

struct HeightSample {
  double arclength = 0.0;
  double height = 0.0;
};

struct GliderAudit {
  std::string glider_id;
  std::vector<LegAudit> legs;
  // Physical height; a thermal shows up as two samples at one arclength.
  std::vector<HeightSample> height_profile;
  // Credit for every thermal in the order up to and including the leg's
  // destination.
  double min_height_literal = 0.0;
  // Credit only after arriving at the thermal.
  double min_height_strict = 0.0;
  std::optional<double> first_negative_literal;  // arclength
  std::optional<double> first_negative_strict;
  bool literal_ok = false;
  bool strict_ok = false;
};

struct AuditReport {
  std::vector<GliderAudit> gliders;
  double r_max = 0.0;
  bool endpoint_ok = true;
  bool curvature_ok = true;
  bool sharpness_ok = true;
  bool continuity_ok = true;
  bool length_ok = true;
  bool ratio_ok = true;
  bool height_literal_ok = true;
  bool height_strict_ok = true;

  // Every check except the strict-physical height rule, which is
  // informational.
  bool passed() const {
    return endpoint_ok && curvature_ok && sharpness_ok && continuity_ok &&
           length_ok && ratio_ok && height_literal_ok;
  }
};

// Throws StructureError on unknown gliders or waypoints, or on legs that
// do not follow the stated order.
AuditReport AuditPlan(const Scenario& scenario, const Plan& plan,
                      const AuditTolerances& tolerances = {});

nlohmann::json AuditToJson(const AuditReport& report);

std::string RenderSvg(const Scenario& scenario, const Plan* plan = nullptr);
// Throws IoError.
void WriteSvg(const Scenario& scenario, const Plan* plan,
              const std::string& path);

}  // namespace soar

#endif  // SOAR_PATHCHECK_H_
