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

#include "soar/scenario.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include <gtest/gtest.h>

namespace soar {
namespace {

const std::string kGolden = std::string(SOAR_SOURCE_DIR) +
                            "/data/golden_scenario.json";

Scenario Small() {
  Scenario s;
  s.limits = {0.045, 0.001, 0.349};
  s.gliders.push_back({"g1", {{0, 0}, 0.0}, 400.0, {500, 0}});
  s.interest_points.push_back({"ip1", WaypointKind::kInterestPoint,
                               {200, 200}, 0.0});
  s.thermals.push_back({"t1", WaypointKind::kThermal, {300, -150}, 150.0});
  return s;
}

bool HasRule(const std::vector<Violation>& v, const std::string& rule) {
  return std::any_of(v.begin(), v.end(),
                     [&](const Violation& x) { return x.rule == rule; });
}

TEST(ValidateTest, GoldenScenarioIsValid) {
  const Scenario s = LoadScenario(kGolden);
  EXPECT_TRUE(Validate(s).empty());
  EXPECT_EQ(s.gliders.size(), 2u);
  EXPECT_EQ(s.interest_points.size(), 4u);
  EXPECT_EQ(s.thermals.size(), 4u);
  EXPECT_EQ(s.gliders[1].final_id(), "f:g2");
}

TEST(ValidateTest, CoincidentWaypoints) {
  Scenario s = Small();
  s.thermals[0].position = s.interest_points[0].position;
  const auto v = Validate(s);
  ASSERT_TRUE(HasRule(v, "spacing"));
  EXPECT_EQ(MinSpacing(s).l_min, 0.0);
}

TEST(ValidateTest, TurnLimitTooLarge) {
  Scenario s = Small();
  s.limits.kappa_max = 0.1;
  EXPECT_TRUE(HasRule(Validate(s), "turn-limit"));
}

TEST(ValidateTest, OtherRules) {
  Scenario s = Small();
  s.thermals[0].id = "ip1";
  s.gliders[0].start_height = 0.0;
  s.interest_points[0].height_gain = 5.0;
  s.gliders[0].start.heading = 4.0;
  const auto v = Validate(s);
  EXPECT_TRUE(HasRule(v, "ids"));
  EXPECT_TRUE(HasRule(v, "start-height"));
  EXPECT_TRUE(HasRule(v, "height-gain"));
  EXPECT_TRUE(HasRule(v, "heading"));

  Scenario empty = Small();
  empty.gliders.clear();
  EXPECT_TRUE(HasRule(Validate(empty), "gliders"));
}

TEST(ValidateTest, PermutationInvariant) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    // Crowded, so spacing violations are common.
    Scenario s;
    std::uniform_real_distribution<double> u(0.0, 300.0);
    s.limits = {0.045, 0.001, 0.349};
    for (int i = 0; i < 3; ++i) {
      s.gliders.push_back({"g" + std::to_string(i), {{u(rng), u(rng)}, 0.1},
                           300.0, {u(rng), u(rng)}});
    }
    for (int i = 0; i < 5; ++i) {
      s.interest_points.push_back({"ip" + std::to_string(i),
                                   WaypointKind::kInterestPoint,
                                   {u(rng), u(rng)}, 0.0});
    }
    const auto before = Validate(s);
    ASSERT_FALSE(before.empty());
    Scenario p = s;
    std::shuffle(p.interest_points.begin(), p.interest_points.end(), rng);
    std::shuffle(p.gliders.begin(), p.gliders.end(), rng);
    const auto after = Validate(p);
    ASSERT_EQ(before.size(), after.size());
    for (std::size_t i = 0; i < before.size(); ++i) {
      EXPECT_EQ(before[i].rule, after[i].rule);
      EXPECT_EQ(before[i].detail, after[i].detail);
    }
  }
}

TEST(MinSpacingTest, MatchesPairwiseScan) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Scenario s = RandomScenario(seed, {}).scenario;
    std::vector<Vec2> pts;
    for (const auto& g : s.gliders) {
      pts.push_back(g.start.position);
      pts.push_back(g.final_position);
    }
    for (const auto& w : s.interest_points) pts.push_back(w.position);
    for (const auto& w : s.thermals) pts.push_back(w.position);
    double best = INFINITY;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (i != j) {
          best = std::min(best, std::hypot(pts[i].x - pts[j].x,
                                           pts[i].y - pts[j].y));
        }
      }
    }
    EXPECT_EQ(MinSpacing(s).l_min, best);
  }
}

TEST(MinSpacingTest, GoldenPair) {
  const Spacing sp = MinSpacing(LoadScenario(kGolden));
  EXPECT_NEAR(sp.l_min, std::hypot(97.0, 48.0), 1e-12);
  EXPECT_EQ(sp.first, "g2");
  EXPECT_EQ(sp.second, "t1");
}

TEST(ScenarioIoTest, RoundTripIsExact) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Scenario s = RandomScenario(seed, {}).scenario;
    const std::string text = ScenarioToJson(s).dump();
    const Scenario t = ParseScenario(text);
    EXPECT_EQ(ScenarioToJson(t).dump(), text);
    ASSERT_EQ(t.gliders.size(), s.gliders.size());
    for (std::size_t i = 0; i < s.gliders.size(); ++i) {
      EXPECT_EQ(t.gliders[i].start.heading, s.gliders[i].start.heading);
      EXPECT_EQ(t.gliders[i].start.position, s.gliders[i].start.position);
      EXPECT_EQ(t.gliders[i].start_height, s.gliders[i].start_height);
    }
    for (std::size_t i = 0; i < s.thermals.size(); ++i) {
      EXPECT_EQ(t.thermals[i].height_gain, s.thermals[i].height_gain);
    }
  }
}

TEST(ScenarioIoTest, SaveAndLoadFile) {
  const Scenario s = LoadScenario(kGolden);
  const auto path =
      std::filesystem::temp_directory_path() / "soar_scenario_io.json";
  SaveScenario(s, path.string());
  EXPECT_EQ(ScenarioToJson(LoadScenario(path.string())), ScenarioToJson(s));
  std::filesystem::remove(path);
}

TEST(ScenarioIoTest, EmptyGlidersIsValidationError) {
  Scenario s = Small();
  s.gliders.clear();
  try {
    ParseScenario(ScenarioToJson(s).dump());
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_TRUE(HasRule(e.violations(), "gliders"));
  }
}

TEST(ScenarioIoTest, ParseErrorsNameLineAndField) {
  try {
    ParseScenario("{\n  \"scenario\": {\n    \"limits\": ,\n  }\n}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos)
        << e.what();
  }
  nlohmann::json doc = ScenarioToJson(Small());
  doc["scenario"]["gliders"][0]["start_height"] = "high";
  try {
    ScenarioFromJson(doc);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(".scenario.gliders[0].start_height"),
              std::string::npos)
        << e.what();
  }
  doc = ScenarioToJson(Small());
  doc["scenario"].erase("thermals");
  EXPECT_THROW(ScenarioFromJson(doc), ParseError);
  EXPECT_THROW(LoadScenario("/nonexistent/soar.json"), IoError);
}

Plan SamplePlan() {
  Plan p;
  p.algorithm = "bnb";
  p.k_u = 1;
  p.s_u = 1234.5678901234567;
  p.v_u = 5000.125;
  GliderPlan g;
  g.glider_id = "g1";
  g.allocation = {"ip1"};
  g.order = {"t1", "f:g1"};
  g.s_l = 1234.5678901234567;
  g.k_l = 1;
  PlannedLeg leg;
  leg.from = "g1";
  leg.to = "t1";
  leg.start = {{0.1, 0.2}, -1.41};
  leg.beta = 0.7;
  leg.side = TurnSide::kRight;
  leg.l_e = 100.0 / 3.0;
  leg.l_cc = 40.0;
  leg.l_f = 80.0;
  leg.height_start = 400.0;
  leg.height_end = 370.8883470226;
  leg.profile.Append({20.0, 0.0, -0.001});
  leg.profile.Append({20.0, -0.02, 0.001});
  leg.profile.Append({40.0, 0.0, 0.0});
  leg.samples = {{0.1, 0.2}, {1.0 / 3.0, 2.0 / 7.0}};
  g.legs.push_back(leg);
  p.gliders.push_back(g);
  p.stats = {{"lower_solves", 3}};
  return p;
}

TEST(PlanIoTest, RoundTrip) {
  const Plan p = SamplePlan();
  const auto path = std::filesystem::temp_directory_path() / "soar_plan.json";
  SavePlan(p, path.string());
  const Plan q = LoadPlan(path.string());
  std::filesystem::remove(path);
  EXPECT_EQ(PlanToJson(q), PlanToJson(p));
  ASSERT_EQ(q.gliders.size(), 1u);
  const PlannedLeg& leg = q.gliders[0].legs[0];
  EXPECT_EQ(leg.side, TurnSide::kRight);
  EXPECT_EQ(leg.l_e, 100.0 / 3.0);
  EXPECT_EQ(leg.samples[1].y, 2.0 / 7.0);
  ASSERT_EQ(leg.profile.segments().size(), 3u);
  EXPECT_EQ(leg.profile.segments()[1].kappa0, -0.02);
}

TEST(PlanIoTest, RejectsBadSide) {
  nlohmann::json doc = PlanToJson(SamplePlan());
  doc["plan"]["gliders"][0]["legs"][0]["side"] = "up";
  EXPECT_THROW(PlanFromJson(doc), ParseError);
}

TEST(RandomScenarioTest, DeterministicAndAdmissible) {
  const double two_r_t = 2.0 * ComputeCcConstants({0.045, 0.001, 0.349}).r_t;
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const GeneratedScenario a = RandomScenario(seed, {});
    const GeneratedScenario b = RandomScenario(seed, {});
    EXPECT_EQ(ScenarioToJson(a.scenario), ScenarioToJson(b.scenario));
    EXPECT_EQ(a.rejected, b.rejected);
    EXPECT_GT(MinSpacing(a.scenario).l_min, two_r_t);
    EXPECT_TRUE(Validate(a.scenario).empty());
    for (const auto& t : a.scenario.thermals) {
      EXPECT_GE(t.height_gain, 100.0);
      EXPECT_LT(t.height_gain, 300.0);
    }
  }
  EXPECT_NE(ScenarioToJson(RandomScenario(1, {}).scenario),
            ScenarioToJson(RandomScenario(2, {}).scenario));
}

}  // namespace
}  // namespace soar
