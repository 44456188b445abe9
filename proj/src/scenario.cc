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
#include <fstream>
#include <limits>
#include <map>
#include <tuple>
#include <random>
#include <set>
#include <sstream>
#include <utility>

namespace soar {

using nlohmann::json;

namespace {

struct Labelled {
  std::string label;
  Vec2 position;
};

std::vector<Labelled> AllPoints(const Scenario& s) {
  std::vector<Labelled> out;
  for (const auto& g : s.gliders) {
    out.push_back({g.id, g.start.position});
    out.push_back({g.final_id(), g.final_position});
  }
  for (const auto& w : s.interest_points) out.push_back({w.id, w.position});
  for (const auto& w : s.thermals) out.push_back({w.id, w.position});
  return out;
}

std::string Fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

bool Finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

// Field access with a dotted path for diagnostics.
class Reader {
 public:
  Reader(const json& node, std::string path)
      : node_(node), path_(std::move(path)) {}

  const json& node() const { return node_; }
  const std::string& path() const { return path_; }

  Reader at(const std::string& key) const {
    if (!node_.is_object()) Fail(path_, "expected an object");
    auto it = node_.find(key);
    if (it == node_.end()) Fail(path_ + "." + key, "missing field");
    return Reader(*it, path_ + "." + key);
  }
  bool has(const std::string& key) const {
    return node_.is_object() && node_.contains(key);
  }
  Reader at(std::size_t i) const {
    return Reader(node_.at(i), path_ + "[" + std::to_string(i) + "]");
  }
  std::size_t array_size() const {
    if (!node_.is_array()) Fail(path_, "expected an array");
    return node_.size();
  }
  double number() const {
    if (!node_.is_number()) Fail(path_, "expected a number");
    return node_.get<double>();
  }
  int integer() const {
    if (!node_.is_number_integer()) Fail(path_, "expected an integer");
    return node_.get<int>();
  }
  std::string string() const {
    if (!node_.is_string()) Fail(path_, "expected a string");
    return node_.get<std::string>();
  }
  Vec2 vec2() const {
    if (!node_.is_array() || node_.size() != 2) {
      Fail(path_, "expected [x, y]");
    }
    return {at(0).number(), at(1).number()};
  }

  [[noreturn]] static void Fail(const std::string& path,
                                const std::string& what) {
    throw ParseError(path + ": " + what);
  }

 private:
  const json& node_;
  std::string path_;
};

json ToJson(Vec2 v) { return json::array({v.x, v.y}); }

json ToJson(const Pose& p) {
  return {{"position", ToJson(p.position)}, {"heading", p.heading}};
}

Pose PoseFrom(const Reader& r) {
  return {r.at("position").vec2(), r.at("heading").number()};
}

json Parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line and column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " +
                     std::to_string(col) + ": " + e.what());
  }
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

TurnSide SideFrom(const Reader& r) {
  const std::string s = r.string();
  if (s == "left") return TurnSide::kLeft;
  if (s == "right") return TurnSide::kRight;
  Reader::Fail(r.path(), "expected \"left\" or \"right\"");
}

// Uniform double in [0, 1) from the top 53 bits.
double Unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * Unit(rng);
}

}  // namespace

const char* WaypointKindName(WaypointKind kind) {
  switch (kind) {
    case WaypointKind::kInterestPoint:
      return "interest_point";
    case WaypointKind::kThermal:
      return "thermal";
    case WaypointKind::kFinal:
      return "final";
  }
  return "?";
}

const Waypoint* Scenario::FindWaypoint(const std::string& id) const {
  for (const auto& w : interest_points) {
    if (w.id == id) return &w;
  }
  for (const auto& w : thermals) {
    if (w.id == id) return &w;
  }
  return nullptr;
}

int Scenario::FindGlider(const std::string& id) const {
  for (std::size_t i = 0; i < gliders.size(); ++i) {
    if (gliders[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

Spacing MinSpacing(const Scenario& scenario) {
  const std::vector<Labelled> pts = AllPoints(scenario);
  Spacing best;
  best.l_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double d = Distance(pts[i].position, pts[j].position);
      auto names = std::minmax(pts[i].label, pts[j].label);
      if (d < best.l_min ||
          (d == best.l_min &&
           std::tie(names.first, names.second) <
               std::tie(best.first, best.second))) {
        best = {d, names.first, names.second};
      }
    }
  }
  return best;
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error([&] {
        std::string msg = "scenario is invalid:";
        for (const auto& v : violations) {
          msg += "\n  [" + v.rule + "] " + v.detail;
        }
        return msg;
      }()),
      violations_(std::move(violations)) {}

std::vector<Violation> Validate(const Scenario& s) {
  std::vector<Violation> out;
  auto add = [&](std::string rule, std::string detail) {
    out.push_back({std::move(rule), std::move(detail)});
  };

  if (s.gliders.empty()) add("gliders", "no gliders");

  std::map<std::string, int> seen;
  for (const auto& g : s.gliders) {
    ++seen[g.id];
    ++seen[g.final_id()];
  }
  for (const auto& w : s.interest_points) ++seen[w.id];
  for (const auto& w : s.thermals) ++seen[w.id];
  for (const auto& [id, n] : seen) {
    if (n > 1) add("ids", "duplicate id \"" + id + "\"");
    if (id.empty()) add("ids", "empty id");
  }

  for (const auto& g : s.gliders) {
    if (!(g.start_height > 0.0) || !std::isfinite(g.start_height)) {
      add("start-height", g.id + " start height " + Fmt(g.start_height) +
                              " is not positive");
    }
    if (!Finite(g.start.position) || !Finite(g.final_position)) {
      add("finite", g.id + " has a non-finite coordinate");
    }
    if (!(g.start.heading >= -kPi && g.start.heading <= kPi)) {
      add("heading",
          g.id + " heading " + Fmt(g.start.heading) + " outside [-pi, pi]");
    }
  }
  for (const auto& w : s.interest_points) {
    if (w.kind != WaypointKind::kInterestPoint) {
      add("kind", w.id + " listed as interest point has another kind");
    }
    if (w.height_gain != 0.0) {
      add("height-gain", w.id + " is an interest point with height gain " +
                             Fmt(w.height_gain));
    }
    if (!Finite(w.position)) add("finite", w.id + " has a non-finite coordinate");
  }
  for (const auto& w : s.thermals) {
    if (w.kind != WaypointKind::kThermal) {
      add("kind", w.id + " listed as thermal has another kind");
    }
    if (!(w.height_gain >= 0.0) || !std::isfinite(w.height_gain)) {
      add("height-gain",
          w.id + " has invalid height gain " + Fmt(w.height_gain));
    }
    if (!Finite(w.position)) add("finite", w.id + " has a non-finite coordinate");
  }

  const GliderLimits& lim = s.limits;
  const bool limits_ok = lim.kappa_max > 0.0 && lim.sigma_max > 0.0 &&
                         std::isfinite(lim.kappa_max) &&
                         std::isfinite(lim.sigma_max);
  if (!limits_ok) {
    add("limits", "kappa_max and sigma_max must be positive");
  }
  if (!(lim.gamma_d_min > 0.0 && lim.gamma_d_min < kPi / 2)) {
    add("limits", "gamma_d_min " + Fmt(lim.gamma_d_min) +
                      " outside (0, pi/2)");
  }
  if (limits_ok) {
    const double theta_lim = lim.kappa_max * lim.kappa_max / lim.sigma_max;
    if (theta_lim >= kPi) {
      add("turn-limit",
          "theta_lim = " + Fmt(theta_lim) + " is not below pi");
    } else {
      const double two_r_t = 2.0 * ComputeCcConstants(lim).r_t;
      const std::vector<Labelled> pts = AllPoints(s);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
          const double d = Distance(pts[i].position, pts[j].position);
          if (d <= two_r_t) {
            auto names = std::minmax(pts[i].label, pts[j].label);
            add("spacing", "distance " + Fmt(d) + " between " +
                                    names.first + " and " + names.second +
                                    " does not exceed 2 R_T = " +
                                    Fmt(two_r_t));
          }
        }
      }
    }
  }

  std::sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
    return std::tie(a.rule, a.detail) < std::tie(b.rule, b.detail);
  });
  return out;
}

json ScenarioToJson(const Scenario& s) {
  json gliders = json::array();
  for (const auto& g : s.gliders) {
    gliders.push_back({{"id", g.id},
                       {"start", ToJson(g.start)},
                       {"start_height", g.start_height},
                       {"final_position", ToJson(g.final_position)}});
  }
  json ips = json::array();
  for (const auto& w : s.interest_points) {
    ips.push_back({{"id", w.id}, {"position", ToJson(w.position)}});
  }
  json thermals = json::array();
  for (const auto& w : s.thermals) {
    thermals.push_back({{"id", w.id},
                        {"position", ToJson(w.position)},
                        {"height_gain", w.height_gain}});
  }
  return {{"scenario",
           {{"limits",
             {{"kappa_max", s.limits.kappa_max},
              {"sigma_max", s.limits.sigma_max},
              {"gamma_d_min", s.limits.gamma_d_min}}},
            {"gliders", gliders},
            {"interest_points", ips},
            {"thermals", thermals}}}};
}

Scenario ScenarioFromJson(const json& doc) {
  const Reader root = Reader(doc, "").at("scenario");
  Scenario s;
  const Reader lim = root.at("limits");
  s.limits.kappa_max = lim.at("kappa_max").number();
  s.limits.sigma_max = lim.at("sigma_max").number();
  s.limits.gamma_d_min = lim.at("gamma_d_min").number();

  const Reader gliders = root.at("gliders");
  for (std::size_t i = 0; i < gliders.array_size(); ++i) {
    const Reader g = gliders.at(i);
    GliderSpec spec;
    spec.id = g.at("id").string();
    spec.start = PoseFrom(g.at("start"));
    spec.start_height = g.at("start_height").number();
    spec.final_position = g.at("final_position").vec2();
    s.gliders.push_back(std::move(spec));
  }
  const Reader ips = root.at("interest_points");
  for (std::size_t i = 0; i < ips.array_size(); ++i) {
    const Reader w = ips.at(i);
    Waypoint wp{w.at("id").string(), WaypointKind::kInterestPoint,
                w.at("position").vec2(), 0.0};
    if (w.has("height_gain")) wp.height_gain = w.at("height_gain").number();
    s.interest_points.push_back(std::move(wp));
  }
  const Reader thermals = root.at("thermals");
  for (std::size_t i = 0; i < thermals.array_size(); ++i) {
    const Reader w = thermals.at(i);
    s.thermals.push_back({w.at("id").string(), WaypointKind::kThermal,
                          w.at("position").vec2(),
                          w.at("height_gain").number()});
  }
  return s;
}

Scenario ParseScenario(const std::string& text) {
  Scenario s = ScenarioFromJson(Parse(text));
  std::vector<Violation> violations = Validate(s);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return s;
}

Scenario LoadScenario(const std::string& path) {
  return ParseScenario(ReadFile(path));
}

void SaveScenario(const Scenario& scenario, const std::string& path) {
  WriteFile(path, ScenarioToJson(scenario).dump(2) + "\n");
}

json PlanToJson(const Plan& plan) {
  json gliders = json::array();
  for (const auto& g : plan.gliders) {
    json legs = json::array();
    for (const auto& leg : g.legs) {
      json segs = json::array();
      for (const auto& seg : leg.profile.segments()) {
        segs.push_back({{"length", seg.length},
                        {"kappa0", seg.kappa0},
                        {"sharpness", seg.sharpness}});
      }
      json samples = json::array();
      for (const auto& p : leg.samples) samples.push_back(ToJson(p));
      legs.push_back({{"from", leg.from},
                      {"to", leg.to},
                      {"start", ToJson(leg.start)},
                      {"beta", leg.beta},
                      {"side", TurnSideName(leg.side)},
                      {"l_e", leg.l_e},
                      {"l_cc", leg.l_cc},
                      {"l_f", leg.l_f},
                      {"height_start", leg.height_start},
                      {"height_end", leg.height_end},
                      {"profile", segs},
                      {"samples", samples}});
    }
    gliders.push_back({{"glider", g.glider_id},
                       {"allocation", g.allocation},
                       {"order", g.order},
                       {"s_l", g.s_l},
                       {"k_l", g.k_l},
                       {"legs", legs}});
  }
  return {{"plan",
           {{"algorithm", plan.algorithm},
            {"k_u", plan.k_u},
            {"s_u", plan.s_u},
            {"v_u", plan.v_u},
            {"gliders", gliders},
            {"stats", plan.stats}}}};
}

Plan PlanFromJson(const json& doc) {
  const Reader root = Reader(doc, "").at("plan");
  Plan plan;
  plan.algorithm = root.at("algorithm").string();
  plan.k_u = root.at("k_u").integer();
  plan.s_u = root.at("s_u").number();
  plan.v_u = root.at("v_u").number();
  if (root.has("stats")) plan.stats = root.at("stats").node();
  const Reader gliders = root.at("gliders");
  for (std::size_t i = 0; i < gliders.array_size(); ++i) {
    const Reader g = gliders.at(i);
    GliderPlan gp;
    gp.glider_id = g.at("glider").string();
    const Reader alloc = g.at("allocation");
    for (std::size_t k = 0; k < alloc.array_size(); ++k) {
      gp.allocation.push_back(alloc.at(k).string());
    }
    const Reader order = g.at("order");
    for (std::size_t k = 0; k < order.array_size(); ++k) {
      gp.order.push_back(order.at(k).string());
    }
    gp.s_l = g.at("s_l").number();
    gp.k_l = g.at("k_l").integer();
    const Reader legs = g.at("legs");
    for (std::size_t k = 0; k < legs.array_size(); ++k) {
      const Reader l = legs.at(k);
      PlannedLeg leg;
      leg.from = l.at("from").string();
      leg.to = l.at("to").string();
      leg.start = PoseFrom(l.at("start"));
      leg.beta = l.at("beta").number();
      leg.side = SideFrom(l.at("side"));
      leg.l_e = l.at("l_e").number();
      leg.l_cc = l.at("l_cc").number();
      leg.l_f = l.at("l_f").number();
      leg.height_start = l.at("height_start").number();
      leg.height_end = l.at("height_end").number();
      const Reader segs = l.at("profile");
      for (std::size_t m = 0; m < segs.array_size(); ++m) {
        const Reader seg = segs.at(m);
        leg.profile.Append({seg.at("length").number(),
                            seg.at("kappa0").number(),
                            seg.at("sharpness").number()});
      }
      const Reader samples = l.at("samples");
      for (std::size_t m = 0; m < samples.array_size(); ++m) {
        leg.samples.push_back(samples.at(m).vec2());
      }
      gp.legs.push_back(std::move(leg));
    }
    plan.gliders.push_back(std::move(gp));
  }
  return plan;
}

void SavePlan(const Plan& plan, const std::string& path) {
  WriteFile(path, PlanToJson(plan).dump(1) + "\n");
}

Plan LoadPlan(const std::string& path) {
  return PlanFromJson(Parse(ReadFile(path)));
}

GeneratedScenario RandomScenario(std::uint64_t seed,
                                 const GeneratorOptions& options) {
  std::mt19937_64 rng(seed);
  GeneratedScenario out;
  const double two_r_t = 2.0 * ComputeCcConstants(options.limits).r_t;
  auto point = [&] {
    return Vec2{Uniform(rng, 0.0, options.extent),
                Uniform(rng, 0.0, options.extent)};
  };
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    Scenario s;
    s.limits = options.limits;
    for (int i = 0; i < options.n_gliders; ++i) {
      GliderSpec g;
      g.id = "g" + std::to_string(i + 1);
      g.start.position = point();
      g.start.heading = Uniform(rng, -kPi, kPi);
      g.start_height = Uniform(rng, options.min_height, options.max_height);
      g.final_position = point();
      s.gliders.push_back(std::move(g));
    }
    for (int i = 0; i < options.n_interest_points; ++i) {
      s.interest_points.push_back({"ip" + std::to_string(i + 1),
                                   WaypointKind::kInterestPoint, point(), 0.0});
    }
    for (int i = 0; i < options.n_thermals; ++i) {
      const Vec2 p = point();
      s.thermals.push_back({"t" + std::to_string(i + 1), WaypointKind::kThermal,
                            p, Uniform(rng, options.min_gain, options.max_gain)});
    }
    if (MinSpacing(s).l_min > two_r_t) {
      out.scenario = std::move(s);
      return out;
    }
    ++out.rejected;
  }
  throw std::runtime_error("no admissible scenario after " +
                           std::to_string(options.max_attempts) + " draws");
}

}  // namespace soar
