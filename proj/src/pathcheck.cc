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

#include "soar/pathcheck.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace soar {

namespace {

// Integrates one pass. When `out` is null only the endpoint is produced.
Vec2 Pass(const Pose& start, const CurvatureProfile& profile, double step,
          int refine, LegIntegration* out) {
  Vec2 pos = start.position;
  double theta = start.heading;
  double s0 = 0.0;
  auto record = [&](double s, Vec2 p, double th, double k) {
    if (out == nullptr) return;
    out->arclength.push_back(s);
    out->points.push_back(p);
    out->heading.push_back(th);
    out->curvature.push_back(k);
  };
  record(0.0, pos, theta, profile.empty() ? 0.0 : profile.segments()[0].kappa0);
  for (const auto& seg : profile.segments()) {
    const double k0 = seg.kappa0, sg = seg.sharpness;
    auto heading = [&](double u) { return theta + k0 * u + 0.5 * sg * u * u; };
    const int n = std::max(1, static_cast<int>(std::ceil(seg.length / step))) *
                  refine;
    const double h = seg.length / n;
    const Vec2 seg_start = pos;
    for (int i = 0; i < n; ++i) {
      const double a = i * h, b = (i + 1) * h, m = 0.5 * (a + b);
      if (k0 == 0.0 && sg == 0.0) {
        const double u = i + 1 == n ? seg.length : b;
        pos = seg_start + Vec2{u * std::cos(theta), u * std::sin(theta)};
      } else {
        const double ta = heading(a), tm = heading(m), tb = heading(b);
        pos = pos + (h / 6.0) * Vec2{std::cos(ta) + 4.0 * std::cos(tm) +
                                         std::cos(tb),
                                     std::sin(ta) + 4.0 * std::sin(tm) +
                                         std::sin(tb)};
      }
      record(s0 + b, pos, heading(b), k0 + sg * b);
    }
    theta = heading(seg.length);
    s0 += seg.length;
  }
  if (out != nullptr) {
    out->endpoint = pos;
    out->end_heading = theta;
    out->length = s0;
  }
  return pos;
}

std::string F(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

LegIntegration IntegrateLeg(const Pose& start, const CurvatureProfile& profile,
                            double step) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  LegIntegration out;
  const Vec2 coarse = Pass(start, profile, step, 1, nullptr);
  Pass(start, profile, step, 2, &out);
  out.error_estimate = Distance(out.endpoint, coarse) / 15.0;
  return out;
}

AuditReport AuditPlan(const Scenario& scenario, const Plan& plan,
                      const AuditTolerances& tol) {
  AuditReport report;
  const GliderLimits& lim = scenario.limits;
  const CcConstants constants = ComputeCcConstants(lim);
  report.r_max = RatioBound(MinSpacing(scenario).l_min, constants, lim);
  const double tan_g = std::tan(lim.gamma_d_min);

  if (plan.gliders.size() != scenario.gliders.size()) {
    throw StructureError("plan has " + std::to_string(plan.gliders.size()) +
                         " gliders, scenario has " +
                         std::to_string(scenario.gliders.size()));
  }
  for (const GliderPlan& gp : plan.gliders) {
    const int gi = scenario.FindGlider(gp.glider_id);
    if (gi < 0) throw StructureError("unknown glider " + gp.glider_id);
    const GliderSpec& g = scenario.gliders[gi];
    if (gp.order.empty() || gp.order.back() != g.final_id()) {
      throw StructureError(g.id + ": order does not end at " + g.final_id());
    }
    if (gp.legs.size() != gp.order.size()) {
      throw StructureError(g.id + ": " + std::to_string(gp.legs.size()) +
                           " legs for " + std::to_string(gp.order.size()) +
                           " waypoints");
    }

    GliderAudit ga;
    ga.glider_id = g.id;
    Pose prev_end = g.start;
    double prev_kappa = 0.0;
    Vec2 prev_pos = g.start.position;
    double s = 0.0;
    double height = g.start_height;    // physical
    double credited = g.start_height;  // literal
    ga.min_height_literal = std::numeric_limits<double>::infinity();
    ga.min_height_strict = std::numeric_limits<double>::infinity();
    ga.height_profile.push_back({0.0, height});

    for (std::size_t j = 0; j < gp.legs.size(); ++j) {
      const PlannedLeg& pl = gp.legs[j];
      const std::string& to = gp.order[j];
      if (pl.to != to) {
        throw StructureError(g.id + ": leg " + std::to_string(j) +
                             " goes to " + pl.to + ", order says " + to);
      }
      Vec2 target;
      double gain = 0.0;
      if (to == g.final_id()) {
        if (j + 1 != gp.order.size()) {
          throw StructureError(g.id + ": final position before end of order");
        }
        target = g.final_position;
      } else if (const Waypoint* w = scenario.FindWaypoint(to)) {
        target = w->position;
        gain = w->height_gain;
      } else {
        throw StructureError(g.id + ": unknown waypoint " + to);
      }

      LegAudit la;
      la.from = pl.from;
      la.to = to;
      la.l_e = Distance(prev_pos, target);
      const LegIntegration in = IntegrateLeg(pl.start, pl.profile, tol.step);
      la.l_f_stated = pl.l_f;
      la.l_f_recomputed = in.length;
      la.endpoint_error = Distance(in.endpoint, target);
      la.endpoint_error_estimate = in.error_estimate;
      la.start_error = Distance(pl.start.position, prev_pos);
      for (const auto& seg : pl.profile.segments()) {
        la.max_abs_curvature = std::max(
            {la.max_abs_curvature, std::abs(seg.kappa0),
             std::abs(seg.kappa_end())});
        la.max_abs_sharpness =
            std::max(la.max_abs_sharpness, std::abs(seg.sharpness));
      }
      la.heading_continuity_error =
          std::abs(NormalizeAngle(pl.start.heading - prev_end.heading));
      const double k_start =
          pl.profile.empty() ? 0.0 : pl.profile.segments().front().kappa0;
      la.curvature_continuity_error = std::abs(k_start - prev_kappa);
      la.ratio = la.l_f_recomputed / la.l_e;

      la.endpoint_ok = la.endpoint_error <= tol.endpoint_rel * la.l_e &&
                       la.start_error <= tol.endpoint_rel * la.l_e;
      la.curvature_ok =
          la.max_abs_curvature <= lim.kappa_max * (1.0 + tol.curvature_rel);
      la.sharpness_ok =
          la.max_abs_sharpness <= lim.sigma_max * (1.0 + tol.sharpness_rel);
      la.continuity_ok = la.heading_continuity_error <= tol.continuity &&
                         la.curvature_continuity_error <= tol.continuity;
      la.length_ok = std::abs(la.l_f_recomputed - la.l_f_stated) <=
                     tol.length_rel * la.l_f_stated;
      la.ratio_ok = la.l_e > 0.0 && la.ratio <= report.r_max;

      // Heights along the leg decrease linearly; check the leg end.
      credited += gain;
      const double s_end = s + in.length;
      const double literal = credited - tan_g * s_end;
      const double strict = height - tan_g * in.length;
      if (literal < 0.0 && !ga.first_negative_literal) {
        ga.first_negative_literal = std::max(s, credited / tan_g);
      }
      if (strict < 0.0 && !ga.first_negative_strict) {
        ga.first_negative_strict = s + std::max(0.0, height / tan_g);
      }
      ga.min_height_literal = std::min(ga.min_height_literal, literal);
      ga.min_height_strict = std::min(ga.min_height_strict, strict);
      ga.height_profile.push_back({s_end, strict});
      height = strict + gain;
      if (gain != 0.0) ga.height_profile.push_back({s_end, height});

      prev_end = {target, in.end_heading};
      prev_kappa = in.curvature.empty() ? 0.0 : in.curvature.back();
      prev_pos = target;
      s = s_end;

      report.endpoint_ok = report.endpoint_ok && la.endpoint_ok;
      report.curvature_ok = report.curvature_ok && la.curvature_ok;
      report.sharpness_ok = report.sharpness_ok && la.sharpness_ok;
      report.continuity_ok = report.continuity_ok && la.continuity_ok;
      report.length_ok = report.length_ok && la.length_ok;
      report.ratio_ok = report.ratio_ok && la.ratio_ok;
      ga.legs.push_back(std::move(la));
    }
    // The glider arrives with zero curvature.
    if (std::abs(prev_kappa) > tol.continuity) report.continuity_ok = false;
    ga.literal_ok = ga.min_height_literal >= 0.0;
    ga.strict_ok = ga.min_height_strict >= 0.0;
    report.height_literal_ok = report.height_literal_ok && ga.literal_ok;
    report.height_strict_ok = report.height_strict_ok && ga.strict_ok;
    report.gliders.push_back(std::move(ga));
  }
  return report;
}

nlohmann::json AuditToJson(const AuditReport& r) {
  using nlohmann::json;
  json gliders = json::array();
  for (const auto& g : r.gliders) {
    json legs = json::array();
    for (const auto& l : g.legs) {
      legs.push_back({{"from", l.from},
                      {"to", l.to},
                      {"l_e", l.l_e},
                      {"l_f_stated", l.l_f_stated},
                      {"l_f_recomputed", l.l_f_recomputed},
                      {"endpoint_error", l.endpoint_error},
                      {"endpoint_error_estimate", l.endpoint_error_estimate},
                      {"max_abs_curvature", l.max_abs_curvature},
                      {"max_abs_sharpness", l.max_abs_sharpness},
                      {"heading_continuity_error", l.heading_continuity_error},
                      {"curvature_continuity_error",
                       l.curvature_continuity_error},
                      {"ratio", l.ratio}});
    }
    json profile = json::array();
    for (const auto& h : g.height_profile) {
      profile.push_back({h.arclength, h.height});
    }
    json entry = {{"glider", g.glider_id},
                  {"legs", legs},
                  {"height_profile", profile},
                  {"min_height_literal", g.min_height_literal},
                  {"min_height_strict", g.min_height_strict},
                  {"literal_ok", g.literal_ok},
                  {"strict_ok", g.strict_ok}};
    if (g.first_negative_literal) {
      entry["first_negative_literal"] = *g.first_negative_literal;
    }
    if (g.first_negative_strict) {
      entry["first_negative_strict"] = *g.first_negative_strict;
    }
    gliders.push_back(std::move(entry));
  }
  return {{"audit",
           {{"passed", r.passed()},
            {"r_max", r.r_max},
            {"checks",
             {{"endpoint", r.endpoint_ok},
              {"curvature", r.curvature_ok},
              {"sharpness", r.sharpness_ok},
              {"continuity", r.continuity_ok},
              {"length", r.length_ok},
              {"ratio", r.ratio_ok},
              {"height_literal", r.height_literal_ok},
              {"height_strict", r.height_strict_ok}}},
            {"gliders", gliders}}}};
}

std::string RenderSvg(const Scenario& scenario, const Plan* plan) {
  static const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c",
                                   "#9467bd", "#ff7f0e", "#8c564b"};
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
  double x1 = -x0, y1 = -x0;
  auto grow = [&](Vec2 p) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  };
  for (const auto& g : scenario.gliders) {
    grow(g.start.position);
    grow(g.final_position);
  }
  for (const auto& w : scenario.interest_points) grow(w.position);
  for (const auto& w : scenario.thermals) grow(w.position);
  if (plan != nullptr) {
    for (const auto& gp : plan->gliders) {
      for (const auto& leg : gp.legs) {
        for (Vec2 p : leg.samples) grow(p);
      }
    }
  }
  if (!(x0 <= x1)) x0 = y0 = 0.0, x1 = y1 = 1.0;
  const double margin = 40.0;
  const double w = x1 - x0 + 2 * margin, h = y1 - y0 + 2 * margin;
  // SVG y grows downwards.
  auto X = [&](double x) { return F(x - x0 + margin); };
  auto Y = [&](double y) { return F(y1 - y + margin); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         F(w) + "\" height=\"" + F(h) + "\" viewBox=\"0 0 " + F(w) + " " +
         F(h) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + F(w) + "\" height=\"" + F(h) +
         "\" fill=\"white\"/>\n";
  svg += "<g font-family=\"sans-serif\" font-size=\"12\">\n";

  if (plan != nullptr) {
    for (std::size_t i = 0; i < plan->gliders.size(); ++i) {
      const GliderPlan& gp = plan->gliders[i];
      const char* colour = kColours[i % 6];
      svg += "<polyline id=\"path-" + gp.glider_id +
             "\" fill=\"none\" stroke=\"" + colour +
             "\" stroke-width=\"2\" points=\"";
      bool first = true;
      for (const auto& leg : gp.legs) {
        for (std::size_t k = 0; k < leg.samples.size(); ++k) {
          if (!first && k == 0) continue;  // shared joint
          if (!first) svg += " ";
          svg += X(leg.samples[k].x) + "," + Y(leg.samples[k].y);
          first = false;
        }
      }
      svg += "\"/>\n";
    }
  }

  for (std::size_t i = 0; i < scenario.gliders.size(); ++i) {
    const GliderSpec& g = scenario.gliders[i];
    const char* colour = kColours[i % 6];
    const Vec2 p = g.start.position, f = g.final_position;
    svg += "<circle cx=\"" + X(p.x) + "\" cy=\"" + Y(p.y) +
           "\" r=\"7\" fill=\"none\" stroke=\"" + colour +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + X(p.x + 10) + "\" y=\"" + Y(p.y + 10) + "\">" +
           g.id + "</text>\n";
    svg += "<path d=\"M " + X(f.x - 6) + " " + Y(f.y - 6) + " L " +
           X(f.x + 6) + " " + Y(f.y + 6) + " M " + X(f.x - 6) + " " +
           Y(f.y + 6) + " L " + X(f.x + 6) + " " + Y(f.y - 6) +
           "\" stroke=\"" + colour + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + X(f.x + 10) + "\" y=\"" + Y(f.y + 10) + "\">" +
           g.final_id() + "</text>\n";
  }
  for (const auto& t : scenario.thermals) {
    const Vec2 p = t.position;
    svg += "<path d=\"M " + X(p.x) + " " + Y(p.y + 8) + " L " + X(p.x + 8) +
           " " + Y(p.y) + " L " + X(p.x) + " " + Y(p.y - 8) + " L " +
           X(p.x - 8) + " " + Y(p.y) +
           " Z\" fill=\"#ffbb78\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + X(p.x + 10) + "\" y=\"" + Y(p.y + 10) + "\">" +
           t.id + "</text>\n";
  }
  for (const auto& ip : scenario.interest_points) {
    const Vec2 p = ip.position;
    svg += "<rect x=\"" + X(p.x - 6) + "\" y=\"" + Y(p.y + 6) +
           "\" width=\"12\" height=\"12\" fill=\"#aec7e8\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + X(p.x + 10) + "\" y=\"" + Y(p.y + 10) + "\">" +
           ip.id + "</text>\n";
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

void WriteSvg(const Scenario& scenario, const Plan* plan,
              const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << RenderSvg(scenario, plan);
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace soar
