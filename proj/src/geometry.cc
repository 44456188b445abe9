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

#include "soar/geometry.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace soar {
namespace {

// 8-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
    0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGlWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

// Above this argument the alternating series loses too many digits.
constexpr double kSeriesLimit = 12.0;

FresnelPair FresnelSeries(double t) {
  // C(t) = sqrt(t) sum (-1)^n t^(2n) / ((2n)! (2n + 1/2))
  // S(t) = sqrt(t) sum (-1)^n t^(2n+1) / ((2n+1)! (2n + 3/2))
  const double t2 = t * t;
  double a = 1.0;  // (-1)^n t^(2n) / (2n)!
  double b = t;    // (-1)^n t^(2n+1) / (2n+1)!
  double c_sum = 0.0;
  double s_sum = 0.0;
  for (int n = 0; n < 200; ++n) {
    const double c_term = a / (2.0 * n + 0.5);
    const double s_term = b / (2.0 * n + 1.5);
    c_sum += c_term;
    s_sum += s_term;
    if (std::abs(c_term) < 1e-18 && std::abs(s_term) < 1e-18) break;
    a *= -t2 / ((2.0 * n + 1.0) * (2.0 * n + 2.0));
    b *= -t2 / ((2.0 * n + 2.0) * (2.0 * n + 3.0));
  }
  const double root = std::sqrt(t);
  return {root * c_sum, root * s_sum};
}

// Substituting u = v^2 gives C(t) = 2 int_0^sqrt(t) cos(v^2) dv, which is
// smooth and handled well by panel-wise Gauss-Legendre.
FresnelPair FresnelQuadrature(double t) {
  const double upper = std::sqrt(t);
  const int panels = static_cast<int>(std::ceil(upper / 0.05));
  const double width = upper / panels;
  double c = 0.0;
  double s = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    for (size_t k = 0; k < kGlNodes.size(); ++k) {
      const double v = mid + 0.5 * width * kGlNodes[k];
      const double w = 0.5 * width * kGlWeights[k];
      c += w * std::cos(v * v);
      s += w * std::sin(v * v);
    }
  }
  return {2.0 * c, 2.0 * s};
}

Vec2 TurnCentre(const CcConstants& constants) {
  return {constants.r_t * std::sin(constants.gamma),
          constants.r_t * std::cos(constants.gamma)};
}

// Endpoint of a left turn of deflection beta > 0 in the start frame. A
// symmetric turn mirrors its start about the axis through the circle centre
// normal to the mid-turn heading, so the endpoint sits at polar angle
// beta + gamma - pi/2 around the centre.
Vec2 TurnEndpoint(double beta, const CcConstants& constants) {
  const double angle = beta + constants.gamma;
  return TurnCentre(constants) +
         constants.r_t * Vec2{std::sin(angle), -std::cos(angle)};
}

double RayResidual(double beta, Vec2 goal, const CcConstants& constants) {
  const Vec2 dir{std::cos(beta), std::sin(beta)};
  return dir.cross(goal - TurnEndpoint(beta, constants));
}

void CheckLimits(const GliderLimits& limits) {
  if (!(limits.kappa_max > 0.0) || !(limits.sigma_max > 0.0)) {
    throw std::invalid_argument("kappa_max and sigma_max must be positive");
  }
}

// Integral of (cos, sin) of the heading over [a, b] inside one segment whose
// heading at its own start is theta0.
Vec2 IntegrateSegment(const CurvatureSegment& seg, double theta0, double a,
                      double b) {
  if (b <= a) return {};
  if (seg.kappa0 == 0.0 && seg.sharpness == 0.0) {
    return (b - a) * Vec2{std::cos(theta0), std::sin(theta0)};
  }
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / 5.0)));
  const double width = (b - a) / panels;
  Vec2 sum;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    for (size_t k = 0; k < kGlNodes.size(); ++k) {
      const double s = mid + 0.5 * width * kGlNodes[k];
      const double theta =
          theta0 + seg.kappa0 * s + 0.5 * seg.sharpness * s * s;
      const double w = 0.5 * width * kGlWeights[k];
      sum = sum + w * Vec2{std::cos(theta), std::sin(theta)};
    }
  }
  return sum;
}

// Displacement along the leg between arclengths `from` and `to`.
Vec2 IntegrateLeg(const Leg& leg, double from, double to) {
  Vec2 total;
  double seg_start = 0.0;
  double theta = leg.start.heading;
  for (const CurvatureSegment& seg : leg.profile.segments()) {
    const double seg_end = seg_start + seg.length;
    const double a = std::max(from, seg_start) - seg_start;
    const double b = std::min(to, seg_end) - seg_start;
    if (b > a) total = total + IntegrateSegment(seg, theta, a, b);
    theta += seg.deflection();
    seg_start = seg_end;
    if (seg_start >= to) break;
  }
  return total;
}

}  // namespace

double NormalizeAngle(double angle) {
  double a = std::fmod(angle + kPi, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a - kPi;
}

double ThetaLim(const GliderLimits& limits) {
  CheckLimits(limits);
  const double theta = limits.kappa_max * limits.kappa_max / limits.sigma_max;
  if (!(theta < kPi)) {
    std::ostringstream msg;
    msg << "theta_lim = " << theta << " is not below pi";
    throw AssumptionViolated(msg.str());
  }
  return theta;
}

FresnelPair Fresnel(double theta) {
  if (!(theta >= 0.0)) throw std::invalid_argument("Fresnel: theta < 0");
  if (theta == 0.0) return {};
  return theta <= kSeriesLimit ? FresnelSeries(theta)
                               : FresnelQuadrature(theta);
}

CcConstants ComputeCcConstants(const GliderLimits& limits) {
  CheckLimits(limits);
  const double kappa = limits.kappa_max;
  const double sigma = limits.sigma_max;
  // Clothoid from zero curvature up to kappa_max: heading kappa^2 / (2 sigma)
  // and endpoint (C, S)(theta) / sqrt(2 sigma).
  const double theta = kappa * kappa / (2.0 * sigma);
  const FresnelPair fr = Fresnel(theta);
  const double scale = 1.0 / std::sqrt(2.0 * sigma);
  const double x_end = fr.c * scale;
  const double y_end = fr.s * scale;
  const double x_centre = x_end - std::sin(theta) / kappa;
  const double y_centre = y_end + std::cos(theta) / kappa;
  CcConstants out;
  out.r_t = std::hypot(x_centre, y_centre);
  out.gamma = std::atan2(x_centre, y_centre);
  out.r_m = y_centre;
  return out;
}

double ElementarySharpness(double beta, const GliderLimits& limits,
                           const CcConstants& constants) {
  // The midpoint tangent of a symmetric turn must be orthogonal to the
  // direction of the turn-circle centre, which pins the sharpness.
  const double half = 0.5 * beta;
  const FresnelPair fr = Fresnel(half);
  const double projection =
      (std::cos(half) * fr.c + std::sin(half) * fr.s) / std::sqrt(2.0);
  const double ratio =
      projection / (constants.r_t * std::sin(half + constants.gamma));
  const double sigma_e = ratio * ratio;
  // Rounding near theta_lim can overshoot by a few ulps.
  if (sigma_e > limits.sigma_max * (1.0 + 1e-9)) {
    std::ostringstream msg;
    msg << "elementary sharpness " << sigma_e << " exceeds sigma_max for beta "
        << beta;
    throw NoSolution(msg.str());
  }
  return std::min(sigma_e, limits.sigma_max);
}

double CcTurnArclength(double beta, const GliderLimits& limits) {
  return CcTurnArclength(beta, limits, ComputeCcConstants(limits));
}

double CcTurnArclength(double beta, const GliderLimits& limits,
                       const CcConstants& constants) {
  if (!(beta >= 0.0 && beta <= kTwoPi)) {
    throw std::invalid_argument("turn deflection outside [0, 2 pi]");
  }
  if (beta == 0.0) return 0.0;
  const double theta_lim = ThetaLim(limits);
  if (beta < theta_lim) {
    return 2.0 * std::sqrt(beta / ElementarySharpness(beta, limits, constants));
  }
  return beta / limits.kappa_max + limits.kappa_max / limits.sigma_max;
}

double CurvatureProfile::length() const {
  double total = 0.0;
  for (const auto& seg : segments_) total += seg.length;
  return total;
}

double CurvatureProfile::total_deflection() const {
  double total = 0.0;
  for (const auto& seg : segments_) total += seg.deflection();
  return total;
}

double CurvatureProfile::kappa_at(double l) const {
  if (l < 0.0) return 0.0;
  double start = 0.0;
  for (const auto& seg : segments_) {
    if (l <= start + seg.length) return seg.kappa0 + seg.sharpness * (l - start);
    start += seg.length;
  }
  return 0.0;
}

double CurvatureProfile::sigma_at(double l) const {
  if (l < 0.0) return 0.0;
  double start = 0.0;
  for (const auto& seg : segments_) {
    if (l < start + seg.length) return seg.sharpness;
    start += seg.length;
  }
  return 0.0;
}

double CurvatureProfile::heading_change_at(double l) const {
  double start = 0.0;
  double theta = 0.0;
  for (const auto& seg : segments_) {
    if (l <= start + seg.length) {
      const double s = std::max(0.0, l - start);
      return theta + seg.kappa0 * s + 0.5 * seg.sharpness * s * s;
    }
    theta += seg.deflection();
    start += seg.length;
  }
  return theta;
}

CurvatureProfile CurvatureProfile::Mirrored() const {
  std::vector<CurvatureSegment> out = segments_;
  for (auto& seg : out) {
    seg.kappa0 = -seg.kappa0;
    seg.sharpness = -seg.sharpness;
  }
  return CurvatureProfile(std::move(out));
}

CurvatureProfile TurnCurvatureProfile(double beta, const GliderLimits& limits) {
  return TurnCurvatureProfile(beta, limits, ComputeCcConstants(limits));
}

CurvatureProfile TurnCurvatureProfile(double beta, const GliderLimits& limits,
                                      const CcConstants& constants) {
  if (!(beta >= 0.0 && beta <= kTwoPi)) {
    throw std::invalid_argument("turn deflection outside [0, 2 pi]");
  }
  if (beta == 0.0) return {};
  const double theta_lim = ThetaLim(limits);
  if (beta < theta_lim) {
    const double sigma_e = ElementarySharpness(beta, limits, constants);
    const double half = std::sqrt(beta / sigma_e);
    return CurvatureProfile({{half, 0.0, sigma_e},
                             {half, sigma_e * half, -sigma_e}});
  }
  const double kappa = limits.kappa_max;
  const double sigma = limits.sigma_max;
  const double ramp = kappa / sigma;
  const double plateau = (beta - theta_lim) / kappa;
  std::vector<CurvatureSegment> segs;
  segs.push_back({ramp, 0.0, sigma});
  if (plateau > 0.0) segs.push_back({plateau, kappa, 0.0});
  segs.push_back({ramp, kappa, -sigma});
  return CurvatureProfile(std::move(segs));
}

const char* TurnSideName(TurnSide side) {
  return side == TurnSide::kLeft ? "left" : "right";
}

double BetaMax(double l_e, const CcConstants& constants) {
  return kPi + 2.0 * std::atan(constants.r_m /
                               (l_e + constants.r_t * std::sin(constants.gamma)));
}

BetaSolution SolveBeta(const Pose& start, Vec2 goal,
                       const CcConstants& constants,
                       const GliderLimits& limits) {
  CheckLimits(limits);
  const Vec2 d = goal - start.position;
  const double l_e = d.norm();
  if (!(l_e > 2.0 * constants.r_t)) {
    std::ostringstream msg;
    msg << "goal at distance " << l_e << " is within 2 R_T = "
        << 2.0 * constants.r_t;
    throw NoSolution(msg.str());
  }
  const double c = std::cos(start.heading);
  const double s = std::sin(start.heading);
  Vec2 local{c * d.x + s * d.y, -s * d.x + c * d.y};

  BetaSolution out;
  if (local.y == 0.0 && local.x > 0.0) return out;
  if (local.y < 0.0) {
    out.side = TurnSide::kRight;
    local.y = -local.y;
  }

  const double beta_max = BetaMax(l_e, constants);
  // The residual is a shifted sinusoid; its negative lobe is wider than
  // 2 gamma, so a coarse scan always lands inside it before bisecting.
  const double scan = std::min(0.05, 0.5 * constants.gamma);
  double lo = 0.0;
  // A goal straight behind puts the root exactly on beta_max.
  const double limit = beta_max + 1e-9;
  double hi = lo;
  bool bracketed = false;
  while (hi < limit) {
    hi = std::min(lo + scan, limit);
    if (RayResidual(hi, local, constants) <= 0.0) {
      bracketed = true;
      break;
    }
    lo = hi;
  }
  if (!bracketed) {
    throw NoSolution("cannot bracket turn deflection in [0, beta_max]");
  }
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (RayResidual(mid, local, constants) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.beta = std::min(0.5 * (lo + hi), beta_max);
  const Vec2 dir{std::cos(out.beta), std::sin(out.beta)};
  if (!(dir.dot(local - TurnEndpoint(out.beta, constants)) > 0.0)) {
    throw NoSolution("goal lies behind the turn exit");
  }
  return out;
}

double Leg::end_heading() const {
  const double sign = side == TurnSide::kLeft ? 1.0 : -1.0;
  return NormalizeAngle(start.heading + sign * beta);
}

Leg BuildLeg(const Pose& start, Vec2 goal, const CcConstants& constants,
             const GliderLimits& limits) {
  const BetaSolution sol = SolveBeta(start, goal, constants, limits);
  Leg leg;
  leg.start = {start.position, NormalizeAngle(start.heading)};
  leg.goal = goal;
  leg.beta = sol.beta;
  leg.side = sol.side;

  CurvatureProfile turn = TurnCurvatureProfile(sol.beta, limits, constants);
  leg.l_cc = turn.length();

  const Vec2 d = goal - start.position;
  const double c = std::cos(start.heading);
  const double s = std::sin(start.heading);
  Vec2 local{c * d.x + s * d.y, -s * d.x + c * d.y};
  if (sol.side == TurnSide::kRight) local.y = -local.y;
  const double straight =
      sol.beta == 0.0 ? d.norm()
                      : Distance(local, TurnEndpoint(sol.beta, constants));

  if (sol.side == TurnSide::kRight) turn = turn.Mirrored();
  turn.Append({straight, 0.0, 0.0});
  leg.profile = std::move(turn);
  leg.l_f = leg.l_cc + straight;
  return leg;
}

RatioBoundTerms RatioBoundParts(double l_min, const CcConstants& constants,
                                const GliderLimits& limits) {
  CheckLimits(limits);
  if (!(l_min > 2.0 * constants.r_t)) {
    std::ostringstream msg;
    msg << "l_min = " << l_min << " does not exceed 2 R_T = "
        << 2.0 * constants.r_t;
    throw AssumptionViolated(msg.str());
  }
  const double r_t = constants.r_t;
  RatioBoundTerms out;
  out.straight =
      std::sqrt((l_min + r_t) * (l_min + r_t) - constants.r_m * constants.r_m) /
      l_min;
  const double turn_len = BetaMax(l_min, constants) / limits.kappa_max +
                          limits.kappa_max / limits.sigma_max;
  out.turn = (std::max(turn_len, 4.66 * r_t / l_min) + r_t) / l_min;
  return out;
}

double RatioBound(double l_min, const CcConstants& constants,
                  const GliderLimits& limits) {
  return RatioBoundParts(l_min, constants, limits).total();
}

Vec2 LegPositionAt(const Leg& leg, double l) {
  const double clamped = std::clamp(l, 0.0, leg.profile.length());
  return leg.start.position + IntegrateLeg(leg, 0.0, clamped);
}

std::vector<Vec2> SampleLeg(const Leg& leg, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("sample step must be > 0");
  const double total = leg.profile.length();
  std::vector<Vec2> out;
  out.push_back(leg.start.position);
  Vec2 pos = leg.start.position;
  double prev = 0.0;
  const auto count = static_cast<long>(std::floor(total / step));
  for (long k = 1; k <= count; ++k) {
    const double l = k * step;
    if (total - l < 1e-9 * step) break;
    pos = pos + IntegrateLeg(leg, prev, l);
    out.push_back(pos);
    prev = l;
  }
  pos = pos + IntegrateLeg(leg, prev, total);
  out.push_back(pos);
  return out;
}

}  // namespace soar
