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

#ifndef SOAR_GEOMETRY_H_
#define SOAR_GEOMETRY_H_

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace soar {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Raised when an input breaks one of the planner's standing assumptions
// (turn limit below pi, waypoints spaced more than a turn-circle diameter).
class AssumptionViolated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when no turn deflection steers the start pose onto the goal.
class NoSolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;

  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
};

inline double Distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

// Reduces an angle to [-pi, pi); -pi is kept, +pi maps to -pi.
double NormalizeAngle(double angle);

struct Pose {
  Vec2 position;
  double heading = 0.0;  // radians, normalized to [-pi, pi)
};

struct GliderLimits {
  double kappa_max = 0.0;    // 1/m
  double sigma_max = 0.0;    // 1/m^2
  double gamma_d_min = 0.0;  // glide angle, radians in (0, pi/2)
};

// Deflection at which the curvature plateau of a turn appears,
// kappa_max^2 / sigma_max. Throws AssumptionViolated if it is not below pi.
double ThetaLim(const GliderLimits& limits);

// Geometry of the circle on which every continuous-curvature turn from a
// fixed start configuration ends. In the start frame (start at the origin,
// heading +x, turning left) the circle is centred at
// (r_t sin(gamma), r_t cos(gamma)); r_m = r_t cos(gamma) is the distance
// from the centre to the heading line at every turn endpoint.
struct CcConstants {
  double r_t = 0.0;
  double r_m = 0.0;
  double gamma = 0.0;
};

// Evaluates a full clothoid entry at (kappa_max, sigma_max) and derives the
// turn-circle constants from its endpoint.
CcConstants ComputeCcConstants(const GliderLimits& limits);

// Integrals C(t) = int_0^t cos(u)/sqrt(u) du and S(t) = int_0^t sin(u)/sqrt(u)
// du, accurate to 1e-9 absolute for t >= 0.
struct FresnelPair {
  double c = 0.0;
  double s = 0.0;
};
FresnelPair Fresnel(double theta);

// Sharpness of the symmetric two-clothoid turn of deflection `beta` whose
// endpoint lies on the turn circle. Only meaningful for 0 < beta <= theta_lim.
double ElementarySharpness(double beta, const GliderLimits& limits,
                           const CcConstants& constants);

// Arclength of the turn of deflection beta in [0, 2 pi].
double CcTurnArclength(double beta, const GliderLimits& limits);
double CcTurnArclength(double beta, const GliderLimits& limits,
                       const CcConstants& constants);

// One linear piece of a curvature profile: kappa(s) = kappa0 + sharpness * s
// for s in [0, length].
struct CurvatureSegment {
  double length = 0.0;
  double kappa0 = 0.0;
  double sharpness = 0.0;

  double kappa_end() const { return kappa0 + sharpness * length; }
  // Heading change accumulated over the segment.
  double deflection() const {
    return kappa0 * length + 0.5 * sharpness * length * length;
  }
};

class CurvatureProfile {
 public:
  CurvatureProfile() = default;
  explicit CurvatureProfile(std::vector<CurvatureSegment> segments)
      : segments_(std::move(segments)) {}

  const std::vector<CurvatureSegment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }
  double length() const;
  // Exact integral of curvature over the whole profile.
  double total_deflection() const;
  // Values at arclength l; outside [0, length()] the profile is zero.
  double kappa_at(double l) const;
  double sigma_at(double l) const;
  double heading_change_at(double l) const;

  void Append(CurvatureSegment segment) { segments_.push_back(segment); }
  // Flips the sign of every curvature and sharpness value.
  CurvatureProfile Mirrored() const;

 private:
  std::vector<CurvatureSegment> segments_;
};

// Curvature profile of a left turn of deflection beta (triangular below
// theta_lim, trapezoidal above). Empty for beta == 0.
CurvatureProfile TurnCurvatureProfile(double beta, const GliderLimits& limits);
CurvatureProfile TurnCurvatureProfile(double beta, const GliderLimits& limits,
                                      const CcConstants& constants);

enum class TurnSide { kLeft, kRight };

const char* TurnSideName(TurnSide side);

// Largest deflection needed to reach a goal at euclidean distance l_e.
double BetaMax(double l_e, const CcConstants& constants);

struct BetaSolution {
  double beta = 0.0;
  TurnSide side = TurnSide::kLeft;
};

// Finds the deflection after which the heading ray passes through `goal`.
// Requires the goal to be more than 2 r_t away; throws NoSolution when no
// root can be bracketed in [0, beta_max].
BetaSolution SolveBeta(const Pose& start, Vec2 goal,
                       const CcConstants& constants,
                       const GliderLimits& limits);

// A turn followed by a straight segment.
struct Leg {
  Pose start;
  Vec2 goal;
  double beta = 0.0;
  TurnSide side = TurnSide::kLeft;
  double l_cc = 0.0;
  double l_f = 0.0;
  // Signed curvature over [0, l_f]; the last segment is the straight part.
  CurvatureProfile profile;

  double l_e() const { return Distance(start.position, goal); }
  double end_heading() const;
  Pose end_pose() const { return {goal, end_heading()}; }
};

Leg BuildLeg(const Pose& start, Vec2 goal, const CcConstants& constants,
             const GliderLimits& limits);

// Upper bound on l_f / l_e for every leg with l_e >= l_min. The two parts
// are reported separately: the straight-segment term and the turn term.
struct RatioBoundTerms {
  double straight = 0.0;
  double turn = 0.0;
  double total() const { return straight + turn; }
};
RatioBoundTerms RatioBoundParts(double l_min, const CcConstants& constants,
                                const GliderLimits& limits);
double RatioBound(double l_min, const CcConstants& constants,
                  const GliderLimits& limits);

// Position at arclength l along a leg, by Gauss-Legendre quadrature of the
// exact heading. Used for sampling and rendering.
Vec2 LegPositionAt(const Leg& leg, double l);

// Samples a leg every `step` metres, always including both endpoints.
std::vector<Vec2> SampleLeg(const Leg& leg, double step);

}  // namespace soar

#endif  // SOAR_GEOMETRY_H_
