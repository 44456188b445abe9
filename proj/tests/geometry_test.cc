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

#include <cmath>
#include <functional>
#include <random>

#include <gtest/gtest.h>

namespace soar {
namespace {

const GliderLimits kLimits{0.045, 0.001, 0.349};
// R_max at l_min = 108.4 m for the limits above.
constexpr double kGoldenRatioBound = 2.741535632792;

double AdaptiveSimpson(const std::function<double(double)>& f, double a,
                       double b, double fa, double fm, double fb, double whole,
                       double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
    return left + right + (left + right - whole) / 15.0;
  }
  return AdaptiveSimpson(f, a, m, fa, flm, fm, left, eps / 2, depth - 1) +
         AdaptiveSimpson(f, m, b, fm, frm, fb, right, eps / 2, depth - 1);
}

double Integrate(const std::function<double(double)>& f, double a, double b) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return AdaptiveSimpson(f, a, b, fa, fm, fb, whole, 1e-13, 40);
}

// C(t) = 2 int_0^sqrt(t) cos(v^2) dv, same for S.
FresnelPair FresnelOracle(double t) {
  const double r = std::sqrt(t);
  return {2.0 * Integrate([](double v) { return std::cos(v * v); }, 0.0, r),
          2.0 * Integrate([](double v) { return std::sin(v * v); }, 0.0, r)};
}

// Heading relative to the start, evaluated segment by segment.
double HeadingOracle(const CurvatureProfile& p, double l) {
  double acc = 0.0;
  for (const auto& seg : p.segments()) {
    if (l <= seg.length) {
      return acc + seg.kappa0 * l + 0.5 * seg.sharpness * l * l;
    }
    acc += seg.kappa0 * seg.length + 0.5 * seg.sharpness * seg.length *
                                         seg.length;
    l -= seg.length;
  }
  return acc;
}

// Composite Simpson over each segment with a fixed panel count.
Vec2 EndpointOracle(const Leg& leg) {
  Vec2 pos = leg.start.position;
  double offset = 0.0;
  for (const auto& seg : leg.profile.segments()) {
    const int n = 2000;
    const double h = seg.length / n;
    double sx = 0.0, sy = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      const double th =
          leg.start.heading + HeadingOracle(leg.profile, offset + i * h);
      sx += w * std::cos(th);
      sy += w * std::sin(th);
    }
    pos = pos + Vec2{sx * h / 3.0, sy * h / 3.0};
    offset += seg.length;
  }
  return pos;
}

TEST(ThetaLimTest, Examples) {
  EXPECT_DOUBLE_EQ(ThetaLim(kLimits), 2.025);
  EXPECT_DOUBLE_EQ(ThetaLim({1.0, 1.0, 0.3}), 1.0);
  EXPECT_THROW(ThetaLim({0.1, 0.001, 0.3}), AssumptionViolated);
}

TEST(FresnelTest, ZeroIsZero) {
  const FresnelPair f = Fresnel(0.0);
  EXPECT_EQ(f.c, 0.0);
  EXPECT_EQ(f.s, 0.0);
}

TEST(FresnelTest, LowerBoundsOnHalfTurn) {
  for (int i = 1; i <= 200; ++i) {
    const double t = kPi * i / 200.0;
    const FresnelPair f = Fresnel(t);
    EXPECT_GT(f.c, 2.0 * std::sqrt(t) * (1.0 - t * t / 10.0)) << t;
    EXPECT_GT(f.s, 2.0 * std::pow(t, 1.5) * (1.0 - t * t / 14.0) / 3.0) << t;
  }
}

TEST(FresnelTest, MatchesQuadratureOracle) {
  for (double t = 0.01; t < 30.0; t *= 1.17) {
    const FresnelPair f = Fresnel(t);
    const FresnelPair o = FresnelOracle(t);
    EXPECT_NEAR(f.c, o.c, 1e-9) << t;
    EXPECT_NEAR(f.s, o.s, 1e-9) << t;
  }
}

TEST(CcConstantsTest, GoldenLimits) {
  const CcConstants c = ComputeCcConstants(kLimits);
  EXPECT_NEAR(c.r_t, 33.8099303535, 1e-8);
  EXPECT_NEAR(c.r_m, 25.8830660298, 1e-8);
  EXPECT_NEAR(c.gamma, 0.6989063650, 1e-9);
  EXPECT_NEAR(c.r_m, c.r_t * std::cos(c.gamma), 1e-12);
}

TEST(CcTurnArclengthTest, Examples) {
  EXPECT_EQ(CcTurnArclength(0.0, kLimits), 0.0);
  EXPECT_NEAR(CcTurnArclength(2.5, kLimits), 2.5 / 0.045 + 45.0, 1e-12);
  EXPECT_NEAR(CcTurnArclength(2.5, kLimits), 100.556, 1e-3);
}

TEST(CcTurnArclengthTest, ContinuousAtThetaLim) {
  const CcConstants c = ComputeCcConstants(kLimits);
  const double tl = ThetaLim(kLimits);
  EXPECT_NEAR(CcTurnArclength(tl, kLimits, c), 90.0, 1e-9);
  // Triangular branch evaluated at the boundary.
  const double sigma_e = ElementarySharpness(tl, kLimits, c);
  EXPECT_NEAR(sigma_e, kLimits.sigma_max, 1e-12);
  EXPECT_NEAR(2.0 * std::sqrt(tl / sigma_e), 90.0, 1e-9);
  EXPECT_NEAR(CcTurnArclength(std::nextafter(tl, 0.0), kLimits, c), 90.0,
              1e-9);
}

TEST(CcTurnArclengthTest, RejectsOutOfRange) {
  EXPECT_THROW(CcTurnArclength(-0.1, kLimits), std::invalid_argument);
  EXPECT_THROW(CcTurnArclength(7.0, kLimits), std::invalid_argument);
}

TEST(CurvatureProfileTest, EmptyForZero) {
  const CurvatureProfile p = TurnCurvatureProfile(0.0, kLimits);
  EXPECT_TRUE(p.empty());
  EXPECT_EQ(p.kappa_at(1.0), 0.0);
}

TEST(CurvatureProfileTest, TrapezoidPlateau) {
  const CurvatureProfile p = TurnCurvatureProfile(3.0, kLimits);
  ASSERT_EQ(p.segments().size(), 3u);
  EXPECT_DOUBLE_EQ(p.segments()[0].sharpness, kLimits.sigma_max);
  EXPECT_DOUBLE_EQ(p.segments()[1].kappa0, kLimits.kappa_max);
  EXPECT_EQ(p.segments()[1].sharpness, 0.0);
  EXPECT_DOUBLE_EQ(p.segments()[2].sharpness, -kLimits.sigma_max);
  EXPECT_NEAR(p.segments()[0].length, 45.0, 1e-12);
}

TEST(CurvatureProfileTest, IntegralEqualsDeflection) {
  for (double beta = 0.01; beta <= kTwoPi; beta += 0.0731) {
    const CurvatureProfile p = TurnCurvatureProfile(beta, kLimits);
    const double integral = Integrate(
        [&](double l) { return p.kappa_at(l); }, 0.0, p.length());
    EXPECT_NEAR(integral, beta, 1e-9) << beta;
    EXPECT_NEAR(p.kappa_at(0.0), 0.0, 1e-15);
    EXPECT_NEAR(p.kappa_at(p.length()), 0.0, 1e-12);
  }
}

TEST(SolveBetaTest, GoalAheadIsStraight) {
  const CcConstants c = ComputeCcConstants(kLimits);
  const BetaSolution b = SolveBeta({{10, 20}, 0.0}, {300, 20}, c, kLimits);
  EXPECT_EQ(b.beta, 0.0);
  const Leg leg = BuildLeg({{0, 0}, 0.0}, {250, 0}, c, kLimits);
  EXPECT_EQ(leg.beta, 0.0);
  EXPECT_DOUBLE_EQ(leg.l_f, 250.0);
  EXPECT_EQ(EndpointOracle(leg), (Vec2{250, 0}));
}

TEST(SolveBetaTest, GoalBehindNeedsBetaMax) {
  const CcConstants c = ComputeCcConstants(kLimits);
  for (double d : {80.0, 150.0, 600.0}) {
    // A hair to the left so the side is determined.
    const BetaSolution b = SolveBeta({{0, 0}, 0.0}, {-d, 1e-9}, c, kLimits);
    const double expected =
        kPi + 2.0 * std::atan(c.r_m / (d + c.r_t * std::sin(c.gamma)));
    EXPECT_NEAR(b.beta, expected, 1e-8) << d;
    EXPECT_NEAR(BetaMax(d, c), expected, 1e-15);
  }
}

TEST(SolveBetaTest, RejectsCloseGoal) {
  const CcConstants c = ComputeCcConstants(kLimits);
  EXPECT_THROW(SolveBeta({{0, 0}, 0.0}, {50, 10}, c, kLimits), NoSolution);
}

TEST(BuildLegTest, RandomLegsProperties) {
  const CcConstants c = ComputeCcConstants(kLimits);
  const double l_min = 70.0;
  const double r_max = RatioBound(l_min, c, kLimits);
  std::mt19937_64 rng(20260417);
  std::uniform_real_distribution<double> coord(-500.0, 500.0);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> dist(l_min, 1200.0);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const Pose start{{coord(rng), coord(rng)}, angle(rng)};
    const double a = angle(rng), d = dist(rng);
    const Vec2 goal =
        start.position + Vec2{d * std::cos(a), d * std::sin(a)};
    const Leg leg = BuildLeg(start, goal, c, kLimits);
    const double l_e = leg.l_e();
    ASSERT_LE(Distance(EndpointOracle(leg), goal), 1e-6 * l_e) << i;
    ++checked;
    ASSERT_NEAR(HeadingOracle(leg.profile, leg.l_f), leg.profile.total_deflection(), 1e-12);
    ASSERT_GE(leg.l_f, l_e * (1.0 - 1e-12));
    ASSERT_LE(leg.l_f / l_e, r_max);
    ASSERT_NEAR(leg.l_f, leg.profile.length(), 1e-9 * leg.l_f);
    ASSERT_GE(leg.beta, 0.0);
    ASSERT_LE(leg.beta, BetaMax(l_e, c) + 1e-9);
    for (const auto& seg : leg.profile.segments()) {
      ASSERT_LE(std::abs(seg.sharpness), kLimits.sigma_max * (1 + 1e-9));
      ASSERT_LE(std::abs(seg.kappa0), kLimits.kappa_max * (1 + 1e-9));
      ASSERT_LE(std::abs(seg.kappa_end()), kLimits.kappa_max * (1 + 1e-9));
    }
    ASSERT_EQ(leg.profile.kappa_at(0.0), 0.0);
    ASSERT_NEAR(leg.profile.kappa_at(leg.l_cc), 0.0, 1e-12);
    ASSERT_NEAR(leg.profile.kappa_at(leg.l_f), 0.0, 1e-12);
    const double signed_beta =
        leg.side == TurnSide::kLeft ? leg.beta : -leg.beta;
    ASSERT_NEAR(leg.profile.total_deflection(), signed_beta, 1e-9);
  }
  EXPECT_EQ(checked, 10000);
}

// First sign change of the ray residual, located by dense sampling.
TEST(SolveBetaTest, AgreesWithDenseScan) {
  const CcConstants c = ComputeCcConstants(kLimits);
  const Vec2 centre{c.r_t * std::sin(c.gamma), c.r_t * std::cos(c.gamma)};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ang(0.0, kPi);
  std::uniform_real_distribution<double> dist(70.0, 900.0);
  for (int i = 0; i < 200; ++i) {
    const double a = ang(rng), d = dist(rng);
    const Vec2 goal{d * std::cos(a), d * std::sin(a)};
    auto residual = [&](double b) {
      const Vec2 e = centre + c.r_t * Vec2{std::sin(b + c.gamma),
                                           -std::cos(b + c.gamma)};
      return Vec2{std::cos(b), std::sin(b)}.cross(goal - e);
    };
    double prev = residual(0.0), lo = 0.0;
    const double step = 1e-4;
    for (double b = step; b < kTwoPi; b += step) {
      const double r = residual(b);
      if ((prev > 0) != (r > 0)) break;
      prev = r;
      lo = b;
    }
    const BetaSolution s = SolveBeta({{0, 0}, 0.0}, goal, c, kLimits);
    EXPECT_EQ(s.side, TurnSide::kLeft);
    EXPECT_NEAR(s.beta, lo + step / 2, step) << i;
  }
}

TEST(BuildLegTest, RightTurnsMirrorLeftTurns) {
  const CcConstants c = ComputeCcConstants(kLimits);
  const Leg left = BuildLeg({{0, 0}, 0.0}, {100, 200}, c, kLimits);
  const Leg right = BuildLeg({{0, 0}, 0.0}, {100, -200}, c, kLimits);
  EXPECT_EQ(left.side, TurnSide::kLeft);
  EXPECT_EQ(right.side, TurnSide::kRight);
  EXPECT_NEAR(left.beta, right.beta, 1e-12);
  EXPECT_NEAR(left.l_f, right.l_f, 1e-9);
  EXPECT_NEAR(left.end_heading(), -right.end_heading(), 1e-12);
}

TEST(RatioBoundTest, DegenerateConstantsGiveUnitStraightTerm) {
  const CcConstants zero{0.0, 0.0, 0.0};
  EXPECT_DOUBLE_EQ(RatioBoundParts(100.0, zero, kLimits).straight, 1.0);
}

TEST(RatioBoundTest, RejectsSmallLmin) {
  const CcConstants c = ComputeCcConstants(kLimits);
  EXPECT_THROW(RatioBound(2.0 * c.r_t, c, kLimits), AssumptionViolated);
}

TEST(RatioBoundTest, DecreasesWithLmin) {
  const CcConstants c = ComputeCcConstants(kLimits);
  double prev = RatioBound(2.0 * c.r_t + 0.01, c, kLimits);
  for (double l = 2.0 * c.r_t + 1.0; l < 5000.0; l *= 1.05) {
    const double r = RatioBound(l, c, kLimits);
    EXPECT_LT(r, prev) << l;
    EXPECT_GT(r, 1.0);
    prev = r;
  }
}

TEST(RatioBoundTest, GoldenValue) {
  const CcConstants c = ComputeCcConstants(kLimits);
  // Direct evaluation with the frozen turn-circle constants.
  const double r_t = 33.8099303535, r_m = 25.8830660298, g = 0.6989063650;
  const double l = 108.4;
  const double beta_max = kPi + 2.0 * std::atan(r_m / (l + r_t * std::sin(g)));
  const double expected =
      std::sqrt((l + r_t) * (l + r_t) - r_m * r_m) / l +
      (std::max(beta_max / 0.045 + 0.045 / 0.001, 4.66 * r_t / l) + r_t) / l;
  EXPECT_NEAR(RatioBound(l, c, kLimits), expected, 1e-8);
  EXPECT_NEAR(RatioBound(l, c, kLimits), kGoldenRatioBound, 1e-9);
}

TEST(NormalizeAngleTest, HalfOpenRange) {
  EXPECT_DOUBLE_EQ(NormalizeAngle(kPi), -kPi);
  EXPECT_DOUBLE_EQ(NormalizeAngle(-kPi), -kPi);
  EXPECT_NEAR(NormalizeAngle(3 * kPi + 0.5), -kPi + 0.5, 1e-12);
  EXPECT_DOUBLE_EQ(NormalizeAngle(0.25), 0.25);
}

}  // namespace
}  // namespace soar
