//
// Copyright 2026 The dprisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dprisk/risk_bounds.h"

#include <cmath>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dprisk {
namespace {

using ::dprisk::testing::PriorGrid;
using ::dprisk::testing::StatusIs;

double NaiveUpper(double eps, double p) {
  return p / (p + (1 - p) * std::exp(-eps));
}
double NaiveLower(double eps, double p) {
  return p / (p + (1 - p) * std::exp(eps));
}
// eps' of (1.8, 1e-5)-DP at delta' = 0.05, and bounds there, from 30-digit
// arithmetic.
constexpr double kReportEpsPrime = 1.800233079233849;

double NaiveDiff(double eps) {
  return (std::exp(eps / 2) - 1) / (std::exp(eps / 2) + 1);
}

TEST(PosteriorIntervalTest, WalkthroughValue) {
  ASSERT_OK_AND_ASSIGN(ProbabilityInterval i,
                       PosteriorInterval(0.100019048383244, 0.01, 0.5));
  EXPECT_NEAR(i.lower, 0.475016062312935, 1e-14);
  EXPECT_NEAR(i.upper, 0.524983937687065, 1e-14);
  EXPECT_DOUBLE_EQ(i.confidence, 0.99);
}

TEST(PosteriorIntervalTest, ReportValues) {
  ASSERT_OK_AND_ASSIGN(ProbabilityInterval half,
                       PosteriorInterval(kReportEpsPrime, 0.05, 0.5));
  EXPECT_NEAR(half.upper, 0.858177305312492, 1e-14);
  ASSERT_OK_AND_ASSIGN(ProbabilityInterval tenth,
                       PosteriorInterval(kReportEpsPrime, 0.05, 0.1));
  EXPECT_NEAR(tenth.upper, 0.402035378923425, 1e-14);
}

TEST(PosteriorIntervalTest, FixedPointsAndCollapse) {
  for (double eps : {0.0, 0.3, 5.0, static_cast<double>(INFINITY)}) {
    ASSERT_OK_AND_ASSIGN(ProbabilityInterval zero, PosteriorInterval(eps, 0.1, 0.0));
    EXPECT_EQ(zero.lower, 0.0);
    EXPECT_EQ(zero.upper, 0.0);
    ASSERT_OK_AND_ASSIGN(ProbabilityInterval one, PosteriorInterval(eps, 0.1, 1.0));
    EXPECT_EQ(one.lower, 1.0);
    EXPECT_EQ(one.upper, 1.0);
  }
  ASSERT_OK_AND_ASSIGN(ProbabilityInterval flat, PosteriorInterval(0.0, 0.0, 0.37));
  EXPECT_EQ(flat.lower, 0.37);
  EXPECT_EQ(flat.upper, 0.37);
  EXPECT_EQ(flat.confidence, 1.0);
  ASSERT_OK_AND_ASSIGN(ProbabilityInterval vacuous,
                       PosteriorInterval(INFINITY, 0.05, 0.37));
  EXPECT_EQ(vacuous.lower, 0.0);
  EXPECT_EQ(vacuous.upper, 1.0);
}

TEST(PosteriorIntervalTest, AgreesWithNaiveFormula) {
  for (double eps : {1e-6, 0.01, 0.1, 1.0, 4.0, 20.0}) {
    for (double p : {0.001, 0.1, 0.27, 0.5, 0.9, 0.999}) {
      ASSERT_OK_AND_ASSIGN(ProbabilityInterval i, PosteriorInterval(eps, 0.0, p));
      EXPECT_NEAR(i.upper / NaiveUpper(eps, p), 1.0, 1e-13);
      EXPECT_NEAR(i.lower / NaiveLower(eps, p), 1.0, 1e-13);
    }
  }
}

TEST(PosteriorIntervalTest, KeepsPrecisionForTinyEpsilon) {
  ASSERT_OK_AND_ASSIGN(ProbabilityInterval i, PosteriorInterval(1e-12, 0.0, 0.5));
  // upper - p = tanh(eps/2)/2 to first order.
  EXPECT_NEAR((i.upper - 0.5) / 2.5e-13, 1.0, 1e-3);
  EXPECT_NEAR((0.5 - i.lower) / 2.5e-13, 1.0, 1e-3);
}

TEST(PosteriorIntervalTest, MonotoneInEpsilon) {
  for (double p : {0.1, 0.27, 0.5, 0.9}) {
    double lower = 1.0;
    double upper = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double eps = i * 0.06;
      ASSERT_OK_AND_ASSIGN(ProbabilityInterval b, PosteriorInterval(eps, 0.0, p));
      EXPECT_LE(b.lower, lower);
      EXPECT_GE(b.upper, upper);
      lower = b.lower;
      upper = b.upper;
    }
  }
}

TEST(PosteriorIntervalTest, RejectsBadArguments) {
  EXPECT_THAT(PosteriorInterval(-0.1, 0.0, 0.5),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(PosteriorInterval(0.1, 1.5, 0.5),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(PosteriorInterval(0.1, 0.0, -0.5),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(PosteriorInterval(NAN, 0.0, 0.5),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(RatioIntervalTest, Values) {
  ASSERT_OK_AND_ASSIGN(SymmetricBound walk,
                       RatioInterval(0.100019048383244, 0.01));
  EXPECT_EQ(walk.kind, BoundKind::kRatio);
  EXPECT_NEAR(walk.lower(), 0.904820182510202, 1e-14);
  EXPECT_NEAR(walk.upper(), 1.105191969995348, 1e-14);
  ASSERT_OK_AND_ASSIGN(SymmetricBound flat, RatioInterval(0.0, 0.3));
  EXPECT_EQ(flat.lower(), 1.0);
  EXPECT_EQ(flat.upper(), 1.0);
  ASSERT_OK_AND_ASSIGN(SymmetricBound report,
                       RatioInterval(kReportEpsPrime, 0.05));
  EXPECT_NEAR(report.upper(), 6.051057675948136, 1e-13);
  EXPECT_DOUBLE_EQ(report.confidence, 0.95);
}

TEST(RatioIntervalTest, SupremumOverPriorsApproachedAtSmallPrior) {
  // At p = 0.001 the ratio falls short of e^eps by the relative amount
  // g = p (e^eps - 1) / (1 + p (e^eps - 1)); g < 0.2% needs eps < log 3.
  for (double eps : {0.1, 0.5, 1.0, 1.8, 2.0}) {
    const double envelope = std::exp(eps);
    double sup = 0.0;
    for (double p : PriorGrid()) {
      ASSERT_OK_AND_ASSIGN(ProbabilityInterval i, PosteriorInterval(eps, 0.0, p));
      sup = std::max(sup, i.upper / p);
      EXPECT_LE(i.upper / p, envelope * (1 + 1e-15));
    }
    ASSERT_OK_AND_ASSIGN(ProbabilityInterval edge,
                         PosteriorInterval(eps, 0.0, 0.001));
    const double gap = 0.001 * std::expm1(eps) / (1 + 0.001 * std::expm1(eps));
    EXPECT_NEAR((envelope - edge.upper / 0.001) / envelope, gap, 1e-12);
    if (eps < std::log(3.0)) EXPECT_LT(gap, 0.002);
    EXPECT_NEAR(sup, edge.upper / 0.001, 1e-12);
    EXPECT_LE(sup, envelope);
  }
}

TEST(DiffIntervalTest, Values) {
  ASSERT_OK_AND_ASSIGN(SymmetricBound walk,
                       DiffInterval(0.100019048383244, 0.01));
  EXPECT_NEAR(walk.magnitude, 0.024999552088595, 1e-14);
  EXPECT_EQ(walk.lower(), -walk.upper());
  ASSERT_OK_AND_ASSIGN(SymmetricBound zero, DiffInterval(0.0, 0.2));
  EXPECT_EQ(zero.magnitude, 0.0);
  ASSERT_OK_AND_ASSIGN(SymmetricBound report,
                       DiffInterval(kReportEpsPrime, 0.05));
  EXPECT_NEAR(report.magnitude, 0.421946901926654, 1e-14);
}

TEST(DiffIntervalTest, MatchesNaiveFormula) {
  for (double eps = 0.001; eps < 10; eps *= 1.3) {
    ASSERT_OK_AND_ASSIGN(SymmetricBound b, DiffInterval(eps, 0.0));
    EXPECT_NEAR(b.magnitude, NaiveDiff(eps), 1e-14);
  }
}

TEST(DiffIntervalTest, UpperDifferenceMaximizedAtWorstPrior) {
  for (double eps : {0.5, 1.0, 1.8002, 2.0, 4.0}) {
    ASSERT_OK_AND_ASSIGN(SymmetricBound envelope, DiffInterval(eps, 0.0));
    ASSERT_OK_AND_ASSIGN(WorstCasePriors worst, WorstCasePriorsDiff(eps));
    double best = -1.0;
    double argmax = 0.0;
    for (double p : PriorGrid()) {
      ASSERT_OK_AND_ASSIGN(ProbabilityInterval i, PosteriorInterval(eps, 0.0, p));
      EXPECT_LE(i.upper - p, envelope.magnitude + 1e-15);
      if (i.upper - p > best) {
        best = i.upper - p;
        argmax = p;
      }
    }
    EXPECT_LE(std::abs(argmax - worst.max_increase), 0.001 + 1e-12);
    ASSERT_OK_AND_ASSIGN(ProbabilityInterval at_worst,
                         PosteriorInterval(eps, 0.0, worst.max_increase));
    EXPECT_NEAR(at_worst.upper - worst.max_increase, envelope.magnitude, 1e-14);
  }
}

TEST(WorstCasePriorsTest, Values) {
  ASSERT_OK_AND_ASSIGN(WorstCasePriors two, WorstCasePriorsDiff(2.0));
  EXPECT_NEAR(two.max_increase, 0.26894, 1e-5);
  EXPECT_NEAR(two.max_decrease, 0.73106, 1e-5);
  EXPECT_NEAR(two.max_increase + two.max_decrease, 1.0, 1e-15);
  ASSERT_OK_AND_ASSIGN(WorstCasePriors zero, WorstCasePriorsDiff(0.0));
  EXPECT_EQ(zero.max_increase, 0.5);
  EXPECT_EQ(zero.max_decrease, 0.5);
  ASSERT_OK_AND_ASSIGN(WorstCasePriors report,
                       WorstCasePriorsDiff(kReportEpsPrime));
  EXPECT_NEAR(report.max_increase, 0.289026549036673, 1e-14);
  EXPECT_NEAR(report.max_decrease, 0.710973450963327, 1e-14);
}

TEST(InversionTest, EpsilonForDiff) {
  ASSERT_OK_AND_ASSIGN(double eps, EpsilonForDiff(0.2));
  EXPECT_NEAR(eps, 0.81093, 1e-5);
  EXPECT_NEAR(eps, 2 * std::log(1.2 / 0.8), 1e-15);
  ASSERT_OK_AND_ASSIGN(double report, EpsilonForDiff(0.42196));
  EXPECT_NEAR(report, 1.8002, 1e-4);
  ASSERT_OK_AND_ASSIGN(double tiny, EpsilonForDiff(1e-12));
  EXPECT_NEAR(tiny, 4e-12, 1e-20);
  EXPECT_THAT(EpsilonForDiff(0.0), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(EpsilonForDiff(1.0), StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(InversionTest, EpsilonForDiffRoundTrips) {
  for (double eps = 1e-3; eps <= 5.0; eps *= 1.07) {
    ASSERT_OK_AND_ASSIGN(SymmetricBound b, DiffInterval(eps, 0.0));
    ASSERT_OK_AND_ASSIGN(double back, EpsilonForDiff(b.magnitude));
    EXPECT_NEAR(back, eps, 1e-10);
  }
}

TEST(InversionTest, EpsilonForRatio) {
  ASSERT_OK_AND_ASSIGN(double one, EpsilonForRatio(std::exp(1.0)));
  EXPECT_NEAR(one, 1.0, 1e-15);
  ASSERT_OK_AND_ASSIGN(double walk, EpsilonForRatio(1.1052));
  EXPECT_NEAR(walk, 0.100026314067124, 1e-14);
  ASSERT_OK_AND_ASSIGN(double report, EpsilonForRatio(6.0507));
  EXPECT_NEAR(report, 1.8002, 1e-4);
  EXPECT_THAT(EpsilonForRatio(1.0), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(EpsilonForRatio(0.5), StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(InversionTest, EpsilonForPosterior) {
  ASSERT_OK_AND_ASSIGN(double eps, EpsilonForPosterior(0.8, 0.5));
  EXPECT_NEAR(eps, std::log(4.0), 1e-15);
  ASSERT_OK_AND_ASSIGN(ProbabilityInterval i, PosteriorInterval(eps, 0.0, 0.5));
  EXPECT_NEAR(i.upper, 0.8, 1e-15);
  EXPECT_FALSE(EpsilonForPosterior(0.4, 0.5).ok());
  EXPECT_FALSE(EpsilonForPosterior(1.0, 0.5).ok());
}

TEST(CombinedWorstCaseTest, ReportValues) {
  ASSERT_OK_AND_ASSIGN(CombinedWorstCase half,
                       CombinedWorstCaseBounds(kReportEpsPrime, 0.05, 0.5));
  EXPECT_NEAR(half.ratio_max, 1.716354610624985, 1e-13);
  EXPECT_NEAR(half.increase, half.decrease, 1e-15);
  ASSERT_OK_AND_ASSIGN(CombinedWorstCase tenth,
                       CombinedWorstCaseBounds(kReportEpsPrime, 0.05, 0.1));
  EXPECT_NEAR(tenth.ratio_max, 4.020353789234252, 1e-13);
  EXPECT_DOUBLE_EQ(tenth.confidence, 0.95);
}

TEST(CombinedWorstCaseTest, NonmembershipRatioMirrorsMembership) {
  // (1 - X) / (1 - p) at prior p is the membership ratio at prior 1 - p.
  for (double eps : {0.2, 1.0, 3.0}) {
    for (double p : {0.05, 0.3, 0.5, 0.8}) {
      ASSERT_OK_AND_ASSIGN(CombinedWorstCase a, CombinedWorstCaseBounds(eps, 0.0, p));
      ASSERT_OK_AND_ASSIGN(CombinedWorstCase b,
                           CombinedWorstCaseBounds(eps, 0.0, 1.0 - p));
      EXPECT_NEAR(a.nonmembership_ratio, b.membership_ratio, 1e-12);
      EXPECT_NEAR(a.nonmembership_ratio,
                  1.0 / (p * std::exp(-eps) + (1 - p)), 1e-12);
      EXPECT_GE(a.nonmembership_ratio, 1.0);
    }
  }
}

TEST(CombinedWorstCaseTest, RejectsDegeneratePriors) {
  EXPECT_THAT(CombinedWorstCaseBounds(1.0, 0.05, 0.0),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(CombinedWorstCaseBounds(1.0, 0.05, 1.0),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(CriterionTest, NamesParseWithEitherSeparator) {
  ASSERT_OK_AND_ASSIGN(RiskCriterion a, ParseRiskCriterion("posterior-upper"));
  EXPECT_EQ(a, RiskCriterion::kPosteriorUpper);
  ASSERT_OK_AND_ASSIGN(RiskCriterion b, ParseRiskCriterion("diff_magnitude"));
  EXPECT_EQ(b, RiskCriterion::kDiffMagnitude);
  EXPECT_FALSE(ParseRiskCriterion("odds").ok());
}

TEST(CriterionTest, EvaluateAndInvertRoundTrip) {
  for (RiskCriterion c : {RiskCriterion::kPosteriorUpper,
                          RiskCriterion::kRatioUpper,
                          RiskCriterion::kDiffMagnitude}) {
    for (double eps : {0.01, 0.3, 1.0, 2.5}) {
      ASSERT_OK_AND_ASSIGN(double value, EvaluateCriterion(c, eps, 0.3));
      ASSERT_OK_AND_ASSIGN(double back, InvertCriterion(c, value, 0.3));
      EXPECT_NEAR(back, eps, 1e-10);
    }
  }
  EXPECT_FALSE(EvaluateCriterion(RiskCriterion::kPosteriorUpper, 1.0,
                                 std::nullopt)
                   .ok());
  ASSERT_OK_AND_ASSIGN(double vacuous,
                       EvaluateCriterion(RiskCriterion::kDiffMagnitude,
                                         INFINITY, std::nullopt));
  EXPECT_EQ(vacuous, 1.0);
}

}  // namespace
}  // namespace dprisk
