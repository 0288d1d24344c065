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

// Budget planning: from a tolerated disclosure risk to a privacy budget and a
// per-release schedule, plus worst-case-prior reports.
//
// Infeasible requests fail with absl::StatusCode::kFailedPrecondition; invalid
// arguments with kInvalidArgument.

#ifndef DPRISK_PLANNER_H_
#define DPRISK_PLANNER_H_

#include <optional>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dprisk/composition.h"
#include "dprisk/risk_bounds.h"

namespace dprisk {

// A cap on one disclosure criterion, required to hold with probability at
// least 1 - delta_prime.
struct RiskProfile {
  RiskCriterion criterion = RiskCriterion::kDiffMagnitude;
  double threshold = 0.0;
  double delta_prime = 0.05;
  std::optional<double> prior;  // kPosteriorUpper only
};

absl::Status ValidateRiskProfile(const RiskProfile& profile);

// Largest epsilon such that (epsilon, total_delta)-DP meets the profile:
//
//   eps = log(((delta' - delta) e^eps' - delta) / delta')
//
// with eps' the inverted criterion. Needs total_delta < delta'.
absl::StatusOr<double> MaxTotalEpsilon(const RiskProfile& profile,
                                       double total_delta);

// Minimum over the profiles; the most restrictive one binds.
absl::StatusOr<double> MaxTotalEpsilon(std::span<const RiskProfile> profiles,
                                       double total_delta);

struct ReleaseSchedule {
  int k = 1;
  double per_release_delta = 0.0;
  double total_delta = 0.0;
  CompositionMethod method = CompositionMethod::kBasic;
};

// Bisection tolerance on the per-release epsilon.
inline constexpr double kPerReleaseTolerance = 1e-6;

// Largest per-release epsilon such that k-fold composition of
// (eps, per_release_delta) under the schedule's method is dominated by
// (epsilon_total, total_delta). The result never overshoots.
absl::StatusOr<double> PerReleaseEpsilon(const ReleaseSchedule& schedule,
                                         double epsilon_total);

// The guarantee k releases at `epsilon` compose to under the schedule.
absl::StatusOr<ApproxDp> ComposeSchedule(const ReleaseSchedule& schedule,
                                         double epsilon);

struct WorstCaseRow {
  double prior;
  ProbabilityInterval posterior;
  CombinedWorstCase combined;
};

struct GridExtremum {
  double value;
  double prior;
};

struct WorstCaseReport {
  double epsilon;
  double delta;
  double delta_prime;
  double epsilon_prime;
  SymmetricBound ratio_envelope;
  SymmetricBound diff_envelope;
  WorstCasePriors worst_priors;
  std::vector<WorstCaseRow> grid;
  GridExtremum max_membership_ratio;
  GridExtremum max_nonmembership_ratio;
  GridExtremum max_increase;
  GridExtremum max_decrease;
};

// p = 0.001, 0.002, ..., 0.999.
std::vector<double> DefaultPriorGrid();

// Risk bounds of an (epsilon, delta)-DP release across priors, at confidence
// 1 - delta'. An empty grid selects DefaultPriorGrid(). Grid priors must lie
// in (0, 1).
absl::StatusOr<WorstCaseReport> MakeWorstCaseReport(
    double epsilon, double delta, double delta_prime,
    std::span<const double> prior_grid = {});

}  // namespace dprisk

#endif  // DPRISK_PLANNER_H_
