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

#include "dprisk/planner.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "absl/strings/str_format.h"
#include "dprisk/guarantees.h"
#include "dprisk/numeric.h"

namespace dprisk {
namespace {

absl::Status ValidateSchedule(const ReleaseSchedule& schedule) {
  if (schedule.k < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("k must be >= 1, got %d", schedule.k));
  }
  for (double d : {schedule.per_release_delta, schedule.total_delta}) {
    if (!(d >= 0 && d < 1)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("deltas must be in [0, 1), got %g", d));
    }
  }
  if (schedule.method == CompositionMethod::kZcdp) {
    return absl::InvalidArgumentError(
        "release schedules take basic, advanced or optimal composition");
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status ValidateRiskProfile(const RiskProfile& profile) {
  if (!(profile.delta_prime > 0 && profile.delta_prime < 1)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "delta' must be in (0, 1), got %g", profile.delta_prime));
  }
  return InvertCriterion(profile.criterion, profile.threshold, profile.prior)
      .status();
}

absl::StatusOr<double> MaxTotalEpsilon(const RiskProfile& profile,
                                       double total_delta) {
  if (absl::Status s = ValidateRiskProfile(profile); !s.ok()) return s;
  if (!(total_delta >= 0 && total_delta < profile.delta_prime)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "total delta must be in [0, delta') = [0, %g), got %g",
        profile.delta_prime, total_delta));
  }
  absl::StatusOr<double> epsilon_prime =
      InvertCriterion(profile.criterion, profile.threshold, profile.prior);
  if (!epsilon_prime.ok()) return epsilon_prime.status();
  if (total_delta == 0) return *epsilon_prime;

  // log(((d' - d) e^eps' - d) / d') = eps' + log1p(-(d + d e^-eps') / d').
  const double shrink =
      total_delta * (1.0 + std::exp(-*epsilon_prime)) / profile.delta_prime;
  const double epsilon =
      shrink < 1 ? *epsilon_prime + std::log1p(-shrink) : -kInfinity;
  if (!(epsilon > 0)) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "the profile cannot be met at total delta %g: it needs eps' <= %.6g, "
        "which no epsilon > 0 reaches at delta' = %g",
        total_delta, *epsilon_prime, profile.delta_prime));
  }
  return epsilon;
}

absl::StatusOr<double> MaxTotalEpsilon(std::span<const RiskProfile> profiles,
                                       double total_delta) {
  if (profiles.empty()) {
    return absl::InvalidArgumentError("no risk profiles given");
  }
  double best = kInfinity;
  for (const RiskProfile& profile : profiles) {
    absl::StatusOr<double> epsilon = MaxTotalEpsilon(profile, total_delta);
    if (!epsilon.ok()) return epsilon.status();
    best = std::min(best, *epsilon);
  }
  return best;
}

absl::StatusOr<ApproxDp> ComposeSchedule(const ReleaseSchedule& schedule,
                                         double epsilon) {
  if (absl::Status s = ValidateSchedule(schedule); !s.ok()) return s;
  const int k = schedule.k;
  switch (schedule.method) {
    case CompositionMethod::kBasic: {
      const std::vector<ApproxDp> copies(
          k, ApproxDp{epsilon, schedule.per_release_delta});
      return ComposeBasic(copies);
    }
    case CompositionMethod::kAdvanced:
      if (!(k * schedule.per_release_delta < schedule.total_delta)) {
        return absl::FailedPreconditionError(absl::StrFormat(
            "advanced composition needs k * delta = %g below total delta %g",
            k * schedule.per_release_delta, schedule.total_delta));
      }
      return ComposeAdvanced(epsilon, schedule.per_release_delta, k,
                             schedule.total_delta);
    case CompositionMethod::kOptimal: {
      absl::StatusOr<FrontierPoint> point =
          SelectFrontierPoint(epsilon, schedule.per_release_delta, k,
                              schedule.total_delta);
      if (!point.ok()) return point.status();
      return ApproxDp{point->epsilon, point->delta};
    }
    case CompositionMethod::kZcdp:
      break;
  }
  return absl::InvalidArgumentError("unsupported composition method");
}

absl::StatusOr<double> PerReleaseEpsilon(const ReleaseSchedule& schedule,
                                         double epsilon_total) {
  if (absl::Status s = ValidateSchedule(schedule); !s.ok()) return s;
  if (!(epsilon_total >= 0) || !std::isfinite(epsilon_total)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "total epsilon must be finite and >= 0, got %g", epsilon_total));
  }
  auto feasible = [&](double epsilon) {
    absl::StatusOr<ApproxDp> composed = ComposeSchedule(schedule, epsilon);
    return composed.ok() && composed->epsilon <= epsilon_total &&
           composed->delta <= schedule.total_delta;
  };
  if (!feasible(0.0)) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "%d releases at delta %g exceed the total delta %g under %s "
        "composition even at epsilon = 0",
        schedule.k, schedule.per_release_delta, schedule.total_delta,
        std::string(CompositionMethodName(schedule.method))));
  }
  return BisectLastFeasible(feasible, 0.0, epsilon_total,
                            kPerReleaseTolerance);
}

std::vector<double> DefaultPriorGrid() {
  std::vector<double> grid;
  grid.reserve(999);
  for (int i = 1; i <= 999; ++i) grid.push_back(i / 1000.0);
  return grid;
}

absl::StatusOr<WorstCaseReport> MakeWorstCaseReport(
    double epsilon, double delta, double delta_prime,
    std::span<const double> prior_grid) {
  absl::StatusOr<Pdp> pdp = DpToPdp(epsilon, delta, delta_prime);
  if (!pdp.ok()) return pdp.status();
  const double eps_prime = pdp->epsilon;

  std::vector<double> default_grid;
  if (prior_grid.empty()) {
    default_grid = DefaultPriorGrid();
    prior_grid = default_grid;
  }

  WorstCaseReport report;
  report.epsilon = epsilon;
  report.delta = delta;
  report.delta_prime = delta_prime;
  report.epsilon_prime = eps_prime;

  absl::StatusOr<SymmetricBound> ratio = RatioInterval(eps_prime, delta_prime);
  if (!ratio.ok()) return ratio.status();
  absl::StatusOr<SymmetricBound> diff = DiffInterval(eps_prime, delta_prime);
  if (!diff.ok()) return diff.status();
  absl::StatusOr<WorstCasePriors> priors = WorstCasePriorsDiff(eps_prime);
  if (!priors.ok()) return priors.status();
  report.ratio_envelope = *ratio;
  report.diff_envelope = *diff;
  report.worst_priors = *priors;

  report.max_membership_ratio = {-kInfinity, 0};
  report.max_nonmembership_ratio = {-kInfinity, 0};
  report.max_increase = {-kInfinity, 0};
  report.max_decrease = {-kInfinity, 0};
  auto track = [](GridExtremum& extremum, double value, double prior) {
    if (value > extremum.value) extremum = {value, prior};
  };

  report.grid.reserve(prior_grid.size());
  for (double prior : prior_grid) {
    if (!(prior > 0 && prior < 1)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("grid priors must be in (0, 1), got %g", prior));
    }
    absl::StatusOr<ProbabilityInterval> posterior =
        PosteriorInterval(eps_prime, delta_prime, prior);
    if (!posterior.ok()) return posterior.status();
    absl::StatusOr<CombinedWorstCase> combined =
        CombinedWorstCaseBounds(eps_prime, delta_prime, prior);
    if (!combined.ok()) return combined.status();
    report.grid.push_back({prior, *posterior, *combined});
    track(report.max_membership_ratio, combined->membership_ratio, prior);
    track(report.max_nonmembership_ratio, combined->nonmembership_ratio,
          prior);
    track(report.max_increase, combined->increase, prior);
    track(report.max_decrease, combined->decrease, prior);
  }
  return report;
}

}  // namespace dprisk
