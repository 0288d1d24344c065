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

#include <algorithm>
#include <cmath>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace dprisk {
namespace {

absl::Status CheckEpsilonPrime(double epsilon_prime) {
  if (!(epsilon_prime >= 0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("epsilon' must be >= 0, got %g", epsilon_prime));
  }
  return absl::OkStatus();
}

absl::Status CheckUnit(const char* name, double value) {
  if (!(value >= 0 && value <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s must be in [0, 1], got %g", name, value));
  }
  return absl::OkStatus();
}

// Both endpoints are written in terms of m = 1 - e^-eps, which stays in [0, 1]
// and keeps full relative precision for tiny eps. Past eps = 1 the direct
// form is used; it keeps the relative precision of a lower end near zero.
//   upper = p + p(1-p) m / (1 - (1-p) m)
//   lower = p - p(1-p) m / (1 - p m)
double UpperPosterior(double epsilon, double p) {
  if (p == 0 || p == 1) return p;
  if (epsilon >= 1) return p / (p + (1 - p) * std::exp(-epsilon));
  const double m = -std::expm1(-epsilon);
  return std::min(1.0, p + p * (1 - p) * m / (1 - (1 - p) * m));
}

double LowerPosterior(double epsilon, double p) {
  if (p == 0 || p == 1) return p;
  if (epsilon >= 1) return p / (p + (1 - p) * std::exp(epsilon));
  const double m = -std::expm1(-epsilon);
  return std::max(0.0, p - p * (1 - p) * m / (1 - p * m));
}

}  // namespace

absl::StatusOr<ProbabilityInterval> PosteriorInterval(double epsilon_prime,
                                                      double delta_prime,
                                                      double prior) {
  if (absl::Status s = CheckEpsilonPrime(epsilon_prime); !s.ok()) return s;
  if (absl::Status s = CheckUnit("delta'", delta_prime); !s.ok()) return s;
  if (absl::Status s = CheckUnit("prior", prior); !s.ok()) return s;
  return ProbabilityInterval{LowerPosterior(epsilon_prime, prior),
                             UpperPosterior(epsilon_prime, prior),
                             1.0 - delta_prime};
}

absl::StatusOr<SymmetricBound> RatioInterval(double epsilon_prime,
                                             double delta_prime) {
  if (absl::Status s = CheckEpsilonPrime(epsilon_prime); !s.ok()) return s;
  if (absl::Status s = CheckUnit("delta'", delta_prime); !s.ok()) return s;
  return SymmetricBound{std::exp(epsilon_prime), BoundKind::kRatio,
                        1.0 - delta_prime};
}

absl::StatusOr<SymmetricBound> DiffInterval(double epsilon_prime,
                                            double delta_prime) {
  if (absl::Status s = CheckEpsilonPrime(epsilon_prime); !s.ok()) return s;
  if (absl::Status s = CheckUnit("delta'", delta_prime); !s.ok()) return s;
  return SymmetricBound{std::tanh(epsilon_prime / 4.0), BoundKind::kDifference,
                        1.0 - delta_prime};
}

absl::StatusOr<WorstCasePriors> WorstCasePriorsDiff(double epsilon_prime) {
  if (absl::Status s = CheckEpsilonPrime(epsilon_prime); !s.ok()) return s;
  const double half = epsilon_prime / 2.0;
  return WorstCasePriors{1.0 / (1.0 + std::exp(half)),
                         1.0 / (1.0 + std::exp(-half))};
}

absl::StatusOr<double> EpsilonForDiff(double difference) {
  if (!(difference > 0 && difference < 1)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "difference bound must be in (0, 1), got %g", difference));
  }
  return 4.0 * std::atanh(difference);
}

absl::StatusOr<double> EpsilonForRatio(double ratio) {
  if (!(ratio > 1) || std::isinf(ratio)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("ratio bound must be finite and > 1, got %g", ratio));
  }
  return std::log(ratio);
}

absl::StatusOr<double> EpsilonForPosterior(double threshold, double prior) {
  if (!(prior > 0 && prior < 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("prior must be in (0, 1), got %g", prior));
  }
  if (!(threshold > prior && threshold < 1)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "posterior threshold must be in (prior, 1) = (%g, 1), got %g", prior,
        threshold));
  }
  auto logit = [](double q) { return std::log(q) - std::log1p(-q); };
  return logit(threshold) - logit(prior);
}

absl::StatusOr<CombinedWorstCase> CombinedWorstCaseBounds(double epsilon_prime,
                                                          double delta_prime,
                                                          double prior) {
  if (!(prior > 0 && prior < 1)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "prior must be in (0, 1) for ratio bounds, got %g", prior));
  }
  absl::StatusOr<ProbabilityInterval> posterior =
      PosteriorInterval(epsilon_prime, delta_prime, prior);
  if (!posterior.ok()) return posterior.status();

  CombinedWorstCase result;
  result.membership_ratio = posterior->upper / prior;
  result.nonmembership_ratio = (1.0 - posterior->lower) / (1.0 - prior);
  result.ratio_max =
      std::max(result.membership_ratio, result.nonmembership_ratio);
  result.increase = posterior->upper - prior;
  result.decrease = prior - posterior->lower;
  result.diff_max = std::max(result.increase, result.decrease);
  result.confidence = posterior->confidence;
  return result;
}

std::string_view RiskCriterionName(RiskCriterion criterion) {
  switch (criterion) {
    case RiskCriterion::kPosteriorUpper:
      return "posterior_upper";
    case RiskCriterion::kRatioUpper:
      return "ratio_upper";
    case RiskCriterion::kDiffMagnitude:
      return "diff_magnitude";
  }
  return "unknown";
}

absl::StatusOr<RiskCriterion> ParseRiskCriterion(std::string_view name) {
  std::string normalized(name);
  std::replace(normalized.begin(), normalized.end(), '-', '_');
  for (RiskCriterion c :
       {RiskCriterion::kPosteriorUpper, RiskCriterion::kRatioUpper,
        RiskCriterion::kDiffMagnitude}) {
    if (RiskCriterionName(c) == normalized) return c;
  }
  return absl::InvalidArgumentError(
      absl::StrFormat("unknown criterion '%s'", std::string(name)));
}

absl::StatusOr<double> EvaluateCriterion(RiskCriterion criterion,
                                         double epsilon_prime,
                                         std::optional<double> prior) {
  if (absl::Status s = CheckEpsilonPrime(epsilon_prime); !s.ok()) return s;
  switch (criterion) {
    case RiskCriterion::kPosteriorUpper: {
      if (!prior.has_value()) {
        return absl::InvalidArgumentError(
            "the posterior_upper criterion needs a prior");
      }
      absl::StatusOr<ProbabilityInterval> interval =
          PosteriorInterval(epsilon_prime, 0.0, *prior);
      if (!interval.ok()) return interval.status();
      return interval->upper;
    }
    case RiskCriterion::kRatioUpper:
      return std::exp(epsilon_prime);
    case RiskCriterion::kDiffMagnitude:
      return std::tanh(epsilon_prime / 4.0);
  }
  return absl::InternalError("unhandled criterion");
}

absl::StatusOr<double> InvertCriterion(RiskCriterion criterion,
                                       double threshold,
                                       std::optional<double> prior) {
  switch (criterion) {
    case RiskCriterion::kPosteriorUpper:
      if (!prior.has_value()) {
        return absl::InvalidArgumentError(
            "the posterior_upper criterion needs a prior");
      }
      return EpsilonForPosterior(threshold, *prior);
    case RiskCriterion::kRatioUpper:
      return EpsilonForRatio(threshold);
    case RiskCriterion::kDiffMagnitude:
      return EpsilonForDiff(threshold);
  }
  return absl::InternalError("unhandled criterion");
}

}  // namespace dprisk
