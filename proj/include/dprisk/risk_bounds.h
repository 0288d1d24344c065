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

// Disclosure-risk bounds for a strong membership-inference adversary.
//
// Every function here takes the guarantee already reduced to
// (epsilon', delta')-PDP (see ToPdp in guarantees.h). The bounds then hold with
// probability at least 1 - delta' over the mechanism's output, in both the
// world where the target is present and the world where it is absent.

#ifndef DPRISK_RISK_BOUNDS_H_
#define DPRISK_RISK_BOUNDS_H_

#include <optional>
#include <string_view>

#include "absl/status/statusor.h"

namespace dprisk {

// A closed interval [lower, upper] in [0, 1] holding with probability at least
// `confidence`.
struct ProbabilityInterval {
  double lower = 0.0;
  double upper = 1.0;
  double confidence = 1.0;

  bool Contains(double x, double tolerance = 0.0) const {
    return x >= lower - tolerance && x <= upper + tolerance;
  }
};

enum class BoundKind { kRatio, kDifference };

// A prior-independent envelope symmetric in the appropriate scale:
//   ratio:       [1 / magnitude, magnitude] with magnitude = e^eps' >= 1
//   difference:  [-magnitude, magnitude]    with magnitude in [0, 1)
struct SymmetricBound {
  double magnitude = 0.0;
  BoundKind kind = BoundKind::kDifference;
  double confidence = 1.0;

  double lower() const {
    return kind == BoundKind::kRatio ? 1.0 / magnitude : -magnitude;
  }
  double upper() const { return magnitude; }
};

// Bounds on the adversary's posterior membership probability for a prior p:
//   p / (p + (1-p) e^eps')  <=  X  <=  p / (p + (1-p) e^-eps').
absl::StatusOr<ProbabilityInterval> PosteriorInterval(double epsilon_prime,
                                                      double delta_prime,
                                                      double prior);

// e^-eps' <= X / p <= e^eps'.
absl::StatusOr<SymmetricBound> RatioInterval(double epsilon_prime,
                                             double delta_prime);

// |X - p| <= (e^{eps'/2} - 1) / (e^{eps'/2} + 1) = tanh(eps'/4).
absl::StatusOr<SymmetricBound> DiffInterval(double epsilon_prime,
                                            double delta_prime);

// Priors at which the difference bound is attained.
struct WorstCasePriors {
  double max_increase;  // 1 / (1 + e^{eps'/2}): maximizes X - p
  double max_decrease;  // 1 / (1 + e^{-eps'/2}): minimizes X - p
};

absl::StatusOr<WorstCasePriors> WorstCasePriorsDiff(double epsilon_prime);

// Inverse of the difference envelope: 2 log((1 + d) / (1 - d)).
absl::StatusOr<double> EpsilonForDiff(double difference);

// Inverse of the ratio envelope: log r.
absl::StatusOr<double> EpsilonForRatio(double ratio);

// Inverse of the posterior upper bound at a fixed prior:
// logit(threshold) - logit(prior). Requires prior < threshold < 1.
absl::StatusOr<double> EpsilonForPosterior(double threshold, double prior);

// Worst case over both orientations of the membership question: the change
// from p to X (target present) and from 1 - p to 1 - X (target absent).
struct CombinedWorstCase {
  double membership_ratio;      // upper bound on X / p
  double nonmembership_ratio;   // upper bound on (1 - X) / (1 - p)
  double ratio_max;             // max of the two
  double increase;              // upper bound on X - p
  double decrease;              // upper bound on p - X
  double diff_max;              // max of the two
  double confidence;
};

absl::StatusOr<CombinedWorstCase> CombinedWorstCaseBounds(double epsilon_prime,
                                                          double delta_prime,
                                                          double prior);

// The scalar disclosure criteria a curve or a risk profile is expressed in.
enum class RiskCriterion {
  kPosteriorUpper,  // upper posterior bound at a stated prior
  kRatioUpper,      // e^eps', prior independent
  kDiffMagnitude,   // tanh(eps'/4), prior independent
};

// "posterior_upper", "ratio_upper", "diff_magnitude".
std::string_view RiskCriterionName(RiskCriterion criterion);
// Accepts the names above with '_' or '-'.
absl::StatusOr<RiskCriterion> ParseRiskCriterion(std::string_view name);

// Value of the criterion for an (eps', .)-PDP guarantee. kPosteriorUpper needs
// a prior; eps' = +inf is allowed and gives the vacuous bound.
absl::StatusOr<double> EvaluateCriterion(RiskCriterion criterion,
                                         double epsilon_prime,
                                         std::optional<double> prior);

// Largest eps' for which the criterion stays at or below `threshold`.
absl::StatusOr<double> InvertCriterion(RiskCriterion criterion,
                                       double threshold,
                                       std::optional<double> prior);

}  // namespace dprisk

#endif  // DPRISK_RISK_BOUNDS_H_
