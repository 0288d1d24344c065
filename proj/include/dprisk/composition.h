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

// Composition theorems and disclosure-risk-versus-release-count curves.

#ifndef DPRISK_COMPOSITION_H_
#define DPRISK_COMPOSITION_H_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "dprisk/guarantees.h"
#include "dprisk/risk_bounds.h"

namespace dprisk {

enum class CompositionMethod { kBasic, kAdvanced, kOptimal, kZcdp };

std::string_view CompositionMethodName(CompositionMethod method);
absl::StatusOr<CompositionMethod> ParseCompositionMethod(std::string_view name);

// Sums of epsilons and deltas. Fails on an empty list.
absl::StatusOr<ApproxDp> ComposeBasic(std::span<const ApproxDp> guarantees);

// Advanced composition for a target total delta > sum(deltas):
//
//   eps = sum_j eps_j (e^eps_j - 1)
//         + sqrt(2 sum_j eps_j^2 log(1 / (total_delta - sum_j delta_j))).
absl::StatusOr<ApproxDp> ComposeAdvanced(std::span<const double> epsilons,
                                         std::span<const double> deltas,
                                         double total_delta);

// Homogeneous convenience form of ComposeAdvanced.
absl::StatusOr<ApproxDp> ComposeAdvanced(double epsilon, double delta, int k,
                                         double total_delta);

// log delta_l for k-fold homogeneous optimal composition of pure
// epsilon-DP mechanisms,
//
//   delta_l = sum_{j<l} C(k, j) (e^{(k-j) eps} - e^{(k-2l+j) eps}) / (1+e^eps)^k,
//
// evaluated as a log-sum-exp over log-binomials. Returns -inf when
// delta_l = 0 (l = 0 or eps = 0). No argument checks.
double LogOptimalDeltaEll(double epsilon, int k, int ell);

// One point ((k - 2l) eps, 1 - (1 - delta)^k (1 - delta_l)) of the
// homogeneous optimal composition frontier.
absl::StatusOr<ApproxDp> ComposeOptimalHomogeneous(double epsilon,
                                                   double delta, int k,
                                                   int ell);

struct FrontierPoint {
  int ell;
  double epsilon;
  double delta;
};

// All frontier points, l = 0 .. floor(k/2). Epsilon decreases and delta is
// nondecreasing along the list.
absl::StatusOr<std::vector<FrontierPoint>> OptimalFrontier(double epsilon,
                                                           double delta,
                                                           int k);

// The frontier point with the smallest epsilon whose delta is at most
// `delta_target`; ties go to the smaller l. Fails with FailedPrecondition when
// no point meets the target.
absl::StatusOr<FrontierPoint> SelectFrontierPoint(double epsilon, double delta,
                                                  int k, double delta_target);

absl::StatusOr<Zcdp> ComposeZcdp(std::span<const double> rhos);

// A single evaluation of the risk after k releases.
struct RiskCurvePoint {
  int k = 0;
  double epsilon_total = 0.0;  // composed DP epsilon at the chosen split
  double delta_total = 0.0;    // composed DP delta at the chosen split
  double epsilon_prime = 0.0;  // PDP epsilon at confidence 1 - delta'
  double value = 0.0;          // criterion value
};

struct RiskCurveOptions {
  PrivacyGuarantee per_release = PureDp{0.0};
  CompositionMethod method = CompositionMethod::kBasic;
  int k_max = 1;
  std::optional<double> prior;
  double delta_prime = 0.05;
  RiskCriterion criterion = RiskCriterion::kPosteriorUpper;
};

// Risk after k releases. The confidence budget delta' is split between the
// composition delta and the DP -> PDP conversion so as to minimize eps':
//   basic     no freedom; the composed delta is k * delta
//   advanced  golden-section search over log(total_delta - k delta)
//   optimal   exact minimum over the frontier points with delta < delta'
//   zcdp      ZcdpToPdpOptimized on the summed rho
// When the composed delta already reaches delta', eps' is +inf and the
// criterion takes its vacuous value.
absl::StatusOr<RiskCurvePoint> RiskAtK(const RiskCurveOptions& options, int k);

// RiskAtK for k = 1 .. k_max. Nondecreasing in k.
absl::StatusOr<std::vector<RiskCurvePoint>> RiskCurve(
    const RiskCurveOptions& options);

// First k whose value strictly exceeds `threshold`.
std::optional<int> FirstCrossing(std::span<const RiskCurvePoint> curve,
                                 double threshold);

}  // namespace dprisk

#endif  // DPRISK_COMPOSITION_H_
