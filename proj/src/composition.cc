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

#include "dprisk/composition.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "dprisk/numeric.h"

namespace dprisk {
namespace {

constexpr double kLogDeltaSearchWidth = 80.0;
constexpr int kSplitScanPoints = 400;
constexpr double kSplitLogTolerance = 1e-10;

absl::Status CheckHomogeneous(double epsilon, double delta, int k) {
  if (!std::isfinite(epsilon) || epsilon < 0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("epsilon must be finite and >= 0, got %g", epsilon));
  }
  if (!(delta >= 0 && delta < 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("delta must be in [0, 1), got %g", delta));
  }
  if (k < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("k must be >= 1, got %d", k));
  }
  return absl::OkStatus();
}

// 1 - (1 - delta)^k (1 - delta_l) without cancellation.
double FrontierDelta(double epsilon, double delta, int k, int ell) {
  const double delta_ell = std::exp(LogOptimalDeltaEll(epsilon, k, ell));
  return -std::expm1(k * std::log1p(-delta) + std::log1p(-delta_ell));
}

// eps' for (epsilon, delta)-DP at confidence delta'; +inf once delta >= delta'.
double PdpEpsilonOrInfinity(double epsilon, double delta, double delta_prime) {
  if (delta == 0) return epsilon;
  if (!(delta < delta_prime)) return kInfinity;
  return DpToPdp(epsilon, delta, delta_prime)->epsilon;
}

double AdvancedEpsilon(double epsilon, int k, double slack) {
  return k * epsilon * std::expm1(epsilon) +
         std::sqrt(2.0 * k * epsilon * epsilon * -std::log(slack));
}

RiskCurvePoint BasicRisk(const ApproxDp& per_release, int k,
                         double delta_prime) {
  RiskCurvePoint point;
  point.k = k;
  point.epsilon_total = k * per_release.epsilon;
  point.delta_total = k * per_release.delta;
  point.epsilon_prime = PdpEpsilonOrInfinity(
      point.epsilon_total, point.delta_total, delta_prime);
  return point;
}

RiskCurvePoint AdvancedRisk(const ApproxDp& per_release, int k,
                            double delta_prime) {
  RiskCurvePoint point;
  point.k = k;
  const double used = k * per_release.delta;
  const double room = delta_prime - used;
  if (!(room > 0)) {
    point.epsilon_total = kInfinity;
    point.delta_total = used;
    point.epsilon_prime = kInfinity;
    return point;
  }
  auto epsilon_prime_at = [&](double log_slack) {
    const double slack = std::exp(log_slack);
    const double total = used + slack;
    if (!(total < delta_prime)) return kInfinity;
    return PdpEpsilonOrInfinity(AdvancedEpsilon(per_release.epsilon, k, slack),
                                total, delta_prime);
  };
  const double log_room = std::log(room);
  const ScalarMinimum best = ScanThenGoldenSection(
      epsilon_prime_at, log_room - kLogDeltaSearchWidth,
      log_room + std::log1p(-1e-9), kSplitScanPoints, kSplitLogTolerance);
  const double slack = std::exp(best.argmin);
  point.epsilon_total = AdvancedEpsilon(per_release.epsilon, k, slack);
  point.delta_total = used + slack;
  point.epsilon_prime = best.value;
  return point;
}

RiskCurvePoint OptimalRisk(const ApproxDp& per_release, int k,
                           double delta_prime) {
  RiskCurvePoint point{k, kInfinity, 1.0, kInfinity, 0.0};
  // Frontier deltas are nondecreasing in l, so stop at the first point that
  // exhausts delta'.
  for (int ell = 0; ell <= k / 2; ++ell) {
    const double delta =
        FrontierDelta(per_release.epsilon, per_release.delta, k, ell);
    if (delta > 0 && !(delta < delta_prime)) break;
    const double epsilon = (k - 2 * ell) * per_release.epsilon;
    const double epsilon_prime =
        PdpEpsilonOrInfinity(epsilon, delta, delta_prime);
    if (epsilon_prime < point.epsilon_prime) {
      point.epsilon_total = epsilon;
      point.delta_total = delta;
      point.epsilon_prime = epsilon_prime;
    }
  }
  return point;
}

}  // namespace

std::string_view CompositionMethodName(CompositionMethod method) {
  switch (method) {
    case CompositionMethod::kBasic:
      return "basic";
    case CompositionMethod::kAdvanced:
      return "advanced";
    case CompositionMethod::kOptimal:
      return "optimal";
    case CompositionMethod::kZcdp:
      return "zcdp";
  }
  return "unknown";
}

absl::StatusOr<CompositionMethod> ParseCompositionMethod(std::string_view name) {
  for (CompositionMethod m :
       {CompositionMethod::kBasic, CompositionMethod::kAdvanced,
        CompositionMethod::kOptimal, CompositionMethod::kZcdp}) {
    if (CompositionMethodName(m) == name) return m;
  }
  return absl::InvalidArgumentError(
      absl::StrFormat("unknown composition method '%s'", std::string(name)));
}

absl::StatusOr<ApproxDp> ComposeBasic(std::span<const ApproxDp> guarantees) {
  if (guarantees.empty()) {
    return absl::InvalidArgumentError("cannot compose an empty list");
  }
  CompensatedSum epsilon;
  CompensatedSum delta;
  for (const ApproxDp& g : guarantees) {
    if (absl::Status s = ApproxDp::Create(g.epsilon, g.delta).status();
        !s.ok()) {
      return s;
    }
    epsilon.Add(g.epsilon);
    delta.Add(g.delta);
  }
  return ApproxDp{epsilon.Result(), delta.Result()};
}

absl::StatusOr<ApproxDp> ComposeAdvanced(std::span<const double> epsilons,
                                         std::span<const double> deltas,
                                         double total_delta) {
  if (epsilons.empty() || epsilons.size() != deltas.size()) {
    return absl::InvalidArgumentError(
        "advanced composition needs equally sized, nonempty epsilon and delta "
        "lists");
  }
  CompensatedSum linear;
  CompensatedSum squares;
  CompensatedSum delta_sum;
  for (size_t j = 0; j < epsilons.size(); ++j) {
    if (absl::Status s = ApproxDp::Create(epsilons[j], deltas[j]).status();
        !s.ok()) {
      return s;
    }
    linear.Add(epsilons[j] * std::expm1(epsilons[j]));
    squares.Add(epsilons[j] * epsilons[j]);
    delta_sum.Add(deltas[j]);
  }
  const double slack = total_delta - delta_sum.Result();
  if (!(slack > 0) || !(total_delta < 1)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "advanced composition needs sum(delta_j) < total delta < 1; got "
        "sum(delta_j) = %g, total delta = %g",
        delta_sum.Result(), total_delta));
  }
  return ApproxDp{
      linear.Result() + std::sqrt(2.0 * squares.Result() * -std::log(slack)),
      total_delta};
}

absl::StatusOr<ApproxDp> ComposeAdvanced(double epsilon, double delta, int k,
                                         double total_delta) {
  if (absl::Status s = CheckHomogeneous(epsilon, delta, k); !s.ok()) return s;
  const std::vector<double> epsilons(k, epsilon);
  const std::vector<double> deltas(k, delta);
  return ComposeAdvanced(epsilons, deltas, total_delta);
}

double LogOptimalDeltaEll(double epsilon, int k, int ell) {
  if (ell <= 0 || epsilon <= 0) return -kInfinity;
  std::vector<double> log_terms;
  log_terms.reserve(ell);
  for (int j = 0; j < ell; ++j) {
    // e^{(k-j)eps} - e^{(k-2l+j)eps} = e^{(k-j)eps} (1 - e^{-2(l-j)eps})
    log_terms.push_back(LogBinomial(k, j) + (k - j) * epsilon +
                        std::log(-std::expm1(-2.0 * (ell - j) * epsilon)));
  }
  return LogSumExp(log_terms) - k * Softplus(epsilon);
}

absl::StatusOr<ApproxDp> ComposeOptimalHomogeneous(double epsilon,
                                                   double delta, int k,
                                                   int ell) {
  if (absl::Status s = CheckHomogeneous(epsilon, delta, k); !s.ok()) return s;
  if (ell < 0 || ell > k / 2) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "l must be in [0, floor(k/2)] = [0, %d], got %d", k / 2, ell));
  }
  return ApproxDp{(k - 2 * ell) * epsilon,
                  FrontierDelta(epsilon, delta, k, ell)};
}

absl::StatusOr<std::vector<FrontierPoint>> OptimalFrontier(double epsilon,
                                                           double delta,
                                                           int k) {
  if (absl::Status s = CheckHomogeneous(epsilon, delta, k); !s.ok()) return s;
  std::vector<FrontierPoint> frontier;
  frontier.reserve(k / 2 + 1);
  for (int ell = 0; ell <= k / 2; ++ell) {
    frontier.push_back({ell, (k - 2 * ell) * epsilon,
                        FrontierDelta(epsilon, delta, k, ell)});
  }
  return frontier;
}

absl::StatusOr<FrontierPoint> SelectFrontierPoint(double epsilon, double delta,
                                                  int k, double delta_target) {
  if (absl::Status s = CheckHomogeneous(epsilon, delta, k); !s.ok()) return s;
  auto point_at = [&](int ell) {
    return FrontierPoint{ell, (k - 2 * ell) * epsilon,
                         FrontierDelta(epsilon, delta, k, ell)};
  };
  FrontierPoint best = point_at(0);
  if (!(best.delta <= delta_target)) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "no optimal-composition point meets delta <= %g (smallest is %g)",
        delta_target, best.delta));
  }
  if (epsilon == 0) return best;
  // Deltas are nondecreasing in l: binary search for the last feasible l.
  int lo = 0;
  int hi = k / 2;
  while (lo < hi) {
    const int mid = lo + (hi - lo + 1) / 2;
    if (point_at(mid).delta <= delta_target) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return point_at(lo);
}

absl::StatusOr<Zcdp> ComposeZcdp(std::span<const double> rhos) {
  if (rhos.empty()) {
    return absl::InvalidArgumentError("cannot compose an empty list");
  }
  CompensatedSum rho;
  for (double r : rhos) {
    if (absl::Status s = Zcdp::Create(r).status(); !s.ok()) return s;
    rho.Add(r);
  }
  return Zcdp{rho.Result()};
}

absl::StatusOr<RiskCurvePoint> RiskAtK(const RiskCurveOptions& options, int k) {
  if (k < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("k must be >= 1, got %d", k));
  }
  if (absl::Status s = Validate(options.per_release); !s.ok()) return s;
  if (!(options.delta_prime > 0 && options.delta_prime < 1)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "delta' must be in (0, 1), got %g", options.delta_prime));
  }
  if (options.criterion == RiskCriterion::kPosteriorUpper &&
      !options.prior.has_value()) {
    return absl::InvalidArgumentError(
        "the posterior_upper criterion needs a prior");
  }

  const bool is_zcdp = std::holds_alternative<Zcdp>(options.per_release);
  if (is_zcdp != (options.method == CompositionMethod::kZcdp)) {
    return absl::InvalidArgumentError(
        "zCDP releases compose with method 'zcdp', and only zCDP releases do");
  }

  RiskCurvePoint point;
  if (is_zcdp) {
    const double rho = std::get<Zcdp>(options.per_release).rho * k;
    absl::StatusOr<OptimizedPdp> opt =
        ZcdpToPdpOptimized(rho, options.delta_prime);
    if (!opt.ok()) return opt.status();
    point = {k, opt->intermediate_epsilon, opt->intermediate_delta,
             opt->pdp.epsilon, 0.0};
  } else {
    const ApproxDp per_release = *AsApproxDp(options.per_release);
    switch (options.method) {
      case CompositionMethod::kBasic:
        point = BasicRisk(per_release, k, options.delta_prime);
        break;
      case CompositionMethod::kAdvanced:
        point = AdvancedRisk(per_release, k, options.delta_prime);
        break;
      case CompositionMethod::kOptimal:
        point = OptimalRisk(per_release, k, options.delta_prime);
        break;
      case CompositionMethod::kZcdp:
        return absl::InternalError("unreachable");
    }
  }
  absl::StatusOr<double> value =
      EvaluateCriterion(options.criterion, point.epsilon_prime, options.prior);
  if (!value.ok()) return value.status();
  point.value = *value;
  return point;
}

absl::StatusOr<std::vector<RiskCurvePoint>> RiskCurve(
    const RiskCurveOptions& options) {
  if (options.k_max < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("k_max must be >= 1, got %d", options.k_max));
  }
  std::vector<RiskCurvePoint> curve;
  curve.reserve(options.k_max);
  for (int k = 1; k <= options.k_max; ++k) {
    absl::StatusOr<RiskCurvePoint> point = RiskAtK(options, k);
    if (!point.ok()) return point.status();
    curve.push_back(*point);
  }
  return curve;
}

std::optional<int> FirstCrossing(std::span<const RiskCurvePoint> curve,
                                 double threshold) {
  for (const RiskCurvePoint& point : curve) {
    if (point.value > threshold) return point.k;
  }
  return std::nullopt;
}

}  // namespace dprisk
