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

#include "dprisk/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "dprisk/guarantees.h"
#include "dprisk/numeric.h"

namespace dprisk {
namespace {

absl::Status CheckEpsilon(double epsilon) {
  if (!(epsilon >= 0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("epsilon must be finite and >= 0, got %g", epsilon));
  }
  return absl::OkStatus();
}

absl::Status CheckPrior(double prior) {
  if (!(prior >= 0 && prior <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("prior must be in [0, 1], got %g", prior));
  }
  return absl::OkStatus();
}

absl::Status CheckDistribution(std::string_view name,
                               std::span<const double> probabilities) {
  for (double p : probabilities) {
    if (!(p >= 0) || !std::isfinite(p)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "%s has an invalid probability %g", std::string(name), p));
    }
  }
  const double total = CompensatedTotal(probabilities);
  if (std::abs(total - 1.0) > kMassTolerance) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "%s sums to %.17g, not 1", std::string(name), total));
  }
  return absl::OkStatus();
}

// log(P(y) / Q(y)) for an outcome with P(y) > 0.
double LogRatio(double p, double q) {
  if (q == 0) return kInfinity;
  return std::log(p) - std::log(q);
}

const std::vector<double>& Sampling(const DiscreteMechanismPair& pair,
                                    World world) {
  return world == World::kWith ? pair.prob_with() : pair.prob_without();
}

const std::vector<double>& Other(const DiscreteMechanismPair& pair,
                                 World world) {
  return world == World::kWith ? pair.prob_without() : pair.prob_with();
}

// E[max{0, 1 - e^{eps - Z}}] for Z the PLRV sampled from `world`.
double HockeyStick(const DiscreteMechanismPair& pair, double epsilon,
                   World world) {
  CompensatedSum sum;
  for (const PlrvAtom& atom : Plrv(pair, world).atoms) {
    if (atom.z == kInfinity) {
      sum.Add(atom.probability);
    } else if (atom.z > epsilon) {
      sum.Add(-atom.probability * std::expm1(epsilon - atom.z));
    }
  }
  return sum.Result();
}

// P_P[Z > eps] - e^eps P_Q[-Z' > eps] with P the sampling world. Both events
// are the same outcome set {y : log(P(y)/Q(y)) > eps}.
double HockeyStickTail(const DiscreteMechanismPair& pair, double epsilon,
                       World world) {
  const std::vector<double>& p = Sampling(pair, world);
  const std::vector<double>& q = Other(pair, world);
  CompensatedSum tail_p;
  CompensatedSum tail_q;
  for (std::size_t y = 0; y < pair.size(); ++y) {
    if (p[y] == 0) continue;
    if (LogRatio(p[y], q[y]) > epsilon) {
      tail_p.Add(p[y]);
      tail_q.Add(q[y]);
    }
  }
  return tail_p.Result() - std::exp(epsilon) * tail_q.Result();
}

double PosteriorFromPlrv(double prior, double z, World world) {
  if (prior == 0 || prior == 1) return prior;
  // With: p / (p + (1-p) e^{-Z}); without: p / (p + (1-p) e^{Z'}).
  const double exponent = world == World::kWith ? -z : z;
  const double scaled = std::exp(exponent);
  if (scaled == kInfinity) return 0.0;
  return prior / (prior + (1.0 - prior) * scaled);
}

absl::StatusOr<double> ViolationMass(
    const DiscreteMechanismPair& pair, double prior, World world,
    const std::function<bool(double)>& inside) {
  absl::StatusOr<PosteriorDistribution> posterior =
      Posterior(pair, prior, world);
  if (!posterior.ok()) return posterior.status();
  CompensatedSum mass;
  for (const PosteriorAtom& atom : posterior->atoms) {
    if (!inside(atom.posterior)) mass.Add(atom.probability);
  }
  return mass.Result();
}

bool IsRandomizedResponse(const DiscreteMechanismPair& pair) {
  return pair.size() == 2 && pair.prob_with()[0] == pair.prob_without()[1] &&
         pair.prob_with()[1] == pair.prob_without()[0];
}

bool SameDistributions(const DiscreteMechanismPair& a,
                       const DiscreteMechanismPair& b) {
  return a.prob_with() == b.prob_with() && a.prob_without() == b.prob_without();
}

// Binomial(k, q) masses for counts k, k-1, ..., 0.
std::vector<double> BinomialMassesDescending(int k, double q) {
  std::vector<double> masses;
  masses.reserve(k + 1);
  const double log_q = std::log(q);
  const double log_not_q = std::log1p(-q);
  for (int c = k; c >= 0; --c) {
    double log_mass = LogBinomial(k, c);
    if (c > 0) log_mass += c * log_q;
    if (k - c > 0) log_mass += (k - c) * log_not_q;
    masses.push_back(std::exp(log_mass));
  }
  return masses;
}

absl::StatusOr<DiscreteMechanismPair> CollapsedBinary(double q_with,
                                                      double q_without, int k) {
  std::vector<std::string> labels;
  labels.reserve(k + 1);
  for (int c = k; c >= 0; --c) labels.push_back(std::to_string(c));
  return DiscreteMechanismPair::Create(std::move(labels),
                                       BinomialMassesDescending(k, q_with),
                                       BinomialMassesDescending(k, q_without));
}

}  // namespace

std::string_view WorldName(World world) {
  return world == World::kWith ? "with" : "without";
}

absl::StatusOr<DiscreteMechanismPair> DiscreteMechanismPair::Create(
    std::vector<std::string> outcomes, std::vector<double> prob_with,
    std::vector<double> prob_without) {
  if (outcomes.empty()) {
    return absl::InvalidArgumentError("a mechanism needs at least one outcome");
  }
  if (outcomes.size() != prob_with.size() ||
      outcomes.size() != prob_without.size()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "outcomes, prob_with and prob_without differ in length (%d, %d, %d)",
        outcomes.size(), prob_with.size(), prob_without.size()));
  }
  if (std::set<std::string>(outcomes.begin(), outcomes.end()).size() !=
      outcomes.size()) {
    return absl::InvalidArgumentError("outcome labels must be unique");
  }
  if (absl::Status s = CheckDistribution("prob_with", prob_with); !s.ok()) {
    return s;
  }
  if (absl::Status s = CheckDistribution("prob_without", prob_without);
      !s.ok()) {
    return s;
  }
  return DiscreteMechanismPair(std::move(outcomes), std::move(prob_with),
                               std::move(prob_without));
}

DiscreteMechanismPair DiscreteMechanismPair::Swapped() const {
  return DiscreteMechanismPair(outcomes_, prob_without_, prob_with_);
}

PlrvDistribution Plrv(const DiscreteMechanismPair& pair, World world) {
  const std::vector<double>& p = Sampling(pair, world);
  const std::vector<double>& q = Other(pair, world);
  PlrvDistribution plrv{world, {}};
  plrv.atoms.reserve(pair.size());
  for (std::size_t y = 0; y < pair.size(); ++y) {
    if (p[y] == 0) continue;
    plrv.atoms.push_back({LogRatio(p[y], q[y]), p[y]});
  }
  return plrv;
}

absl::StatusOr<PosteriorDistribution> Posterior(
    const DiscreteMechanismPair& pair, double prior, World world) {
  if (absl::Status s = CheckPrior(prior); !s.ok()) return s;
  PosteriorDistribution posterior{world, prior, {}};
  for (const PlrvAtom& atom : Plrv(pair, world).atoms) {
    posterior.atoms.push_back(
        {PosteriorFromPlrv(prior, atom.z, world), atom.probability});
  }
  return posterior;
}

absl::StatusOr<double> ViolationProbability(const DiscreteMechanismPair& pair,
                                            double prior,
                                            const ProbabilityInterval& interval,
                                            World world) {
  return ViolationMass(pair, prior, world, [&](double x) {
    return interval.Contains(x, kMassTolerance);
  });
}

absl::StatusOr<double> ViolationProbability(const DiscreteMechanismPair& pair,
                                            double prior,
                                            const SymmetricBound& bound,
                                            World world) {
  if (bound.kind == BoundKind::kRatio) {
    if (!(prior > 0)) {
      return absl::InvalidArgumentError(
          "the posterior-to-prior ratio needs prior > 0");
    }
    // X / p in [1/m, m], compared on the posterior scale.
    return ViolationMass(pair, prior, world, [&](double x) {
      return x >= prior / bound.magnitude - kMassTolerance &&
             x <= prior * bound.magnitude + kMassTolerance;
    });
  }
  return ViolationMass(pair, prior, world, [&](double x) {
    return std::abs(x - prior) <= bound.magnitude + kMassTolerance;
  });
}

absl::StatusOr<double> TightDelta(const DiscreteMechanismPair& pair,
                                  double epsilon) {
  if (absl::Status s = CheckEpsilon(epsilon); !s.ok()) return s;
  return std::max(HockeyStick(pair, epsilon, World::kWith),
                  HockeyStick(pair, epsilon, World::kWithout));
}

absl::StatusOr<double> TightDeltaTailForm(const DiscreteMechanismPair& pair,
                                          double epsilon) {
  if (absl::Status s = CheckEpsilon(epsilon); !s.ok()) return s;
  return std::max(HockeyStickTail(pair, epsilon, World::kWith),
                  HockeyStickTail(pair, epsilon, World::kWithout));
}

absl::StatusOr<double> PlrvTailMass(const DiscreteMechanismPair& pair,
                                    double epsilon, World world) {
  if (absl::Status s = CheckEpsilon(epsilon); !s.ok()) return s;
  const double edge = epsilon * (1.0 + kMassTolerance) + kMassTolerance;
  CompensatedSum tail;
  for (const PlrvAtom& atom : Plrv(pair, world).atoms) {
    if (std::abs(atom.z) > edge) tail.Add(atom.probability);
  }
  return tail.Result();
}

absl::StatusOr<bool> PdpHolds(const DiscreteMechanismPair& pair, double epsilon,
                              double delta) {
  for (World world : {World::kWith, World::kWithout}) {
    absl::StatusOr<double> tail = PlrvTailMass(pair, epsilon, world);
    if (!tail.ok()) return tail.status();
    if (*tail > delta + kMassTolerance) return false;
  }
  return true;
}

absl::StatusOr<DiscreteMechanismPair> RandomizedResponse(double epsilon) {
  if (absl::Status s = CheckEpsilon(epsilon); !s.ok()) return s;
  const double yes = 1.0 / (1.0 + std::exp(-epsilon));
  const double no = 1.0 / (1.0 + std::exp(epsilon));
  return DiscreteMechanismPair::Create({"yes", "no"}, {yes, no}, {no, yes});
}

absl::StatusOr<DiscreteMechanismPair> DiffGapCounterexample(
    double epsilon, double delta) {
  if (!(epsilon > 0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("epsilon must be > 0, got %g", epsilon));
  }
  const std::optional<double> tilde = DiffTildeEpsilon(epsilon);
  if (!tilde.has_value()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "epsilon must be below 2 log 3 = %.6f, got %g", 2 * std::log(3.0),
        epsilon));
  }
  const double active = delta * (1.0 + std::exp(-*tilde));
  if (!(delta > 0) || !(active <= 1)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "delta must satisfy 0 < delta (1 + e^-tilde_eps) <= 1, got delta = %g",
        delta));
  }
  const double yes = delta;
  const double no = delta * std::exp(-*tilde);
  const double nothing = 1.0 - active;
  return DiscreteMechanismPair::Create({"yes", "no", "nothing"},
                                       {yes, no, nothing}, {no, yes, nothing});
}

absl::StatusOr<DiscreteMechanismPair> ComposePairs(
    std::span<const DiscreteMechanismPair> pairs) {
  if (pairs.empty()) {
    return absl::InvalidArgumentError("cannot compose an empty list");
  }
  if (pairs.size() == 1) return pairs.front();

  const bool homogeneous_rr =
      IsRandomizedResponse(pairs.front()) &&
      std::all_of(pairs.begin(), pairs.end(), [&](const auto& p) {
        return SameDistributions(p, pairs.front());
      });
  if (homogeneous_rr) {
    return CollapsedBinary(pairs.front().prob_with()[0],
                           pairs.front().prob_without()[0],
                           static_cast<int>(pairs.size()));
  }

  std::size_t product = 1;
  for (const DiscreteMechanismPair& pair : pairs) {
    product *= pair.size();
    if (product > kMaxProductOutcomes) {
      return absl::OutOfRangeError(absl::StrFormat(
          "composed outcome space exceeds %d outcomes", kMaxProductOutcomes));
    }
  }

  std::vector<std::string> labels = pairs.front().outcomes();
  std::vector<double> with = pairs.front().prob_with();
  std::vector<double> without = pairs.front().prob_without();
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    const DiscreteMechanismPair& next = pairs[i];
    std::vector<std::string> next_labels;
    std::vector<double> next_with;
    std::vector<double> next_without;
    next_labels.reserve(labels.size() * next.size());
    for (std::size_t a = 0; a < labels.size(); ++a) {
      for (std::size_t b = 0; b < next.size(); ++b) {
        next_labels.push_back(absl::StrJoin({labels[a], next.outcomes()[b]}, ","));
        next_with.push_back(with[a] * next.prob_with()[b]);
        next_without.push_back(without[a] * next.prob_without()[b]);
      }
    }
    labels = std::move(next_labels);
    with = std::move(next_with);
    without = std::move(next_without);
  }
  return DiscreteMechanismPair::Create(std::move(labels), std::move(with),
                                       std::move(without));
}

absl::StatusOr<DiscreteMechanismPair> ComposedRandomizedResponse(double epsilon,
                                                                 int k) {
  if (absl::Status s = CheckEpsilon(epsilon); !s.ok()) return s;
  if (k < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("k must be >= 1, got %d", k));
  }
  const double yes = 1.0 / (1.0 + std::exp(-epsilon));
  return CollapsedBinary(yes, 1.0 - yes, k);
}

}  // namespace dprisk
