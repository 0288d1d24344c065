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

// Finite mechanism pairs and exact enumeration over their outcomes.
//
// A DiscreteMechanismPair holds the output distribution of a mechanism on a
// database with the target (M(x), the "with" world) and without it
// (M(x_{-i}), the "without" world). Everything below is computed by summing
// over outcomes, which makes these functions the brute-force reference for the
// closed-form bounds in risk_bounds.h and composition.h.

#ifndef DPRISK_MECHANISMS_H_
#define DPRISK_MECHANISMS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "dprisk/risk_bounds.h"

namespace dprisk {

enum class World { kWith, kWithout };

std::string_view WorldName(World world);

// Tolerance for normalization checks and for boundary comparisons against
// bounds; atoms within it of a bound count as inside.
inline constexpr double kMassTolerance = 1e-12;

class DiscreteMechanismPair {
 public:
  // Labels must be unique, vectors equally sized, entries >= 0 and each
  // vector must sum to 1 within kMassTolerance.
  static absl::StatusOr<DiscreteMechanismPair> Create(
      std::vector<std::string> outcomes, std::vector<double> prob_with,
      std::vector<double> prob_without);

  const std::vector<std::string>& outcomes() const { return outcomes_; }
  const std::vector<double>& prob_with() const { return prob_with_; }
  const std::vector<double>& prob_without() const { return prob_without_; }
  std::size_t size() const { return outcomes_.size(); }

  // The pair with the two worlds exchanged: the other neighbor order.
  DiscreteMechanismPair Swapped() const;

 private:
  DiscreteMechanismPair(std::vector<std::string> outcomes,
                        std::vector<double> prob_with,
                        std::vector<double> prob_without)
      : outcomes_(std::move(outcomes)),
        prob_with_(std::move(prob_with)),
        prob_without_(std::move(prob_without)) {}

  std::vector<std::string> outcomes_;
  std::vector<double> prob_with_;
  std::vector<double> prob_without_;
};

struct PlrvAtom {
  double z;  // may be +inf where the opposite world has no mass
  double probability;
};

struct PlrvDistribution {
  World world;
  std::vector<PlrvAtom> atoms;
};

// Privacy loss random variable. For kWith, z(y) = log(P_with(y) / P_without(y))
// with mass P_with(y); for kWithout the roles are exchanged. Outcomes with no
// mass in the sampling world are dropped.
PlrvDistribution Plrv(const DiscreteMechanismPair& pair, World world);

struct PosteriorAtom {
  double posterior;
  double probability;
};

struct PosteriorDistribution {
  World world;
  double prior;
  std::vector<PosteriorAtom> atoms;
};

// The adversary's posterior membership probability as a random variable,
// obtained from the PLRV: X = p / (p + (1-p) e^{-Z}) when the target is
// present and X = p / (p + (1-p) e^{Z'}) when it is absent.
absl::StatusOr<PosteriorDistribution> Posterior(
    const DiscreteMechanismPair& pair, double prior, World world);

// Mass of posterior atoms outside a closed bound. The SymmetricBound overloads
// test X / p (ratio, needs prior > 0) or X - p (difference).
absl::StatusOr<double> ViolationProbability(const DiscreteMechanismPair& pair,
                                            double prior,
                                            const ProbabilityInterval& interval,
                                            World world);
absl::StatusOr<double> ViolationProbability(const DiscreteMechanismPair& pair,
                                            double prior,
                                            const SymmetricBound& bound,
                                            World world);

// Smallest delta for which the pair is (epsilon, delta)-DP in both neighbor
// orders, computed as max over orders of E[max{0, 1 - e^{epsilon - Z}}].
absl::StatusOr<double> TightDelta(const DiscreteMechanismPair& pair,
                                  double epsilon);

// The same quantity in tail form, P[Z > eps] - e^eps P[-Z' > eps].
absl::StatusOr<double> TightDeltaTailForm(const DiscreteMechanismPair& pair,
                                          double epsilon);

// P[|Z| > epsilon] in the given world.
absl::StatusOr<double> PlrvTailMass(const DiscreteMechanismPair& pair,
                                    double epsilon, World world);

// True iff P[-eps <= Z <= eps] >= 1 - delta in both worlds.
absl::StatusOr<bool> PdpHolds(const DiscreteMechanismPair& pair, double epsilon,
                              double delta);

// Binary randomized response: outcomes {yes, no},
// P_with = (e^eps, 1) / (1 + e^eps), P_without reversed.
absl::StatusOr<DiscreteMechanismPair> RandomizedResponse(double epsilon);

// Runs randomized response under tilde-epsilon with probability
// delta (1 + e^{-tilde eps}) and releases "nothing" otherwise. Its
// posterior-to-prior difference meets the (epsilon, delta) bound at every prior
// while the pair fails (epsilon, delta)-PDP. Needs 0 < eps < 2 log 3.
absl::StatusOr<DiscreteMechanismPair> DiffGapCounterexample(
    double epsilon, double delta);

// Independent product of the pairs in each world. k copies of the same
// randomized response collapse to the k + 1 counts of "yes" answers, ordered
// k, k-1, ..., 0. Fails when the product space exceeds kMaxProductOutcomes.
inline constexpr std::size_t kMaxProductOutcomes = 1'000'000;

absl::StatusOr<DiscreteMechanismPair> ComposePairs(
    std::span<const DiscreteMechanismPair> pairs);

// k-fold randomized response in the collapsed count representation.
absl::StatusOr<DiscreteMechanismPair> ComposedRandomizedResponse(double epsilon,
                                                                 int k);

}  // namespace dprisk

#endif  // DPRISK_MECHANISMS_H_
