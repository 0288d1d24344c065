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

// Independent reference computations shared by the unit and acceptance tests.

#ifndef DPRISK_TESTS_ORACLES_H_
#define DPRISK_TESTS_ORACLES_H_

#include <cstdint>
#include <vector>

#include "dprisk/mechanisms.h"

namespace dprisk::testing {

// Per-outcome Bayes: p P_with(y) / (p P_with(y) + (1 - p) P_without(y)).
double DirectBayes(double prior, double with, double without);

// sum_y max(0, P(y) - e^eps Q(y)), maximized over both orders.
double HockeyStickDirect(const std::vector<double>& p,
                         const std::vector<double>& q, double epsilon);

// The optimal-composition delta_l summed in plain floating point.
double DirectDeltaEll(double epsilon, int k, int ell);

// Full (uncollapsed) product of k randomized responses, 2^k outcomes.
struct RawPair {
  std::vector<double> with;
  std::vector<double> without;
};
RawPair ProductRandomizedResponse(double epsilon, int k);

// Seeded Dirichlet(1, ..., 1) pairs with 2 to 6 outcomes.
inline constexpr std::uint64_t kCorpusSeed = 20240611;
std::vector<DiscreteMechanismPair> RandomPairCorpus(int count,
                                                    std::uint64_t seed);

// 0.001, 0.002, ..., 0.999.
std::vector<double> PriorGrid();

}  // namespace dprisk::testing

#endif  // DPRISK_TESTS_ORACLES_H_
