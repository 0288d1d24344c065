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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace dprisk::testing {

double DirectBayes(double prior, double with, double without) {
  const double joint_with = prior * with;
  const double joint_without = (1.0 - prior) * without;
  return joint_with / (joint_with + joint_without);
}

double HockeyStickDirect(const std::vector<double>& p,
                         const std::vector<double>& q, double epsilon) {
  const double scale = std::exp(epsilon);
  double forward = 0.0;
  double backward = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    forward += std::max(0.0, p[i] - scale * q[i]);
    backward += std::max(0.0, q[i] - scale * p[i]);
  }
  return std::max(forward, backward);
}

double DirectDeltaEll(double epsilon, int k, int ell) {
  double sum = 0.0;
  double binom = 1.0;
  for (int j = 0; j < ell; ++j) {
    sum += binom * (std::exp((k - j) * epsilon) -
                    std::exp((k - 2 * ell + j) * epsilon));
    binom = binom * (k - j) / (j + 1);
  }
  return sum / std::pow(1.0 + std::exp(epsilon), k);
}

RawPair ProductRandomizedResponse(double epsilon, int k) {
  const double yes = std::exp(epsilon) / (1.0 + std::exp(epsilon));
  const double no = 1.0 / (1.0 + std::exp(epsilon));
  RawPair pair{{1.0}, {1.0}};
  for (int i = 0; i < k; ++i) {
    RawPair next;
    for (std::size_t a = 0; a < pair.with.size(); ++a) {
      next.with.push_back(pair.with[a] * yes);
      next.with.push_back(pair.with[a] * no);
      next.without.push_back(pair.without[a] * no);
      next.without.push_back(pair.without[a] * yes);
    }
    pair = std::move(next);
  }
  return pair;
}

std::vector<DiscreteMechanismPair> RandomPairCorpus(int count,
                                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(2, 6);
  std::gamma_distribution<double> gamma(1.0, 1.0);
  auto dirichlet = [&](int n) {
    std::vector<double> v(n);
    double total = 0.0;
    for (double& x : v) {
      x = gamma(rng);
      total += x;
    }
    for (double& x : v) x /= total;
    return v;
  };
  std::vector<DiscreteMechanismPair> corpus;
  while (static_cast<int>(corpus.size()) < count) {
    const int n = size(rng);
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("y" + std::to_string(i));
    auto pair = DiscreteMechanismPair::Create(labels, dirichlet(n), dirichlet(n));
    if (pair.ok()) corpus.push_back(*std::move(pair));
  }
  return corpus;
}

std::vector<double> PriorGrid() {
  std::vector<double> grid;
  for (int i = 1; i <= 999; ++i) grid.push_back(i / 1000.0);
  return grid;
}

}  // namespace dprisk::testing
