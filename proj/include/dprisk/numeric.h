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

// Small numerical building blocks shared by the accounting modules: compensated
// summation, log-space arithmetic, and the two one-dimensional searches
// (golden-section minimization, monotone bisection) used by the optimizers.

#ifndef DPRISK_NUMERIC_H_
#define DPRISK_NUMERIC_H_

#include <cmath>
#include <functional>
#include <limits>
#include <span>

namespace dprisk {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Neumaier's variant of Kahan summation. The result does not depend on the
// magnitude ordering of the inputs to within a few ulps.
class CompensatedSum {
 public:
  void Add(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }
  double Result() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double CompensatedTotal(std::span<const double> values);

// log(exp(a) + exp(b)) without overflow; handles -inf operands.
double LogAddExp(double a, double b);

// log(sum_i exp(values[i])); returns -inf for an empty span.
double LogSumExp(std::span<const double> values);

// log(n choose k) via lgamma.
double LogBinomial(int n, int k);

// log(1 + exp(x)), stable for large |x|.
double Softplus(double x);

struct ScalarMinimum {
  double argmin;
  double value;
};

// Golden-section search for the minimum of `objective` on [lower, upper].
// Stops when the bracket is narrower than `x_tolerance`. The objective is
// assumed unimodal on the bracket.
ScalarMinimum GoldenSectionMinimize(const std::function<double(double)>& objective,
                                    double lower, double upper,
                                    double x_tolerance);

// Coarse scan over `grid_points` equally spaced points followed by a
// golden-section refinement of the best grid cell. Robust to objectives that
// are only unimodal near the global minimum.
ScalarMinimum ScanThenGoldenSection(
    const std::function<double(double)>& objective, double lower, double upper,
    int grid_points, double x_tolerance);

// Largest x in [lower, upper] for which `feasible(x)` holds, to within
// `tolerance`, assuming feasible(lower) is true and feasibility is monotone
// (true on a prefix of the interval). The returned point is always feasible.
double BisectLastFeasible(const std::function<bool(double)>& feasible,
                          double lower, double upper, double tolerance);

}  // namespace dprisk

#endif  // DPRISK_NUMERIC_H_
