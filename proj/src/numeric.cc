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

#include "dprisk/numeric.h"

#include <algorithm>
#include <cmath>

namespace dprisk {

double CompensatedTotal(std::span<const double> values) {
  CompensatedSum sum;
  for (double v : values) sum.Add(v);
  return sum.Result();
}

double LogAddExp(double a, double b) {
  if (a == -kInfinity) return b;
  if (b == -kInfinity) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

double LogSumExp(std::span<const double> values) {
  double hi = -kInfinity;
  for (double v : values) hi = std::max(hi, v);
  if (hi == -kInfinity || hi == kInfinity) return hi;
  CompensatedSum sum;
  for (double v : values) sum.Add(std::exp(v - hi));
  return hi + std::log(sum.Result());
}

double LogBinomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double Softplus(double x) {
  if (x > 0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

ScalarMinimum GoldenSectionMinimize(const std::function<double(double)>& objective,
                                    double lower, double upper,
                                    double x_tolerance) {
  static const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lower;
  double b = upper;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  while (b - a > x_tolerance) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = objective(d);
    }
  }
  ScalarMinimum best = fc <= fd ? ScalarMinimum{c, fc} : ScalarMinimum{d, fd};
  // The endpoints are never probed by the interior iteration.
  for (double x : {lower, upper}) {
    const double fx = objective(x);
    if (fx < best.value) best = {x, fx};
  }
  return best;
}

ScalarMinimum ScanThenGoldenSection(
    const std::function<double(double)>& objective, double lower, double upper,
    int grid_points, double x_tolerance) {
  grid_points = std::max(grid_points, 3);
  const double step = (upper - lower) / (grid_points - 1);
  int best_index = 0;
  double best_value = kInfinity;
  for (int i = 0; i < grid_points; ++i) {
    const double value = objective(lower + i * step);
    if (value < best_value) {
      best_value = value;
      best_index = i;
    }
  }
  const double a = lower + std::max(best_index - 1, 0) * step;
  const double b = lower + std::min(best_index + 1, grid_points - 1) * step;
  ScalarMinimum refined = GoldenSectionMinimize(objective, a, b, x_tolerance);
  if (best_value < refined.value) {
    refined = {lower + best_index * step, best_value};
  }
  return refined;
}

double BisectLastFeasible(const std::function<bool(double)>& feasible,
                          double lower, double upper, double tolerance) {
  if (feasible(upper)) return upper;
  double lo = lower;
  double hi = upper;
  while (hi - lo > tolerance) {
    const double mid = lo + (hi - lo) / 2.0;
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace dprisk
