// Copyright 2026 The beew Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Test-only numerical oracles, independent of the library code paths
// they cross-check.

#ifndef BEEW_TESTS_TESTUTIL_HPP_
#define BEEW_TESTS_TESTUTIL_HPP_

#include <cmath>
#include <functional>
#include <random>

namespace testutil {

// Double-exponential (tanh-sinh) quadrature over (a, b) with level
// doubling until the estimate stabilizes. Handles integrable endpoint
// singularities, which the shape parameters below 1 produce at 0.
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-10, int max_level = 10) {
  const double half = 0.5 * (b - a);
  constexpr double kHalfPi = 1.5707963267948966;

  auto node = [&](double t) -> double {
    const double s = kHalfPi * std::sinh(t);
    // Distance from the nearer endpoint, kept cancellation-free so nodes
    // can approach an endpoint singularity far below 1e-16 * (b - a):
    // 1 - |tanh(s)| = 2 / (exp(2|s|) + 1).
    const double dist = half * 2.0 / (std::exp(2.0 * std::abs(s)) + 1.0);
    const double x = s < 0.0 ? a + dist : b - dist;
    if (!(dist > 0.0 && x > a && x < b)) return 0.0;
    const double ch = std::cosh(s);
    const double w = kHalfPi * std::cosh(t) / (ch * ch);
    const double v = f(x);
    return std::isfinite(v * w) ? v * w : 0.0;
  };

  const double tmax = 6.0;
  double h = 1.0;
  double sum = node(0.0);
  for (double t = h; t <= tmax; t += h) sum += node(t) + node(-t);
  double estimate = half * h * sum;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    for (double t = h; t <= tmax; t += 2.0 * h) sum += node(t) + node(-t);
    const double next = half * h * sum;
    const bool settled =
        level >= 4 && std::abs(next - estimate) <= tol * (1.0 + std::abs(next));
    estimate = next;
    if (settled) break;
  }
  return estimate;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

// Deterministic draws for property-style tests.
class Draw {
 public:
  explicit Draw(unsigned seed) : gen_(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  std::mt19937& gen() { return gen_; }

 private:
  std::mt19937 gen_;
};

}  // namespace testutil

#endif  // BEEW_TESTS_TESTUTIL_HPP_
