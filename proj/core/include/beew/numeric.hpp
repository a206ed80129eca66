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

#ifndef BEEW_NUMERIC_HPP_
#define BEEW_NUMERIC_HPP_

#include <algorithm>
#include <cmath>
#include <limits>

namespace beew {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Exponent beyond which exp(-t) underflows to a denormal and
// 1 - exp(-t) is exactly 1 in double precision.
inline constexpr double kExpUnderflow = 745.0;

// log(1 - exp(-t)) for t > 0. The two regimes split at ln 2: below it
// expm1 keeps the small difference accurate, above it log1p does.
inline double log1mexp(double t) {
  if (t <= 0.0) return kNegInf;
  if (t <= 0.6931471805599453) return std::log(-std::expm1(-t));
  return std::log1p(-std::exp(-t));
}

// log(exp(a) + exp(b)) without overflow; tolerates -inf arguments.
inline double logaddexp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

// log(exp(t) - 1) for t > 0.
inline double logexpm1(double t) {
  if (t > 700.0) return t;
  return std::log(std::expm1(t));
}

// t * exp(-t) / (1 - exp(-t)); limit 1 as t -> 0+, 0 as t -> inf.
inline double texp_ratio(double t) {
  if (!(t > 0.0)) return 1.0;
  if (t > kExpUnderflow) return 0.0;
  return t * std::exp(-t) / -std::expm1(-t);
}

}  // namespace beew

#endif  // BEEW_NUMERIC_HPP_
