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

#ifndef BEEW_EEW_HPP_
#define BEEW_EEW_HPP_

#include <cstddef>
#include <vector>

#include "beew/hfamily.hpp"
#include "beew/rng.hpp"

namespace beew {

// Exponentiated extended Weibull law: cdf (1 - exp(-lambda H(x;xi)))^alpha
// on x > 0, with shape alpha > 0 and scale lambda > 0.
struct EewParams {
  double alpha;
  double lambda;
  HFamily fam;

  EewParams(double alpha_, double lambda_, HFamily fam_);
};

double eew_cdf(const EewParams& p, double x);
double eew_pdf(const EewParams& p, double x);

// Computed in log space throughout; -inf for x <= 0.
double eew_logpdf(const EewParams& p, double x);

// Inverse cdf; throws std::domain_error unless 0 < u < 1.
double eew_quantile(const EewParams& p, double u);

// n i.i.d. draws by inverse transform, one uniform per draw.
std::vector<double> eew_sample(const EewParams& p, Rng& rng, std::size_t n);

}  // namespace beew

#endif  // BEEW_EEW_HPP_
