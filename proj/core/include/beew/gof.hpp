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

#ifndef BEEW_GOF_HPP_
#define BEEW_GOF_HPP_

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace beew {

struct CriteriaSet {
  int k = 0;
  std::size_t n = 0;
  double loglik = 0.0;
  double aic = 0.0;
  double aicc = 0.0;
  double bic = 0.0;
};

// aic = 2k - 2 loglik, aicc = aic + 2k(k+1)/(n-k-1), bic = k ln n - 2 loglik.
// Throws std::domain_error when n <= k+1 (aicc undefined).
CriteriaSet criteria(int k, std::size_t n, double loglik);

// Asymptotic Kolmogorov tail Q(lambda) = 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lambda^2),
// truncated when terms drop below 1e-12; Q(0+) = 1.
double kolmogorov_tail(double lambda);

struct KsResult {
  double statistic = 0.0;
  std::size_t n = 0;
  double p_value = 0.0;
  std::string target;
};

// Two-sided one-sample K-S distance of the sample against a fitted cdf,
// via the order-statistics formula, with the plain asymptotic p-value at
// sqrt(n) * D (no small-sample correction).
KsResult ks_test(std::vector<double> sample,
                 const std::function<double(double)>& cdf,
                 std::string target = {});

// Upper tail of the chi-square law with df degrees of freedom.
double chi_square_tail(double x, int df);

struct LrtResult {
  double statistic = 0.0;
  int df = 0;
  double p_value = 0.0;
};

// Likelihood ratio test of a nested base model against a fuller one.
// Throws std::invalid_argument unless k_full > k_base.
LrtResult lrt(double loglik_base, int k_base, double loglik_full, int k_full);

}  // namespace beew

#endif  // BEEW_GOF_HPP_
