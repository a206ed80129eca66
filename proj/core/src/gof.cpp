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

#include "beew/gof.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "beew/numeric.hpp"

namespace beew {

CriteriaSet criteria(int k, std::size_t n, double loglik) {
  if (k < 1) throw std::domain_error("criteria: k must be >= 1");
  if (n <= static_cast<std::size_t>(k) + 1)
    throw std::domain_error("criteria: need n > k+1 for AICC");
  CriteriaSet c;
  c.k = k;
  c.n = n;
  c.loglik = loglik;
  c.aic = 2.0 * k - 2.0 * loglik;
  c.aicc = c.aic + 2.0 * k * (k + 1.0) / (static_cast<double>(n) - k - 1.0);
  c.bic = k * std::log(static_cast<double>(n)) - 2.0 * loglik;
  return c;
}

double kolmogorov_tail(double lambda) {
  if (!(lambda > 1e-8)) return 1.0;
  const double q = 2.0 * lambda * lambda;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100000; ++k) {
    const double term = std::exp(-q * static_cast<double>(k) * k);
    sum += sign * term;
    if (term < 1e-12) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> sample,
                 const std::function<double(double)>& cdf, std::string target) {
  if (sample.empty()) throw std::invalid_argument("ks_test: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::max((i + 1.0) / n - f, f - i / n));
  }
  KsResult r;
  r.statistic = d;
  r.n = sample.size();
  r.p_value = kolmogorov_tail(std::sqrt(n) * d);
  r.target = std::move(target);
  return r;
}

namespace {

// Regularized upper incomplete gamma Q(a, x), series/continued-fraction
// split at x = a + 1.
double gamma_q(double a, double x) {
  if (x <= 0.0) return 1.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    // P(a,x) by series, then complement.
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    const double p = sum * std::exp(-x + a * std::log(x) - lg);
    return std::clamp(1.0 - p, 0.0, 1.0);
  }
  // Lentz continued fraction for Q(a,x).
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::clamp(std::exp(-x + a * std::log(x) - lg) * h, 0.0, 1.0);
}

}  // namespace

double chi_square_tail(double x, int df) {
  if (df < 1) throw std::domain_error("chi_square_tail: df must be >= 1");
  if (!(x > 0.0)) return 1.0;
  return gamma_q(0.5 * df, 0.5 * x);
}

LrtResult lrt(double loglik_base, int k_base, double loglik_full, int k_full) {
  if (k_full <= k_base)
    throw std::invalid_argument("lrt: models not nested (k_full <= k_base)");
  LrtResult r;
  r.statistic = 2.0 * (loglik_full - loglik_base);
  r.df = k_full - k_base;
  r.p_value = chi_square_tail(std::max(r.statistic, 0.0), r.df);
  return r;
}

}  // namespace beew
