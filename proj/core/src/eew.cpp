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

#include "beew/eew.hpp"

#include <cmath>
#include <stdexcept>

#include "beew/numeric.hpp"

namespace beew {

EewParams::EewParams(double alpha_, double lambda_, HFamily fam_)
    : alpha(alpha_), lambda(lambda_), fam(std::move(fam_)) {
  if (!(std::isfinite(alpha) && alpha > 0.0))
    throw std::domain_error("eew: alpha must be finite and > 0");
  if (!(std::isfinite(lambda) && lambda > 0.0))
    throw std::domain_error("eew: lambda must be finite and > 0");
}

double eew_cdf(const EewParams& p, double x) {
  if (!(x > 0.0)) return 0.0;
  const double t = p.lambda * p.fam.value(x);
  if (t >= kExpUnderflow) return 1.0;
  return std::exp(p.alpha * log1mexp(t));
}

double eew_logpdf(const EewParams& p, double x) {
  if (!(x > 0.0)) return kNegInf;
  const double t = p.lambda * p.fam.value(x);
  if (!(t > 0.0)) return kNegInf;  // degenerate H or overflow to inf upstream
  const double base = std::log(p.alpha) + std::log(p.lambda) + p.fam.log_deriv(x) - t;
  if (t >= kExpUnderflow) return base;  // (alpha-1) log(1 - e^-t) is 0 here
  return base + (p.alpha - 1.0) * log1mexp(t);
}

double eew_pdf(const EewParams& p, double x) {
  if (!(x > 0.0)) return 0.0;
  return std::exp(eew_logpdf(p, x));
}

double eew_quantile(const EewParams& p, double u) {
  if (!(u > 0.0 && u < 1.0))
    throw std::domain_error("eew: quantile needs u in (0, 1)");
  // u^(1/alpha) = exp(log(u)/alpha); 1 - u^(1/alpha) = -expm1(log(u)/alpha)
  const double s = std::log(u) / p.alpha;
  const double t = -std::log(-std::expm1(s));
  return p.fam.inverse(t / p.lambda);
}

std::vector<double> eew_sample(const EewParams& p, Rng& rng, std::size_t n) {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(eew_quantile(p, rng.uniform01()));
  return out;
}

}  // namespace beew
