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

#include "beew/bivariate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "beew/numeric.hpp"

namespace beew {

BeewParams::BeewParams(double a1, double a2, double a3, double lambda_,
                       HFamily fam_)
    : alpha1(a1), alpha2(a2), alpha3(a3), lambda(lambda_), fam(std::move(fam_)) {
  auto check = [](const char* name, double v) {
    if (!(std::isfinite(v) && v > 0.0))
      throw std::domain_error(std::string("beew: ") + name +
                              " must be finite and > 0");
  };
  check("alpha1", alpha1);
  check("alpha2", alpha2);
  check("alpha3", alpha3);
  check("lambda", lambda);
}

bool is_tie(double x1, double x2, double tie_eps) {
  return std::abs(x1 - x2) <= tie_eps * std::max(1.0, std::abs(x1));
}

namespace {

// log(1 - exp(-lambda H(x))), the building block of every cdf power.
double log_ew_cdf(const BeewParams& p, double x) {
  if (!(x > 0.0)) return kNegInf;
  return log1mexp(p.lambda * p.fam.value(x));
}

double log_f0(const BeewParams& p, double x) {
  if (!(x > 0.0)) return kNegInf;
  const double t = p.lambda * p.fam.value(x);
  if (!(t > 0.0)) return kNegInf;
  double lp = std::log(p.alpha3) + std::log(p.lambda) + p.fam.log_deriv(x) - t;
  if (t < kExpUnderflow) lp += (p.alpha_sum() - 1.0) * log1mexp(t);
  return lp;
}

}  // namespace

double joint_cdf(const BeewParams& p, double x1, double x2) {
  if (!(std::min(x1, x2) > 0.0)) return 0.0;
  const double l1 = log_ew_cdf(p, x1);
  const double l2 = log_ew_cdf(p, x2);
  return std::exp(p.alpha1 * l1) * std::exp(p.alpha2 * l2) *
         std::exp(p.alpha3 * std::min(l1, l2));
}

double joint_cdf_branch(const BeewParams& p, double x1, double x2) {
  if (!(std::min(x1, x2) > 0.0)) return 0.0;
  const double l1 = log_ew_cdf(p, x1);
  const double l2 = log_ew_cdf(p, x2);
  if (x1 <= x2)
    return std::exp((p.alpha1 + p.alpha3) * l1) * std::exp(p.alpha2 * l2);
  return std::exp(p.alpha1 * l1) * std::exp((p.alpha2 + p.alpha3) * l2);
}

BivariateEvaluation joint_logpdf(const BeewParams& p, double x1, double x2,
                                 double tie_eps) {
  if (is_tie(x1, x2, tie_eps)) {
    return {Region::kDiagonal, log_f0(p, 0.5 * (x1 + x2)), true};
  }
  if (x1 < x2) {
    const EewParams a(p.alpha1 + p.alpha3, p.lambda, p.fam);
    const EewParams b(p.alpha2, p.lambda, p.fam);
    return {Region::kX1Less, eew_logpdf(a, x1) + eew_logpdf(b, x2), false};
  }
  const EewParams a(p.alpha1, p.lambda, p.fam);
  const EewParams b(p.alpha2 + p.alpha3, p.lambda, p.fam);
  return {Region::kX2Less, eew_logpdf(a, x1) + eew_logpdf(b, x2), false};
}

BivariateEvaluation joint_pdf(const BeewParams& p, double x1, double x2,
                              double tie_eps) {
  BivariateEvaluation ev = joint_logpdf(p, x1, x2, tie_eps);
  ev.value = std::exp(ev.value);
  return ev;
}

EewParams marginal(const BeewParams& p, int which) {
  if (which != 1 && which != 2)
    throw std::invalid_argument("beew: marginal index must be 1 or 2");
  const double a = which == 1 ? p.alpha1 : p.alpha2;
  return EewParams(a + p.alpha3, p.lambda, p.fam);
}

double conditional_diagonal_atom(const BeewParams& p, int i, double xj) {
  if (i != 1 && i != 2)
    throw std::invalid_argument("beew: conditional index must be 1 or 2");
  const double ai = i == 1 ? p.alpha1 : p.alpha2;
  const double aj = i == 1 ? p.alpha2 : p.alpha1;
  if (!(xj > 0.0)) return 0.0;
  return p.alpha3 / (aj + p.alpha3) * std::exp(ai * log_ew_cdf(p, xj));
}

BivariateEvaluation conditional_pdf(const BeewParams& p, int i, double xi_val,
                                    double xj_val, double tie_eps) {
  if (i != 1 && i != 2)
    throw std::invalid_argument("beew: conditional index must be 1 or 2");
  if (is_tie(xi_val, xj_val, tie_eps))
    return {Region::kDiagonal, conditional_diagonal_atom(p, i, xj_val), false};
  const int j = 3 - i;
  const double x1 = i == 1 ? xi_val : xj_val;
  const double x2 = i == 1 ? xj_val : xi_val;
  const BivariateEvaluation joint = joint_logpdf(p, x1, x2, 0.0);
  const double lmarg = eew_logpdf(marginal(p, j), xj_val);
  if (lmarg == kNegInf)
    throw std::domain_error("beew: conditional undefined, marginal density is 0");
  return {joint.region, std::exp(joint.value - lmarg), false};
}

double joint_survival(const BeewParams& p, double x1, double x2) {
  const double f1 = x1 > 0.0 ? eew_cdf(marginal(p, 1), x1) : 0.0;
  const double f2 = x2 > 0.0 ? eew_cdf(marginal(p, 2), x2) : 0.0;
  const double s = 1.0 - f1 - f2 + joint_cdf(p, x1, x2);
  return std::clamp(s, 0.0, 1.0);
}

BivariateEvaluation bivariate_hazard(const BeewParams& p, double x1, double x2,
                                     double tie_eps) {
  const double s = joint_survival(p, x1, x2);
  if (!(s > 0.0))
    throw std::domain_error("beew: hazard undefined, survival underflows to 0");
  BivariateEvaluation ev = joint_pdf(p, x1, x2, tie_eps);
  ev.value /= s;
  return ev;
}

double Decomposition::singular_cdf(double x1, double x2) const {
  const double z = std::min(x1, x2);
  if (!(z > 0.0)) return 0.0;
  return std::exp(params.alpha_sum() *
                  log1mexp(params.lambda * params.fam.value(z)));
}

double Decomposition::abscont_cdf(double x1, double x2) const {
  const double a12 = params.alpha1 + params.alpha2;
  return params.alpha_sum() / a12 * joint_cdf(params, x1, x2) -
         params.alpha3 / a12 * singular_cdf(x1, x2);
}

Decomposition decompose(const BeewParams& p) {
  const double ws = p.singular_weight();
  return Decomposition{1.0 - ws, ws, p};
}

double mo_copula_cdf(const BeewParams& p, double x1, double x2) {
  if (!(std::min(x1, x2) > 0.0)) return 0.0;
  const double u1 = eew_cdf(marginal(p, 1), x1);
  const double u2 = eew_cdf(marginal(p, 2), x2);
  const double t1 = p.alpha3 / (p.alpha1 + p.alpha3);
  const double t2 = p.alpha3 / (p.alpha2 + p.alpha3);
  return std::pow(u1, 1.0 - t1) * std::pow(u2, 1.0 - t2) *
         std::min(std::pow(u1, t1), std::pow(u2, t2));
}

double max_cdf(const BeewParams& p, double y) {
  if (!(y > 0.0)) return 0.0;
  return std::exp(p.alpha_sum() * log_ew_cdf(p, y));
}

double min_cdf(const BeewParams& p, double t) {
  if (!(t > 0.0)) return 0.0;
  const double l = log_ew_cdf(p, t);
  return std::exp((p.alpha1 + p.alpha3) * l) +
         std::exp((p.alpha2 + p.alpha3) * l) - std::exp(p.alpha_sum() * l);
}

std::vector<std::pair<double, double>> beew_sample(const BeewParams& p, Rng& rng,
                                                   std::size_t n) {
  const EewParams u1(p.alpha1, p.lambda, p.fam);
  const EewParams u2(p.alpha2, p.lambda, p.fam);
  const EewParams u3(p.alpha3, p.lambda, p.fam);
  std::vector<std::pair<double, double>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d1 = eew_quantile(u1, rng.uniform01());
    const double d2 = eew_quantile(u2, rng.uniform01());
    const double d3 = eew_quantile(u3, rng.uniform01());
    out.emplace_back(std::max(d1, d3), std::max(d2, d3));
  }
  return out;
}

}  // namespace beew
