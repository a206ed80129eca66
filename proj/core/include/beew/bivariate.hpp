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

#ifndef BEEW_BIVARIATE_HPP_
#define BEEW_BIVARIATE_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "beew/eew.hpp"
#include "beew/hfamily.hpp"
#include "beew/rng.hpp"

namespace beew {

// Bivariate EEW vector (X1, X2) = (max{U1, U3}, max{U2, U3}) built from
// independent U_i ~ EEW(alpha_i, lambda, xi). The shared shock U3 puts
// probability mass alpha3 / (alpha1 + alpha2 + alpha3) on the diagonal
// x1 = x2, so the law has a surface density off the diagonal and a line
// density along it.
struct BeewParams {
  double alpha1;
  double alpha2;
  double alpha3;
  double lambda;
  HFamily fam;

  BeewParams(double a1, double a2, double a3, double lambda_, HFamily fam_);

  double alpha_sum() const { return alpha1 + alpha2 + alpha3; }
  double singular_weight() const { return alpha3 / alpha_sum(); }
};

enum class Region { kX1Less, kX2Less, kDiagonal };

// A density evaluation plus the branch it came from. Off the diagonal the
// value is a surface density; on it, the line density f0 — the two have
// different units and must not be Riemann-summed together.
struct BivariateEvaluation {
  Region region;
  double value;
  bool is_line_density;
};

// (x1, x2) count as diagonal when |x1 - x2| <= tie_eps * max(1, |x1|).
// tie_eps = 0 matches the sampler, which produces exact ties.
bool is_tie(double x1, double x2, double tie_eps);

// F(x1, x2) = F_EEW(x1; a1) F_EEW(x2; a2) F_EEW(min; a3), shared (lambda, xi).
double joint_cdf(const BeewParams& p, double x1, double x2);

// Same function assembled from the two-branch form
// F_EEW(x1; a1+a3) F_EEW(x2; a2) on x1 <= x2 (and symmetrically); kept as
// an independent code path for cross-checking.
double joint_cdf_branch(const BeewParams& p, double x1, double x2);

BivariateEvaluation joint_pdf(const BeewParams& p, double x1, double x2,
                              double tie_eps = 0.0);
BivariateEvaluation joint_logpdf(const BeewParams& p, double x1, double x2,
                                 double tie_eps = 0.0);

// Marginal of X1 (which = 1) or X2 (which = 2): EEW(alpha_i + alpha3).
EewParams marginal(const BeewParams& p, int which);

// Conditional density of X_i given X_j = xj, defined as the ratio of the
// joint density to the marginal density of X_j. On the diagonal the
// conditional law has an atom, reported here as a probability (see
// conditional_diagonal_atom), flagged by region = kDiagonal.
// Throws std::domain_error when the marginal density underflows to 0.
BivariateEvaluation conditional_pdf(const BeewParams& p, int i, double xi_val,
                                    double xj_val, double tie_eps = 0.0);

// P(X_i = xj | X_j = xj) = alpha3/(alpha_j + alpha3) * F_EW(xj)^alpha_i,
// the point mass the conditional law places on the diagonal.
double conditional_diagonal_atom(const BeewParams& p, int i, double xj);

// S(x1,x2) = 1 - F_X1(x1) - F_X2(x2) + F(x1,x2).
double joint_survival(const BeewParams& p, double x1, double x2);

// Bivariate failure rate f / S, branch-aware; throws std::domain_error
// when the survival underflows to 0.
BivariateEvaluation bivariate_hazard(const BeewParams& p, double x1, double x2,
                                     double tie_eps = 0.0);

// Mixture split F = w_abs F_a + w_sing F_s into the absolutely continuous
// and singular parts.
struct Decomposition {
  double weight_abs;
  double weight_sing;
  BeewParams params;

  double singular_cdf(double x1, double x2) const;
  double abscont_cdf(double x1, double x2) const;
};
Decomposition decompose(const BeewParams& p);

// Marshall-Olkin copula C(u1,u2) = u1^(1-t1) u2^(1-t2) min{u1^t1, u2^t2}
// with t_i = alpha3/(alpha_i+alpha3), evaluated at the marginal cdfs.
// Coincides with joint_cdf.
double mo_copula_cdf(const BeewParams& p, double x1, double x2);

// max{X1,X2} ~ EEW(alpha1+alpha2+alpha3).
double max_cdf(const BeewParams& p, double y);

// Sum-of-three-powers cdf of min{X1,X2}.
double min_cdf(const BeewParams& p, double t);

// n pairs via the latent construction; consumes exactly three uniforms per
// pair in the order (U1, U2, U3). Ties are produced bit-exactly.
std::vector<std::pair<double, double>> beew_sample(const BeewParams& p, Rng& rng,
                                                   std::size_t n);

}  // namespace beew

#endif  // BEEW_BIVARIATE_HPP_
