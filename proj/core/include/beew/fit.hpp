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

#ifndef BEEW_FIT_HPP_
#define BEEW_FIT_HPP_

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "beew/bivariate.hpp"
#include "beew/gof.hpp"
#include "beew/hfamily.hpp"

namespace beew {

// Bivariate observations partitioned into ties (i0), x1 < x2 (i1) and
// x1 > x2 (i2). The partition is deterministic given tie_eps; tied pairs
// contribute through their midpoint so that column swaps leave tie values
// unchanged.
struct ClassifiedSample {
  std::vector<std::pair<double, double>> pairs;
  std::vector<std::size_t> i0, i1, i2;
  double tie_eps = 0.0;

  std::size_t n() const { return pairs.size(); }
  std::size_t n0() const { return i0.size(); }
  std::size_t n1() const { return i1.size(); }
  std::size_t n2() const { return i2.size(); }

  double tie_value(std::size_t k) const {
    const auto& pr = pairs[i0[k]];
    return 0.5 * (pr.first + pr.second);
  }
};

// Throws std::invalid_argument for empty input and std::domain_error
// (with the offending row index) for nonpositive or non-finite values.
ClassifiedSample classify(std::span<const std::pair<double, double>> pairs,
                          double tie_eps = 0.0);

// Conditional probabilities of the latent ordering indicators; they
// depend on the parameters only, not on the data. u2 and v2 are the
// exact complements of u1 and v1.
struct EStepWeights {
  double u1, u2, v1, v2;
};
EStepWeights estep(const BeewParams& theta);

// Observed-data log-likelihood: branch-wise sum of log f1, log f2, log f0.
// Returns -inf when any observation has zero density.
double loglik(const BeewParams& theta, const ClassifiedSample& s);

// Expected complete-data ("pseudo") log-likelihood for fixed weights.
double pseudo_loglik(const ClassifiedSample& s, const EStepWeights& w,
                     const std::array<double, 3>& alphas, double lambda,
                     const HFamily& fam);

// Closed-form maximizers of the pseudo log-likelihood in the shapes, for
// fixed (lambda, xi). W(x) = log(1 - exp(-lambda H(x))) is negative, so
// each denominator is the negated W sum. Throws std::domain_error when a
// denominator vanishes (every observation at cdf 1).
std::array<double, 3> mstep_alphas(const ClassifiedSample& s,
                                   const EStepWeights& w, double lambda,
                                   const HFamily& fam);

// Root of the pseudo-likelihood score in lambda, for fixed shapes and xi,
// found by bracket expansion around lambda_init plus bisection. The
// returned root satisfies |score| < 1e-9 * n or lies in a bracket at
// double resolution. Throws std::logic_error if the family fixes lambda
// and std::runtime_error if no bracket is found.
double mstep_lambda(const ClassifiedSample& s, const std::array<double, 3>& alphas,
                    const HFamily& fam, double lambda_init);

// Derivative-free maximization of the pseudo log-likelihood over xi
// (log-transformed coordinates), for fixed shapes and lambda. The result
// never scores worse than the starting xi; converged reports whether the
// simplex collapsed below diameter 1e-7 within the iteration cap.
struct XiUpdate {
  std::vector<double> xi;
  bool converged;
};
XiUpdate mstep_xi(const ClassifiedSample& s, const std::array<double, 3>& alphas,
                  double lambda, const HFamily& fam_with_init);

struct FitOptions {
  std::size_t max_iter = 2000;
  double rel_tol = 1e-8;
  std::optional<BeewParams> init;  // defaults to initial_guess()
  bool standard_errors = true;
};

struct FitReport {
  BeewParams theta;
  std::vector<std::string> param_names;  // free parameters only
  std::vector<double> estimates;
  std::vector<double> se;  // NaN where the information matrix failed
  double loglik = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  int k = 0;  // free-parameter count
  std::size_t n = 0;
  std::optional<CriteriaSet> criteria;  // absent when n <= k+1
  std::vector<double> loglik_trace;     // observed-data loglik per iteration
  std::vector<std::string> flags;
};

// Free-parameter bookkeeping shared by the fitters: alpha1, alpha2,
// alpha3, lambda (omitted when the family fixes it), then xi entries.
int free_param_count(FamilyId id);
std::vector<std::string> free_param_names(FamilyId id);
std::vector<double> pack_params(const BeewParams& theta);
BeewParams unpack_params(FamilyId id, std::span<const double> values);

// Data-driven starting point: profile MLE of the two marginals with
// shared (lambda, xi), then a shape split matching the smoothed empirical
// tie fraction to the singular weight.
BeewParams initial_guess(const ClassifiedSample& s, FamilyId fam_id);

// EM iteration per the latent-shock construction: weights, lambda root,
// xi search, closed-form shape updates, until the observed-data loglik
// change drops below rel_tol * (1 + |loglik|).
FitReport em_fit(const ClassifiedSample& s, FamilyId fam_id,
                 const FitOptions& opts = {});

// Simplex maximization of the observed-data log-likelihood over all free
// parameters in log space; the cross-check baseline for em_fit.
FitReport direct_fit(const ClassifiedSample& s, FamilyId fam_id,
                     const FitOptions& opts = {});

// Negated central-difference Hessian of the observed-data log-likelihood
// in log-parameter space; standard errors map back through the delta
// method. positive_definite is false (and SEs are NaN) when the Cholesky
// factorization of the information matrix fails.
struct ObservedInfo {
  std::vector<double> se;       // natural scale, one per free parameter
  std::vector<double> cov_log;  // row-major covariance of log parameters
  bool positive_definite = false;
};
ObservedInfo observed_information(const BeewParams& theta_hat,
                                  const ClassifiedSample& s);

// The differencing/inversion machinery behind observed_information:
// negative Hessian of f at t (central differences, step 1e-4 * (1+|t_i|)),
// inverted via Cholesky; se_i = scale_i * sqrt(cov_ii). Exposed so the
// numerics can be checked against functions with known curvature.
ObservedInfo neg_hessian_inverse(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> t, std::span<const double> scale);

}  // namespace beew

#endif  // BEEW_FIT_HPP_
