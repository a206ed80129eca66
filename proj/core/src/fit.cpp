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

#include "beew/fit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "beew/numeric.hpp"
#include "beew/optim.hpp"

namespace beew {

namespace {

constexpr double kAlphaFloor = 1e-8;

double column_mean(const ClassifiedSample& s) {
  double sum = 0.0;
  for (const auto& [x1, x2] : s.pairs) sum += x1 + x2;
  return sum / (2.0 * static_cast<double>(s.n()));
}

// log(1 - exp(-lambda H(x))); always < 0 for finite positive arguments.
double wlog(const HFamily& fam, double lambda, double x) {
  return log1mexp(lambda * fam.value(x));
}

}  // namespace

ClassifiedSample classify(std::span<const std::pair<double, double>> pairs,
                          double tie_eps) {
  if (pairs.empty()) throw std::invalid_argument("classify: no data");
  if (!(tie_eps >= 0.0)) throw std::domain_error("classify: tie_eps must be >= 0");
  ClassifiedSample s;
  s.tie_eps = tie_eps;
  s.pairs.assign(pairs.begin(), pairs.end());
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    const auto& [x1, x2] = s.pairs[i];
    if (!(std::isfinite(x1) && x1 > 0.0 && std::isfinite(x2) && x2 > 0.0))
      throw std::domain_error("classify: nonpositive coordinate at row " +
                              std::to_string(i));
    if (is_tie(x1, x2, tie_eps)) {
      s.i0.push_back(i);
    } else if (x1 < x2) {
      s.i1.push_back(i);
    } else {
      s.i2.push_back(i);
    }
  }
  return s;
}

EStepWeights estep(const BeewParams& theta) {
  EStepWeights w;
  w.u1 = theta.alpha1 / (theta.alpha1 + theta.alpha3);
  w.u2 = 1.0 - w.u1;
  w.v1 = theta.alpha2 / (theta.alpha2 + theta.alpha3);
  w.v2 = 1.0 - w.v1;
  return w;
}

double loglik(const BeewParams& theta, const ClassifiedSample& s) {
  double ll = 0.0;
  for (std::size_t k = 0; k < s.n0(); ++k) {
    const double v = s.tie_value(k);
    ll += joint_logpdf(theta, v, v, 0.0).value;
    if (ll == kNegInf) return kNegInf;
  }
  for (std::size_t idx : s.i1) {
    const auto& [x1, x2] = s.pairs[idx];
    ll += joint_logpdf(theta, x1, x2, 0.0).value;
    if (ll == kNegInf) return kNegInf;
  }
  for (std::size_t idx : s.i2) {
    const auto& [x1, x2] = s.pairs[idx];
    ll += joint_logpdf(theta, x1, x2, 0.0).value;
    if (ll == kNegInf) return kNegInf;
  }
  return ll;
}

double pseudo_loglik(const ClassifiedSample& s, const EStepWeights& w,
                     const std::array<double, 3>& a, double lambda,
                     const HFamily& fam) {
  const double n0 = static_cast<double>(s.n0());
  const double n1 = static_cast<double>(s.n1());
  const double n2 = static_cast<double>(s.n2());
  const double asum = a[0] + a[1] + a[2];

  double ll = (n0 + 2.0 * n1 + 2.0 * n2) * std::log(lambda) +
              (w.u1 * n1 + n2) * std::log(a[0]) +
              (n1 + w.v1 * n2) * std::log(a[1]) +
              (n0 + w.u2 * n1 + w.v2 * n2) * std::log(a[2]);

  for (std::size_t k = 0; k < s.n0(); ++k) {
    const double x = s.tie_value(k);
    ll += fam.log_deriv(x) + (asum - 1.0) * wlog(fam, lambda, x) -
          lambda * fam.value(x);
  }
  for (std::size_t idx : s.i1) {
    const auto& [x1, x2] = s.pairs[idx];
    ll += fam.log_deriv(x1) + fam.log_deriv(x2);
    ll += (a[0] + a[2] - 1.0) * wlog(fam, lambda, x1) +
          (a[1] - 1.0) * wlog(fam, lambda, x2);
    ll -= lambda * (fam.value(x1) + fam.value(x2));
  }
  for (std::size_t idx : s.i2) {
    const auto& [x1, x2] = s.pairs[idx];
    ll += fam.log_deriv(x1) + fam.log_deriv(x2);
    ll += (a[0] - 1.0) * wlog(fam, lambda, x1) +
          (a[1] + a[2] - 1.0) * wlog(fam, lambda, x2);
    ll -= lambda * (fam.value(x1) + fam.value(x2));
  }
  return ll;
}

std::array<double, 3> mstep_alphas(const ClassifiedSample& s,
                                   const EStepWeights& w, double lambda,
                                   const HFamily& fam) {
  double w0 = 0.0, w1_x1 = 0.0, w1_x2 = 0.0, w2_x1 = 0.0, w2_x2 = 0.0;
  for (std::size_t k = 0; k < s.n0(); ++k) w0 += wlog(fam, lambda, s.tie_value(k));
  for (std::size_t idx : s.i1) {
    w1_x1 += wlog(fam, lambda, s.pairs[idx].first);
    w1_x2 += wlog(fam, lambda, s.pairs[idx].second);
  }
  for (std::size_t idx : s.i2) {
    w2_x1 += wlog(fam, lambda, s.pairs[idx].first);
    w2_x2 += wlog(fam, lambda, s.pairs[idx].second);
  }

  const double n0 = static_cast<double>(s.n0());
  const double n1 = static_cast<double>(s.n1());
  const double n2 = static_cast<double>(s.n2());

  // Stationarity of the pseudo log-likelihood gives numerator / (-sum W);
  // the W sums are negative, so these denominators are positive.
  const double d1 = -(w0 + w1_x1 + w2_x1);
  const double d2 = -(w0 + w1_x2 + w2_x2);
  const double d3 = -(w0 + w1_x1 + w2_x2);
  if (!(d1 > 0.0 && d2 > 0.0 && d3 > 0.0))
    throw std::domain_error("mstep_alphas: degenerate W sums (observations at cdf 1)");

  return {(w.u1 * n1 + n2) / d1, (n1 + w.v1 * n2) / d2,
          (n0 + w.u2 * n1 + w.v2 * n2) / d3};
}

double mstep_lambda(const ClassifiedSample& s, const std::array<double, 3>& a,
                    const HFamily& fam, double lambda_init) {
  if (fam.lambda_fixed())
    throw std::logic_error("mstep_lambda: family fixes lambda");

  // Cache H per coordinate together with the coefficient its W term
  // carries in the pseudo log-likelihood.
  struct Term {
    double h;
    double coef;
  };
  std::vector<Term> terms;
  terms.reserve(s.n0() + 2 * (s.n1() + s.n2()));
  const double asum = a[0] + a[1] + a[2];
  double h_total = 0.0;
  auto push = [&](double x, double coef) {
    const double h = fam.value(x);
    terms.push_back({h, coef});
    h_total += h;
  };
  for (std::size_t k = 0; k < s.n0(); ++k) push(s.tie_value(k), asum - 1.0);
  for (std::size_t idx : s.i1) {
    push(s.pairs[idx].first, a[0] + a[2] - 1.0);
    push(s.pairs[idx].second, a[1] - 1.0);
  }
  for (std::size_t idx : s.i2) {
    push(s.pairs[idx].first, a[0] - 1.0);
    push(s.pairs[idx].second, a[1] + a[2] - 1.0);
  }

  const double count = static_cast<double>(s.n0() + 2 * s.n1() + 2 * s.n2());
  // d/dlambda of the pseudo log-likelihood; H e^{-t}/(1-e^{-t}) = r(t)/lambda
  // with t = lambda H keeps the small- and large-t limits stable.
  auto score = [&](double lambda) {
    double acc = count;
    for (const Term& t : terms) acc += t.coef * texp_ratio(lambda * t.h);
    return acc / lambda - h_total;
  };

  const double tol = 1e-9 * static_cast<double>(s.n());
  return solve_positive_root(score, lambda_init, tol).x;
}

XiUpdate mstep_xi(const ClassifiedSample& s, const std::array<double, 3>& a,
                  double lambda, const HFamily& fam_with_init) {
  const FamilyId id = fam_with_init.id();
  const std::vector<double>& xi0 = fam_with_init.xi();
  if (xi0.empty()) return {xi0, true};

  std::vector<double> t0(xi0.size());
  for (std::size_t i = 0; i < xi0.size(); ++i)
    t0[i] = std::log(std::max(xi0[i], 1e-12));

  EStepWeights dummy{0.5, 0.5, 0.5, 0.5};  // weights do not enter the xi terms
  auto objective = [&](const std::vector<double>& t) {
    std::vector<double> xi(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) xi[i] = std::exp(t[i]);
    try {
      const HFamily fam = HFamily::make(id, xi);
      const double ll = pseudo_loglik(s, dummy, a, lambda, fam);
      return std::isfinite(ll) ? -ll : kPosInf;
    } catch (const std::exception&) {
      return kPosInf;
    }
  };

  SimplexOptions opts;
  opts.diameter_tol = 1e-7;
  opts.initial_step = 0.2;
  opts.max_iter = 4000;
  const SimplexResult r = nelder_mead(objective, t0, opts);

  XiUpdate upd;
  upd.xi.resize(r.x.size());
  for (std::size_t i = 0; i < r.x.size(); ++i) upd.xi[i] = std::exp(r.x[i]);
  upd.converged = r.converged;
  return upd;
}

int free_param_count(FamilyId id) {
  return 3 + (id == FamilyId::kLfr ? 0 : 1) +
         static_cast<int>(HFamily::xi_arity(id));
}

std::vector<std::string> free_param_names(FamilyId id) {
  std::vector<std::string> names = {"alpha1", "alpha2", "alpha3"};
  if (id != FamilyId::kLfr) names.emplace_back("lambda");
  for (std::string_view nm : HFamily::xi_names(id)) names.emplace_back(nm);
  return names;
}

std::vector<double> pack_params(const BeewParams& theta) {
  std::vector<double> v = {theta.alpha1, theta.alpha2, theta.alpha3};
  if (!theta.fam.lambda_fixed()) v.push_back(theta.lambda);
  for (double x : theta.fam.xi()) v.push_back(x);
  return v;
}

BeewParams unpack_params(FamilyId id, std::span<const double> values) {
  const std::size_t expect = static_cast<std::size_t>(free_param_count(id));
  if (values.size() != expect)
    throw std::invalid_argument("unpack_params: wrong parameter count");
  std::size_t pos = 3;
  const double lambda = id == FamilyId::kLfr ? 1.0 : values[pos++];
  std::vector<double> xi(values.begin() + pos, values.end());
  return BeewParams(values[0], values[1], values[2], lambda,
                    HFamily::make(id, std::move(xi)));
}

BeewParams initial_guess(const ClassifiedSample& s, FamilyId fam_id) {
  const double n = static_cast<double>(s.n());
  const double mean = column_mean(s);
  const bool lambda_free = fam_id != FamilyId::kLfr;

  std::vector<double> start;
  if (lambda_free) start.push_back(std::log(1.0 / mean));
  switch (fam_id) {
    case FamilyId::kExp:
      break;
    case FamilyId::kLfr:
      start.push_back(std::log(1.0 / mean));
      start.push_back(std::log(0.1 / (mean * mean)));
      break;
    case FamilyId::kWeib:
      start.push_back(0.0);  // beta = 1
      break;
    case FamilyId::kGomp: {
      double xmax = 0.0;
      for (const auto& [x1, x2] : s.pairs) xmax = std::max({xmax, x1, x2});
      start.push_back(std::log(1.0 / xmax));
      break;
    }
    case FamilyId::kWg:
      start.push_back(0.0);                 // beta = 1
      start.push_back(std::log(1.0 / mean));  // gamma
      start.push_back(0.0);                 // delta = 1
      break;
    case FamilyId::kMwe:
      start.push_back(std::log(mean));  // beta
      start.push_back(0.0);             // gamma = 1
      break;
  }

  // Profile likelihood of both marginal columns with shared (lambda, xi);
  // each column's shape maximizer is -n / sum W in closed form.
  auto profile = [&](const std::vector<double>& t) -> double {
    std::size_t pos = 0;
    const double lambda = lambda_free ? std::exp(t[pos++]) : 1.0;
    std::vector<double> xi;
    for (; pos < t.size(); ++pos) xi.push_back(std::exp(t[pos]));
    HFamily fam = HFamily::make(fam_id, std::move(xi));

    double total = 0.0;
    for (int col = 0; col < 2; ++col) {
      double sw = 0.0, slogh = 0.0, sh = 0.0;
      for (const auto& pr : s.pairs) {
        const double x = col == 0 ? pr.first : pr.second;
        sw += wlog(fam, lambda, x);
        slogh += fam.log_deriv(x);
        sh += fam.value(x);
      }
      if (!(sw < 0.0) || !std::isfinite(sw)) return kPosInf;
      const double a = -n / sw;
      const double ll =
          n * (std::log(a) + std::log(lambda)) + slogh + (a - 1.0) * sw - lambda * sh;
      if (!std::isfinite(ll)) return kPosInf;
      total += ll;
    }
    return -total;
  };

  auto guarded = [&](const std::vector<double>& t) -> double {
    try {
      return profile(t);
    } catch (const std::exception&) {
      return kPosInf;
    }
  };

  SimplexOptions opts;
  opts.diameter_tol = 1e-8;
  opts.max_iter = 6000;
  opts.restarts = 1;
  const SimplexResult r =
      start.empty() ? SimplexResult{start, guarded(start), 0, true}
                    : nelder_mead(guarded, start, opts);

  std::size_t pos = 0;
  const double lambda = lambda_free ? std::exp(r.x[pos++]) : 1.0;
  std::vector<double> xi;
  for (; pos < r.x.size(); ++pos) xi.push_back(std::exp(r.x[pos]));
  HFamily fam = HFamily::make(fam_id, xi);

  std::array<double, 2> a_marg{};
  for (int col = 0; col < 2; ++col) {
    double sw = 0.0;
    for (const auto& pr : s.pairs)
      sw += wlog(fam, lambda, col == 0 ? pr.first : pr.second);
    a_marg[col] = -n / sw;
  }

  // Split the marginal shapes so the singular weight alpha3 / sum(alpha)
  // matches the smoothed tie fraction; a1 = alpha1 + alpha3 and
  // a2 = alpha2 + alpha3 give sum(alpha) = a1 + a2 - alpha3.
  const double tie_frac = (static_cast<double>(s.n0()) + 1.0) / (n + 2.0);
  const double alpha3 = tie_frac * (a_marg[0] + a_marg[1]) / (1.0 + tie_frac);
  const double alpha1 = std::max(a_marg[0] - alpha3, 0.1 * a_marg[0]);
  const double alpha2 = std::max(a_marg[1] - alpha3, 0.1 * a_marg[1]);
  return BeewParams(alpha1, alpha2, alpha3, lambda, std::move(fam));
}

namespace {

void fill_report_side_info(FitReport& rep, const ClassifiedSample& s,
                           bool want_se) {
  rep.param_names = free_param_names(rep.theta.fam.id());
  rep.estimates = pack_params(rep.theta);
  rep.k = free_param_count(rep.theta.fam.id());
  rep.n = s.n();
  rep.se.assign(rep.estimates.size(), kNaN);
  if (want_se) {
    const ObservedInfo info = observed_information(rep.theta, s);
    if (info.positive_definite) {
      rep.se = info.se;
    } else {
      rep.flags.push_back("information matrix not positive definite");
    }
  }
  if (rep.n > static_cast<std::size_t>(rep.k) + 1)
    rep.criteria = criteria(rep.k, rep.n, rep.loglik);
}

}  // namespace

FitReport em_fit(const ClassifiedSample& s, FamilyId fam_id,
                 const FitOptions& opts) {
  BeewParams theta = opts.init ? *opts.init : initial_guess(s, fam_id);
  if (theta.fam.id() != fam_id)
    throw std::invalid_argument("em_fit: init family does not match fam_id");

  FitReport rep{theta};
  double ll = loglik(theta, s);
  rep.loglik_trace.push_back(ll);
  bool xi_converged = true;

  std::size_t it = 0;
  for (; it < opts.max_iter; ++it) {
    const EStepWeights w = estep(theta);
    std::array<double, 3> alphas{theta.alpha1, theta.alpha2, theta.alpha3};

    double lambda = theta.lambda;
    if (!theta.fam.lambda_fixed()) {
      const double cand = mstep_lambda(s, alphas, theta.fam, lambda);
      // The score root is a stationary point; accept it only when it does
      // not lower the pseudo objective (possible with shapes < 1).
      if (pseudo_loglik(s, w, alphas, cand, theta.fam) >=
          pseudo_loglik(s, w, alphas, lambda, theta.fam))
        lambda = cand;
    }

    HFamily fam = theta.fam;
    if (!fam.xi().empty()) {
      const XiUpdate upd = mstep_xi(s, alphas, lambda, fam);
      if (!upd.converged) xi_converged = false;
      fam = HFamily::make(fam_id, upd.xi);
    }

    alphas = mstep_alphas(s, w, lambda, fam);
    if (alphas[2] < kAlphaFloor) {
      alphas[2] = kAlphaFloor;
      if (rep.flags.empty() || rep.flags.back() != "no evidence of shared component")
        rep.flags.push_back("no evidence of shared component");
    }
    alphas[0] = std::max(alphas[0], kAlphaFloor);
    alphas[1] = std::max(alphas[1], kAlphaFloor);

    theta = BeewParams(alphas[0], alphas[1], alphas[2], lambda, std::move(fam));
    const double ll_new = loglik(theta, s);
    rep.loglik_trace.push_back(ll_new);
    const bool done = std::abs(ll_new - ll) < opts.rel_tol * (1.0 + std::abs(ll_new));
    ll = ll_new;
    if (done) {
      rep.converged = true;
      ++it;
      break;
    }
  }

  rep.theta = theta;
  rep.loglik = ll;
  rep.iterations = it;
  // With no observed ties the shared shape can only decay toward zero;
  // EM stalls long before the barrier, so detect it by the final weight.
  if (s.n0() == 0 && theta.alpha3 < 1e-4 * theta.alpha_sum() &&
      (rep.flags.empty() || rep.flags.back() != "no evidence of shared component"))
    rep.flags.push_back("no evidence of shared component");
  if (!xi_converged) rep.flags.push_back("xi search hit iteration cap");
  if (!rep.converged) rep.flags.push_back("em did not converge");
  fill_report_side_info(rep, s, opts.standard_errors);
  return rep;
}

FitReport direct_fit(const ClassifiedSample& s, FamilyId fam_id,
                     const FitOptions& opts) {
  const BeewParams start = opts.init ? *opts.init : initial_guess(s, fam_id);
  if (start.fam.id() != fam_id)
    throw std::invalid_argument("direct_fit: init family does not match fam_id");

  std::vector<double> t0 = pack_params(start);
  for (double& v : t0) v = std::log(std::max(v, 1e-300));

  auto objective = [&](const std::vector<double>& t) -> double {
    std::vector<double> v(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) v[i] = std::exp(t[i]);
    try {
      const double ll = loglik(unpack_params(fam_id, v), s);
      return std::isfinite(ll) ? -ll : kPosInf;
    } catch (const std::exception&) {
      return kPosInf;
    }
  };

  SimplexOptions nm;
  nm.diameter_tol = 1e-10;
  nm.initial_step = 0.3;
  nm.max_iter = 60000;
  nm.restarts = 3;
  const SimplexResult r = nelder_mead(objective, t0, nm);

  std::vector<double> v(r.x.size());
  for (std::size_t i = 0; i < r.x.size(); ++i) v[i] = std::exp(r.x[i]);

  FitReport rep{unpack_params(fam_id, v)};
  rep.loglik = -r.fmin;
  rep.iterations = r.iterations;
  rep.converged = r.converged;
  if (!rep.converged) rep.flags.push_back("simplex did not converge");
  fill_report_side_info(rep, s, opts.standard_errors);
  return rep;
}

ObservedInfo neg_hessian_inverse(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> t_in, std::span<const double> scale) {
  const std::size_t k = t_in.size();
  const std::vector<double> t(t_in.begin(), t_in.end());

  std::vector<double> step(k);
  for (std::size_t i = 0; i < k; ++i) step[i] = 1e-4 * (1.0 + std::abs(t[i]));

  const double f0 = f(t);
  std::vector<double> info(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> tp = t, tm = t;
    tp[i] += step[i];
    tm[i] -= step[i];
    info[i * k + i] = -(f(tp) - 2.0 * f0 + f(tm)) / (step[i] * step[i]);
    for (std::size_t j = i + 1; j < k; ++j) {
      std::vector<double> tpp = t, tpm = t, tmp = t, tmm = t;
      tpp[i] += step[i]; tpp[j] += step[j];
      tpm[i] += step[i]; tpm[j] -= step[j];
      tmp[i] -= step[i]; tmp[j] += step[j];
      tmm[i] -= step[i]; tmm[j] -= step[j];
      const double hij =
          -(f(tpp) - f(tpm) - f(tmp) + f(tmm)) / (4.0 * step[i] * step[j]);
      info[i * k + j] = hij;
      info[j * k + i] = hij;
    }
  }

  ObservedInfo out;
  out.se.assign(k, kNaN);

  // Cholesky factorization; failure means the Hessian is not negative
  // definite at theta_hat.
  std::vector<double> chol(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = info[i * k + j];
      for (std::size_t m = 0; m < j; ++m) sum -= chol[i * k + m] * chol[j * k + m];
      if (i == j) {
        if (!(sum > 0.0)) return out;
        chol[i * k + i] = std::sqrt(sum);
      } else {
        chol[i * k + j] = sum / chol[j * k + j];
      }
    }
  }

  // Invert via the factor: solve L L^T X = I column by column.
  out.cov_log.assign(k * k, 0.0);
  std::vector<double> y(k), x(k);
  for (std::size_t col = 0; col < k; ++col) {
    for (std::size_t i = 0; i < k; ++i) {
      double sum = (i == col) ? 1.0 : 0.0;
      for (std::size_t m = 0; m < i; ++m) sum -= chol[i * k + m] * y[m];
      y[i] = sum / chol[i * k + i];
    }
    for (std::size_t ii = k; ii-- > 0;) {
      double sum = y[ii];
      for (std::size_t m = ii + 1; m < k; ++m) sum -= chol[m * k + ii] * x[m];
      x[ii] = sum / chol[ii * k + ii];
    }
    for (std::size_t i = 0; i < k; ++i) out.cov_log[i * k + col] = x[i];
  }

  out.positive_definite = true;
  for (std::size_t i = 0; i < k; ++i) {
    const double var = out.cov_log[i * k + i];
    out.se[i] = var > 0.0 ? scale[i] * std::sqrt(var) : kNaN;
  }
  return out;
}

ObservedInfo observed_information(const BeewParams& theta_hat,
                                  const ClassifiedSample& s) {
  const FamilyId id = theta_hat.fam.id();
  const std::vector<double> natural = pack_params(theta_hat);
  std::vector<double> t = natural;
  for (double& v : t) v = std::log(std::max(v, 1e-300));

  auto f = [&](std::span<const double> tv) -> double {
    std::vector<double> v(tv.size());
    for (std::size_t i = 0; i < tv.size(); ++i) v[i] = std::exp(tv[i]);
    return loglik(unpack_params(id, v), s);
  };
  return neg_hessian_inverse(f, t, natural);
}

}  // namespace beew
