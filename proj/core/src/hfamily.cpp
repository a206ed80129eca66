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

#include "beew/hfamily.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "beew/numeric.hpp"

namespace beew {

namespace {

constexpr std::array<std::string_view, 6> kIdNames = {"exp",  "lfr", "weib",
                                                      "gomp", "wg",  "mwe"};

constexpr std::array<std::string_view, 2> kLfrNames = {"beta", "gamma"};
constexpr std::array<std::string_view, 1> kBetaOnly = {"beta"};
constexpr std::array<std::string_view, 3> kWgNames = {"beta", "gamma", "delta"};
constexpr std::array<std::string_view, 2> kMweNames = {"beta", "gamma"};

[[noreturn]] void bad_xi(FamilyId id, const std::string& what) {
  throw std::domain_error("hfamily '" + std::string(to_string(id)) +
                          "': " + what);
}

void require_finite_positive(FamilyId id, std::string_view name, double v) {
  if (!(std::isfinite(v) && v > 0.0))
    bad_xi(id, std::string(name) + " must be finite and > 0");
}

void require_finite_nonneg(FamilyId id, std::string_view name, double v) {
  if (!(std::isfinite(v) && v >= 0.0))
    bad_xi(id, std::string(name) + " must be finite and >= 0");
}

void check_x(double x) {
  if (!(std::isfinite(x) && x > 0.0))
    throw std::domain_error("hfamily: x must be finite and > 0");
}

}  // namespace

FamilyId family_from_string(std::string_view id) {
  for (std::size_t i = 0; i < kIdNames.size(); ++i)
    if (kIdNames[i] == id) return static_cast<FamilyId>(i);
  throw std::invalid_argument("unknown family id '" + std::string(id) +
                              "' (expected one of exp, lfr, weib, gomp, wg, mwe)");
}

std::string_view to_string(FamilyId id) {
  return kIdNames[static_cast<std::size_t>(id)];
}

std::size_t HFamily::xi_arity(FamilyId id) {
  switch (id) {
    case FamilyId::kExp: return 0;
    case FamilyId::kLfr: return 2;
    case FamilyId::kWeib: return 1;
    case FamilyId::kGomp: return 1;
    case FamilyId::kWg: return 3;
    case FamilyId::kMwe: return 2;
  }
  return 0;
}

std::span<const std::string_view> HFamily::xi_names(FamilyId id) {
  switch (id) {
    case FamilyId::kExp: return {};
    case FamilyId::kLfr: return kLfrNames;
    case FamilyId::kWeib: return kBetaOnly;
    case FamilyId::kGomp: return kBetaOnly;
    case FamilyId::kWg: return kWgNames;
    case FamilyId::kMwe: return kMweNames;
  }
  return {};
}

HFamily HFamily::make(FamilyId id, std::vector<double> xi) {
  if (xi.size() != xi_arity(id))
    bad_xi(id, "expected " + std::to_string(xi_arity(id)) +
                   " xi parameters, got " + std::to_string(xi.size()));
  switch (id) {
    case FamilyId::kExp:
      break;
    case FamilyId::kLfr:
      // Either term alone keeps H increasing to infinity.
      require_finite_nonneg(id, "beta", xi[0]);
      require_finite_nonneg(id, "gamma", xi[1]);
      if (xi[0] + xi[1] <= 0.0) bad_xi(id, "beta + gamma must be > 0");
      break;
    case FamilyId::kWeib:
      require_finite_positive(id, "beta", xi[0]);
      break;
    case FamilyId::kGomp:
      require_finite_positive(id, "beta", xi[0]);
      break;
    case FamilyId::kWg:
      require_finite_nonneg(id, "beta", xi[0]);
      require_finite_positive(id, "gamma", xi[1]);
      require_finite_positive(id, "delta", xi[2]);
      break;
    case FamilyId::kMwe:
      require_finite_positive(id, "beta", xi[0]);
      require_finite_positive(id, "gamma", xi[1]);
      break;
  }
  return HFamily(id, std::move(xi));
}

HFamily HFamily::make(std::string_view id, std::vector<double> xi) {
  return make(family_from_string(id), std::move(xi));
}

double HFamily::value(double x) const {
  check_x(x);
  switch (id_) {
    case FamilyId::kExp:
      return x;
    case FamilyId::kLfr:
      return xi_[0] * x + 0.5 * xi_[1] * x * x;
    case FamilyId::kWeib:
      return std::pow(x, xi_[0]);
    case FamilyId::kGomp:
      return std::expm1(xi_[0] * x) / xi_[0];
    case FamilyId::kWg:
      return std::pow(x, xi_[0]) * std::expm1(xi_[1] * std::pow(x, xi_[2]));
    case FamilyId::kMwe:
      return xi_[0] * std::expm1(std::pow(x / xi_[0], xi_[1]));
  }
  return kNaN;
}

double HFamily::deriv(double x) const {
  check_x(x);
  switch (id_) {
    case FamilyId::kExp:
      return 1.0;
    case FamilyId::kLfr:
      return xi_[0] + xi_[1] * x;
    case FamilyId::kWeib:
      return xi_[0] * std::pow(x, xi_[0] - 1.0);
    case FamilyId::kGomp:
      return std::exp(xi_[0] * x);
    case FamilyId::kWg: {
      const double b = xi_[0], g = xi_[1], d = xi_[2];
      const double gx = g * std::pow(x, d);
      return b * std::pow(x, b - 1.0) * std::expm1(gx) +
             g * d * std::pow(x, b + d - 1.0) * std::exp(gx);
    }
    case FamilyId::kMwe: {
      const double b = xi_[0], g = xi_[1];
      const double r = x / b;
      return g * std::pow(r, g - 1.0) * std::exp(std::pow(r, g));
    }
  }
  return kNaN;
}

double HFamily::log_deriv(double x) const {
  check_x(x);
  switch (id_) {
    case FamilyId::kExp:
      return 0.0;
    case FamilyId::kLfr:
      return std::log(xi_[0] + xi_[1] * x);
    case FamilyId::kWeib:
      return std::log(xi_[0]) + (xi_[0] - 1.0) * std::log(x);
    case FamilyId::kGomp:
      return xi_[0] * x;
    case FamilyId::kWg: {
      const double b = xi_[0], g = xi_[1], d = xi_[2];
      const double lx = std::log(x);
      const double gx = g * std::pow(x, d);
      const double power_term =
          b > 0.0 ? std::log(b) + (b - 1.0) * lx + logexpm1(gx) : kNegInf;
      const double exp_term = std::log(g * d) + (b + d - 1.0) * lx + gx;
      return logaddexp(power_term, exp_term);
    }
    case FamilyId::kMwe: {
      const double b = xi_[0], g = xi_[1];
      const double lr = std::log(x / b);
      return std::log(g) + (g - 1.0) * lr + std::exp(g * lr);
    }
  }
  return kNaN;
}

double HFamily::inverse(double y) const {
  if (!(std::isfinite(y) && y >= 0.0))
    throw std::domain_error("hfamily: inverse needs finite y >= 0");
  if (y == 0.0) return 0.0;
  switch (id_) {
    case FamilyId::kExp:
      return y;
    case FamilyId::kLfr: {
      // Positive root of (gamma/2) x^2 + beta x - y, in the form that
      // stays accurate when gamma -> 0.
      const double b = xi_[0], g = xi_[1];
      return 2.0 * y / (b + std::sqrt(b * b + 2.0 * g * y));
    }
    case FamilyId::kWeib:
      return std::pow(y, 1.0 / xi_[0]);
    case FamilyId::kGomp:
      return std::log1p(xi_[0] * y) / xi_[0];
    case FamilyId::kMwe:
      return xi_[0] * std::pow(std::log1p(y / xi_[0]), 1.0 / xi_[1]);
    case FamilyId::kWg:
      break;  // no closed form
  }

  // Safeguarded bisection: expand [lo, hi] from [1e-12, 1] until it
  // brackets y, then bisect. 200 halvings shrink any bracket below
  // double resolution.
  double lo = 1e-12, hi = 1.0;
  int expand = 0;
  while (value(hi) < y) {
    hi *= 2.0;
    if (++expand > 200)
      throw std::runtime_error("hfamily: inverse bracketing failed (upper)");
  }
  expand = 0;
  while (value(lo) > y) {
    lo *= 0.5;
    if (++expand > 200)
      throw std::runtime_error("hfamily: inverse bracketing failed (lower)");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (value(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace beew
