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

#ifndef BEEW_HFAMILY_HPP_
#define BEEW_HFAMILY_HPP_

#include <span>
#include <string_view>
#include <vector>

namespace beew {

// Cumulative-hazard style generators. Each family supplies a function
// H(x; xi) on (0, inf) that is nonnegative, strictly increasing, with
// H -> 0 as x -> 0+ and H -> inf as x -> inf, so that 1 - exp(-lambda H)
// is a proper cdf on the positive half line.
//
//   exp    H(x) = x                              xi = ()
//   lfr    H(x) = beta x + (gamma/2) x^2         xi = (beta, gamma), lambda fixed at 1
//   weib   H(x) = x^beta                         xi = (beta)
//   gomp   H(x) = (exp(beta x) - 1) / beta       xi = (beta)
//   wg     H(x) = x^beta (exp(gamma x^delta)-1)  xi = (beta, gamma, delta)
//   mwe    H(x) = beta (exp((x/beta)^gamma) - 1) xi = (beta, gamma)
enum class FamilyId { kExp, kLfr, kWeib, kGomp, kWg, kMwe };

// Throws std::invalid_argument for an unknown id string.
FamilyId family_from_string(std::string_view id);
std::string_view to_string(FamilyId id);

// Immutable, validated generator instance. Parameter domains are checked
// once at construction (std::domain_error on violation); evaluations
// assume a validated family and only check their own argument.
class HFamily {
 public:
  static HFamily make(FamilyId id, std::vector<double> xi = {});
  static HFamily make(std::string_view id, std::vector<double> xi = {});

  FamilyId id() const { return id_; }
  std::string_view name() const { return to_string(id_); }
  const std::vector<double>& xi() const { return xi_; }

  // True when the family pins the EW scale parameter to 1 (lfr), in
  // which case fitters must skip the lambda update.
  bool lambda_fixed() const { return id_ == FamilyId::kLfr; }

  static std::size_t xi_arity(FamilyId id);
  static std::span<const std::string_view> xi_names(FamilyId id);
  std::span<const std::string_view> xi_names() const { return xi_names(id_); }

  // H(x; xi). Throws std::domain_error for x <= 0 or non-finite x.
  double value(double x) const;

  // h(x; xi) = dH/dx, strictly positive on (0, inf).
  double deriv(double x) const;

  // log h(x; xi), evaluated directly so large arguments cannot overflow
  // (gomp's h = exp(beta x) exceeds double range long before log h does).
  double log_deriv(double x) const;

  // x with H(x; xi) = y, for y >= 0. Closed form where available; wg
  // falls back to bracketed bisection. Throws std::domain_error for
  // y < 0 and std::runtime_error if bracketing fails (which indicates a
  // broken family registration, not bad input).
  double inverse(double y) const;

 private:
  HFamily(FamilyId id, std::vector<double> xi) : id_(id), xi_(std::move(xi)) {}

  FamilyId id_;
  std::vector<double> xi_;
};

}  // namespace beew

#endif  // BEEW_HFAMILY_HPP_
