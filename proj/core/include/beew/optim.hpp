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

#ifndef BEEW_OPTIM_HPP_
#define BEEW_OPTIM_HPP_

#include <functional>
#include <vector>

namespace beew {

struct SimplexOptions {
  double diameter_tol = 1e-9;  // stop when the simplex fits in this box
  double initial_step = 0.25;  // per-coordinate offset of the start simplex
  std::size_t max_iter = 20000;
  int restarts = 0;  // rebuild the simplex at the incumbent this many times
};

struct SimplexResult {
  std::vector<double> x;
  double fmin = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

// Nelder-Mead minimization. Infinite objective values are allowed and act
// as barriers. The returned point is never worse than the start point.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x0, const SimplexOptions& opts = {});

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  bool converged = false;
};

// Root of f on (0, inf) near x0: expands a bracket [x0/2^k, x0*2^k] until
// the sign changes, then bisects. Throws std::runtime_error when no sign
// change is found within the expansion cap.
RootResult solve_positive_root(const std::function<double(double)>& f, double x0,
                               double fx_tol);

}  // namespace beew

#endif  // BEEW_OPTIM_HPP_
