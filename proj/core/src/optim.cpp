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

#include "beew/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "beew/numeric.hpp"

namespace beew {

namespace {

struct Simplex {
  std::vector<std::vector<double>> pts;
  std::vector<double> vals;

  void sort() {
    std::vector<std::size_t> order(vals.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<std::vector<double>> p2;
    std::vector<double> v2;
    p2.reserve(pts.size());
    v2.reserve(vals.size());
    for (std::size_t k : order) {
      p2.push_back(std::move(pts[k]));
      v2.push_back(vals[k]);
    }
    pts = std::move(p2);
    vals = std::move(v2);
  }

  double diameter() const {
    double d = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i)
      for (std::size_t k = 0; k < pts[i].size(); ++k)
        d = std::max(d, std::abs(pts[i][k] - pts[0][k]));
    return d;
  }
};

Simplex build_simplex(const std::function<double(const std::vector<double>&)>& f,
                      const std::vector<double>& x0, double step) {
  const std::size_t dim = x0.size();
  Simplex s;
  s.pts.assign(dim + 1, x0);
  for (std::size_t i = 0; i < dim; ++i) s.pts[i + 1][i] += step;
  s.vals.resize(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) s.vals[i] = f(s.pts[i]);
  return s;
}

}  // namespace

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x0, const SimplexOptions& opts) {
  const std::size_t dim = x0.size();
  SimplexResult res;
  if (dim == 0) {
    res.x = std::move(x0);
    res.fmin = f(res.x);
    res.converged = true;
    return res;
  }

  std::vector<double> best = x0;
  double fbest = f(x0);
  std::size_t total_iter = 0;
  bool converged = false;

  for (int round = 0; round <= opts.restarts; ++round) {
    Simplex s = build_simplex(f, best, opts.initial_step);
    s.sort();
    while (total_iter < opts.max_iter) {
      if (s.diameter() < opts.diameter_tol) {
        converged = true;
        break;
      }
      ++total_iter;

      std::vector<double> centroid(dim, 0.0);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < dim; ++k) centroid[k] += s.pts[i][k] / dim;

      auto blend = [&](double coef) {
        std::vector<double> p(dim);
        for (std::size_t k = 0; k < dim; ++k)
          p[k] = centroid[k] + coef * (s.pts[dim][k] - centroid[k]);
        return p;
      };

      std::vector<double> refl = blend(-1.0);
      const double frefl = f(refl);
      if (frefl < s.vals[0]) {
        std::vector<double> expd = blend(-2.0);
        const double fexpd = f(expd);
        if (fexpd < frefl) {
          s.pts[dim] = std::move(expd);
          s.vals[dim] = fexpd;
        } else {
          s.pts[dim] = std::move(refl);
          s.vals[dim] = frefl;
        }
      } else if (frefl < s.vals[dim - 1]) {
        s.pts[dim] = std::move(refl);
        s.vals[dim] = frefl;
      } else {
        const bool outside = frefl < s.vals[dim];
        std::vector<double> contr = blend(outside ? -0.5 : 0.5);
        const double fcontr = f(contr);
        if (fcontr < std::min(frefl, s.vals[dim])) {
          s.pts[dim] = std::move(contr);
          s.vals[dim] = fcontr;
        } else {
          for (std::size_t i = 1; i <= dim; ++i) {
            for (std::size_t k = 0; k < dim; ++k)
              s.pts[i][k] = s.pts[0][k] + 0.5 * (s.pts[i][k] - s.pts[0][k]);
            s.vals[i] = f(s.pts[i]);
          }
        }
      }
      s.sort();
    }
    if (s.vals[0] < fbest) {
      fbest = s.vals[0];
      best = s.pts[0];
    }
    if (total_iter >= opts.max_iter) break;
  }

  res.x = std::move(best);
  res.fmin = fbest;
  res.iterations = total_iter;
  res.converged = converged;
  return res;
}

RootResult solve_positive_root(const std::function<double(double)>& f, double x0,
                               double fx_tol) {
  if (!(x0 > 0.0)) x0 = 1.0;
  double lo = x0, hi = x0;
  double flo = f(lo), fhi = flo;
  int expand = 0;
  while (flo * fhi > 0.0) {
    if (++expand > 200)
      throw std::runtime_error("optim: no sign change while bracketing root");
    lo *= 0.5;
    hi *= 2.0;
    flo = f(lo);
    fhi = f(hi);
    if (flo * fhi > 0.0) {
      // A sign change can hide between lo and x0 or x0 and hi.
      const double fmid = f(x0);
      if (flo * fmid <= 0.0) {
        hi = x0;
        fhi = fmid;
        break;
      }
      if (fmid * fhi <= 0.0) {
        lo = x0;
        flo = fmid;
        break;
      }
    }
  }

  RootResult r;
  double mid = 0.5 * (lo + hi), fmid = 0.0;
  for (int i = 0; i < 200; ++i) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    fmid = f(mid);
    if (std::abs(fmid) < fx_tol) break;
    if (flo * fmid <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }
  r.x = mid;
  r.fx = f(mid);
  r.bracket_lo = lo;
  r.bracket_hi = hi;
  r.converged = std::abs(r.fx) < fx_tol || (hi - lo) <= 4.0 * std::numeric_limits<double>::epsilon() * mid;
  return r;
}

}  // namespace beew
