// Copyright 2026 The gaussian-qi Authors
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

#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "gqi/config.hpp"

namespace gqi::numerics {

struct MinResult {
  double x;
  double fx;
  std::uintmax_t iterations;
};

/// Brent minimization on [a, b]; throws numerical_error if max_iter is hit.
inline MinResult brent_minimize(const std::function<double(double)>& f, double a, double b,
                                std::uintmax_t max_iter = 200) {
  std::uintmax_t it = max_iter;
  auto [x, fx] = boost::math::tools::brent_find_minima(f, a, b, 52, it);
  if (it >= max_iter) {
    throw numerical_error("Brent minimization did not converge in " + std::to_string(max_iter) +
                          " iterations; last x=" + std::to_string(x));
  }
  return {x, fx, it};
}

/// Bisection root of f on [lo, hi] with absolute x tolerance.
inline double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                          double xtol = 1e-12, std::uintmax_t max_iter = 400) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0)) {
    throw numerical_error("root not bracketed on [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
  }
  for (std::uintmax_t i = 0; i < max_iter && hi - lo > xtol; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Adaptive 61-point Gauss-Kronrod quadrature on [a, b] (b may be +inf).
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-12, unsigned max_depth = 20,
                        double* error_estimate = nullptr) {
  double err = 0;
  double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth,
                                                                            rel_tol, &err);
  if (error_estimate) *error_estimate = err;
  return v;
}

/// Gauss-Hermite nodes and weights for weight exp(-x^2), via Golub-Welsch.
inline std::pair<std::vector<double>, std::vector<double>> gauss_hermite(int n) {
  if (n < 1) throw domain_error("Gauss-Hermite order must be positive");
  Mat J = Mat::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    J(i, i - 1) = J(i - 1, i) = std::sqrt(i / 2.0);
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(J);
  std::vector<double> x(n), w(n);
  const double sqrt_pi = std::sqrt(M_PI);
  for (int i = 0; i < n; ++i) {
    x[i] = es.eigenvalues()(i);
    double v0 = es.eigenvectors()(0, i);
    w[i] = sqrt_pi * v0 * v0;
  }
  return {x, w};
}

}  // namespace gqi::numerics
