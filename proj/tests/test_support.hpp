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

#include <gtest/gtest.h>

#include <random>

#include "gqi/gqi.hpp"

namespace gqi::testing {

/// Random orthogonal symplectic matrix from a Haar-ish random unitary.
inline Mat random_passive(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  CMat z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = {nd(rng), nd(rng)};
  Eigen::HouseholderQR<CMat> qr(z);
  CMat u = qr.householderQ();
  Mat k(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = u(i, j).real(), y = u(i, j).imag();
      k(2 * i, 2 * j) = x;
      k(2 * i, 2 * j + 1) = -y;
      k(2 * i + 1, 2 * j) = y;
      k(2 * i + 1, 2 * j + 1) = x;
    }
  }
  return k;
}

inline Mat random_symplectic(int n, std::mt19937_64& rng, double max_r = 1.0) {
  std::uniform_real_distribution<double> ur(-max_r, max_r);
  Mat d = Mat::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    const double r = ur(rng);
    d(2 * k, 2 * k) = std::exp(-r);
    d(2 * k + 1, 2 * k + 1) = std::exp(r);
  }
  return random_passive(n, rng) * d * random_passive(n, rng);
}

/// Random valid covariance S diag(nu) S^T with nu in [1, max_nu].
inline Mat random_cov(int n, std::mt19937_64& rng, double max_nu = 4.0, double max_r = 1.0) {
  std::uniform_real_distribution<double> un(1.0, max_nu);
  Vec diag(2 * n);
  for (int k = 0; k < n; ++k) diag(2 * k) = diag(2 * k + 1) = un(rng);
  Mat s = random_symplectic(n, rng, max_r);
  Mat v = s * diag.asDiagonal() * s.transpose();
  return 0.5 * (v + v.transpose());
}

inline GaussianState random_state(int n, std::mt19937_64& rng, double max_nu = 4.0, double max_r = 1.0,
                                  double max_d = 1.0) {
  std::uniform_real_distribution<double> ud(-max_d, max_d);
  Vec m(2 * n);
  for (int k = 0; k < 2 * n; ++k) m(k) = ud(rng);
  return GaussianState(m, random_cov(n, rng, max_nu, max_r));
}

inline double rel_residual(const Mat& a, const Mat& b) { return (a - b).norm() / b.norm(); }

}  // namespace gqi::testing
