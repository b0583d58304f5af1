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

#include <complex>
#include <vector>

#include "gqi/phase_space.hpp"

namespace gqi {

/// Affine phase-space map x -> S x + d.
struct SymplecticTransform {
  Mat s;
  Vec d;

  SymplecticTransform() = default;
  explicit SymplecticTransform(Mat s_) : s(std::move(s_)), d(Vec::Zero(s.rows())) {}
  SymplecticTransform(Mat s_, Vec d_) : s(std::move(s_)), d(std::move(d_)) {
    if (s.rows() != s.cols() || s.rows() % 2 != 0) throw shape_error("transform must be square, even");
    if (d.size() != s.rows()) throw shape_error("displacement length must match transform");
  }

  int modes() const { return static_cast<int>(s.rows() / 2); }

  /// this after other: x -> S1 (S2 x + d2) + d1.
  SymplecticTransform after(const SymplecticTransform& other) const {
    if (other.s.rows() != s.rows()) throw shape_error("transform dimensions differ");
    return SymplecticTransform(s * other.s, s * other.d + d);
  }

  SymplecticTransform inverse() const {
    Mat si = s.inverse();
    return SymplecticTransform(si, -si * d);
  }
};

inline SymplecticTransform identity_transform(int n) {
  return SymplecticTransform(Mat::Identity(2 * n, 2 * n));
}

inline SymplecticTransform displacement(const std::vector<std::complex<double>>& alpha) {
  const int n = static_cast<int>(alpha.size());
  return SymplecticTransform(Mat::Identity(2 * n, 2 * n), amplitude_to_mean(alpha));
}

inline SymplecticTransform displacement(std::complex<double> alpha) {
  return displacement(std::vector<std::complex<double>>{alpha});
}

inline SymplecticTransform rotation(double theta) {
  require_finite(theta, "theta");
  return SymplecticTransform(rotation_matrix(theta));
}

inline SymplecticTransform squeeze1(double r) {
  require_finite(r, "r");
  return SymplecticTransform(squeeze_matrix(r));
}

/// p -> p + eta q.
inline SymplecticTransform phase_gate(double eta) {
  require_finite(eta, "eta");
  Mat p(2, 2);
  p << 1, 0, eta, 1;
  return SymplecticTransform(p);
}

/// Fourier gate, a pi/2 rotation: (q, p) -> (-p, q).
inline SymplecticTransform fourier() {
  Mat f(2, 2);
  f << 0, -1, 1, 0;
  return SymplecticTransform(f);
}

enum class BeamSplitterConvention { transmissive_diagonal, paper_eq50 };

/// Beam splitter with transmissivity tau on the diagonal (tau = 1 is the identity).
inline SymplecticTransform beam_splitter(
    double tau, BeamSplitterConvention conv = BeamSplitterConvention::transmissive_diagonal) {
  require_finite(tau, "tau");
  if (tau < 0 || tau > 1) throw domain_error("beam splitter transmissivity must lie in [0, 1]");
  double a = std::sqrt(tau);
  double b = std::sqrt(1 - tau);
  if (conv == BeamSplitterConvention::paper_eq50) std::swap(a, b);
  Mat i2 = Mat::Identity(2, 2);
  Mat m(4, 4);
  m << a * i2, b * i2, -b * i2, a * i2;
  return SymplecticTransform(m);
}

inline SymplecticTransform squeeze2(double r) {
  require_finite(r, "r");
  Mat i2 = Mat::Identity(2, 2);
  Mat z = pauli_z();
  Mat m(4, 4);
  m << std::cosh(r) * i2, std::sinh(r) * z, std::sinh(r) * z, std::cosh(r) * i2;
  return SymplecticTransform(m);
}

/// Controlled-phase with weight g: p1 -> p1 + g q2, p2 -> p2 + g q1.
inline SymplecticTransform cz_gate(double g = 1.0) {
  require_finite(g, "g");
  Mat m = Mat::Identity(4, 4);
  m(1, 2) = g;
  m(3, 0) = g;
  return SymplecticTransform(m);
}

/// Places a k-mode transform on the target modes of an N-mode system.
inline SymplecticTransform embed(const SymplecticTransform& t, const std::vector<int>& targets,
                                 int total) {
  if (static_cast<int>(targets.size()) != t.modes()) {
    throw shape_error("target count must equal the transform's mode count");
  }
  check_modes(targets, total);
  auto idx = coordinate_indices(targets);
  Mat s = Mat::Identity(2 * total, 2 * total);
  Vec d = Vec::Zero(2 * total);
  for (size_t i = 0; i < idx.size(); ++i) {
    d(idx[i]) = t.d(i);
    for (size_t j = 0; j < idx.size(); ++j) s(idx[i], idx[j]) = t.s(i, j);
  }
  return SymplecticTransform(s, d);
}

inline GaussianState apply(const GaussianState& st, const SymplecticTransform& t) {
  if (t.s.rows() != st.cov.rows()) throw shape_error("transform and state dimensions differ");
  return GaussianState(t.s * st.mean + t.d, t.s * st.cov * t.s.transpose());
}

inline GaussianState apply(const GaussianState& st, const SymplecticTransform& t,
                           const std::vector<int>& targets) {
  return apply(st, embed(t, targets, st.modes()));
}

}  // namespace gqi
