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
#include <random>
#include <variant>
#include <vector>

#include "gqi/unitaries.hpp"

namespace gqi {

struct MeasurementRecord {
  Vec outcome;
  GaussianState conditioned;
};

/// Homodyne of the quadrature q cos(theta) + p sin(theta) on one mode.
struct Homodyne {
  int mode;
  double theta = 0;
};

struct Heterodyne {
  int mode;
};

inline constexpr double kQuadQ = 0.0;
inline constexpr double kQuadP = M_PI / 2;

/// Normal distribution over outcomes (mean, covariance).
struct OutcomeDistribution {
  Vec mean;
  Mat cov;
};

namespace detail {

/// Rotates the measured modes so each homodyne angle becomes a q measurement.
inline GaussianState align_homodynes(const GaussianState& st, const std::vector<Homodyne>& plan) {
  GaussianState out = st;
  for (const auto& h : plan) {
    if (h.theta != 0) out = apply(out, rotation(h.theta), {h.mode});
  }
  return out;
}

inline std::vector<int> homodyne_modes(const std::vector<Homodyne>& plan) {
  std::vector<int> m;
  for (const auto& h : plan) m.push_back(h.mode);
  return m;
}

}  // namespace detail

/// Joint homodyne on several modes; measured modes are removed.
inline MeasurementRecord homodyne_condition(const GaussianState& st,
                                            const std::vector<Homodyne>& plan,
                                            const Vec& outcomes) {
  const int n = st.modes();
  auto measured = detail::homodyne_modes(plan);
  check_modes(measured, n);
  if (static_cast<int>(plan.size()) >= n) throw domain_error("no unmeasured modes would remain");
  if (outcomes.size() != static_cast<Eigen::Index>(plan.size())) {
    throw shape_error("one outcome per homodyne is required");
  }
  GaussianState r = detail::align_homodynes(st, plan);
  auto rest = complement_modes(measured, n);
  auto ia = coordinate_indices(rest);
  std::vector<int> iq;
  for (int m : measured) iq.push_back(2 * m);
  Mat a = submatrix(r.cov, ia, ia);
  Mat c = submatrix(r.cov, ia, iq);
  Mat bqq = submatrix(r.cov, iq, iq);
  Eigen::LLT<Mat> llt(bqq);
  if (llt.info() != Eigen::Success) throw numerical_error("measured quadrature block is singular");
  Mat gain = llt.solve(c.transpose()).transpose();
  Mat v = a - gain * c.transpose();
  v = 0.5 * (v + v.transpose());
  Vec mean = subvector(r.mean, ia) + gain * (outcomes - subvector(r.mean, iq));
  return {outcomes, GaussianState(mean, v)};
}

/// Single-mode homodyne: V_A - C (Pi B Pi)^+ C^T with (Pi B Pi)^+ = Pi / B_11.
inline MeasurementRecord homodyne_condition(const GaussianState& st, int mode, double theta,
                                            double outcome) {
  const int n = st.modes();
  check_modes({mode}, n);
  if (n < 2) throw domain_error("homodyne conditioning needs at least two modes");
  GaussianState r = theta != 0 ? apply(st, rotation(theta), {mode}) : st;
  auto rest = complement_modes({mode}, n);
  auto ia = coordinate_indices(rest);
  std::vector<int> ib{2 * mode, 2 * mode + 1};
  Mat a = submatrix(r.cov, ia, ia);
  Mat c = submatrix(r.cov, ia, ib);
  Mat b = submatrix(r.cov, ib, ib);
  Mat pinv = Mat::Zero(2, 2);
  pinv(0, 0) = 1 / b(0, 0);
  Mat v = a - c * pinv * c.transpose();
  Vec mb = subvector(r.mean, ib);
  Vec target(2);
  target << outcome, 0;
  Vec mean = subvector(r.mean, ia) + c * pinv * (target - mb);
  Vec out(1);
  out << outcome;
  return {out, GaussianState(mean, 0.5 * (v + v.transpose()))};
}

/// Heterodyne: V_A - C (B + I)^{-1} C^T, outcome (q_m, p_m).
inline MeasurementRecord heterodyne_condition(const GaussianState& st, int mode, const Vec& outcome) {
  const int n = st.modes();
  check_modes({mode}, n);
  if (n < 2) throw domain_error("heterodyne conditioning needs at least two modes");
  if (outcome.size() != 2) throw shape_error("heterodyne outcome has two components");
  auto rest = complement_modes({mode}, n);
  auto ia = coordinate_indices(rest);
  std::vector<int> ib{2 * mode, 2 * mode + 1};
  Mat a = submatrix(st.cov, ia, ia);
  Mat c = submatrix(st.cov, ia, ib);
  Mat b = submatrix(st.cov, ib, ib);
  Mat k = c * (b + Mat::Identity(2, 2)).inverse();
  Mat v = a - k * c.transpose();
  Vec mean = subvector(st.mean, ia) + k * (outcome - subvector(st.mean, ib));
  return {outcome, GaussianState(mean, 0.5 * (v + v.transpose()))};
}

/// Heterodyne covariance update via Theta = det B + Tr B + 1.
inline Mat heterodyne_cov_theta_form(const GaussianState& st, int mode) {
  const int n = st.modes();
  check_modes({mode}, n);
  auto ia = coordinate_indices(complement_modes({mode}, n));
  std::vector<int> ib{2 * mode, 2 * mode + 1};
  Mat a = submatrix(st.cov, ia, ia);
  Mat c = submatrix(st.cov, ia, ib);
  Mat b = submatrix(st.cov, ib, ib);
  const double theta = b.determinant() + b.trace() + 1;
  Mat w = omega1();
  return a - c * (w * b * w.transpose() + Mat::Identity(2, 2)) * c.transpose() / theta;
}

using MeasurementKind = std::variant<Homodyne, Heterodyne>;

inline OutcomeDistribution outcome_distribution(const GaussianState& st, const MeasurementKind& kind) {
  if (auto h = std::get_if<Homodyne>(&kind)) {
    check_modes({h->mode}, st.modes());
    GaussianState r = h->theta != 0 ? apply(st, rotation(h->theta), {h->mode}) : st;
    Vec m(1);
    m << r.mean(2 * h->mode);
    Mat v(1, 1);
    v << r.cov(2 * h->mode, 2 * h->mode);
    return {m, v};
  }
  const auto& het = std::get<Heterodyne>(kind);
  check_modes({het.mode}, st.modes());
  std::vector<int> ib{2 * het.mode, 2 * het.mode + 1};
  return {subvector(st.mean, ib), submatrix(st.cov, ib, ib) + Mat::Identity(2, 2)};
}

/// Draws one outcome and conditions on it; deterministic for a given seed.
inline MeasurementRecord sample(const GaussianState& st, const MeasurementKind& kind, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto dist = outcome_distribution(st, kind);
  Eigen::LLT<Mat> llt(dist.cov);
  Vec z(dist.mean.size());
  for (int i = 0; i < z.size(); ++i) z(i) = normal(rng);
  Vec x = dist.mean + llt.matrixL() * z;
  if (st.modes() < 2) {
    return {x, st};
  }
  if (auto h = std::get_if<Homodyne>(&kind)) return homodyne_condition(st, h->mode, h->theta, x(0));
  return heterodyne_condition(st, std::get<Heterodyne>(kind).mode, x);
}

/// Gaussian POVM: append ancilla, apply coupling to the joint system, then homodyne per plan.
inline MeasurementRecord gaussian_povm(const GaussianState& st, const GaussianState& ancilla,
                                       const SymplecticTransform& coupling,
                                       const std::vector<Homodyne>& plan, const Vec& outcomes) {
  GaussianState joint = tensor(st, ancilla);
  if (coupling.s.rows() != joint.cov.rows()) throw shape_error("coupling must act on system plus ancilla");
  joint = apply(joint, coupling);
  if (plan.empty()) return {Vec(0), joint};
  return homodyne_condition(joint, plan, outcomes);
}

/// Heterodyne realized as vacuum ancilla, balanced beam splitter, and q/p homodynes.
/// Outcomes are in beam-splitter units: (q_m, p_m) / sqrt(2).
inline MeasurementRecord heterodyne_via_beam_splitter(const GaussianState& st, int mode,
                                                      const Vec& outcome) {
  const int n = st.modes();
  check_modes({mode}, n);
  SymplecticTransform bs = embed(beam_splitter(0.5), {mode, n}, n + 1);
  std::vector<Homodyne> plan{{mode, kQuadQ}, {n, kQuadP}};
  Vec o(2);
  o << outcome(0) / std::sqrt(2.0), -outcome(1) / std::sqrt(2.0);
  auto rec = gaussian_povm(st, vacuum(1), bs, plan, o);
  rec.outcome = outcome;
  return rec;
}

}  // namespace gqi
