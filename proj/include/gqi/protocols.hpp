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

#include <string>

#include "gqi/discrimination.hpp"
#include "gqi/entanglement.hpp"
#include "gqi/measurements.hpp"

namespace gqi {

/// Coherent-input teleportation fidelity 2 / sqrt(det Gamma) through a two-mode resource.
inline double teleport_fidelity(const GaussianState& resource, const Mat& v_in) {
  if (resource.modes() != 2) throw shape_error("teleportation resource must be a two-mode state");
  if (v_in.rows() != 2 || v_in.cols() != 2) throw shape_error("input covariance must be 2x2");
  const Mat& v = resource.cov;
  Mat a = v.topLeftCorner(2, 2);
  Mat b = v.bottomRightCorner(2, 2);
  Mat c = v.topRightCorner(2, 2);
  Mat z = pauli_z();
  Mat gamma = 2 * v_in + z * a * z + b - z * c - c.transpose() * z.transpose();
  return 2 / std::sqrt(gamma.determinant());
}

/// Closed form for an EPR(r) resource and coherent input.
inline double teleport_fidelity_epr(double r) { return 1 / (1 + std::exp(-2 * std::abs(r))); }

/// Unconditional output of Bell-measure-and-correct teleportation with unit gain.
/// Modes: input, resource A, resource B; Bell measurement on (input, A).
inline GaussianState teleport_output(const GaussianState& resource, const GaussianState& input) {
  if (resource.modes() != 2 || input.modes() != 1) throw shape_error("teleportation needs 1 + 2 modes");
  GaussianState joint = tensor(input, resource);
  joint = apply(joint, beam_splitter(0.5), {0, 1});
  // Mode 0 now carries (in + A)/sqrt2, mode 1 carries (A - in)/sqrt2.
  // Measure p on mode 0 and q on mode 1.
  std::vector<int> mi{1, 2};
  std::vector<int> ib{4, 5};
  Mat sigma_m = submatrix(joint.cov, mi, mi);
  Mat c = submatrix(joint.cov, ib, mi);
  Mat k = c * sigma_m.inverse();
  Mat v_cond = submatrix(joint.cov, ib, ib) - k * c.transpose();
  // Correction: q_B -= sqrt2 q_1, p_B += sqrt2 p_0.
  Mat d = Mat::Zero(2, 2);
  d(0, 1) = -std::sqrt(2.0);
  d(1, 0) = std::sqrt(2.0);
  Mat g = k + d;
  Vec mu_m = subvector(joint.mean, mi);
  Vec mean = subvector(joint.mean, ib) + d * mu_m;
  Mat cov = v_cond + g * sigma_m * g.transpose();
  return GaussianState(mean, 0.5 * (cov + cov.transpose()));
}

enum class FidelityBand { classical, quantum, no_cloning };

inline FidelityBand classify_fidelity(double f) {
  if (!(f >= 0 && f <= 1)) throw domain_error("fidelity must lie in [0, 1]");
  if (f <= 0.5) return FidelityBand::classical;
  if (f <= 2.0 / 3.0) return FidelityBand::quantum;
  return FidelityBand::no_cloning;
}

inline std::string to_string(FidelityBand b) {
  switch (b) {
    case FidelityBand::classical: return "classical";
    case FidelityBand::quantum: return "quantum";
    case FidelityBand::no_cloning: return "no_cloning";
  }
  return "?";
}

struct SwapResult {
  GaussianState output;
  double log_negativity_nats;
};

/// Entanglement swapping of EPR(r_alice) on (a, a') and EPR(r_bob) on (b', b).
inline SwapResult entanglement_swap(double r_alice, double r_bob, double q_outcome = 0,
                                    double p_outcome = 0) {
  if (r_alice < 0 || r_bob < 0) throw domain_error("squeezing must be non-negative");
  GaussianState st = tensor(epr(r_alice), epr(r_bob));  // modes a, a', b', b
  st = apply(st, beam_splitter(0.5), {1, 2});
  Vec o(2);
  o << p_outcome, q_outcome;
  auto rec = homodyne_condition(st, {{1, kQuadP}, {2, kQuadQ}}, o);
  // Feed-forward displacement on b: cancels the outcome-dependent mean shift.
  GaussianState out(Vec::Zero(4), rec.conditioned.cov);
  return {out, log_negativity(out, {1}, LogBase::e)};
}

struct CloneResult {
  GaussianState clone1;
  GaussianState clone2;
  GaussianState anticlone;
  double fidelity_clone;
  double fidelity_anticlone;
};

/// Symplectic map of the 1 -> 2 cloner on modes (ancilla, input, idler).
inline SymplecticTransform cloning_map() {
  const double r = std::acosh(std::sqrt(2.0));
  SymplecticTransform amp = embed(squeeze2(r), {1, 2}, 3);
  SymplecticTransform bs = embed(beam_splitter(0.5), {0, 1}, 3);
  return bs.after(amp);
}

inline CloneResult clone_1to2(const GaussianState& input) {
  if (input.modes() != 1) throw shape_error("cloner input must be a single mode");
  require_valid(input);
  GaussianState joint = tensor(tensor(vacuum(1), input), vacuum(1));
  GaussianState out = apply(joint, cloning_map());
  CloneResult r{partial_trace(out, {0}), partial_trace(out, {1}), partial_trace(out, {2}), 0, 0};
  GaussianState target = input;
  GaussianState conj_target(pauli_z() * input.mean, pauli_z() * input.cov * pauli_z());
  r.fidelity_clone = fidelity_1mode(target, r.clone1);
  r.fidelity_anticlone = fidelity_1mode(conj_target, r.anticlone);
  return r;
}

/// Output moments of the cloner from the covariance formulas, without the circuit.
inline CloneResult clone_1to2_formula(const GaussianState& input) {
  if (input.modes() != 1) throw shape_error("cloner input must be a single mode");
  Mat z = pauli_z();
  Mat i2 = Mat::Identity(2, 2);
  GaussianState c(input.mean, input.cov + i2);
  GaussianState a(z * input.mean, z * input.cov * z + 2 * i2);
  GaussianState conj_target(z * input.mean, z * input.cov * z);
  return {c, c, a, fidelity_1mode(input, c), fidelity_1mode(conj_target, a)};
}

inline double mn_clone_fidelity(int n_in, int m_out) {
  if (n_in < 1 || m_out < n_in) throw domain_error("M/N cloner requires M >= N >= 1");
  double n = n_in;
  double m = m_out;
  return m * n / (m * n + m - n);
}

/// Continuous-variable dense coding rate.
inline double dense_coding_rate(double mbar, double v_sq, double eta, LogBase base = LogBase::two) {
  if (!(mbar >= 0)) throw domain_error("mean photon number must be non-negative");
  if (!(v_sq > 0 && v_sq <= 1)) throw domain_error("squeezed variance must lie in (0, 1]");
  if (!(eta >= 0 && eta <= 1)) throw domain_error("efficiency must lie in [0, 1]");
  double num = eta * (4 * mbar - v_sq - 1 / v_sq + 2);
  double den = 4 * (eta * v_sq + 1 - eta);
  return log_in(1 + num / den, base);
}

}  // namespace gqi
