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

#include <vector>

#include "gqi/phase_space.hpp"

namespace gqi {

/// (I_A + T_B) V (I_A + T_B) with T_B = p-reflection on the modes of B.
inline Mat partial_transpose(const Mat& cov, const std::vector<int>& modes_b) {
  const int n = static_cast<int>(cov.rows() / 2);
  check_modes(modes_b, n);
  if (modes_b.empty() || static_cast<int>(modes_b.size()) == n) {
    throw domain_error("bipartition must leave both parts non-empty");
  }
  Vec t = Vec::Ones(2 * n);
  for (int m : modes_b) t(2 * m + 1) = -1;
  return t.asDiagonal() * cov * t.asDiagonal();
}

inline Vec pt_symplectic_eigenvalues(const GaussianState& st, const std::vector<int>& modes_b) {
  return symplectic_eigenvalues(partial_transpose(st.cov, modes_b));
}

struct PptResult {
  double nu_min;
  bool entangled;
  /// False when PPT is only necessary and the state passed it.
  bool conclusive;
};

/// PPT test; conclusive for 1 x M splits or when the caller declares the state bisymmetric.
inline PptResult ppt_test(const GaussianState& st, const std::vector<int>& modes_b,
                          bool bisymmetric = false, double tol_abs = tol::validity) {
  Vec nu = pt_symplectic_eigenvalues(st, modes_b);
  PptResult r{nu(0), nu(0) < 1 - tol_abs, true};
  const int nb = static_cast<int>(modes_b.size());
  const int na = st.modes() - nb;
  const bool sufficient = na == 1 || nb == 1 || bisymmetric;
  if (!r.entangled && !sufficient) r.conclusive = false;
  return r;
}

inline double log_negativity(const GaussianState& st, const std::vector<int>& modes_b,
                             LogBase base = LogBase::two) {
  Vec nu = pt_symplectic_eigenvalues(st, modes_b);
  double e = 0;
  for (int k = 0; k < nu.size(); ++k)
    if (nu(k) < 1) e += -log_in(nu(k), base);
  return e;
}

/// Entropy of either reduced state of a pure bipartite state.
inline double entropy_of_entanglement(const GaussianState& st, const std::vector<int>& modes_b,
                                      LogBase base = LogBase::two, double purity_tol = 1e-8) {
  Vec nu = symplectic_eigenvalues(st.cov);
  if (nu.maxCoeff() > 1 + purity_tol) throw domain_error("entropy of entanglement requires a pure state");
  auto modes_a = complement_modes(modes_b, st.modes());
  if (modes_a.empty() || modes_b.empty()) throw domain_error("bipartition must be non-trivial");
  double sa = von_neumann_entropy(partial_trace(st, modes_a), base);
  double sb = von_neumann_entropy(partial_trace(st, modes_b), base);
  if (std::abs(sa - sb) > 1e-9 * std::max(1.0, sa)) {
    throw numerical_error("reduced entropies of a pure state disagree");
  }
  return 0.5 * (sa + sb);
}

struct EprCorrelations {
  double var_q_minus;
  double var_p_plus;
};

/// Variances of (q_a - q_b)/sqrt2 and (p_a + p_b)/sqrt2.
inline EprCorrelations epr_correlations(const GaussianState& st) {
  if (st.modes() != 2) throw shape_error("EPR correlations need a two-mode state");
  const Mat& v = st.cov;
  double vq = 0.5 * (v(0, 0) + v(2, 2) - 2 * v(0, 2));
  double vp = 0.5 * (v(1, 1) + v(3, 3) + 2 * v(1, 3));
  return {vq, vp};
}

}  // namespace gqi
