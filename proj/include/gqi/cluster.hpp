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

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "gqi/measurements.hpp"
#include "gqi/unitaries.hpp"

namespace gqi::cluster {

struct Edge {
  int i;
  int j;
  double g = 1.0;
};

struct ClusterGraph {
  std::vector<double> r;
  std::vector<Edge> edges;

  int size() const { return static_cast<int>(r.size()); }
};

inline void check_graph(const ClusterGraph& gr) {
  for (double x : gr.r)
    if (!std::isfinite(x)) throw domain_error("vertex squeezing must be finite");
  for (const auto& e : gr.edges) {
    if (e.i < 0 || e.j < 0 || e.i >= gr.size() || e.j >= gr.size()) throw domain_error("edge endpoint out of range");
    if (e.i == e.j) throw domain_error("self-loops are not allowed");
    if (!std::isfinite(e.g)) throw domain_error("edge weight must be finite");
  }
}

/// Symmetric weighted adjacency matrix; repeated edges add.
inline Mat adjacency(const ClusterGraph& gr) {
  Mat a = Mat::Zero(gr.size(), gr.size());
  for (const auto& e : gr.edges) {
    a(e.i, e.j) += e.g;
    a(e.j, e.i) += e.g;
  }
  return a;
}

enum class Equivalence { exact, local_gaussian };

struct ClusterState {
  ClusterGraph graph;
  GaussianState state;
  /// Original vertex id of each remaining mode.
  std::vector<int> labels;
  /// Ideal-limit nullifiers as rows over the remaining quadratures (q1, p1, ...).
  Mat nullifiers;
  /// Whether graph metadata matches the state up to single-mode operations.
  Equivalence equivalence = Equivalence::exact;
};

/// Rows p_i - sum_j g_ij q_j for every vertex.
inline Mat nullifier_forms(const ClusterGraph& gr) {
  const int n = gr.size();
  Mat a = adjacency(gr);
  Mat h = Mat::Zero(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    h(i, 2 * i + 1) = 1;
    for (int j = 0; j < n; ++j) h(i, 2 * j) -= a(i, j);
  }
  return h;
}

inline ClusterState compile(const ClusterGraph& gr) {
  check_graph(gr);
  const int n = gr.size();
  if (n == 0) throw domain_error("graph has no vertices");
  GaussianState st = vacuum(n);
  for (int k = 0; k < n; ++k) st = apply(st, squeeze1(-gr.r[k]), {k});
  for (const auto& e : gr.edges) st = apply(st, cz_gate(e.g), {e.i, e.j});
  ClusterState cs;
  cs.graph = gr;
  cs.state = st;
  for (int k = 0; k < n; ++k) cs.labels.push_back(k);
  cs.nullifiers = nullifier_forms(gr);
  return cs;
}

/// Variance of each linear form (row) in the state.
inline Vec form_variances(const Mat& forms, const Mat& cov) {
  Vec v(forms.rows());
  for (Eigen::Index k = 0; k < forms.rows(); ++k) v(k) = forms.row(k) * cov * forms.row(k).transpose();
  return v;
}

/// Var(H_i) for the nullifiers of the current graph metadata.
inline Vec nullifier_variances(const ClusterState& cs) {
  return form_variances(nullifier_forms(cs.graph), cs.state.cov);
}

/// Largest variance among the tracked ideal-limit nullifiers.
inline double nullifier_gap(const ClusterState& cs) {
  if (cs.nullifiers.rows() == 0) return 0;
  return form_variances(cs.nullifiers, cs.state.cov).maxCoeff();
}

struct StabilizerResidual {
  /// Shift of nullifier means under the displacement pattern.
  double nullifier_shift;
  /// 1 - fidelity between the cluster and its displaced copy.
  double infidelity;
};

/// Applies X_i(s) prod_j Z_j(g_ij s) and reports how far the state moves.
inline StabilizerResidual stabilizer_check(const ClusterState& cs, int vertex, double s) {
  const int n = cs.graph.size();
  if (vertex < 0 || vertex >= n) throw domain_error("vertex out of range");
  Mat a = adjacency(cs.graph);
  Vec d = Vec::Zero(2 * n);
  d(2 * vertex) = s;
  for (int j = 0; j < n; ++j) d(2 * j + 1) += a(vertex, j) * s;
  StabilizerResidual res{};
  res.nullifier_shift = (nullifier_forms(cs.graph) * d).cwiseAbs().maxCoeff();
  const double quad = d.dot(cs.state.cov.ldlt().solve(d));
  res.infidelity = -std::expm1(-0.25 * quad);
  return res;
}

enum class Basis { q, p, rotated };

struct NodeMeasurement {
  Basis basis = Basis::q;
  /// Homodyne angle for Basis::rotated.
  double theta = 0;
  double outcome = 0;
};

namespace detail {

/// Keeps the part of the nullifier span that commutes with the measured quadrature.
inline Mat project_nullifiers(const Mat& forms, int mode, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Mat h = forms;
  const Eigen::Index cq = 2 * mode, cp = 2 * mode + 1;
  auto conj = [&](Eigen::Index row) { return -h(row, cq) * s + h(row, cp) * c; };
  double scale = h.rows() > 0 ? h.cwiseAbs().maxCoeff() : 1.0;
  Eigen::Index pivot = -1;
  double best = 0;
  for (Eigen::Index k = 0; k < h.rows(); ++k) {
    if (std::abs(conj(k)) > best) {
      best = std::abs(conj(k));
      pivot = k;
    }
  }
  std::vector<Eigen::Index> keep;
  if (pivot >= 0 && best > 1e-12 * scale) {
    const double cpiv = conj(pivot);
    for (Eigen::Index k = 0; k < h.rows(); ++k) {
      if (k == pivot) continue;
      const double ck = conj(k);
      if (ck != 0) h.row(k) -= (ck / cpiv) * h.row(pivot);
      keep.push_back(k);
    }
  } else {
    for (Eigen::Index k = 0; k < h.rows(); ++k) keep.push_back(k);
  }
  std::vector<int> cols;
  for (Eigen::Index k = 0; k < h.cols(); ++k)
    if (k != cq && k != cp) cols.push_back(static_cast<int>(k));
  Mat out(keep.size(), cols.size());
  for (size_t i = 0; i < keep.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) out(i, j) = h(keep[i], cols[j]);
  return out;
}

}  // namespace detail

/// Homodyne on one vertex. q removes the vertex and its edges; p on a degree-2 vertex
/// joins its neighbours.
inline ClusterState measure_node(const ClusterState& cs, int vertex, const NodeMeasurement& m) {
  const int n = cs.graph.size();
  if (vertex < 0 || vertex >= n) throw domain_error("vertex " + std::to_string(vertex) + " does not exist");
  if (n == 1) throw domain_error("cannot measure the last remaining vertex");
  const double theta = m.basis == Basis::q ? kQuadQ : m.basis == Basis::p ? kQuadP : m.theta;
  ClusterState out;
  out.state = homodyne_condition(cs.state, vertex, theta, m.outcome).conditioned;
  out.nullifiers = detail::project_nullifiers(cs.nullifiers, vertex, theta);
  out.equivalence = cs.equivalence;

  std::vector<int> neighbours;
  std::vector<double> weights;
  for (const auto& e : cs.graph.edges) {
    if (e.i == vertex) {
      neighbours.push_back(e.j);
      weights.push_back(e.g);
    } else if (e.j == vertex) {
      neighbours.push_back(e.i);
      weights.push_back(e.g);
    }
  }
  auto renum = [vertex](int k) { return k > vertex ? k - 1 : k; };
  for (int k = 0; k < n; ++k) {
    if (k == vertex) continue;
    out.graph.r.push_back(cs.graph.r[k]);
    out.labels.push_back(cs.labels[k]);
  }
  for (const auto& e : cs.graph.edges) {
    if (e.i == vertex || e.j == vertex) continue;
    out.graph.edges.push_back({renum(e.i), renum(e.j), e.g});
  }
  if (m.basis == Basis::p) {
    if (neighbours.size() == 2) {
      auto degree = [&](int v) {
        int d = 0;
        for (const auto& e : cs.graph.edges) d += (e.i == v || e.j == v);
        return d;
      };
      out.graph.edges.push_back({renum(neighbours[0]), renum(neighbours[1]), weights[0] * weights[1]});
      if (degree(neighbours[0]) > 1 || degree(neighbours[1]) > 1) out.equivalence = Equivalence::local_gaussian;
    } else if (!neighbours.empty()) {
      out.equivalence = Equivalence::local_gaussian;
    }
  } else if (m.basis == Basis::rotated && !neighbours.empty()) {
    out.equivalence = Equivalence::local_gaussian;
  }
  return out;
}

// ---- graph builders --------------------------------------------------------------

inline ClusterGraph line_graph(int n, double r, double g = 1.0) {
  ClusterGraph gr;
  gr.r.assign(n, r);
  for (int k = 0; k + 1 < n; ++k) gr.edges.push_back({k, k + 1, g});
  return gr;
}

inline ClusterGraph star_graph(int leaves, double r, double g = 1.0) {
  ClusterGraph gr;
  gr.r.assign(leaves + 1, r);
  for (int k = 1; k <= leaves; ++k) gr.edges.push_back({0, k, g});
  return gr;
}

/// Row-major rows x cols square lattice.
inline ClusterGraph lattice_graph(int rows, int cols, double r, double g = 1.0) {
  ClusterGraph gr;
  gr.r.assign(rows * cols, r);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const int v = i * cols + j;
      if (j + 1 < cols) gr.edges.push_back({v, v + 1, g});
      if (i + 1 < rows) gr.edges.push_back({v, v + cols, g});
    }
  }
  return gr;
}

/// Measurement plan shaping a 5x4 lattice: rows 2 and 4 measured, q first then p.
inline std::vector<std::pair<int, Basis>> lattice_shaping_plan() {
  const int cols = 4;
  const Basis row2[4] = {Basis::q, Basis::q, Basis::p, Basis::q};
  const Basis row4[4] = {Basis::q, Basis::p, Basis::q, Basis::q};
  std::vector<std::pair<int, Basis>> plan;
  for (int pass = 0; pass < 2; ++pass) {
    const Basis want = pass == 0 ? Basis::q : Basis::p;
    for (int j = 0; j < cols; ++j) {
      if (row2[j] == want) plan.push_back({1 * cols + j, want});
      if (row4[j] == want) plan.push_back({3 * cols + j, want});
    }
  }
  return plan;
}

/// Applies a plan given in original vertex ids.
inline ClusterState measure_plan(ClusterState cs, const std::vector<std::pair<int, Basis>>& plan) {
  for (const auto& [id, basis] : plan) {
    auto it = std::find(cs.labels.begin(), cs.labels.end(), id);
    if (it == cs.labels.end()) throw domain_error("vertex " + std::to_string(id) + " already measured");
    cs = measure_node(cs, static_cast<int>(it - cs.labels.begin()), {basis, 0, 0});
  }
  return cs;
}

// ---- wire teleportation ----------------------------------------------------------------

struct WireMeasurement {
  /// Homodyne angle on the input mode; pi/2 is p.
  double theta = kQuadP;
  double outcome = 0;
};

/// Homodyne angle whose quadrature is proportional to p + eta q.
inline double shear_angle(double eta) { return std::atan2(1.0, eta); }

/// One step of the CZ teleportation wire: input on mode 0, p-squeezed ancilla
/// with Var(p) = v_s on mode 1, CZ, homodyne on mode 0.
inline GaussianState wire_teleport_step(const GaussianState& input, double v_s, const WireMeasurement& m = {}) {
  if (input.modes() != 1) throw shape_error("wire teleportation takes a one-mode input");
  if (!(v_s > 0 && v_s <= 1)) throw domain_error("ancilla variance V_S must lie in (0, 1]");
  GaussianState anc(Vec::Zero(2), Eigen::Vector2d(1 / v_s, v_s).asDiagonal().toDenseMatrix());
  GaussianState st = apply(tensor(input, anc), cz_gate(1.0));
  return homodyne_condition(st, 0, m.theta, m.outcome).conditioned;
}

/// Closed-form Var(q) of the output for a p measurement.
inline double wire_output_var_q(const Mat& v_in, double v_s) {
  const double b = v_in(1, 1);
  return b / (1 + b * v_s);
}

/// Infinite-squeezing limit X(m / sin theta) F P(cot theta) acting on the input.
inline GaussianState wire_ideal_output(const GaussianState& input, const WireMeasurement& m) {
  const double c = std::cos(m.theta), s = std::sin(m.theta);
  if (std::abs(s) < 1e-12) throw domain_error("a q measurement on the wire input does not teleport");
  const double eta = c / s;
  GaussianState out = apply(input, phase_gate(eta));
  out = apply(out, fourier());
  out.mean(0) += m.outcome / s;
  return out;
}

/// Distance of the output CM from the ideal one.
inline double wire_distortion(const GaussianState& input, double v_s, const WireMeasurement& m = {}) {
  return (wire_teleport_step(input, v_s, m).cov - wire_ideal_output(input, m).cov).norm();
}

/// Finite-squeezing damping envelope on the teleported wavefunction.
inline double distortion_envelope(double q, double v_s) { return std::exp(-q * q * v_s / 2); }

}  // namespace gqi::cluster
