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

#include <algorithm>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "gqi/config.hpp"

namespace gqi {

/// Single-mode symplectic block [[0, 1], [-1, 0]].
inline Mat omega1() {
  Mat w(2, 2);
  w << 0, 1, -1, 0;
  return w;
}

/// Symplectic form for n modes in (q1, p1, ..., qn, pn) ordering.
inline Mat omega(int n) {
  Mat o = Mat::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) o.block(2 * k, 2 * k, 2, 2) = omega1();
  return o;
}

inline Mat pauli_z() {
  Mat z(2, 2);
  z << 1, 0, 0, -1;
  return z;
}

/// Block-diagonal repetition of a 2x2 block over n modes.
inline Mat direct_sum(const Mat& block, int n) {
  Mat m = Mat::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) m.block(2 * k, 2 * k, 2, 2) = block;
  return m;
}

inline Mat direct_sum(const Mat& a, const Mat& b) {
  Mat m = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

/// Mean vector and covariance matrix of an N-mode Gaussian state (hbar = 2).
struct GaussianState {
  Vec mean;
  Mat cov;

  GaussianState() = default;
  GaussianState(Vec m, Mat v) : mean(std::move(m)), cov(std::move(v)) {
    if (cov.rows() != cov.cols() || cov.rows() % 2 != 0 || cov.rows() == 0) {
      throw shape_error("covariance must be a non-empty square matrix of even dimension");
    }
    if (mean.size() != cov.rows()) throw shape_error("mean length must match covariance");
  }
  explicit GaussianState(const Mat& v) : GaussianState(Vec::Zero(v.rows()), v) {}

  int modes() const { return static_cast<int>(cov.rows() / 2); }
};

struct Validation {
  bool symmetric_ok;
  bool uncertainty_ok;
  double min_sympl_eig;
  bool ok() const { return symmetric_ok && uncertainty_ok; }
};

namespace detail {

inline void check_even_square(const Mat& v) {
  if (v.rows() != v.cols() || v.rows() % 2 != 0 || v.rows() == 0) {
    throw shape_error("covariance must be a non-empty square matrix of even dimension");
  }
}

inline Mat symmetrize(const Mat& v) { return 0.5 * (v + v.transpose()); }

/// Square root and inverse square root of a symmetric positive-definite matrix.
inline std::pair<Mat, Mat> spd_sqrt(const Mat& v) {
  Eigen::SelfAdjointEigenSolver<Mat> es(symmetrize(v));
  if (es.info() != Eigen::Success) throw numerical_error("eigendecomposition failed");
  const Vec& lam = es.eigenvalues();
  if (lam.minCoeff() <= 0) {
    throw domain_error("covariance is not positive definite (min eigenvalue " +
                       std::to_string(lam.minCoeff()) + ")");
  }
  const Mat& u = es.eigenvectors();
  Mat s = u * lam.cwiseSqrt().asDiagonal() * u.transpose();
  Mat si = u * lam.cwiseSqrt().cwiseInverse().asDiagonal() * u.transpose();
  return {s, si};
}

}  // namespace detail

/// Symplectic eigenvalues, ascending: moduli of the spectrum of i*Omega*V.
inline Vec symplectic_eigenvalues(const Mat& cov) {
  detail::check_even_square(cov);
  const int n = static_cast<int>(cov.rows() / 2);
  auto [s, si] = detail::spd_sqrt(cov);
  CMat h = std::complex<double>(0, 1) * (s * omega(n) * s).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  Vec ev = es.eigenvalues();
  Vec nu = ev.tail(n);
  std::sort(nu.data(), nu.data() + n);
  return nu;
}

inline Validation validate(const GaussianState& st, double tol_abs = tol::validity) {
  const Mat& v = st.cov;
  detail::check_even_square(v);
  Validation d{};
  d.symmetric_ok = (v - v.transpose()).cwiseAbs().maxCoeff() <= tol_abs * std::max(1.0, v.cwiseAbs().maxCoeff());
  Eigen::SelfAdjointEigenSolver<Mat> es(detail::symmetrize(v));
  if (es.eigenvalues().minCoeff() <= 0) {
    d.uncertainty_ok = false;
    d.min_sympl_eig = 0;
    return d;
  }
  d.min_sympl_eig = symplectic_eigenvalues(v)(0);
  d.uncertainty_ok = d.min_sympl_eig >= 1 - tol_abs;
  return d;
}

inline void require_valid(const GaussianState& st) {
  auto d = validate(st);
  if (!d.symmetric_ok) throw domain_error("covariance is not symmetric");
  if (!d.uncertainty_ok) {
    throw domain_error("covariance violates the uncertainty principle (min symplectic eigenvalue " +
                       std::to_string(d.min_sympl_eig) + ")");
  }
}

// ---- state factories -------------------------------------------------------

inline Mat rotation_matrix(double theta) {
  Mat r(2, 2);
  r << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return r;
}

inline Mat squeeze_matrix(double r) {
  Mat s = Mat::Zero(2, 2);
  s(0, 0) = std::exp(-r);
  s(1, 1) = std::exp(r);
  return s;
}

inline GaussianState vacuum(int n = 1) {
  if (n < 1) throw domain_error("mode count must be positive");
  return GaussianState(Mat::Identity(2 * n, 2 * n));
}

inline GaussianState thermal(double nbar, int n = 1) {
  require_finite(nbar, "nbar");
  if (nbar < 0) throw domain_error("nbar must be non-negative");
  if (n < 1) throw domain_error("mode count must be positive");
  return GaussianState((2 * nbar + 1) * Mat::Identity(2 * n, 2 * n));
}

/// Quadrature mean of a coherent amplitude, alpha = (q + i p) / 2.
inline Vec amplitude_to_mean(const std::vector<std::complex<double>>& alpha) {
  Vec m(2 * alpha.size());
  for (size_t k = 0; k < alpha.size(); ++k) {
    require_finite(alpha[k].real(), "alpha");
    require_finite(alpha[k].imag(), "alpha");
    m(2 * k) = 2 * alpha[k].real();
    m(2 * k + 1) = 2 * alpha[k].imag();
  }
  return m;
}

inline GaussianState coherent(const std::vector<std::complex<double>>& alpha) {
  if (alpha.empty()) throw domain_error("coherent state needs at least one amplitude");
  const int n = static_cast<int>(alpha.size());
  return GaussianState(amplitude_to_mean(alpha), Mat::Identity(2 * n, 2 * n));
}

inline GaussianState coherent(std::complex<double> alpha) {
  return coherent(std::vector<std::complex<double>>{alpha});
}

/// Most general one-mode Gaussian state: (2 nbar + 1) R(theta) S(2r) R(theta)^T, displaced by alpha.
inline GaussianState general_one_mode(double nbar, double r, double theta,
                                      std::complex<double> alpha = 0) {
  require_finite(nbar, "nbar");
  require_finite(r, "r");
  require_finite(theta, "theta");
  if (nbar < 0) throw domain_error("nbar must be non-negative");
  Mat rot = rotation_matrix(theta);
  Mat v = (2 * nbar + 1) * rot * squeeze_matrix(2 * r) * rot.transpose();
  return GaussianState(amplitude_to_mean({alpha}), v);
}

inline GaussianState squeezed_vacuum(double r, double theta = 0) {
  return general_one_mode(0, r, theta);
}

/// Two-mode squeezed vacuum with nu = cosh 2r.
inline GaussianState epr(double r) {
  require_finite(r, "r");
  const double nu = std::cosh(2 * r);
  const double c = std::sinh(2 * r);
  Mat v(4, 4);
  v.topLeftCorner(2, 2) = nu * Mat::Identity(2, 2);
  v.bottomRightCorner(2, 2) = nu * Mat::Identity(2, 2);
  v.topRightCorner(2, 2) = c * pauli_z();
  v.bottomLeftCorner(2, 2) = c * pauli_z();
  return GaussianState(v);
}

/// EPR state parametrized directly by its local variance nu >= 1.
inline GaussianState epr_nu(double nu) {
  require_finite(nu, "nu");
  if (nu < 1) throw domain_error("EPR variance must be >= 1");
  return epr(0.5 * std::acosh(nu));
}

// ---- plumbing ----------------------------------------------------------------

inline GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  Vec m(a.mean.size() + b.mean.size());
  m << a.mean, b.mean;
  return GaussianState(m, direct_sum(a.cov, b.cov));
}

/// Indices of the 2N phase-space coordinates belonging to the listed modes.
inline std::vector<int> coordinate_indices(const std::vector<int>& modes) {
  std::vector<int> idx;
  idx.reserve(2 * modes.size());
  for (int m : modes) {
    idx.push_back(2 * m);
    idx.push_back(2 * m + 1);
  }
  return idx;
}

inline Mat submatrix(const Mat& v, const std::vector<int>& rows, const std::vector<int>& cols) {
  Mat out(rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) out(i, j) = v(rows[i], cols[j]);
  return out;
}

inline Vec subvector(const Vec& x, const std::vector<int>& idx) {
  Vec out(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) out(i) = x(idx[i]);
  return out;
}

inline void check_modes(const std::vector<int>& modes, int n) {
  std::vector<int> seen;
  for (int m : modes) {
    if (m < 0 || m >= n) throw shape_error("mode index " + std::to_string(m) + " out of range");
    if (std::find(seen.begin(), seen.end(), m) != seen.end()) {
      throw shape_error("mode index " + std::to_string(m) + " repeated");
    }
    seen.push_back(m);
  }
}

/// Reduced state on the listed modes, in the listed order.
inline GaussianState partial_trace(const GaussianState& st, const std::vector<int>& keep) {
  check_modes(keep, st.modes());
  if (keep.empty()) throw shape_error("partial trace must keep at least one mode");
  auto idx = coordinate_indices(keep);
  return GaussianState(subvector(st.mean, idx), submatrix(st.cov, idx, idx));
}

/// Reorders modes: output mode k is input mode order[k].
inline GaussianState permute(const GaussianState& st, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != st.modes()) {
    throw shape_error("permutation length must equal the mode count");
  }
  return partial_trace(st, order);
}

inline std::vector<int> complement_modes(const std::vector<int>& modes, int n) {
  std::vector<int> rest;
  for (int k = 0; k < n; ++k)
    if (std::find(modes.begin(), modes.end(), k) == modes.end()) rest.push_back(k);
  return rest;
}

// ---- entropy -----------------------------------------------------------------

/// Entropy contribution of one symplectic eigenvalue x >= 1.
inline double g_function(double x, LogBase base = LogBase::two) {
  if (!(x >= 1 - tol::spectrum)) {
    throw domain_error("g(x) requires x >= 1, got " + std::to_string(x));
  }
  if (x <= 1) return 0;
  const double a = (x + 1) / 2;
  const double b = (x - 1) / 2;
  return a * log_in(a, base) - b * log_in(b, base);
}

inline double entropy_of_spectrum(const Vec& nu, LogBase base = LogBase::two) {
  double s = 0;
  for (int k = 0; k < nu.size(); ++k) s += g_function(nu(k), base);
  return s;
}

inline double von_neumann_entropy(const Mat& cov, LogBase base = LogBase::two) {
  return entropy_of_spectrum(symplectic_eigenvalues(cov), base);
}

inline double von_neumann_entropy(const GaussianState& st, LogBase base = LogBase::two) {
  return von_neumann_entropy(st.cov, base);
}

// ---- Williamson and Euler ----------------------------------------------------------

inline bool is_symplectic(const Mat& s, double tol_rel = tol::symplectic) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0) return false;
  const int n = static_cast<int>(s.rows() / 2);
  Mat o = omega(n);
  double scale = std::max(1.0, s.squaredNorm() / s.rows());
  return (s * o * s.transpose() - o).cwiseAbs().maxCoeff() <= tol_rel * scale;
}

struct WilliamsonDecomposition {
  Mat s;
  Vec spectrum;
  double residual;

  Mat diagonal() const {
    Mat d = Mat::Zero(2 * spectrum.size(), 2 * spectrum.size());
    for (int k = 0; k < spectrum.size(); ++k) d(2 * k, 2 * k) = d(2 * k + 1, 2 * k + 1) = spectrum(k);
    return d;
  }
  Mat reconstruct() const { return s * diagonal() * s.transpose(); }
};

namespace detail {

inline double relative_residual(const Mat& approx, const Mat& exact) {
  return (approx - exact).norm() / std::max(exact.norm(), 1e-300);
}

/// Orthogonal O with O^T (V^{1/2} Omega V^{1/2}) O = diag over modes of nu_k * omega.
inline Mat williamson_frame(const Mat& sqrt_v, int n, Vec& nu) {
  CMat h = std::complex<double>(0, 1) *
           (sqrt_v * omega(n) * sqrt_v).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  if (es.info() != Eigen::Success) throw numerical_error("Hermitian eigendecomposition failed");
  nu = es.eigenvalues().tail(n);
  Mat o(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd u = es.eigenvectors().col(n + k);
    // u = x + i y with B x = nu y, B y = -nu x; (y, x) gives a +nu*omega block.
    o.col(2 * k) = std::sqrt(2.0) * u.imag();
    o.col(2 * k + 1) = std::sqrt(2.0) * u.real();
  }
  return o;
}

/// Nearest orthogonal matrix via the symmetric orthogonalization O (O^T O)^{-1/2}.
inline Mat reorthogonalize(const Mat& o) {
  Eigen::JacobiSVD<Mat> svd(o, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

}  // namespace detail

/// Symplectic S and spectrum nu with V = S diag(nu_k I) S^T.
inline WilliamsonDecomposition williamson(const Mat& cov) {
  detail::check_even_square(cov);
  const int n = static_cast<int>(cov.rows() / 2);
  Mat v = detail::symmetrize(cov);
  Eigen::SelfAdjointEigenSolver<Mat> evs(v);
  const double lmin = evs.eigenvalues().minCoeff();
  const double lmax = evs.eigenvalues().maxCoeff();
  if (lmin <= 0) throw domain_error("covariance is not positive definite");
  const double cond = lmax / lmin;
  if (cond > 1e13) {
    throw numerical_error("covariance too ill-conditioned for Williamson decomposition (cond " +
                          std::to_string(cond) + ")");
  }
  auto [sq, sqi] = detail::spd_sqrt(v);
  Vec nu;
  Mat o = detail::williamson_frame(sq, n, nu);
  if (nu.minCoeff() < 1 - tol::validity) {
    throw domain_error("covariance violates the uncertainty principle");
  }
  auto assemble = [&](const Mat& frame) {
    Mat dinv = Mat::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) dinv(2 * k, 2 * k) = dinv(2 * k + 1, 2 * k + 1) = 1 / std::sqrt(nu(k));
    return Mat(sq * frame * dinv);
  };
  WilliamsonDecomposition w{assemble(o), nu, 0};
  w.residual = detail::relative_residual(w.reconstruct(), v);
  // One polishing step: restore exact orthogonality of the frame.
  Mat o2 = detail::reorthogonalize(o);
  WilliamsonDecomposition w2{assemble(o2), nu, 0};
  w2.residual = detail::relative_residual(w2.reconstruct(), v);
  if (w2.residual < w.residual) w = std::move(w2);
  if (w.residual > tol::decomposition) {
    throw numerical_error("Williamson reconstruction residual " + std::to_string(w.residual) +
                          " exceeds tolerance (cond " + std::to_string(cond) + ")");
  }
  return w;
}

struct EulerDecomposition {
  Mat k;
  Vec squeezings;
  Mat l;
  double residual;

  Mat middle() const {
    Mat m = Mat::Zero(2 * squeezings.size(), 2 * squeezings.size());
    for (int j = 0; j < squeezings.size(); ++j) m.block(2 * j, 2 * j, 2, 2) = squeeze_matrix(squeezings(j));
    return m;
  }
  Mat reconstruct() const { return k * middle() * l; }
};

/// Bloch-Messiah form S = K (sum_k S(r_k)) L with K, L orthogonal symplectic.
inline EulerDecomposition euler(const Mat& s) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0 || s.rows() == 0) {
    throw shape_error("symplectic matrix must be square with even dimension");
  }
  if (!is_symplectic(s)) throw domain_error("matrix is not symplectic");
  const int n = static_cast<int>(s.rows() / 2);
  const Mat o = omega(n);
  Eigen::JacobiSVD<Mat> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat& w = svd.matrixU();
  const Vec& sigma = svd.singularValues();
  Mat p = w * sigma.asDiagonal() * w.transpose();
  Mat u = w * svd.matrixV().transpose();

  // Singular values are sorted descending: the first n carry the anti-squeezed
  // directions. Build K from them by symplectic Gram-Schmidt.
  Mat k = Mat::Zero(2 * n, 2 * n);
  int filled = 0;
  for (int j = 0; j < 2 * n && filled < n; ++j) {
    Vec v = w.col(j);
    for (int i = 0; i < filled; ++i) {
      v -= k.col(2 * i).dot(v) * k.col(2 * i);
      v -= k.col(2 * i + 1).dot(v) * k.col(2 * i + 1);
    }
    double nv = v.norm();
    if (nv < 1e-6) continue;
    v /= nv;
    k.col(2 * filled + 1) = v;
    k.col(2 * filled) = o * v;
    ++filled;
  }
  if (filled != n) throw numerical_error("could not build a symplectic frame for Euler decomposition");

  EulerDecomposition e;
  e.k = k;
  e.squeezings.resize(n);
  Mat kp = k.transpose() * p * k;
  for (int j = 0; j < n; ++j) {
    double anti = kp(2 * j + 1, 2 * j + 1);
    double sq = kp(2 * j, 2 * j);
    e.squeezings(j) = 0.5 * (std::log(anti) - std::log(sq));
  }
  e.l = k.transpose() * u;
  e.residual = detail::relative_residual(e.reconstruct(), s);
  if (e.residual > tol::decomposition) {
    throw numerical_error("Euler reconstruction residual " + std::to_string(e.residual) +
                          " exceeds tolerance");
  }
  return e;
}

/// Pure 2N-mode state whose first N modes reproduce the input; references appended.
inline GaussianState purify(const GaussianState& st) {
  require_valid(st);
  const int n = st.modes();
  auto w = williamson(st.cov);
  Mat c = Mat::Zero(2 * n, 2 * n);
  Mat d = Mat::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    double nu = w.spectrum(k) < 1 + 1e-12 ? 1.0 : w.spectrum(k);
    c.block(2 * k, 2 * k, 2, 2) = std::sqrt(nu * nu - 1) * pauli_z();
    d.block(2 * k, 2 * k, 2, 2) = nu * Mat::Identity(2, 2);
  }
  Mat v(4 * n, 4 * n);
  v.topLeftCorner(2 * n, 2 * n) = st.cov;
  v.topRightCorner(2 * n, 2 * n) = w.s * c;
  v.bottomLeftCorner(2 * n, 2 * n) = (w.s * c).transpose();
  v.bottomRightCorner(2 * n, 2 * n) = d;
  Vec m = Vec::Zero(4 * n);
  m.head(2 * n) = st.mean;
  return GaussianState(m, v);
}

// ---- phase-space functions ----------------------------------------------------------

inline double wigner_at(const GaussianState& st, const Vec& x) {
  if (x.size() != st.mean.size()) throw shape_error("phase-space point has wrong dimension");
  Eigen::LLT<Mat> llt(st.cov);
  if (llt.info() != Eigen::Success) throw domain_error("covariance is not positive definite");
  Vec dx = x - st.mean;
  double quad = dx.dot(llt.solve(dx));
  double logdet = 2 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  const int n = st.modes();
  return std::exp(-0.5 * quad - n * std::log(2 * M_PI) - 0.5 * logdet);
}

inline std::complex<double> char_fn_at(const GaussianState& st, const Vec& xi) {
  if (xi.size() != st.mean.size()) throw shape_error("phase-space point has wrong dimension");
  const Mat o = omega(st.modes());
  double quad = xi.dot(o * st.cov * o.transpose() * xi);
  double phase = (o * st.mean).dot(xi);
  return std::exp(std::complex<double>(-0.5 * quad, -phase));
}

}  // namespace gqi
