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

#include <cmath>

#include "gqi/numerics.hpp"
#include "gqi/phase_space.hpp"

namespace gqi {

/// Two equiprobable hypotheses, each presented in M copies.
struct BinaryHypothesis {
  GaussianState rho0;
  GaussianState rho1;
  int copies = 1;
};

inline void check_hypothesis(const BinaryHypothesis& h) {
  if (h.rho0.modes() != h.rho1.modes()) throw shape_error("hypotheses must have equal mode counts");
  if (h.copies < 1) throw domain_error("copy count must be positive");
}

/// Minimum error for two pure states with |<psi0|psi1>|^2 = overlap_sq.
inline double helstrom_pure(double overlap_sq) {
  if (!(overlap_sq >= 0 && overlap_sq <= 1)) throw domain_error("overlap must lie in [0, 1]");
  return 0.5 * (1 - std::sqrt(1 - overlap_sq));
}

namespace detail {

inline double g_aux(double s, double nu) {
  if (nu <= 1 + 1e-12) return 1.0;
  return std::pow(2.0, s) / (std::pow(nu + 1, s) - std::pow(nu - 1, s));
}

inline double lambda_aux(double s, double nu) {
  if (nu <= 1 + 1e-12) return 1.0;
  double a = std::pow(nu + 1, s);
  double b = std::pow(nu - 1, s);
  return (a + b) / (a - b);
}

struct ChernoffData {
  WilliamsonDecomposition w0;
  WilliamsonDecomposition w1;
  Vec d;
  int n;
};

inline ChernoffData chernoff_prepare(const BinaryHypothesis& h) {
  check_hypothesis(h);
  require_valid(h.rho0);
  require_valid(h.rho1);
  return {williamson(h.rho0.cov), williamson(h.rho1.cov), h.rho0.mean - h.rho1.mean, h.rho0.modes()};
}

inline double log_cs(const ChernoffData& c, double s) {
  const int n = c.n;
  double log_det_pi = 0;
  Vec l0(2 * n), l1(2 * n);
  for (int k = 0; k < n; ++k) {
    double nu0 = c.w0.spectrum(k);
    double nu1 = c.w1.spectrum(k);
    log_det_pi += 2 * (std::log(g_aux(s, nu0)) + std::log(g_aux(1 - s, nu1)));
    l0(2 * k) = l0(2 * k + 1) = lambda_aux(s, nu0);
    l1(2 * k) = l1(2 * k + 1) = lambda_aux(1 - s, nu1);
  }
  Mat sigma = c.w0.s * l0.asDiagonal() * c.w0.s.transpose() + c.w1.s * l1.asDiagonal() * c.w1.s.transpose();
  Eigen::LLT<Mat> llt(0.5 * (sigma + sigma.transpose()));
  if (llt.info() != Eigen::Success) throw numerical_error("Sigma_s is singular");
  double log_det_sigma = 2 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  double quad = c.d.dot(llt.solve(c.d));
  return n * std::log(2.0) + 0.5 * (log_det_pi - log_det_sigma) - 0.5 * quad;
}

}  // namespace detail

/// C_s = Tr(rho0^s rho1^{1-s}) for Gaussian states (single copy).
inline double chernoff_cs(const BinaryHypothesis& h, double s) {
  if (!(s > 0 && s < 1)) throw domain_error("s must lie in (0, 1)");
  return std::exp(detail::log_cs(detail::chernoff_prepare(h), s));
}

struct ChernoffResult {
  double p_qc;
  double s_star;
  double c_min;
};

inline constexpr double kChernoffEndpoint = 1e-6;

/// Quantum Chernoff bound p_QC = (1/2) inf_s C_s^M.
inline ChernoffResult chernoff_bound(const BinaryHypothesis& h) {
  auto data = detail::chernoff_prepare(h);
  auto f = [&](double s) { return detail::log_cs(data, s); };
  const double eps = kChernoffEndpoint;
  auto best = numerics::brent_minimize(f, eps, 1 - eps);
  double s_star = best.x;
  double lc = best.fx;
  for (double s : {eps, 1 - eps, 0.5}) {
    double v = f(s);
    if (v < lc) {
      lc = v;
      s_star = s;
    }
  }
  double c_min = std::exp(lc);
  return {0.5 * std::pow(c_min, h.copies), s_star, c_min};
}

/// Bhattacharyya bound p_B = (1/2) C_{1/2}^M.
inline double bhattacharyya(const BinaryHypothesis& h) {
  return 0.5 * std::pow(chernoff_cs(h, 0.5), h.copies);
}

/// Uhlmann fidelity (squared convention) between single-mode Gaussian states.
inline double fidelity_1mode(const GaussianState& r0, const GaussianState& r1) {
  if (r0.modes() != 1 || r1.modes() != 1) {
    throw unsupported_error("closed-form fidelity is available for single-mode states only");
  }
  Mat sum = r0.cov + r1.cov;
  double big_delta = sum.determinant();
  double small_delta = (r0.cov.determinant() - 1) * (r1.cov.determinant() - 1);
  small_delta = std::max(0.0, small_delta);
  Vec d = r0.mean - r1.mean;
  double quad = d.dot(sum.inverse() * d);
  return 2 / (std::sqrt(big_delta + small_delta) - std::sqrt(small_delta)) * std::exp(-0.5 * quad);
}

/// Tr(rho0 rho1) for Gaussian states.
inline double overlap(const GaussianState& r0, const GaussianState& r1) {
  if (r0.modes() != r1.modes()) throw shape_error("states must have the same mode count");
  Mat sum = r0.cov + r1.cov;
  Vec d = r0.mean - r1.mean;
  return std::pow(2.0, r0.modes()) / std::sqrt(sum.determinant()) * std::exp(-0.5 * d.dot(sum.ldlt().solve(d)));
}

/// Fidelity (squared convention): closed form for one mode, overlap when either state is pure.
inline double fidelity(const GaussianState& r0, const GaussianState& r1) {
  if (r0.modes() == 1 && r1.modes() == 1) return fidelity_1mode(r0, r1);
  auto pure = [](const GaussianState& s) {
    return std::abs(s.cov.determinant() - 1) < 1e-9;
  };
  if (pure(r0) || pure(r1)) return overlap(r0, r1);
  throw unsupported_error("multimode fidelity between mixed states is not implemented");
}

struct FidelityBounds {
  double lower;
  double upper;
};

inline FidelityBounds fidelity_bounds(double f) {
  if (!(f >= 0 && f <= 1 + 1e-12)) throw domain_error("fidelity must lie in [0, 1]");
  f = std::min(f, 1.0);
  return {0.5 * (1 - std::sqrt(1 - f)), 0.5 * std::sqrt(f)};
}

struct MulticopyBounds {
  double p_qc;
  double p_b;
  /// Error exponent -ln(2 p_QC) for a single copy.
  double exponent;
};

inline MulticopyBounds multicopy_bounds(const BinaryHypothesis& h) {
  BinaryHypothesis one = h;
  one.copies = 1;
  auto qc = chernoff_bound(one);
  double cb = chernoff_cs(one, 0.5);
  return {0.5 * std::pow(qc.c_min, h.copies), 0.5 * std::pow(cb, h.copies), -std::log(qc.c_min)};
}

// ---- coherent-state receivers (BPSK alphabet {+alpha, -alpha}) ------------------

inline void check_amplitude(double alpha) {
  require_finite(alpha, "alpha");
  if (alpha < 0) throw domain_error("amplitude must be non-negative");
}

inline double kennedy_pe(double alpha) {
  check_amplitude(alpha);
  return 0.5 * std::exp(-4 * alpha * alpha);
}

inline double helstrom_bpsk_pe(double alpha) {
  check_amplitude(alpha);
  return helstrom_pure(std::exp(-4 * alpha * alpha));
}

/// Homodyne receiver: integrates the q-marginal N(2 alpha, 1) over the wrong half-line.
inline double homodyne_pe(double alpha) {
  check_amplitude(alpha);
  const double mu = 2 * alpha;
  auto density = [mu](double x) { return std::exp(-0.5 * (x - mu) * (x - mu)) / std::sqrt(2 * M_PI); };
  return numerics::integrate(density, -std::numeric_limits<double>::infinity(), 0.0, 1e-14);
}

/// Closed form of the homodyne error under vacuum variance 1.
inline double homodyne_pe_closed(double alpha) {
  check_amplitude(alpha);
  return 0.5 * std::erfc(std::sqrt(2.0) * alpha);
}

/// Error function expression as printed in the source literature (different quadrature scaling).
inline double homodyne_pe_printed(double alpha) {
  check_amplitude(alpha);
  return 0.5 * (1 - std::erf(alpha / 2));
}

inline double odr_pe(double alpha, double beta, double tau = 1.0) {
  check_amplitude(alpha);
  require_finite(beta, "beta");
  if (!(tau > 0 && tau <= 1)) throw domain_error("tau must lie in (0, 1]");
  return 0.5 - std::exp(-(tau * alpha * alpha + beta * beta)) * std::sinh(2 * std::sqrt(tau) * alpha * beta);
}

struct OdrOptimum {
  double beta;
  double pe;
};

inline OdrOptimum odr_optimize(double alpha, double tau = 1.0) {
  check_amplitude(alpha);
  if (alpha == 0) return {0.0, 0.5};
  auto f = [&](double b) { return odr_pe(alpha, b, tau); };
  auto m = numerics::brent_minimize(f, 0.0, std::sqrt(tau) * alpha + 4.0);
  return {m.x, m.fx};
}

enum class Receiver { helstrom, kennedy, homodyne, odr };

inline double receiver_pe(Receiver kind, double alpha, double tau = 1.0) {
  switch (kind) {
    case Receiver::helstrom: return helstrom_bpsk_pe(alpha);
    case Receiver::kennedy: return kennedy_pe(alpha);
    case Receiver::homodyne: return homodyne_pe(alpha);
    case Receiver::odr: return odr_optimize(alpha, tau).pe;
  }
  throw domain_error("unknown receiver");
}

/// alpha^2 below which homodyne beats Kennedy.
inline double homodyne_kennedy_crossover() {
  auto diff = [](double a2) { return homodyne_pe(std::sqrt(a2)) - kennedy_pe(std::sqrt(a2)); };
  return numerics::bisect_root(diff, 0.05, 2.0, 1e-12);
}

}  // namespace gqi
