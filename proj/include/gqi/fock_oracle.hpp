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
#include <string>

#include "gqi/config.hpp"
#include "gqi/numerics.hpp"
#include "gqi/phase_space.hpp"

namespace gqi::fock {

enum class Kind { coherent, squeezed_vacuum, thermal, epr };

struct StateSpec {
  Kind kind = Kind::coherent;
  std::complex<double> alpha{0, 0};
  double r = 0;
  double nbar = 0;
  /// Phase-space rotation applied to single-mode kinds.
  double theta = 0;
};

inline constexpr int kDefaultCutoff = 40;
inline constexpr double kTruncationTol = 1e-8;

namespace detail {

/// Eigenvalues below this fraction of the largest are round-off and are zeroed before fractional powers.
inline constexpr double kEigenFloor = 1e-13;

inline Vec clean_spectrum(const Vec& ev) {
  const double floor = kEigenFloor * std::max(ev.maxCoeff(), 0.0);
  return ev.unaryExpr([floor](double x) { return x > floor ? x : 0.0; });
}

inline void guard(double kept, const std::string& what) {
  if (kept < 1 - kTruncationTol) {
    throw domain_error("cutoff too small for " + what + ": retained norm " + std::to_string(kept));
  }
}

inline CMat outer(const Eigen::VectorXcd& psi) { return psi * psi.adjoint(); }

inline double log_factorial(int n) { return std::lgamma(n + 1.0); }

}  // namespace detail

inline CMat annihilation(int cutoff) {
  CMat a = CMat::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

/// Rotation exp(-i theta n), acting on quadratures as R(theta).
inline CMat rotation(double theta, int cutoff) {
  CMat u = CMat::Zero(cutoff, cutoff);
  for (int n = 0; n < cutoff; ++n) u(n, n) = std::polar(1.0, -theta * n);
  return u;
}

inline CMat fock_state(const StateSpec& spec, int cutoff = kDefaultCutoff) {
  if (cutoff < 2) throw domain_error("cutoff must be at least 2");
  switch (spec.kind) {
    case Kind::coherent: {
      Eigen::VectorXcd psi(cutoff);
      const double a2 = std::norm(spec.alpha);
      double kept = 0;
      for (int n = 0; n < cutoff; ++n) {
        std::complex<double> an = n == 0 ? std::complex<double>(1, 0) : std::pow(spec.alpha, n);
        psi(n) = std::exp(-a2 / 2 - 0.5 * detail::log_factorial(n)) * an;
        kept += std::norm(psi(n));
      }
      detail::guard(kept, "coherent state");
      return detail::outer(psi);
    }
    case Kind::squeezed_vacuum: {
      Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(cutoff);
      const double t = std::tanh(spec.r);
      double kept = 0;
      for (int n = 0; 2 * n < cutoff; ++n) {
        double mag = 0.5 * detail::log_factorial(2 * n) - n * std::log(2.0) - detail::log_factorial(n);
        double c = std::exp(mag) * std::pow(-t, n) / std::sqrt(std::cosh(spec.r));
        psi(2 * n) = c;
        kept += c * c;
      }
      detail::guard(kept, "squeezed vacuum");
      CMat u = rotation(spec.theta, cutoff);
      return u * detail::outer(psi) * u.adjoint();
    }
    case Kind::thermal: {
      if (!(spec.nbar >= 0)) throw domain_error("thermal number must be non-negative");
      CMat rho = CMat::Zero(cutoff, cutoff);
      double kept = 0;
      for (int n = 0; n < cutoff; ++n) {
        double p = std::pow(spec.nbar, n) / std::pow(spec.nbar + 1, n + 1);
        rho(n, n) = p;
        kept += p;
      }
      detail::guard(kept, "thermal state");
      return rho;
    }
    case Kind::epr: {
      const double lam = std::tanh(spec.r);
      const double norm = std::sqrt(1 - lam * lam);
      Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(cutoff * cutoff);
      double kept = 0;
      for (int n = 0; n < cutoff; ++n) {
        double c = norm * std::pow(lam, n);
        psi(n * cutoff + n) = c;
        kept += c * c;
      }
      detail::guard(kept, "EPR state");
      return detail::outer(psi);
    }
  }
  throw domain_error("unknown state kind");
}

/// Quadrature operators (hbar = 2) of one mode within a register of identical cutoffs.
inline std::pair<CMat, CMat> quadratures(int cutoff, int mode, int modes) {
  CMat a = annihilation(cutoff);
  CMat q1 = a + a.adjoint();
  CMat p1 = std::complex<double>(0, -1) * (a - a.adjoint());
  auto lift = [&](const CMat& op) {
    CMat out = CMat::Identity(1, 1);
    for (int k = 0; k < modes; ++k) {
      const CMat& f = k == mode ? op : CMat::Identity(cutoff, cutoff);
      CMat next(out.rows() * f.rows(), out.cols() * f.cols());
      for (Eigen::Index i = 0; i < out.rows(); ++i)
        for (Eigen::Index j = 0; j < out.cols(); ++j)
          next.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) = out(i, j) * f;
      out = next;
    }
    return out;
  };
  return {lift(q1), lift(p1)};
}

/// First and second moments from quadrature operator matrices.
inline GaussianState moments(const CMat& rho, int cutoff, int modes) {
  std::vector<CMat> ops;
  for (int k = 0; k < modes; ++k) {
    auto [q, p] = quadratures(cutoff, k, modes);
    ops.push_back(q);
    ops.push_back(p);
  }
  const int d = 2 * modes;
  Vec mean(d);
  for (int i = 0; i < d; ++i) mean(i) = (rho * ops[i]).trace().real();
  Mat cov(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      CMat anti = ops[i] * ops[j] + ops[j] * ops[i];
      cov(i, j) = 0.5 * (rho * anti).trace().real() - mean(i) * mean(j);
    }
  }
  return GaussianState(mean, cov);
}

/// Real power of a positive semidefinite matrix; negative eigenvalues are clipped.
inline CMat psd_power(const CMat& rho, double s) {
  Eigen::SelfAdjointEigenSolver<CMat> es(rho);
  Vec ev = es.eigenvalues();
  Eigen::VectorXcd f(ev.size());
  for (Eigen::Index k = 0; k < ev.size(); ++k) f(k) = ev(k) > 0 ? std::pow(ev(k), s) : 0.0;
  return es.eigenvectors() * f.asDiagonal() * es.eigenvectors().adjoint();
}

inline double trace_distance(const CMat& rho0, const CMat& rho1) {
  Eigen::SelfAdjointEigenSolver<CMat> es(rho0 - rho1, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

/// Uhlmann fidelity, squared convention.
inline double fidelity(const CMat& rho0, const CMat& rho1) {
  CMat s0 = psd_power(rho0, 0.5);
  CMat inner = s0 * rho1 * s0;
  inner = 0.5 * (inner + inner.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(inner, Eigen::EigenvaluesOnly);
  double t = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return t * t;
}

/// Tr(rho0^s rho1^(1-s)) evaluated from cached eigensystems.
class ChernoffKernel {
 public:
  ChernoffKernel(const CMat& rho0, const CMat& rho1) {
    Eigen::SelfAdjointEigenSolver<CMat> e0(rho0), e1(rho1);
    l0_ = detail::clean_spectrum(e0.eigenvalues());
    l1_ = detail::clean_spectrum(e1.eigenvalues());
    w_ = (e0.eigenvectors().adjoint() * e1.eigenvectors()).cwiseAbs2();
  }

  double operator()(double s) const {
    Vec a(l0_.size()), b(l1_.size());
    for (Eigen::Index k = 0; k < a.size(); ++k) a(k) = l0_(k) > 0 ? std::pow(l0_(k), s) : 0.0;
    for (Eigen::Index k = 0; k < b.size(); ++k) b(k) = l1_(k) > 0 ? std::pow(l1_(k), 1 - s) : 0.0;
    return a.dot(w_ * b);
  }

 private:
  Vec l0_, l1_;
  Mat w_;
};

inline double chernoff_cs(const CMat& rho0, const CMat& rho1, double s) {
  return ChernoffKernel(rho0, rho1)(s);
}

struct Metrics {
  double trace_distance;
  double helstrom;
  double fidelity;
  double c_min;
  double s_star;
};

inline Metrics oracle_metrics(const CMat& rho0, const CMat& rho1) {
  if (rho0.rows() != rho1.rows() || rho0.cols() != rho1.cols()) {
    throw shape_error("density matrices must share the same dimension");
  }
  Metrics m{};
  m.trace_distance = trace_distance(rho0, rho1);
  m.helstrom = 0.5 * (1 - m.trace_distance);
  m.fidelity = fidelity(rho0, rho1);
  ChernoffKernel cs(rho0, rho1);
  auto best = numerics::brent_minimize([&](double s) { return cs(s); }, 1e-6, 1 - 1e-6);
  m.s_star = best.x;
  m.c_min = std::min(best.fx, 1.0);
  return m;
}

}  // namespace gqi::fock
