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

#include <optional>
#include <string>

#include "gqi/discrimination.hpp"
#include "gqi/numerics.hpp"
#include "gqi/unitaries.hpp"

namespace gqi {

/// One-mode Gaussian channel: mean -> T mean + d, V -> T V T^T + N.
struct GaussianChannel {
  Mat t = Mat::Identity(2, 2);
  Mat n = Mat::Zero(2, 2);
  Vec d = Vec::Zero(2);
};

struct ChannelCheck {
  bool ok;
  std::string reason;
};

inline ChannelCheck check_channel(const GaussianChannel& ch, double tol_abs = 1e-10) {
  if (ch.t.rows() != 2 || ch.t.cols() != 2 || ch.n.rows() != 2 || ch.n.cols() != 2 || ch.d.size() != 2) {
    return {false, "T and N must be 2x2 and d length 2"};
  }
  if ((ch.n - ch.n.transpose()).cwiseAbs().maxCoeff() > tol_abs) return {false, "N must be symmetric"};
  Eigen::SelfAdjointEigenSolver<Mat> es(ch.n);
  if (es.eigenvalues().minCoeff() < -tol_abs) return {false, "N must be positive semidefinite"};
  double dt = ch.t.determinant();
  if (ch.n.determinant() < (dt - 1) * (dt - 1) - tol_abs * std::max(1.0, ch.n.squaredNorm())) {
    return {false, "det N must be at least (det T - 1)^2"};
  }
  return {true, ""};
}

inline void require_channel(const GaussianChannel& ch) {
  auto c = check_channel(ch);
  if (!c.ok) throw domain_error("invalid Gaussian channel: " + c.reason);
}

/// Applies a one-mode channel to one mode of an N-mode state.
inline GaussianState apply_channel(const GaussianChannel& ch, const GaussianState& st, int mode = 0) {
  require_channel(ch);
  check_modes({mode}, st.modes());
  const int dim = 2 * st.modes();
  Mat t = Mat::Identity(dim, dim);
  Mat n = Mat::Zero(dim, dim);
  Vec d = Vec::Zero(dim);
  t.block(2 * mode, 2 * mode, 2, 2) = ch.t;
  n.block(2 * mode, 2 * mode, 2, 2) = ch.n;
  d.segment(2 * mode, 2) = ch.d;
  Mat v = t * st.cov * t.transpose() + n;
  return GaussianState(t * st.mean + d, 0.5 * (v + v.transpose()));
}

struct ChannelInvariants {
  double tau;
  int rank;
  double nbar;
};

namespace detail {

inline int numerical_rank(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  const Vec& s = svd.singularValues();
  if (s(0) == 0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) >= tol::rank * std::max(1.0, s(0))) ++r;
  return r;
}

}  // namespace detail

inline ChannelInvariants invariants_of(const GaussianChannel& ch) {
  require_channel(ch);
  ChannelInvariants inv{};
  inv.tau = ch.t.determinant();
  inv.rank = std::min(detail::numerical_rank(ch.t), detail::numerical_rank(ch.n));
  double root = std::sqrt(std::max(0.0, ch.n.determinant()));
  if (std::abs(1 - inv.tau) < 1e-12) {
    inv.tau = 1;
    inv.nbar = root;
  } else {
    inv.nbar = std::max(0.0, root / (2 * std::abs(1 - inv.tau)) - 0.5);
    if (inv.nbar < 1e-12) inv.nbar = 0;
  }
  if (std::abs(inv.tau) < 1e-12) inv.tau = 0;
  return inv;
}

enum class ChannelClass { A1, A2, B1, B2, B2_Id, C_Loss, C_Amp, D };

inline std::string to_string(ChannelClass c) {
  switch (c) {
    case ChannelClass::A1: return "A1";
    case ChannelClass::A2: return "A2";
    case ChannelClass::B1: return "B1";
    case ChannelClass::B2: return "B2";
    case ChannelClass::B2_Id: return "B2_Id";
    case ChannelClass::C_Loss: return "C_Loss";
    case ChannelClass::C_Amp: return "C_Amp";
    case ChannelClass::D: return "D";
  }
  return "?";
}

inline ChannelClass parse_channel_class(const std::string& s) {
  for (auto c : {ChannelClass::A1, ChannelClass::A2, ChannelClass::B1, ChannelClass::B2,
                 ChannelClass::B2_Id, ChannelClass::C_Loss, ChannelClass::C_Amp, ChannelClass::D}) {
    if (to_string(c) == s) return c;
  }
  throw domain_error("unknown channel class '" + s + "'");
}

struct CanonicalForm {
  double tau;
  int rank;
  double nbar;
  ChannelClass label;
};

inline CanonicalForm classify(const GaussianChannel& ch) {
  auto inv = invariants_of(ch);
  CanonicalForm f{inv.tau, inv.rank, inv.nbar, ChannelClass::A1};
  if (inv.tau == 0) {
    if (inv.rank == 0) f.label = ChannelClass::A1;
    else if (inv.rank == 1) f.label = ChannelClass::A2;
    else throw numerical_error("tau = 0 with rank 2 matches no canonical class");
  } else if (inv.tau == 1) {
    f.label = inv.rank == 0 ? ChannelClass::B2_Id : inv.rank == 1 ? ChannelClass::B1 : ChannelClass::B2;
  } else {
    if (inv.rank != 2) throw numerical_error("tau outside {0, 1} requires rank 2");
    f.label = inv.tau < 0 ? ChannelClass::D : inv.tau < 1 ? ChannelClass::C_Loss : ChannelClass::C_Amp;
  }
  return f;
}

/// Canonical representative of a class. tau is ignored for classes with fixed tau.
inline GaussianChannel canonical_channel(ChannelClass c, double tau, double nbar) {
  if (!(nbar >= 0)) throw domain_error("nbar must be non-negative");
  const Mat i2 = Mat::Identity(2, 2);
  const Mat z = pauli_z();
  const double nu = 2 * nbar + 1;
  GaussianChannel ch;
  switch (c) {
    case ChannelClass::A1:
      ch.t = Mat::Zero(2, 2);
      ch.n = nu * i2;
      break;
    case ChannelClass::A2:
      ch.t = 0.5 * (i2 + z);
      ch.n = nu * i2;
      break;
    case ChannelClass::B1:
      ch.t = i2;
      ch.n = 0.5 * (i2 - z);
      break;
    case ChannelClass::B2:
      if (nbar <= 0) throw domain_error("B2 needs nbar > 0; use B2_Id for the identity");
      ch.t = i2;
      ch.n = nbar * i2;
      break;
    case ChannelClass::B2_Id:
      break;
    case ChannelClass::C_Loss:
      if (!(tau > 0 && tau < 1)) throw domain_error("lossy channel needs 0 < tau < 1");
      ch.t = std::sqrt(tau) * i2;
      ch.n = (1 - tau) * nu * i2;
      break;
    case ChannelClass::C_Amp:
      if (!(tau > 1)) throw domain_error("amplifier needs tau > 1");
      ch.t = std::sqrt(tau) * i2;
      ch.n = (tau - 1) * nu * i2;
      break;
    case ChannelClass::D:
      if (!(tau < 0)) throw domain_error("class D needs tau < 0");
      ch.t = std::sqrt(-tau) * z;
      ch.n = (1 - tau) * nu * i2;
      break;
  }
  return ch;
}

inline GaussianChannel canonical_channel(const CanonicalForm& f) {
  return canonical_channel(f.label, f.tau, f.nbar);
}

inline GaussianChannel lossy_channel(double tau, double nbar = 0) {
  if (tau == 1) return GaussianChannel{};
  return canonical_channel(ChannelClass::C_Loss, tau, nbar);
}

struct Dilation {
  /// Symplectic coupling on (system, environment E).
  Mat m;
  /// Environment (E, e): EPR with nu = 2 nbar + 1.
  GaussianState environment;
};

inline Dilation dilate(const CanonicalForm& f) {
  const Mat i2 = Mat::Identity(2, 2);
  const Mat z = pauli_z();
  const Mat o2 = Mat::Zero(2, 2);
  Mat m(4, 4);
  const double tau = f.tau;
  double nbar = f.nbar;
  switch (f.label) {
    case ChannelClass::A1:
      m << o2, i2, i2, o2;
      break;
    case ChannelClass::A2:
      m << 0.5 * (i2 + z), i2, i2, 0.5 * (z - i2);
      break;
    case ChannelClass::B1:
      // Reflected variant of M(1,1) so the added noise sits on p, matching N = (I - Z)/2.
      m << i2, 0.5 * (i2 - z), 0.5 * (i2 + z), -i2;
      nbar = 0;
      break;
    case ChannelClass::B2:
      throw unsupported_error("the rank-2 additive-noise channel has no simple dilation");
    case ChannelClass::B2_Id:
      m = Mat::Identity(4, 4);
      nbar = 0;
      break;
    case ChannelClass::C_Loss:
      m << std::sqrt(tau) * i2, std::sqrt(1 - tau) * i2, -std::sqrt(1 - tau) * i2, std::sqrt(tau) * i2;
      break;
    case ChannelClass::C_Amp:
      m << std::sqrt(tau) * i2, std::sqrt(tau - 1) * z, std::sqrt(tau - 1) * z, std::sqrt(tau) * i2;
      break;
    case ChannelClass::D:
      m << std::sqrt(-tau) * z, std::sqrt(1 - tau) * i2, -std::sqrt(1 - tau) * i2, -std::sqrt(-tau) * z;
      break;
  }
  return {m, epr_nu(2 * nbar + 1)};
}

/// Runs the dilation on one mode and returns the joint state (original modes, then E, e).
inline GaussianState apply_dilation(const Dilation& dil, const GaussianState& st, int mode = 0) {
  check_modes({mode}, st.modes());
  const int n = st.modes();
  GaussianState joint = tensor(st, dil.environment);
  return apply(joint, SymplecticTransform(dil.m), {mode, n});
}

enum class Degradability { antidegradable, degradable, unknown };

inline std::string to_string(Degradability d) {
  switch (d) {
    case Degradability::antidegradable: return "antidegradable";
    case Degradability::degradable: return "degradable";
    case Degradability::unknown: return "unknown";
  }
  return "?";
}

inline Degradability degradability(const CanonicalForm& f) {
  const bool tau_defined = f.label != ChannelClass::B1 && f.label != ChannelClass::B2 &&
                           f.label != ChannelClass::B2_Id;
  if (tau_defined && f.tau <= 0.5) return Degradability::antidegradable;
  if (f.label == ChannelClass::C_Loss && f.nbar == 0 && f.tau >= 0.5) return Degradability::degradable;
  if (f.label == ChannelClass::C_Amp && f.nbar == 0) return Degradability::degradable;
  return Degradability::unknown;
}

enum class CapacityTag { exact, lower_bound, conjectured_tight };

inline std::string to_string(CapacityTag t) {
  switch (t) {
    case CapacityTag::exact: return "exact";
    case CapacityTag::lower_bound: return "lower_bound";
    case CapacityTag::conjectured_tight: return "conjectured_tight";
  }
  return "?";
}

struct CapacityValue {
  double value;
  CapacityTag tag;
};

struct CapacityRecord {
  std::optional<CapacityValue> classical_pure_loss;
  std::optional<CapacityValue> classical_lower;
  std::optional<CapacityValue> quantum_lower;
  std::optional<CapacityValue> reverse_coherent;
  std::optional<CapacityValue> entanglement_assisted;
};

inline double classical_capacity_pure_loss(double tau, double mbar, LogBase base = LogBase::two) {
  const double mu = 2 * mbar + 1;
  return g_function(tau * mu + 1 - tau, base);
}

inline double classical_capacity_lower(double tau, double nbar, double mbar, LogBase base = LogBase::two) {
  const double mu = 2 * mbar + 1;
  const double nu = 2 * nbar + 1;
  return g_function(tau * mu + (1 - tau) * nu, base) - g_function(tau + (1 - tau) * nu, base);
}

inline double quantum_capacity_lower(double tau, double nbar, LogBase base = LogBase::two) {
  if (tau == 1) throw domain_error("quantum capacity bound is undefined at tau = 1");
  return std::max(0.0, log_in(std::abs(tau / (1 - tau)), base) - g_function(2 * nbar + 1, base));
}

inline double reverse_coherent_capacity(double tau, double nbar, LogBase base = LogBase::two) {
  if (tau == 1) throw domain_error("reverse coherent bound is undefined at tau = 1");
  return std::max(0.0, log_in(std::abs(1 / (1 - tau)), base) - g_function(2 * nbar + 1, base));
}

inline double entanglement_assisted_pure_loss(double tau, double mbar, LogBase base = LogBase::two) {
  const double mu = 2 * mbar + 1;
  GaussianState out = apply_channel(lossy_channel(tau, 0), epr_nu(mu), 1);
  return g_function(mu, base) + g_function(tau * mu + 1 - tau, base) - von_neumann_entropy(out, base);
}

inline CapacityRecord capacities(const CanonicalForm& f, double mbar, LogBase base = LogBase::two) {
  if (!(mbar >= 0)) throw domain_error("mean photon number must be non-negative");
  CapacityRecord rec;
  const bool has_tau = f.tau != 1;
  if (f.label == ChannelClass::C_Loss) {
    if (f.nbar == 0) {
      rec.classical_pure_loss = CapacityValue{classical_capacity_pure_loss(f.tau, mbar, base), CapacityTag::exact};
      rec.entanglement_assisted =
          CapacityValue{entanglement_assisted_pure_loss(f.tau, mbar, base), CapacityTag::exact};
    }
    rec.classical_lower =
        CapacityValue{classical_capacity_lower(f.tau, f.nbar, mbar, base), CapacityTag::conjectured_tight};
  }
  if (has_tau) {
    rec.quantum_lower = CapacityValue{quantum_capacity_lower(f.tau, f.nbar, base), CapacityTag::lower_bound};
    rec.reverse_coherent = CapacityValue{reverse_coherent_capacity(f.tau, f.nbar, base), CapacityTag::lower_bound};
  }
  return rec;
}

/// Entropy of a thermal state with mean photon number n.
inline double photon_entropy(double n, LogBase base = LogBase::two) {
  return g_function(2 * n + 1, base);
}

/// Broadband far-field capacity; y0 is the energy-constraint parameter.
inline double broadband_capacity(double omega_c, double time, double y0, LogBase base = LogBase::two) {
  if (!(y0 > 0)) throw domain_error("y0 must be positive");
  auto f = [base](double x) {
    if (x <= 0) return 0.0;
    double inv = 1 / x;
    if (inv > 700) return 0.0;
    return photon_entropy(1 / std::expm1(inv), base);
  };
  return omega_c * time / (2 * M_PI * y0) * numerics::integrate(f, 0.0, y0, 1e-12);
}

struct CoherentInfo {
  double j;
  double j_reverse;
};

/// Coherent and reverse coherent information for an EPR source of local variance mu.
inline CoherentInfo coherent_info(const GaussianChannel& ch, double mu, LogBase base = LogBase::two) {
  if (!(mu >= 1)) throw domain_error("source variance must be >= 1");
  GaussianState rb = apply_channel(ch, epr_nu(mu), 1);
  double s_rb = von_neumann_entropy(rb, base);
  double s_b = von_neumann_entropy(partial_trace(rb, {1}), base);
  double s_r = von_neumann_entropy(partial_trace(rb, {0}), base);
  return {s_b - s_rb, s_r - s_rb};
}

// ---- target detection and memory readout ----------------------------------------

enum class Transmitter { epr, coherent };

struct IlluminationResult {
  double p_epr;
  double p_coherent;
  /// Per-copy exponents -ln(2 p) / M from the Chernoff bound.
  double exponent_epr;
  double exponent_coherent;
  /// Asymptotic estimates kappa mbar / nbar and kappa mbar / (4 nbar).
  double asymptotic_exponent_epr;
  double asymptotic_exponent_coherent;
  bool regime_warning;
};

namespace detail {

/// Output hypotheses for a transmitter probing channel ch0 versus ch1 on the signal mode.
inline BinaryHypothesis probe_hypotheses(Transmitter tx, const GaussianChannel& ch0,
                                         const GaussianChannel& ch1, double mbar, int copies) {
  if (tx == Transmitter::epr) {
    GaussianState src = epr_nu(2 * mbar + 1);
    return {apply_channel(ch0, src, 0), apply_channel(ch1, src, 0), copies};
  }
  GaussianState src = coherent(std::complex<double>(std::sqrt(mbar), 0));
  return {apply_channel(ch0, src, 0), apply_channel(ch1, src, 0), copies};
}

}  // namespace detail

/// Chernoff bounds for target detection with an EPR or coherent transmitter.
inline IlluminationResult illumination_error_bounds(int copies, double kappa, double nbar, double mbar) {
  if (copies < 1) throw domain_error("copy count must be positive");
  if (!(kappa >= 0 && kappa < 1)) throw domain_error("kappa must lie in [0, 1)");
  if (!(nbar > 0) || !(mbar >= 0)) throw domain_error("photon numbers must be positive");
  IlluminationResult r{};
  r.regime_warning = !(kappa <= 0.1 && nbar >= 5);
  r.asymptotic_exponent_epr = kappa * mbar / nbar;
  r.asymptotic_exponent_coherent = kappa * mbar / (4 * nbar);
  if (kappa == 0) {
    r.p_epr = r.p_coherent = 0.5;
    return r;
  }
  GaussianChannel absent = canonical_channel(ChannelClass::A1, 0, nbar);
  GaussianChannel present = canonical_channel(ChannelClass::C_Loss, kappa, nbar / (1 - kappa));
  auto he = detail::probe_hypotheses(Transmitter::epr, absent, present, mbar, copies);
  auto hc = detail::probe_hypotheses(Transmitter::coherent, absent, present, mbar, copies);
  auto ce = chernoff_bound(he);
  auto cc = chernoff_bound(hc);
  r.p_epr = ce.p_qc;
  r.p_coherent = cc.p_qc;
  r.exponent_epr = -std::log(ce.c_min);
  r.exponent_coherent = -std::log(cc.c_min);
  return r;
}

struct ReadingResult {
  double p_err;
  double information_gain;
};

inline double binary_entropy(double p, LogBase base = LogBase::two) {
  if (p <= 0 || p >= 1) return 0;
  return -p * log_in(p, base) - (1 - p) * log_in(1 - p, base);
}

/// Chernoff bound on reading a memory cell encoded in lossy channels L(kappa0, n) and L(kappa1, n).
inline ReadingResult reading_error(double kappa0, double kappa1, double nbar, Transmitter tx, double mbar,
                                   int copies = 1, LogBase base = LogBase::two) {
  if (!(kappa0 > 0 && kappa0 <= 1 && kappa1 > 0 && kappa1 <= 1)) throw domain_error("kappas must lie in (0, 1]");
  if (copies < 1) throw domain_error("copy count must be positive");
  if (kappa0 == kappa1) return {0.5, 0.0};
  auto h = detail::probe_hypotheses(tx, lossy_channel(kappa0, nbar), lossy_channel(kappa1, nbar), mbar, copies);
  double p = chernoff_bound(h).p_qc;
  return {p, 1 - binary_entropy(p, base)};
}

}  // namespace gqi
