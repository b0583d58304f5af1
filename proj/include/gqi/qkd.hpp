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

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "gqi/channels.hpp"
#include "gqi/measurements.hpp"
#include "gqi/numerics.hpp"

namespace gqi::qkd {

enum class States { coherent, squeezed };
enum class Detection { homodyne, heterodyne };
enum class Reconciliation { direct, reverse };

inline std::string to_string(States s) { return s == States::coherent ? "coherent" : "squeezed"; }
inline std::string to_string(Detection d) { return d == Detection::homodyne ? "homodyne" : "heterodyne"; }
inline std::string to_string(Reconciliation r) { return r == Reconciliation::direct ? "direct" : "reverse"; }

inline States parse_states(const std::string& s) {
  if (s == "coherent") return States::coherent;
  if (s == "squeezed") return States::squeezed;
  throw domain_error("states must be coherent or squeezed");
}
inline Detection parse_detection(const std::string& s) {
  if (s == "homodyne") return Detection::homodyne;
  if (s == "heterodyne") return Detection::heterodyne;
  throw domain_error("detection must be homodyne or heterodyne");
}
inline Reconciliation parse_reconciliation(const std::string& s) {
  if (s == "direct" || s == "DR") return Reconciliation::direct;
  if (s == "reverse" || s == "RR") return Reconciliation::reverse;
  throw domain_error("reconciliation must be direct or reverse");
}

/// Protocol and channel parameters. chi is the excess noise referred to the input;
/// chi = 0 is a pure-loss channel.
struct Scenario {
  States states = States::coherent;
  Detection detection = Detection::homodyne;
  Reconciliation reconciliation = Reconciliation::reverse;
  double V = 20;
  double tau = 0.5;
  double chi = 0;
  double beta = 1;
  /// Sifting factor; NaN selects the protocol default.
  double phi = std::numeric_limits<double>::quiet_NaN();
};

inline void check(const Scenario& sc) {
  if (!(sc.V >= 1)) throw domain_error("modulation variance V must be >= 1");
  if (!(sc.tau > 0 && sc.tau <= 1)) throw domain_error("tau must lie in (0, 1]");
  if (!(sc.chi >= 0)) throw domain_error("excess noise chi must be non-negative");
  if (!(sc.beta >= 0 && sc.beta <= 1)) throw domain_error("beta must lie in [0, 1]");
  if (!std::isnan(sc.phi) && !(sc.phi > 0 && sc.phi <= 1)) throw domain_error("phi must lie in (0, 1]");
}

/// Sifting: 1 when Bob heterodynes (no basis choice), 1/2 when he switches quadratures.
inline double sifting(const Scenario& sc) {
  if (!std::isnan(sc.phi)) return sc.phi;
  return sc.detection == Detection::heterodyne ? 1.0 : 0.5;
}

/// Total input-referred noise: loss contribution (1 - tau)/tau plus excess noise.
inline double line_noise(const Scenario& sc) { return (1 - sc.tau) / sc.tau + sc.chi; }

/// Thermal number of the entangling cloner reproducing (tau, chi).
inline double cloner_nbar(const Scenario& sc) {
  if (sc.tau == 1) {
    if (sc.chi > 0) throw unsupported_error("tau = 1 with excess noise has no entangling-cloner dilation");
    return 0;
  }
  return sc.chi * sc.tau / (2 * (1 - sc.tau));
}

inline Mat shared_cm(const Scenario& sc) {
  check(sc);
  const double x = sc.V;
  const double y = sc.tau * (sc.V + line_noise(sc));
  const double z = std::sqrt(sc.tau * (sc.V * sc.V - 1));
  Mat v(4, 4);
  Mat i2 = Mat::Identity(2, 2);
  v << x * i2, z * pauli_z(), z * pauli_z(), y * i2;
  return v;
}

/// Beam-splitter transmissivity of Alice's entanglement-based source.
inline double source_tau(States s) { return s == States::coherent ? 0.5 : 1.0; }

struct EbSourceParams {
  double gamma_q;
  double gamma_p;
  double x;
};

inline EbSourceParams eb_source_params(double V, double tau_a) {
  if (!(V >= 1)) throw domain_error("V must be >= 1");
  if (!(tau_a > 0 && tau_a <= 1)) throw domain_error("tau_A must lie in (0, 1]");
  EbSourceParams p{};
  p.gamma_q = std::sqrt(tau_a * (V * V - 1)) / (tau_a * V + 1 - tau_a);
  p.gamma_p = std::sqrt((1 - tau_a) * (V * V - 1)) / ((1 - tau_a) * V + tau_a);
  const double mu = (1 - tau_a) / tau_a;
  p.x = (mu * V + 1) / (V + mu);
  return p;
}

namespace detail {

/// Homodyne readouts used as key variables.
struct Readout {
  std::vector<Homodyne> alice;
  std::vector<Homodyne> bob;
};

/// Modes: alice_kept, bob, alice_ancilla, bob_ancilla. Applies the local measurement optics.
inline Readout local_optics(const Scenario& sc, GaussianState& st, int a, int b, int ca, int cb) {
  Readout r;
  const int n = st.modes();
  const bool no_switching = sc.states == States::coherent && sc.detection == Detection::heterodyne;
  const double ta = source_tau(sc.states);
  if (ta < 1) st = apply(st, embed(beam_splitter(ta), {a, ca}, n));
  r.alice.push_back({a, kQuadQ});
  if (no_switching) r.alice.push_back({ca, kQuadP});
  if (sc.detection == Detection::heterodyne) {
    st = apply(st, embed(beam_splitter(0.5), {b, cb}, n));
    r.bob.push_back({b, kQuadQ});
    if (no_switching) r.bob.push_back({cb, kQuadP});
  } else {
    r.bob.push_back({b, kQuadQ});
  }
  return r;
}

inline Mat readout_cov(const GaussianState& st, const std::vector<Homodyne>& h) {
  GaussianState r = gqi::detail::align_homodynes(st, h);
  std::vector<int> idx;
  for (const auto& x : h) idx.push_back(2 * x.mode);
  return submatrix(r.cov, idx, idx);
}

/// Classical Gaussian mutual information between two sets of homodyne readouts.
inline double readout_mutual_information(const GaussianState& st, const Readout& r, LogBase base) {
  std::vector<Homodyne> all = r.alice;
  all.insert(all.end(), r.bob.begin(), r.bob.end());
  double da = readout_cov(st, r.alice).determinant();
  double db = readout_cov(st, r.bob).determinant();
  double dab = readout_cov(st, all).determinant();
  return 0.5 * log_in(da * db / dab, base);
}

inline GaussianState eb_state(const Scenario& sc) {
  return tensor(GaussianState(shared_cm(sc)), vacuum(2));
}

}  // namespace detail

struct MutualInformation {
  double printed;
  double first_principles;
};

inline MutualInformation mutual_information(const Scenario& sc, LogBase base = LogBase::two) {
  check(sc);
  const bool no_switching = sc.states == States::coherent && sc.detection == Detection::heterodyne;
  const double w = no_switching ? 2 : 1;
  const double lambda = sc.states == States::coherent ? sc.V : 1;
  const double chi = line_noise(sc);
  MutualInformation mi{};
  mi.printed = 0.5 * w * log_in((sc.V + chi) / (chi + lambda / sc.V), base);
  GaussianState st = detail::eb_state(sc);
  auto r = detail::local_optics(sc, st, 0, 1, 2, 3);
  mi.first_principles = detail::readout_mutual_information(st, r, base);
  return mi;
}

struct HolevoResult {
  double s_e;
  double s_e_given_x;
  double s_eve;
  Vec spectrum_joint;
  Vec spectrum_conditional;
};

/// Eve's Holevo information from the purification of Alice and Bob's state.
inline HolevoResult eve_holevo(const Scenario& sc, LogBase base = LogBase::two) {
  check(sc);
  HolevoResult h;
  h.spectrum_joint = symplectic_eigenvalues(shared_cm(sc));
  h.s_e = entropy_of_spectrum(h.spectrum_joint, base);
  GaussianState st = detail::eb_state(sc);
  auto r = detail::local_optics(sc, st, 0, 1, 2, 3);
  const auto& ref = sc.reconciliation == Reconciliation::reverse ? r.bob : r.alice;
  auto rec = homodyne_condition(st, ref, Vec::Zero(ref.size()));
  h.spectrum_conditional = symplectic_eigenvalues(rec.conditioned.cov);
  h.s_e_given_x = entropy_of_spectrum(h.spectrum_conditional, base);
  h.s_eve = h.s_e - h.s_e_given_x;
  return h;
}

/// Global state of the entangling-cloner attack. Modes: A', B, C, D, E', e.
inline GaussianState cloner_attack_state(const Scenario& sc) {
  check(sc);
  const double nbar = cloner_nbar(sc);
  // A', A, E, e, C, D
  GaussianState st = tensor(tensor(epr_nu(sc.V), epr_nu(2 * nbar + 1)), vacuum(2));
  st = apply(st, beam_splitter(sc.tau), {1, 2});
  return permute(st, {0, 1, 4, 5, 2, 3});
}

/// Eve's Holevo information computed directly on her modes of the cloner attack.
inline double eve_holevo_dilation(const Scenario& sc, LogBase base = LogBase::two) {
  GaussianState st = cloner_attack_state(sc);
  auto r = detail::local_optics(sc, st, 0, 1, 2, 3);
  const std::vector<int> eve{4, 5};
  double s_e = von_neumann_entropy(partial_trace(st, eve), base);
  const auto& ref = sc.reconciliation == Reconciliation::reverse ? r.bob : r.alice;
  auto rec = homodyne_condition(st, ref, Vec::Zero(ref.size()));
  // Eve's modes keep their relative order after the measured modes are removed.
  auto rest = complement_modes(gqi::detail::homodyne_modes(ref), st.modes());
  std::vector<int> eve_after;
  for (size_t i = 0; i < rest.size(); ++i)
    if (rest[i] == 4 || rest[i] == 5) eve_after.push_back(static_cast<int>(i));
  double s_cond = von_neumann_entropy(partial_trace(rec.conditioned, eve_after), base);
  return s_e - s_cond;
}

struct KeyRateResult {
  double I_ab;
  double I_ab_printed;
  double S_eve;
  double K;
  double phi;
  Vec spectrum_joint;
  Vec spectrum_conditional;
};

inline KeyRateResult key_rate(const Scenario& sc, LogBase base = LogBase::two) {
  auto mi = mutual_information(sc, base);
  auto h = eve_holevo(sc, base);
  KeyRateResult k{};
  k.I_ab = mi.first_principles;
  k.I_ab_printed = mi.printed;
  k.S_eve = h.s_eve;
  k.phi = sifting(sc);
  k.K = k.phi * (sc.beta * k.I_ab - k.S_eve);
  k.spectrum_joint = h.spectrum_joint;
  k.spectrum_conditional = h.spectrum_conditional;
  return k;
}

struct ThresholdResult {
  double chi_bar;
  double residual;
};

/// Largest excess noise with K >= 0 (bisection in chi).
inline ThresholdResult security_threshold(Scenario sc, LogBase base = LogBase::two) {
  auto k_of = [&](double chi) {
    Scenario s = sc;
    s.chi = chi;
    return key_rate(s, base).K;
  };
  const double k0 = k_of(0);
  if (k0 <= 0) return {0.0, k0};
  double hi = 0.1;
  while (k_of(hi) > 0) {
    hi *= 2;
    if (hi > 1e8) throw numerical_error("key rate stays positive for every tested excess noise");
  }
  double prev = k0;
  for (int i = 1; i <= 32; ++i) {
    double v = k_of(hi * i / 32.0);
    if (v > prev + 1e-12) {
      throw numerical_error("key rate is not monotone in chi on [0, " + std::to_string(hi) + "]");
    }
    prev = v;
  }
  double lo = 0;
  double mid = 0;
  double kmid = k0;
  for (int it = 0; it < 500; ++it) {
    mid = 0.5 * (lo + hi);
    kmid = k_of(mid);
    if (std::abs(kmid) <= 1e-10 || hi - lo < 1e-15 * std::max(1.0, hi)) break;
    if (kmid > 0) lo = mid;
    else hi = mid;
  }
  return {mid, kmid};
}

// ---- postselection ---------------------------------------------------------------

/// Binary-channel mutual information for crossover probability p.
inline double binary_channel_information(double p, LogBase base = LogBase::two) {
  return log_in(2.0, base) - binary_entropy(p, base);
}

struct PostselectionOptions {
  int nodes = 200;
  Reconciliation reconciliation = Reconciliation::reverse;
};

namespace detail {

/// Linear model of one quadrature slice: outcomes (a, b) and Eve's conditional moments.
struct SliceModel {
  Mat sigma_ab;
  Mat eve_gain;
  Mat eve_cov;
};

inline SliceModel slice_model(double tau, double chi, double v_a, Detection det) {
  Scenario sc;
  sc.states = States::coherent;
  sc.detection = det;
  sc.V = v_a + 1;
  sc.tau = tau;
  sc.chi = chi;
  GaussianState st = cloner_attack_state(sc);
  const int n = st.modes();
  st = apply(st, embed(beam_splitter(0.5), {0, 2}, n));
  if (det == Detection::heterodyne) st = apply(st, embed(beam_splitter(0.5), {1, 3}, n));
  std::vector<int> iab{0, 2};
  std::vector<int> ie{8, 9, 10, 11};
  Mat sab = submatrix(st.cov, iab, iab);
  Mat c = submatrix(st.cov, ie, iab);
  Mat gain = c * sab.inverse();
  Mat cov = submatrix(st.cov, ie, ie) - gain * c.transpose();
  return {sab, gain, 0.5 * (cov + cov.transpose())};
}

}  // namespace detail

/// Postselected key rate: integral over (a, b) of phi * max(beta I - S_bound, 0).
inline double postselection_rate(double tau, double chi, double v_a, Detection det, double beta = 1,
                                 const PostselectionOptions& opt = {}, LogBase base = LogBase::two) {
  if (!(tau > 0 && tau <= 1)) throw domain_error("tau must lie in (0, 1]");
  if (!(chi >= 0) || !(v_a >= 0)) throw domain_error("chi and V_a must be non-negative");
  if (!(beta >= 0 && beta <= 1)) throw domain_error("beta must lie in [0, 1]");
  if (v_a == 0) return 0;
  auto model = detail::slice_model(tau, chi, v_a, det);
  const double s0 = von_neumann_entropy(model.eve_cov, base);
  Mat prec = model.sigma_ab.inverse();
  Eigen::LLT<Mat> llt(model.sigma_ab);
  Mat l = llt.matrixL();
  auto [x, w] = numerics::gauss_hermite(opt.nodes);
  const double phi = det == Detection::heterodyne ? 1.0 : 0.5;
  const double quadratures = det == Detection::heterodyne ? 2.0 : 1.0;
  double total = 0;
  for (int i = 0; i < opt.nodes; ++i) {
    for (int j = 0; j < opt.nodes; ++j) {
      Vec u(2);
      u << std::sqrt(2.0) * x[i], std::sqrt(2.0) * x[j];
      Vec ab = l * u;
      double lr = 2 * std::abs(prec(0, 1) * ab(0) * ab(1));
      double pe = lr > 700 ? 0.0 : 1 / (1 + std::exp(lr));
      double info = binary_channel_information(pe, base);
      Vec agree = model.eve_gain * Vec(ab.cwiseAbs());
      Vec flip(2);
      flip << std::abs(ab(0)), -std::abs(ab(1));
      Vec disagree = model.eve_gain * flip;
      Mat mix = model.eve_cov + (1 - pe) * agree * agree.transpose() + pe * disagree * disagree.transpose();
      double s_bound = von_neumann_entropy(mix, base) - s0;
      double dk = std::max(beta * info - s_bound, 0.0);
      total += w[i] * w[j] * dk;
    }
  }
  return phi * quadratures * total / M_PI;
}

// ---- finite size -----------------------------------------------------------------------

struct ConfidenceRegion {
  double tau_lo, tau_hi;
  double chi_lo, chi_hi;
};

using PenaltyModel = std::function<double(double)>;

/// Finite-size rate with Eve's information maximized over the parameter-estimation region.
inline double finite_size_rate(const Scenario& sc, double n_total, double n_key, const PenaltyModel& delta,
                               const PenaltyModel& leak, const ConfidenceRegion& region,
                               LogBase base = LogBase::two, int grid = 9) {
  if (!(n_key > 0 && n_key <= n_total)) throw domain_error("need 0 < n <= N");
  if (!(region.tau_lo <= region.tau_hi && region.chi_lo <= region.chi_hi)) {
    throw domain_error("confidence region bounds are inverted");
  }
  auto point = key_rate(sc, base);
  double s_max = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      Scenario s = sc;
      s.tau = region.tau_lo + (region.tau_hi - region.tau_lo) * i / (grid - 1);
      s.chi = region.chi_lo + (region.chi_hi - region.chi_lo) * j / (grid - 1);
      s_max = std::max(s_max, eve_holevo(s, base).s_eve);
    }
  }
  return point.phi * n_key / n_total * (sc.beta * point.I_ab - s_max - delta(n_key) - leak(n_key));
}

}  // namespace gqi::qkd
