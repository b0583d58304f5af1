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

#include <unsupported/Eigen/MatrixFunctions>

#include <chrono>
#include <cstdio>
#include <random>
#include <string>

#include "gqi/gqi.hpp"

namespace {

using namespace gqi;
using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---- random generators --------------------------------------------------------------

Mat random_passive(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  CMat z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = {nd(rng), nd(rng)};
  Eigen::HouseholderQR<CMat> qr(z);
  CMat u = qr.householderQ();
  Mat k(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      k(2 * i, 2 * j) = u(i, j).real();
      k(2 * i, 2 * j + 1) = -u(i, j).imag();
      k(2 * i + 1, 2 * j) = u(i, j).imag();
      k(2 * i + 1, 2 * j + 1) = u(i, j).real();
    }
  }
  return k;
}

Mat random_symplectic(int n, std::mt19937_64& rng, double max_r) {
  std::uniform_real_distribution<double> ur(-max_r, max_r);
  Mat d = Mat::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    const double r = ur(rng);
    d(2 * k, 2 * k) = std::exp(-r);
    d(2 * k + 1, 2 * k + 1) = std::exp(r);
  }
  return random_passive(n, rng) * d * random_passive(n, rng);
}

// ---- criteria ----------------------------------------------------------------------

void criterion1() {
  const double tol = 1e-9, budget = 30;
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> un(1.0, 5.0);
  const auto t0 = Clock::now();
  double worst_w = 0, worst_e = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 5;
    Vec nu(2 * n);
    for (int k = 0; k < n; ++k) nu(2 * k) = nu(2 * k + 1) = un(rng);
    Mat s = random_symplectic(n, rng, 1.0);
    Mat v = s * nu.asDiagonal() * s.transpose();
    v = 0.5 * (v + v.transpose());
    worst_w = std::max(worst_w, williamson(v).residual);
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 5;
    Mat s = random_symplectic(n, rng, 1.0) * random_symplectic(n, rng, 1.0);
    worst_e = std::max(worst_e, euler(s).residual);
  }
  const double t = seconds_since(t0);
  report(1, worst_w <= tol && worst_e <= tol && t < budget,
         "max Williamson residual " + fmt("%.2e", worst_w) + ", max Euler residual " + fmt("%.2e", worst_e) +
             " (tol 1e-9), runtime " + fmt("%.2f", t) + " s (budget 30 s)");
}

void criterion2() {
  const double tol_nu = 1e-10, tol_pt = 1e-12;
  double worst_nu = 0, worst_pt = 0;
  for (int k = 0; k <= 12; ++k) {
    const double r = 0.25 * k;
    auto st = epr(r);
    const double nu = pt_symplectic_eigenvalues(st, {1})(0);
    worst_nu = std::max(worst_nu, std::abs(nu - std::exp(-2 * r)));
    const double sh = std::sinh(r);
    auto red = partial_trace(st, {0});
    Mat expect = thermal(sh * sh).cov;
    worst_pt = std::max(worst_pt, (red.cov - expect).cwiseAbs().maxCoeff() / expect(0, 0) + red.mean.norm());
  }
  report(2, worst_nu <= tol_nu && worst_pt <= tol_pt,
         "max |nu_min - exp(-2r)| " + fmt("%.2e", worst_nu) + " (tol 1e-10), max relative thermal mismatch " +
             fmt("%.2e", worst_pt) + " (tol 1e-12), r in {0, 0.25, ..., 3}");
}

void criterion3() {
  const double tol = 1e-12;
  double worst = 0;
  for (int k = 0; k <= 12; ++k) {
    const double r = 0.25 * k;
    const double f = teleport_fidelity(epr(r), Mat::Identity(2, 2));
    worst = std::max(worst, std::abs(f - 1 / (1 + std::exp(-2 * r))));
  }
  const double f0 = teleport_fidelity(epr(0), Mat::Identity(2, 2));
  report(3, worst <= tol && std::abs(f0 - 0.5) <= 1e-15,
         "max |F - 1/(1+exp(-2r))| " + fmt("%.2e", worst) + " (tol 1e-12), F(0) = " + fmt("%.4f", f0));
}

void criterion4() {
  const double tol = 1e-12;
  std::mt19937_64 rng(1004);
  std::uniform_real_distribution<double> ua(-3, 3);
  double worst_f = 0, worst_m = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto in = coherent(std::complex<double>(ua(rng), ua(rng)));
    auto c = clone_1to2(in);
    auto f = clone_1to2_formula(in);
    worst_f = std::max({worst_f, std::abs(c.fidelity_clone - 2.0 / 3), std::abs(c.fidelity_anticlone - 0.5)});
    for (auto [x, y] : {std::pair{&c.clone1, &f.clone1}, {&c.clone2, &f.clone2}, {&c.anticlone, &f.anticlone}}) {
      worst_m = std::max({worst_m, (x->cov - y->cov).cwiseAbs().maxCoeff(),
                          (x->mean - y->mean).cwiseAbs().maxCoeff()});
    }
  }
  report(4, worst_f <= tol && worst_m <= tol,
         "max fidelity deviation " + fmt("%.2e", worst_f) + ", max circuit-vs-formula entry " +
             fmt("%.2e", worst_m) + " (tol 1e-12, 100 inputs)");
}

void criterion5() {
  const double slack = 1e-12;
  int violations = 0;
  for (int k = 0; k < 200; ++k) {
    const double a2 = 0.01 + (2.0 - 0.01) * k / 199;
    const double a = std::sqrt(a2);
    const double h = helstrom_bpsk_pe(a);
    const double o = odr_optimize(a).pe;
    const double m = std::min(kennedy_pe(a), homodyne_pe(a));
    if (h > o + slack || o > m + slack) ++violations;
  }
  const double x = homodyne_kennedy_crossover();
  report(5, violations == 0 && std::abs(x - 0.4) <= 0.1,
         "hierarchy violations " + std::to_string(violations) + "/200 (slack 1e-12), crossover alpha^2 = " +
             fmt("%.4f", x) + " (target 0.4 +- 0.1)");
}

// Gaussian state built in the Fock basis on a large cutoff, then truncated.
CMat fock_gaussian(double nbar, double r, double phi, std::complex<double> alpha, int cutoff) {
  const int big = 3 * cutoff;
  CMat a = fock::annihilation(big);
  CMat ad = a.adjoint();
  CMat th = fock::fock_state({fock::Kind::thermal, 0, 0, nbar}, big);
  const std::complex<double> z = std::polar(r, phi);
  CMat sq = (0.5 * (std::conj(z) * a * a - z * ad * ad)).exp();
  CMat d = (alpha * ad - std::conj(alpha) * a).exp();
  CMat rho = d * sq * th * sq.adjoint() * d.adjoint();
  CMat cut = rho.topLeftCorner(cutoff, cutoff);
  cut /= cut.trace();
  return 0.5 * (cut + cut.adjoint());
}

void criterion6() {
  const double slack = 1e-6, budget = 120;
  const int cutoff = 40;
  std::mt19937_64 rng(1006);
  std::uniform_real_distribution<double> un(0, 0.5), ur(0, 0.4), uphi(0, 2 * M_PI), ua(-0.7, 0.7);
  auto draw = [&] {
    return fock_gaussian(un(rng), ur(rng), uphi(rng), {ua(rng), ua(rng)}, cutoff);
  };
  const auto t0 = Clock::now();
  int violations = 0;
  double worst_gap = 0;
  for (int trial = 0; trial < 200; ++trial) {
    CMat r0 = draw(), r1 = draw();
    const double p_h = 0.5 * (1 - fock::trace_distance(r0, r1));
    auto g0 = fock::moments(r0, cutoff, 1);
    auto g1 = fock::moments(r1, cutoff, 1);
    BinaryHypothesis h{g0, g1, 1};
    const double f = fidelity_1mode(g0, g1);
    auto fb = fidelity_bounds(f);
    const double p_qc = chernoff_bound(h).p_qc;
    const double p_b = bhattacharyya(h);
    const double chain[5] = {fb.lower, p_h, p_qc, p_b, fb.upper};
    for (int k = 0; k < 4; ++k) {
      worst_gap = std::max(worst_gap, chain[k] - chain[k + 1]);
      if (chain[k] > chain[k + 1] + slack) ++violations;
    }
  }
  const double t = seconds_since(t0);
  report(6, violations == 0 && t < budget,
         "chain violations " + std::to_string(violations) + " over 200 pairs (slack 1e-6, worst " +
             fmt("%.2e", worst_gap) + "), runtime " + fmt("%.2f", t) + " s (budget 120 s)");
}

void criterion7() {
  struct Row {
    ChannelClass label;
    double tau, nbar;
  };
  const Row rows[] = {{ChannelClass::A1, 0, 1.0},     {ChannelClass::A2, 0, 0.5},      {ChannelClass::B1, 1, 0},
                      {ChannelClass::B2, 1, 0.7},     {ChannelClass::B2_Id, 1, 0},     {ChannelClass::C_Loss, 0.3, 0.4},
                      {ChannelClass::C_Amp, 1.7, 0.2}, {ChannelClass::D, -0.6, 0.3}};
  int round_trip = 0, dilation_checked = 0;
  double worst_dil = 0;
  std::mt19937_64 rng(1007);
  std::uniform_real_distribution<double> ud(-1, 1);
  for (const auto& row : rows) {
    auto ch = canonical_channel(row.label, row.tau, row.nbar);
    auto f = classify(ch);
    if (f.label == row.label && std::abs(f.tau - row.tau) < 1e-12) ++round_trip;
    if (row.label == ChannelClass::B2) continue;
    auto dil = dilate(f);
    Mat s = random_symplectic(2, rng, 0.5);
    Vec m(4);
    for (int k = 0; k < 4; ++k) m(k) = ud(rng);
    GaussianState in(m, 1.5 * s * s.transpose());
    auto a = apply_channel(ch, in, 1);
    auto b = partial_trace(apply_dilation(dil, in, 1), {0, 1});
    worst_dil = std::max({worst_dil, (a.cov - b.cov).cwiseAbs().maxCoeff(), (a.mean - b.mean).cwiseAbs().maxCoeff()});
    ++dilation_checked;
  }
  double worst_q = 0;
  for (double tau : {-2.0, -0.6, 0.0, 0.1, 0.3, 0.5}) {
    for (double nbar : {0.0, 0.5, 2.0}) worst_q = std::max(worst_q, quantum_capacity_lower(tau, nbar));
  }
  const double q07 = quantum_capacity_lower(0.7, 0);
  const double mbar = 1.0, mu = 2 * mbar + 1;
  const double ce_gap = std::abs(entanglement_assisted_pure_loss(1 - 1e-12, mbar) - 2 * g_function(mu));
  const bool pass = round_trip == 8 && worst_dil <= 1e-10 && worst_q == 0 && std::abs(q07 - 1.22239) <= 1e-5 &&
                    ce_gap <= 1e-6;
  report(7, pass,
         "round trips " + std::to_string(round_trip) + "/8, dilation mismatch " + fmt("%.2e", worst_dil) +
             " over " + std::to_string(dilation_checked) + " dilatable classes (tol 1e-10), max Q_lower(tau<=1/2) " +
             fmt("%.1e", worst_q) + ", Q_lower(0.7) = " + fmt("%.6f", q07) + " (1.22239 +- 1e-5), |C_E - 2g(mu)| " +
             fmt("%.2e", ce_gap) + " (tol 1e-6)");
}

void criterion8() {
  using namespace qkd;
  double worst = 0;
  for (auto st : {States::coherent, States::squeezed}) {
    for (auto det : {Detection::homodyne, Detection::heterodyne}) {
      for (auto rec : {Reconciliation::direct, Reconciliation::reverse}) {
        for (double tau : {0.1, 0.3, 0.5, 0.7, 0.9}) {
          for (double chi : {0.0, 0.025, 0.05, 0.075, 0.1}) {
            for (double v : {5.0, 20.0, 100.0}) {
              Scenario sc{st, det, rec, v, tau, chi};
              worst = std::max(worst, std::abs(eve_holevo_dilation(sc) - eve_holevo(sc).s_eve));
            }
          }
        }
      }
    }
  }
  double min_rr = INFINITY;
  for (int k = 1; k <= 9; ++k) {
    Scenario sc{States::coherent, Detection::homodyne, Reconciliation::reverse, 20, 0.1 * k, 0};
    min_rr = std::min(min_rr, key_rate(sc).K);
  }
  // The direct-reconciliation zero approaches tau = 1/2 only for large modulation.
  const double v_dr = 1e7;
  auto k_dr = [&](double tau) {
    Scenario sc{States::coherent, Detection::homodyne, Reconciliation::direct, v_dr, tau, 0};
    return key_rate(sc).K;
  };
  const double root = numerics::bisect_root(k_dr, 0.4, 0.6, 1e-12);
  double worst_res = 0;
  for (double tau : {0.3, 0.5, 0.8}) {
    Scenario sc{States::coherent, Detection::homodyne, Reconciliation::reverse, 20, tau, 0};
    worst_res = std::max(worst_res, std::abs(security_threshold(sc).residual));
  }
  const bool pass = worst <= 1e-9 && min_rr > 0 && std::abs(root - 0.5) <= 1e-6 && worst_res <= 1e-8;
  report(8, pass,
         "max |S_eve purification - dilation| " + fmt("%.2e", worst) + " on 5x5x3 x 8 protocols (tol 1e-9), min RR K " +
             fmt("%.4f", min_rr) + " (> 0), DR zero at tau = " + fmt("%.9f", root) +
             " for V = 1e7 (0.5 +- 1e-6), max threshold residual " + fmt("%.2e", worst_res) + " (tol 1e-8)");
}

double log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= x.size();
  double num = 0, den = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mx) * (std::log(y[i]) - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

void criterion9() {
  double worst_null = 0;
  for (double r : {0.5, 1.0, 2.0}) {
    for (const auto& gr : {cluster::line_graph(6, r), cluster::star_graph(5, r), cluster::lattice_graph(4, 4, r)}) {
      auto v = cluster::nullifier_variances(cluster::compile(gr));
      worst_null = std::max(worst_null, (v.array() - std::exp(-2 * r)).abs().maxCoeff());
    }
  }
  const std::vector<double> rs{0.5, 1.0, 1.5, 2.0};
  std::vector<double> gq, gp;
  for (double r : rs) {
    auto cs = cluster::compile(cluster::line_graph(5, r));
    gq.push_back(cluster::nullifier_gap(cluster::measure_node(cs, 2, {cluster::Basis::q, 0, 0})));
    gp.push_back(cluster::nullifier_gap(cluster::measure_node(cs, 2, {cluster::Basis::p, 0, 0})));
  }
  bool monotone = true;
  for (size_t i = 1; i < rs.size(); ++i) monotone = monotone && gq[i] < gq[i - 1] && gp[i] < gp[i - 1];
  const double sq = log_slope(rs, gq), sp = log_slope(rs, gp);

  auto in = general_one_mode(0.2, 0.1, 0.3);
  const double vs = 0.2;
  auto out = cluster::wire_teleport_step(in, vs);
  const double closed_gap = std::abs(out.cov(0, 0) - cluster::wire_output_var_q(in.cov, vs));
  GaussianState anc(Vec::Zero(2), Eigen::Vector2d(1 / vs, vs).asDiagonal().toDenseMatrix());
  auto joint = apply(tensor(in, anc), cz_gate(1.0));
  Eigen::LLT<Mat> llt(joint.cov);
  std::mt19937_64 rng(1009);
  std::normal_distribution<double> nd;
  const int n = 100000;
  double spp = 0, sqq = 0, spq = 0;
  for (int s = 0; s < n; ++s) {
    Eigen::Vector4d z(nd(rng), nd(rng), nd(rng), nd(rng));
    Vec x = llt.matrixL() * z;
    spp += x(1) * x(1);
    sqq += x(2) * x(2);
    spq += x(1) * x(2);
  }
  const double mc = (sqq - spq * spq / spp) / (n - 2);
  const double sigma = out.cov(0, 0) * std::sqrt(2.0 / n);
  const double z_score = std::abs(mc - out.cov(0, 0)) / sigma;
  const bool pass = worst_null <= 1e-12 && monotone && std::abs(sq + 2) <= 0.1 && std::abs(sp + 2) <= 0.1 &&
                    closed_gap <= 1e-10 && z_score <= 5;
  report(9, pass,
         "max nullifier deviation " + fmt("%.2e", worst_null) + " (tol 1e-12), gaps monotone " +
             (monotone ? "yes" : "no") + ", fit exponents q " + fmt("%.4f", sq) + " p " + fmt("%.4f", sp) +
             " (-2 +- 0.1), wire closed-form gap " + fmt("%.2e", closed_gap) + " (tol 1e-10), Monte-Carlo " +
             fmt("%.2f", z_score) + " sigma (<= 5, 1e5 samples)");
}

void criterion10() {
  using fock::Kind;
  struct Pair {
    fock::StateSpec s0, s1;
    GaussianState g0, g1;
    int cutoff;
  };
  const std::complex<double> a(0.5, -0.2);
  const std::vector<Pair> pairs{
      {{Kind::coherent, a}, {Kind::coherent, 0}, coherent(a), vacuum(1), 40},
      {{Kind::squeezed_vacuum, 0, 0.4}, {Kind::coherent, a}, squeezed_vacuum(0.4), coherent(a), 40},
      {{Kind::squeezed_vacuum, 0, 0.3, 0, 0.7}, {Kind::squeezed_vacuum, 0, 0.3}, squeezed_vacuum(0.3, 0.7),
       squeezed_vacuum(0.3), 40},
      {{Kind::thermal, 0, 0, 0.3}, {Kind::thermal, 0, 0, 0.9}, thermal(0.3), thermal(0.9), 40},
      {{Kind::thermal, 0, 0, 0.5}, {Kind::squeezed_vacuum, 0, 0.5}, thermal(0.5), squeezed_vacuum(0.5), 40},
      {{Kind::epr, 0, 0.3}, {Kind::epr, 0, 0.5}, epr(0.3), epr(0.5), 20},
  };
  double worst_f = 0, worst_c = 0;
  for (const auto& p : pairs) {
    CMat r0 = fock::fock_state(p.s0, p.cutoff), r1 = fock::fock_state(p.s1, p.cutoff);
    worst_f = std::max(worst_f, std::abs(fidelity(p.g0, p.g1) - fock::fidelity(r0, r1)));
    BinaryHypothesis h{p.g0, p.g1, 1};
    for (double s : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      worst_c = std::max(worst_c, std::abs(chernoff_cs(h, s) - fock::chernoff_cs(r0, r1, s)));
    }
  }
  report(10, worst_f <= 1e-6 && worst_c <= 1e-6,
         "max fidelity gap " + fmt("%.2e", worst_f) + ", max C_s gap " + fmt("%.2e", worst_c) +
             " (tol 1e-6, coherent/squeezed/thermal/EPR pairs)");
}

void criterion11() {
  const double kappa = 0.01, nbar = 20, mbar = 0.01;
  double lo = INFINITY, hi = 0;
  for (int m : {1000, 10000, 100000, 1000000}) {
    auto r = illumination_error_bounds(m, kappa, nbar, mbar);
    const double ratio = r.exponent_epr / r.exponent_coherent;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  const bool pass = std::abs(lo / 4 - 1) <= 0.1 && std::abs(hi / 4 - 1) <= 0.1;
  report(11, pass,
         "EPR/coherent exponent ratio in [" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) +
             "] over M in {1e3..1e6} at kappa 0.01, nbar 20, mbar 0.01 (target 4 +- 10%)");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
