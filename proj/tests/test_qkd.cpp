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

#include "test_support.hpp"

namespace gqi::qkd {
namespace {

Scenario make(States s, Detection d, Reconciliation r, double V, double tau, double chi) {
  Scenario sc;
  sc.states = s;
  sc.detection = d;
  sc.reconciliation = r;
  sc.V = V;
  sc.tau = tau;
  sc.chi = chi;
  return sc;
}

// Two-mode symplectic spectrum of the standard form [[x I, z Z], [z Z, y I]].
std::pair<double, double> standard_form_spectrum(double x, double y, double z) {
  const double delta = x * x + y * y - 2 * z * z;
  const double det = (x * y - z * z) * (x * y - z * z);
  const double root = std::sqrt(delta * delta - 4 * det);
  return {std::sqrt((delta + root) / 2), std::sqrt((delta - root) / 2)};
}

// Reverse-reconciliation homodyne rate of the coherent protocol from first principles.
double coherent_homodyne_rr_oracle(double V, double tau, double chi) {
  const double cl = (1 - tau) / tau + chi;
  const double x = V, y = tau * (V + cl), z = std::sqrt(tau * (V * V - 1));
  const double i_ab = 0.5 * std::log2((V + cl) / (1 + cl));
  auto [n1, n2] = standard_form_spectrum(x, y, z);
  const double n3 = std::sqrt(x * (x - z * z / y));
  return 0.5 * (i_ab - (g_function(n1) + g_function(n2) - g_function(n3)));
}

// Heterodyne rates from the per-quadrature signal-to-noise ratio.
double coherent_heterodyne_mi_oracle(double V, double tau, double chi) {
  const double cl = (1 - tau) / tau + chi;
  return std::log2(1 + tau * (V - 1) / (tau * (1 + cl) + 1));
}

TEST(Scenario, ValidationAndParsing) {
  Scenario sc;
  sc.V = 0.5;
  EXPECT_THROW(check(sc), domain_error);
  sc = Scenario{};
  sc.tau = 0;
  EXPECT_THROW(check(sc), domain_error);
  sc = Scenario{};
  sc.chi = -1;
  EXPECT_THROW(check(sc), domain_error);
  EXPECT_EQ(parse_reconciliation("RR"), Reconciliation::reverse);
  EXPECT_EQ(parse_reconciliation("direct"), Reconciliation::direct);
  EXPECT_EQ(parse_states("squeezed"), States::squeezed);
  EXPECT_EQ(parse_detection("heterodyne"), Detection::heterodyne);
  EXPECT_THROW(parse_detection("photon"), domain_error);
}

TEST(Scenario, SharedCovarianceIsPhysical) {
  for (double tau : {0.05, 0.5, 1.0}) {
    for (double chi : {0.0, 0.1, 1.0}) {
      auto sc = make(States::coherent, Detection::homodyne, Reconciliation::reverse, 20, tau, chi);
      EXPECT_TRUE(validate(GaussianState(shared_cm(sc))).ok());
    }
  }
  auto sc = make(States::coherent, Detection::homodyne, Reconciliation::reverse, 5, 0.5, 0.1);
  EXPECT_NEAR(shared_cm(sc)(2, 2), 0.5 * (5 + 1 + 0.1), 1e-14);
}

TEST(Scenario, SiftingDefaults) {
  Scenario sc;
  EXPECT_EQ(sifting(sc), 0.5);
  sc.detection = Detection::heterodyne;
  EXPECT_EQ(sifting(sc), 1.0);
  sc.phi = 0.8;
  EXPECT_EQ(sifting(sc), 0.8);
}

TEST(EbSource, CoherentLimitAndSqueezedLimit) {
  auto c = eb_source_params(20, 0.5);
  EXPECT_NEAR(c.gamma_q, c.gamma_p, 1e-15);
  EXPECT_NEAR(c.x, 1, 1e-15);
  auto s = eb_source_params(20, 1.0);
  EXPECT_NEAR(s.gamma_p, 0, 1e-15);
  EXPECT_NEAR(s.gamma_q, std::sqrt(399.0) / 20, 1e-15);
}

TEST(MutualInformation, HomodyneMatchesClosedForms) {
  for (double tau : {0.2, 0.6, 1.0}) {
    for (double chi : {0.0, 0.05}) {
      auto co = make(States::coherent, Detection::homodyne, Reconciliation::reverse, 20, tau, chi);
      auto sq = make(States::squeezed, Detection::homodyne, Reconciliation::reverse, 20, tau, chi);
      auto mc = mutual_information(co);
      auto ms = mutual_information(sq);
      EXPECT_NEAR(mc.first_principles, mc.printed, 1e-10);
      EXPECT_NEAR(ms.first_principles, ms.printed, 1e-10);
      const double cl = (1 - tau) / tau + chi;
      EXPECT_NEAR(mc.printed, 0.5 * std::log2((20 + cl) / (1 + cl)), 1e-12);
    }
  }
}

TEST(MutualInformation, IdealChannelCoherentHomodyne) {
  auto sc = make(States::coherent, Detection::homodyne, Reconciliation::reverse, 20, 1, 0);
  EXPECT_NEAR(mutual_information(sc).first_principles, 0.5 * std::log2(20.0), 1e-10);
}

TEST(MutualInformation, HeterodyneIncludesDetectionNoise) {
  for (double tau : {0.3, 0.8}) {
    auto sc = make(States::coherent, Detection::heterodyne, Reconciliation::reverse, 20, tau, 0.02);
    auto mi = mutual_information(sc);
    EXPECT_NEAR(mi.first_principles, coherent_heterodyne_mi_oracle(20, tau, 0.02), 1e-10);
    EXPECT_GT(mi.printed, mi.first_principles);
  }
}

TEST(KeyRate, CoherentHomodyneReverseMatchesOracle) {
  for (double tau : {0.1, 0.4, 0.9}) {
    for (double chi : {0.0, 0.02, 0.1}) {
      auto sc = make(States::coherent, Detection::homodyne, Reconciliation::reverse, 20, tau, chi);
      EXPECT_NEAR(key_rate(sc).K, coherent_homodyne_rr_oracle(20, tau, chi), 1e-9)
          << "tau=" << tau << " chi=" << chi;
    }
  }
}

TEST(KeyRate, ReverseReconciliationPositiveBelowThreeDecibels) {
  for (double tau = 0.1; tau < 0.95; tau += 0.1) {
    auto sc = make(States::coherent, Detection::homodyne, Reconciliation::reverse, 20, tau, 0);
    EXPECT_GT(key_rate(sc).K, 0) << tau;
  }
}

TEST(KeyRate, DirectReconciliationLimit) {
  auto below = make(States::coherent, Detection::homodyne, Reconciliation::direct, 1e7, 0.49, 0);
  auto above = make(States::coherent, Detection::homodyne, Reconciliation::direct, 1e7, 0.51, 0);
  EXPECT_LT(key_rate(below).K, 0);
  EXPECT_GT(key_rate(above).K, 0);
}

TEST(KeyRate, PerfectChannelHasNoEve) {
  for (auto det : {Detection::homodyne, Detection::heterodyne}) {
    for (auto rec : {Reconciliation::direct, Reconciliation::reverse}) {
      auto sc = make(States::coherent, det, rec, 20, 1, 0);
      auto k = key_rate(sc);
      EXPECT_NEAR(k.S_eve, 0, 1e-6);
      EXPECT_NEAR(k.K, k.phi * k.I_ab, 1e-6);
    }
  }
}

TEST(KeyRate, MonotoneInExcessNoise) {
  for (auto st : {States::coherent, States::squeezed}) {
    for (auto det : {Detection::homodyne, Detection::heterodyne}) {
      double prev = INFINITY;
      for (double chi = 0; chi <= 0.3; chi += 0.05) {
        auto sc = make(st, det, Reconciliation::reverse, 20, 0.5, chi);
        double k = key_rate(sc).K;
        EXPECT_LT(k, prev);
        prev = k;
      }
    }
  }
}

TEST(KeyRate, LogBaseScales) {
  auto sc = make(States::squeezed, Detection::heterodyne, Reconciliation::direct, 15, 0.7, 0.01);
  EXPECT_NEAR(key_rate(sc, LogBase::e).K, key_rate(sc).K * std::log(2.0), 1e-10);
}

TEST(KeyRate, ReconciliationEfficiency) {
  auto sc = make(States::coherent, Detection::homodyne, Reconciliation::reverse, 20, 0.5, 0);
  auto full = key_rate(sc);
  sc.beta = 0.9;
  auto part = key_rate(sc);
  EXPECT_NEAR(full.K - part.K, full.phi * 0.1 * full.I_ab, 1e-12);
}

TEST(Holevo, DilationAgreesWithPurificationForAllProtocols) {
  for (auto st : {States::coherent, States::squeezed}) {
    for (auto det : {Detection::homodyne, Detection::heterodyne}) {
      for (auto rec : {Reconciliation::direct, Reconciliation::reverse}) {
        for (double tau : {0.3, 0.8}) {
          for (double chi : {0.0, 0.07}) {
            auto sc = make(st, det, rec, 12, tau, chi);
            EXPECT_NEAR(eve_holevo_dilation(sc), eve_holevo(sc).s_eve, 1e-8)
                << to_string(st) << " " << to_string(det) << " " << to_string(rec);
          }
        }
      }
    }
  }
}

TEST(Holevo, ClonerReproducesSharedCovariance) {
  auto sc = make(States::coherent, Detection::homodyne, Reconciliation::reverse, 9, 0.4, 0.2);
  auto st = cloner_attack_state(sc);
  Mat ab = partial_trace(st, {0, 1}).cov;
  EXPECT_LT((ab - shared_cm(sc)).norm(), 1e-10);
  EXPECT_NEAR(von_neumann_entropy(st), 0, 1e-6);
  sc.tau = 1;
  EXPECT_THROW(cloner_attack_state(sc), unsupported_error);
}

TEST(Threshold, RootOfKeyRate) {
  auto sc = make(States::coherent, Detection::homodyne, Reconciliation::reverse, 20, 0.5, 0);
  auto t = security_threshold(sc);
  EXPECT_GT(t.chi_bar, 0);
  EXPECT_LE(std::abs(t.residual), 1e-10);
  sc.chi = t.chi_bar * 0.99;
  EXPECT_GT(key_rate(sc).K, 0);
  sc.chi = t.chi_bar * 1.01;
  EXPECT_LT(key_rate(sc).K, 0);
  auto dr = make(States::coherent, Detection::homodyne, Reconciliation::direct, 20, 0.3, 0);
  EXPECT_EQ(security_threshold(dr).chi_bar, 0);
}

TEST(Postselection, BinaryChannel) {
  EXPECT_NEAR(binary_channel_information(0), 1, 1e-15);
  EXPECT_NEAR(binary_channel_information(0.5), 0, 1e-15);
}

TEST(Postselection, RatesBeyondThreeDecibels) {
  EXPECT_EQ(postselection_rate(0.5, 0, 0, Detection::homodyne), 0);
  for (double tau : {0.9, 0.5, 0.2}) {
    EXPECT_GT(postselection_rate(tau, 0, 1.0, Detection::homodyne, 1, {100}), 0) << tau;
  }
  EXPECT_GT(postselection_rate(0.2, 0, 1.0, Detection::heterodyne, 1, {60}), 0);
  EXPECT_LT(postselection_rate(0.5, 0, 1.0, Detection::homodyne, 1, {100}),
            postselection_rate(0.9, 0, 1.0, Detection::homodyne, 1, {100}));
}

TEST(Postselection, QuadratureConverges) {
  double a = postselection_rate(0.5, 0.01, 1.0, Detection::homodyne, 1, {160});
  double b = postselection_rate(0.5, 0.01, 1.0, Detection::homodyne, 1, {320});
  EXPECT_NEAR(a, b, 5e-3 * std::abs(b));
}

TEST(FiniteSize, ReducesToAsymptoticWithoutPenalties) {
  auto sc = make(States::coherent, Detection::homodyne, Reconciliation::reverse, 20, 0.5, 0.01);
  auto zero = [](double) { return 0.0; };
  ConfidenceRegion point{0.5, 0.5, 0.01, 0.01};
  EXPECT_NEAR(finite_size_rate(sc, 1e6, 1e6, zero, zero, point), key_rate(sc).K, 1e-12);
  ConfidenceRegion wide{0.45, 0.55, 0.0, 0.02};
  auto delta = [](double n) { return 7 * std::sqrt(std::log2(2 / 1e-10) / n); };
  double fs = finite_size_rate(sc, 1e10, 5e9, delta, zero, wide);
  EXPECT_LT(fs, key_rate(sc).K * 0.5);
  ConfidenceRegion bad{0.6, 0.5, 0, 0};
  EXPECT_THROW(finite_size_rate(sc, 10, 5, zero, zero, bad), domain_error);
}

}  // namespace
}  // namespace gqi::qkd
