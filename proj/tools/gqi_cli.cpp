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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gqi/gqi.hpp"

namespace {

using gqi::io::json;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct Globals {
  std::string log_base = "2";
  double hbar = 2;
  std::uint64_t seed = 0;
  bool csv = false;
  gqi::LogBase base() const { return gqi::parse_log_base(log_base); }
};

json read_json(const std::string& text, const std::string& what) {
  if (text.empty()) throw gqi::domain_error("missing --" + what);
  std::string body = text;
  if (text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw gqi::domain_error("cannot open " + text.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw gqi::domain_error("field \"" + what + "\" is not valid JSON: " + e.what());
  }
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw gqi::domain_error("field \"" + what + "\" has a non-numeric entry \"" + item + "\"");
    }
  }
  return out;
}

std::vector<int> parse_modes(const std::string& s, const std::string& what) {
  std::vector<int> out;
  for (double x : parse_list(s, what)) {
    if (x != static_cast<int>(x) || x < 0) throw gqi::domain_error("field \"" + what + "\" must list mode indices");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

std::complex<double> parse_alpha(const std::string& s) {
  auto v = parse_list(s, "alpha");
  if (v.size() == 1) return {v[0], 0};
  if (v.size() == 2) return {v[0], v[1]};
  throw gqi::domain_error("field \"alpha\" must be re or re,im");
}

/// Grid "lo:hi:n" or a single value.
std::vector<double> parse_grid(const std::string& s, const std::string& what) {
  auto parts = std::vector<std::string>{};
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() == 1) return parse_list(s, what);
  if (parts.size() != 3) throw gqi::domain_error("field \"" + what + "\" must be value or lo:hi:n");
  double lo = parse_list(parts[0], what)[0], hi = parse_list(parts[1], what)[0];
  double n = parse_list(parts[2], what)[0];
  if (n < 1 || n != static_cast<int>(n)) throw gqi::domain_error("field \"" + what + "\" needs a positive count");
  std::vector<double> g;
  for (int k = 0; k < static_cast<int>(n); ++k) g.push_back(n == 1 ? lo : lo + (hi - lo) * k / (n - 1));
  return g;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void csv_header(const std::string& columns) {
  std::cout << "# gaussian-qi v" << gqi::kVersion << "\n" << columns << "\n";
}

gqi::GaussianState make_state(const std::string& kind, double nbar, const std::string& alpha, double r,
                              double theta) {
  if (kind == "vacuum") return gqi::vacuum(1);
  if (kind == "thermal") return gqi::thermal(nbar);
  if (kind == "coherent") return gqi::coherent(parse_alpha(alpha));
  if (kind == "squeezed") return gqi::squeezed_vacuum(r, theta);
  if (kind == "general") return gqi::general_one_mode(nbar, r, theta, parse_alpha(alpha));
  if (kind == "epr") return gqi::epr(r);
  throw gqi::domain_error("field \"kind\" must be vacuum, thermal, coherent, squeezed, general or epr");
}

gqi::fock::StateSpec fock_spec(const json& j, const std::string& what) {
  gqi::fock::StateSpec s;
  const std::string kind = j.value("kind", "");
  if (kind == "coherent") s.kind = gqi::fock::Kind::coherent;
  else if (kind == "squeezed") s.kind = gqi::fock::Kind::squeezed_vacuum;
  else if (kind == "thermal") s.kind = gqi::fock::Kind::thermal;
  else if (kind == "epr") s.kind = gqi::fock::Kind::epr;
  else throw gqi::domain_error("field \"" + what + ".kind\" must be coherent, squeezed, thermal or epr");
  if (j.contains("alpha")) {
    auto a = gqi::io::vec_from_json(j.at("alpha"), what + ".alpha");
    if (a.size() != 2) throw gqi::domain_error("field \"" + what + ".alpha\" must be [re, im]");
    s.alpha = {a(0), a(1)};
  }
  s.r = j.value("r", 0.0);
  s.nbar = j.value("nbar", 0.0);
  s.theta = j.value("theta", 0.0);
  return s;
}

gqi::GaussianState phase_space_of(const gqi::fock::StateSpec& s) {
  switch (s.kind) {
    case gqi::fock::Kind::coherent: return gqi::coherent(s.alpha);
    case gqi::fock::Kind::squeezed_vacuum: return gqi::squeezed_vacuum(s.r, s.theta);
    case gqi::fock::Kind::thermal: return gqi::thermal(s.nbar);
    case gqi::fock::Kind::epr: return gqi::epr(s.r);
  }
  throw gqi::domain_error("unknown state kind");
}

gqi::SymplecticTransform make_gate(const std::string& gate, const std::vector<double>& p) {
  auto need = [&](size_t n) {
    if (p.size() != n) throw gqi::domain_error("field \"param\" needs " + std::to_string(n) + " value(s) for " + gate);
  };
  if (gate == "rotation") return need(1), gqi::rotation(p[0]);
  if (gate == "squeeze") return need(1), gqi::squeeze1(p[0]);
  if (gate == "phase") return need(1), gqi::phase_gate(p[0]);
  if (gate == "fourier") return need(0), gqi::fourier();
  if (gate == "beamsplitter") return need(1), gqi::beam_splitter(p[0]);
  if (gate == "twomode") return need(1), gqi::squeeze2(p[0]);
  if (gate == "cz") return need(1), gqi::cz_gate(p[0]);
  if (gate == "displace") return need(2), gqi::displacement(std::complex<double>(p[0], p[1]));
  throw gqi::domain_error("field \"gate\" is not a known gate");
}

json spectrum_json(const gqi::Vec& v) { return gqi::io::to_json(v); }

json capacity_json(const std::optional<gqi::CapacityValue>& c) {
  if (!c) return nullptr;
  return {{"value", c->value}, {"tag", gqi::to_string(c->tag)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian quantum information toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(gqi::kVersion));
  Globals g;
  app.add_option("--log-base", g.log_base, "Entropy log base: 2 or e")->check(CLI::IsMember({"2", "e"}));
  app.add_option("--hbar", g.hbar, "Must be 2");
  app.add_option("--seed", g.seed, "Seed for sampling subcommands");
  app.add_flag("--csv", g.csv, "Stream sweep rows as CSV");

  std::function<void()> action;

  // state
  auto* state = app.add_subcommand("state", "Gaussian state utilities")->require_subcommand(1);
  std::string kind = "vacuum", alpha = "0,0", json_in;
  double nbar = 0, r = 0, theta = 0;
  auto* make = state->add_subcommand("make", "Build a standard state");
  make->add_option("--kind", kind, "vacuum|thermal|coherent|squeezed|general|epr");
  make->add_option("--nbar", nbar);
  make->add_option("--alpha", alpha, "re,im");
  make->add_option("--r", r);
  make->add_option("--theta", theta);
  make->callback([&] { action = [&] { emit(gqi::io::state_to_json(make_state(kind, nbar, alpha, r, theta))); }; });
  auto* validate = state->add_subcommand("validate", "Check a covariance matrix");
  validate->add_option("--json", json_in, "State JSON or @file")->required();
  validate->callback([&] {
    action = [&] {
      json j = read_json(json_in, "json");
      gqi::Mat cov = gqi::io::mat_from_json(j.at("cov"), "cov");
      auto v = gqi::validate(gqi::GaussianState(cov));
      emit({{"ok", v.ok()}, {"symmetric", v.symmetric_ok}, {"uncertainty", v.uncertainty_ok},
            {"min_symplectic_eigenvalue", v.min_sympl_eig}});
    };
  });
  auto* entropy = state->add_subcommand("entropy", "Von Neumann entropy");
  entropy->add_option("--json", json_in, "State JSON or @file")->required();
  entropy->callback([&] {
    action = [&] {
      auto st = gqi::io::state_from_json(read_json(json_in, "json"));
      auto nu = gqi::symplectic_eigenvalues(st.cov);
      emit({{"entropy", gqi::entropy_of_spectrum(nu, g.base())}, {"symplectic_spectrum", spectrum_json(nu)},
            {"log_base", g.log_base}});
    };
  });

  // unitary
  auto* unitary = app.add_subcommand("unitary", "Gaussian unitaries")->require_subcommand(1);
  std::string gate = "rotation", params, modes = "0";
  auto* uapply = unitary->add_subcommand("apply", "Apply a gate to a state");
  uapply->add_option("--json", json_in, "State JSON or @file")->required();
  uapply->add_option("--gate", gate, "rotation|squeeze|phase|fourier|beamsplitter|twomode|cz|displace");
  uapply->add_option("--param", params, "Comma-separated gate parameters");
  uapply->add_option("--modes", modes, "Target modes");
  uapply->callback([&] {
    action = [&] {
      auto st = gqi::io::state_from_json(read_json(json_in, "json"));
      auto t = make_gate(gate, params.empty() ? std::vector<double>{} : parse_list(params, "param"));
      emit(gqi::io::state_to_json(gqi::apply(st, t, parse_modes(modes, "modes"))));
    };
  });

  // measure
  auto* measure = app.add_subcommand("measure", "Homodyne or heterodyne measurement");
  std::string mkind = "homodyne", outcome;
  int mode = 0;
  measure->add_option("--json", json_in, "State JSON or @file")->required();
  measure->add_option("--kind", mkind)->check(CLI::IsMember({"homodyne", "heterodyne"}));
  measure->add_option("--mode", mode);
  measure->add_option("--theta", theta, "Homodyne angle");
  measure->add_option("--outcome", outcome, "Outcome; sampled with --seed when omitted");
  measure->callback([&] {
    action = [&] {
      auto st = gqi::io::state_from_json(read_json(json_in, "json"));
      gqi::MeasurementKind mk = mkind == "homodyne" ? gqi::MeasurementKind{gqi::Homodyne{mode, theta}}
                                                    : gqi::MeasurementKind{gqi::Heterodyne{mode}};
      gqi::MeasurementRecord rec;
      if (outcome.empty()) {
        rec = gqi::sample(st, mk, g.seed);
      } else {
        auto o = parse_list(outcome, "outcome");
        if (mkind == "homodyne") {
          if (o.size() != 1) throw gqi::domain_error("field \"outcome\" needs one value for homodyne");
          rec = gqi::homodyne_condition(st, mode, theta, o[0]);
        } else {
          if (o.size() != 2) throw gqi::domain_error("field \"outcome\" needs two values for heterodyne");
          rec = gqi::heterodyne_condition(st, mode, Eigen::Vector2d(o[0], o[1]));
        }
      }
      emit({{"outcome", gqi::io::to_json(rec.outcome)}, {"conditioned", gqi::io::state_to_json(rec.conditioned)}});
    };
  });

  // entangle
  auto* entangle = app.add_subcommand("entangle", "Entanglement diagnostics")->require_subcommand(1);
  std::string modes_b = "1";
  auto* etest = entangle->add_subcommand("test", "PPT test and log-negativity");
  etest->add_option("--json", json_in, "State JSON or @file")->required();
  etest->add_option("--modes-b", modes_b, "Modes of the second party");
  etest->callback([&] {
    action = [&] {
      auto st = gqi::io::state_from_json(read_json(json_in, "json"));
      auto mb = parse_modes(modes_b, "modes-b");
      auto ppt = gqi::ppt_test(st, mb);
      emit({{"nu_min", ppt.nu_min}, {"entangled", ppt.entangled}, {"conclusive", ppt.conclusive},
            {"log_negativity", gqi::log_negativity(st, mb, g.base())}});
    };
  });

  // discriminate
  auto* disc = app.add_subcommand("discriminate", "Binary state discrimination")->require_subcommand(1);
  int copies = 1;
  std::string alpha2 = "0.4";
  auto* bounds = disc->add_subcommand("bounds", "Chernoff and fidelity bounds");
  bounds->add_option("--json", json_in, "{\"rho0\": state, \"rho1\": state}")->required();
  bounds->add_option("--copies", copies);
  bounds->callback([&] {
    action = [&] {
      json j = read_json(json_in, "json");
      if (!j.contains("rho0") || !j.contains("rho1")) throw gqi::domain_error("missing field \"rho0\" or \"rho1\"");
      gqi::BinaryHypothesis h{gqi::io::state_from_json(j.at("rho0")), gqi::io::state_from_json(j.at("rho1")), copies};
      auto c = gqi::chernoff_bound(h);
      auto mc = gqi::multicopy_bounds(h);
      json out = {{"p_qc", c.p_qc}, {"s_star", c.s_star}, {"c_min", c.c_min}, {"p_b", mc.p_b},
                  {"exponent", mc.exponent}};
      if (h.rho0.modes() == 1 || gqi::validate(h.rho0).min_sympl_eig < 1 + 1e-9) {
        try {
          double f = gqi::fidelity(h.rho0, h.rho1);
          auto fb = gqi::fidelity_bounds(std::pow(f, copies));
          out["fidelity"] = f;
          out["lower"] = fb.lower;
          out["upper"] = fb.upper;
        } catch (const gqi::unsupported_error&) {
        }
      }
      emit(out);
    };
  });
  auto* receivers = disc->add_subcommand("receivers", "BPSK receiver error probabilities");
  receivers->add_option("--alpha2", alpha2, "|alpha|^2 value or lo:hi:n grid");
  receivers->callback([&] {
    action = [&] {
      auto grid = parse_grid(alpha2, "alpha2");
      json rows = json::array();
      if (g.csv) csv_header("alpha2,helstrom,kennedy,homodyne,odr,odr_beta");
      for (double a2 : grid) {
        if (!(a2 >= 0)) throw gqi::domain_error("field \"alpha2\" must be non-negative");
        double a = std::sqrt(a2);
        auto odr = gqi::odr_optimize(a);
        double hel = gqi::helstrom_bpsk_pe(a), ken = gqi::kennedy_pe(a), hom = gqi::homodyne_pe(a);
        if (g.csv) {
          std::cout << a2 << "," << hel << "," << ken << "," << hom << "," << odr.pe << "," << odr.beta << "\n";
        } else {
          rows.push_back({{"alpha2", a2}, {"helstrom", hel}, {"kennedy", ken}, {"homodyne", hom}, {"odr", odr.pe},
                          {"odr_beta", odr.beta}});
        }
      }
      if (!g.csv) emit(rows.size() == 1 ? rows[0] : rows);
    };
  });

  // channel
  auto* channel = app.add_subcommand("channel", "One-mode Gaussian channels")->require_subcommand(1);
  std::string label;
  double tau = 1, mbar = 1, kappa = 0.01;
  auto channel_input = [&]() -> gqi::CanonicalForm {
    if (!json_in.empty()) return gqi::classify(gqi::io::channel_from_json(read_json(json_in, "json")));
    if (label.empty()) throw gqi::domain_error("missing --json or --class");
    return gqi::classify(gqi::canonical_channel(gqi::parse_channel_class(label), tau, nbar));
  };
  auto* classify = channel->add_subcommand("classify", "Canonical form of a channel");
  classify->add_option("--json", json_in, "Channel JSON {T, N, d} or @file")->required();
  classify->callback([&] {
    action = [&] {
      auto f = channel_input();
      auto dil = gqi::degradability(f);
      emit({{"class", gqi::to_string(f.label)}, {"tau", f.tau}, {"rank", f.rank}, {"nbar", f.nbar},
            {"degradability", gqi::to_string(dil)}});
    };
  });
  auto* capacity = channel->add_subcommand("capacity", "Capacity bounds");
  capacity->add_option("--json", json_in, "Channel JSON or @file");
  capacity->add_option("--class", label, "Canonical class label");
  capacity->add_option("--tau", tau);
  capacity->add_option("--nbar", nbar);
  capacity->add_option("--mbar", mbar, "Input mean photon number");
  capacity->callback([&] {
    action = [&] {
      auto f = channel_input();
      auto c = gqi::capacities(f, mbar, g.base());
      emit({{"class", gqi::to_string(f.label)}, {"classical_pure_loss", capacity_json(c.classical_pure_loss)},
            {"classical_lower", capacity_json(c.classical_lower)}, {"quantum_lower", capacity_json(c.quantum_lower)},
            {"reverse_coherent", capacity_json(c.reverse_coherent)},
            {"entanglement_assisted", capacity_json(c.entanglement_assisted)}, {"log_base", g.log_base}});
    };
  });
  auto* illum = channel->add_subcommand("illumination", "Target detection error bounds");
  illum->add_option("--kappa", kappa);
  illum->add_option("--nbar", nbar);
  illum->add_option("--mbar", mbar);
  illum->add_option("--copies", copies);
  illum->callback([&] {
    action = [&] {
      auto res = gqi::illumination_error_bounds(copies, kappa, nbar, mbar);
      emit({{"p_epr", res.p_epr}, {"p_coherent", res.p_coherent}, {"exponent_epr", res.exponent_epr},
            {"exponent_coherent", res.exponent_coherent}, {"exponent_ratio", res.exponent_epr / res.exponent_coherent},
            {"regime_warning", res.regime_warning}});
    };
  });

  // protocol
  auto* proto = app.add_subcommand("protocol", "Quantum communication protocols")->require_subcommand(1);
  std::string input = "coherent";
  double r_b = 0, v_sq = 1, eta = 1;
  auto* tele = proto->add_subcommand("teleport", "EPR teleportation fidelity");
  tele->add_option("--r", r, "EPR squeezing");
  tele->add_option("--json", json_in, "Input state JSON; coherent vacuum by default");
  tele->callback([&] {
    action = [&] {
      auto in = json_in.empty() ? gqi::vacuum(1) : gqi::io::state_from_json(read_json(json_in, "json"));
      double f = gqi::teleport_fidelity(gqi::epr(r), in.cov);
      emit({{"fidelity", f}, {"band", gqi::to_string(gqi::classify_fidelity(f))},
            {"output", gqi::io::state_to_json(gqi::teleport_output(gqi::epr(r), in))}});
    };
  });
  auto* clone = proto->add_subcommand("clone", "Gaussian 1->2 cloner");
  clone->add_option("--input", input)->check(CLI::IsMember({"coherent"}));
  clone->add_option("--alpha", alpha, "re,im");
  clone->callback([&] {
    action = [&] {
      auto res = gqi::clone_1to2(gqi::coherent(parse_alpha(alpha)));
      emit({{"fidelity_clone", res.fidelity_clone}, {"fidelity_anticlone", res.fidelity_anticlone},
            {"clone", gqi::io::state_to_json(res.clone1)}});
    };
  });
  std::string qp = "0,0";
  auto* swap = proto->add_subcommand("swap", "Entanglement swapping");
  swap->add_option("--r", r, "Squeezing of the first EPR pair");
  swap->add_option("--rb", r_b, "Squeezing of the second EPR pair");
  swap->add_option("--outcome", qp, "q,p Bell outcomes");
  swap->callback([&] {
    action = [&] {
      auto o = parse_list(qp, "outcome");
      if (o.size() != 2) throw gqi::domain_error("field \"outcome\" needs q,p");
      auto res = gqi::entanglement_swap(r, r_b, o[0], o[1]);
      emit({{"log_negativity", res.log_negativity_nats / gqi::log_in(std::exp(1.0), g.base())},
            {"output", gqi::io::state_to_json(res.output)}});
    };
  });
  auto* dense = proto->add_subcommand("densecode", "Dense coding rate");
  dense->add_option("--mbar", mbar);
  dense->add_option("--vsq", v_sq, "Squeezed variance");
  dense->add_option("--eta", eta, "Detection efficiency");
  dense->callback([&] {
    action = [&] { emit({{"rate", gqi::dense_coding_rate(mbar, v_sq, eta, g.base())}, {"log_base", g.log_base}}); };
  });

  // qkd
  auto* qkdc = app.add_subcommand("qkd", "Continuous-variable QKD")->require_subcommand(1);
  std::string states = "coherent", detection = "homodyne", rec = "reverse", scenario_json;
  std::string v_grid = "20", tau_grid = "0.5", chi_grid = "0", beta_grid = "1";
  double phi = std::numeric_limits<double>::quiet_NaN();
  auto add_scenario = [&](CLI::App* c, bool grids) {
    c->add_option("--scenario", scenario_json, "Scenario JSON or @file");
    c->add_option("--states", states)->check(CLI::IsMember({"coherent", "squeezed"}));
    c->add_option("--detection", detection)->check(CLI::IsMember({"homodyne", "heterodyne"}));
    c->add_option("--rec", rec)->check(CLI::IsMember({"direct", "reverse", "DR", "RR"}));
    c->add_option("--V", v_grid, grids ? "Value or lo:hi:n" : "Modulation variance");
    c->add_option("--tau", tau_grid, grids ? "Value or lo:hi:n" : "Transmissivity");
    c->add_option("--chi", chi_grid, grids ? "Value or lo:hi:n" : "Excess noise");
    c->add_option("--beta", beta_grid, grids ? "Value or lo:hi:n" : "Reconciliation efficiency");
    c->add_option("--phi", phi, "Sifting factor override");
  };
  auto base_scenario = [&] {
    gqi::qkd::Scenario s;
    if (!scenario_json.empty()) s = gqi::io::scenario_from_json(read_json(scenario_json, "scenario"));
    s.states = gqi::qkd::parse_states(states);
    s.detection = gqi::qkd::parse_detection(detection);
    s.reconciliation = gqi::qkd::parse_reconciliation(rec);
    if (!std::isnan(phi)) s.phi = phi;
    return s;
  };
  auto single = [&](const std::string& v, const std::string& what) {
    auto gvals = parse_grid(v, what);
    if (gvals.size() != 1) throw gqi::domain_error("field \"" + what + "\" takes a single value here");
    return gvals[0];
  };
  auto* qrate = qkdc->add_subcommand("rate", "Asymptotic key rate (sweeps with grids)");
  add_scenario(qrate, true);
  qrate->callback([&] {
    action = [&] {
      gqi::qkd::Scenario s = base_scenario();
      auto vs = parse_grid(v_grid, "V"), ts = parse_grid(tau_grid, "tau"), cs = parse_grid(chi_grid, "chi"),
           bs = parse_grid(beta_grid, "beta");
      json rows = json::array();
      if (g.csv) csv_header("tau,chi,V,beta,I_ab,S_eve,K");
      for (double t : ts)
        for (double c : cs)
          for (double v : vs)
            for (double b : bs) {
              s.tau = t;
              s.chi = c;
              s.V = v;
              s.beta = b;
              auto k = gqi::qkd::key_rate(s, g.base());
              if (g.csv) {
                std::cout.precision(12);
                std::cout << t << "," << c << "," << v << "," << b << "," << k.I_ab << "," << k.S_eve << "," << k.K
                          << "\n";
              } else {
                rows.push_back({{"scenario", gqi::io::scenario_to_json(s)}, {"I_ab", k.I_ab},
                                {"I_ab_printed", k.I_ab_printed}, {"S_eve", k.S_eve}, {"K", k.K}, {"phi", k.phi}});
              }
            }
      if (!g.csv) emit(rows.size() == 1 ? rows[0] : rows);
    };
  });
  auto* qthr = qkdc->add_subcommand("threshold", "Largest tolerable excess noise");
  add_scenario(qthr, false);
  qthr->callback([&] {
    action = [&] {
      auto s = base_scenario();
      s.V = single(v_grid, "V");
      s.tau = single(tau_grid, "tau");
      s.beta = single(beta_grid, "beta");
      auto th = gqi::qkd::security_threshold(s, g.base());
      emit({{"chi_threshold", th.chi_bar}, {"residual", th.residual}});
    };
  });
  double v_a = 1;
  int nodes = 200;
  auto* qps = qkdc->add_subcommand("postselect", "Post-selected key rate");
  qps->add_option("--tau", tau_grid);
  qps->add_option("--chi", chi_grid);
  qps->add_option("--Va", v_a, "Alice's modulation variance");
  qps->add_option("--detection", detection)->check(CLI::IsMember({"homodyne", "heterodyne"}));
  qps->add_option("--beta", beta_grid);
  qps->add_option("--nodes", nodes, "Gauss-Hermite nodes per axis");
  qps->callback([&] {
    action = [&] {
      gqi::qkd::PostselectionOptions o;
      o.nodes = nodes;
      double k = gqi::qkd::postselection_rate(single(tau_grid, "tau"), single(chi_grid, "chi"), v_a,
                                              gqi::qkd::parse_detection(detection), single(beta_grid, "beta"), o,
                                              g.base());
      emit({{"K", k}});
    };
  });
  double n_total = 1e10, n_key = 1e9, delta = 0, leak = 0, dtau = 0.01, dchi = 0.01;
  auto* qfin = qkdc->add_subcommand("finite", "Finite-size key rate");
  add_scenario(qfin, false);
  qfin->add_option("--N", n_total, "Total exchanged signals");
  qfin->add_option("--n", n_key, "Signals used for the key");
  qfin->add_option("--delta", delta, "Privacy-amplification penalty (constant)");
  qfin->add_option("--leak", leak, "Extra leakage penalty (constant)");
  qfin->add_option("--dtau", dtau, "Half-width of the tau confidence interval");
  qfin->add_option("--dchi", dchi, "Half-width of the chi confidence interval");
  qfin->callback([&] {
    action = [&] {
      auto s = base_scenario();
      s.V = single(v_grid, "V");
      s.tau = single(tau_grid, "tau");
      s.chi = single(chi_grid, "chi");
      s.beta = single(beta_grid, "beta");
      gqi::qkd::ConfidenceRegion reg{std::max(1e-9, s.tau - dtau), std::min(1.0, s.tau + dtau),
                                     std::max(0.0, s.chi - dchi), s.chi + dchi};
      double k = gqi::qkd::finite_size_rate(
          s, n_total, n_key, [&](double) { return delta; }, [&](double) { return leak; }, reg, g.base());
      emit({{"K", k}});
    };
  });

  // cluster
  auto* clus = app.add_subcommand("cluster", "Gaussian cluster states")->require_subcommand(1);
  std::string basis = "q";
  int vertex = 0;
  double m_outcome = 0;
  auto* cbuild = clus->add_subcommand("build", "Compile a graph");
  cbuild->add_option("--json", json_in, "Graph JSON or @file")->required();
  cbuild->callback([&] {
    action = [&] {
      auto cs = gqi::cluster::compile(gqi::io::graph_from_json(read_json(json_in, "json")));
      emit({{"state", gqi::io::state_to_json(cs.state)},
            {"nullifier_variances", gqi::io::to_json(gqi::cluster::nullifier_variances(cs))}});
    };
  });
  auto* cmeas = clus->add_subcommand("measure", "Measure one vertex");
  cmeas->add_option("--json", json_in, "Graph JSON or @file")->required();
  cmeas->add_option("--vertex", vertex);
  cmeas->add_option("--basis", basis, "q, p or an angle in radians");
  cmeas->add_option("--outcome", m_outcome);
  cmeas->callback([&] {
    action = [&] {
      auto cs = gqi::cluster::compile(gqi::io::graph_from_json(read_json(json_in, "json")));
      gqi::cluster::NodeMeasurement m{gqi::cluster::Basis::q, 0, m_outcome};
      if (basis == "p") m.basis = gqi::cluster::Basis::p;
      else if (basis != "q") m = {gqi::cluster::Basis::rotated, parse_list(basis, "basis").at(0), m_outcome};
      auto out = gqi::cluster::measure_node(cs, vertex, m);
      emit({{"graph", gqi::io::graph_to_json(out.graph)},
            {"labels", out.labels},
            {"equivalence", out.equivalence == gqi::cluster::Equivalence::exact ? "exact" : "local_gaussian"},
            {"nullifier_gap", gqi::cluster::nullifier_gap(out)},
            {"state", gqi::io::state_to_json(out.state)}});
    };
  });
  auto* cnull = clus->add_subcommand("nullifiers", "Nullifier variances");
  cnull->add_option("--json", json_in, "Graph JSON or @file")->required();
  cnull->callback([&] {
    action = [&] {
      auto cs = gqi::cluster::compile(gqi::io::graph_from_json(read_json(json_in, "json")));
      emit({{"nullifier_variances", gqi::io::to_json(gqi::cluster::nullifier_variances(cs))}});
    };
  });

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Fock-basis cross-checks")->require_subcommand(1);
  int cutoff = gqi::fock::kDefaultCutoff;
  auto* ocmp = oracle->add_subcommand("compare", "Compare phase-space and Fock-basis metrics");
  ocmp->add_option("--json", json_in, "{\"rho0\": spec, \"rho1\": spec}")->required();
  ocmp->add_option("--cutoff", cutoff);
  ocmp->callback([&] {
    action = [&] {
      json j = read_json(json_in, "json");
      if (!j.contains("rho0") || !j.contains("rho1")) throw gqi::domain_error("missing field \"rho0\" or \"rho1\"");
      auto s0 = fock_spec(j.at("rho0"), "rho0"), s1 = fock_spec(j.at("rho1"), "rho1");
      auto m = gqi::fock::oracle_metrics(gqi::fock::fock_state(s0, cutoff), gqi::fock::fock_state(s1, cutoff));
      gqi::BinaryHypothesis h{phase_space_of(s0), phase_space_of(s1), 1};
      auto c = gqi::chernoff_bound(h);
      json out = {{"oracle", {{"trace_distance", m.trace_distance}, {"helstrom", m.helstrom},
                              {"fidelity", m.fidelity}, {"c_min", m.c_min}, {"s_star", m.s_star}}},
                  {"phase_space", {{"c_min", c.c_min}, {"s_star", c.s_star}}}};
      try {
        out["phase_space"]["fidelity"] = gqi::fidelity(h.rho0, h.rho1);
      } catch (const gqi::unsupported_error&) {
      }
      emit(out);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }
  try {
    if (g.hbar != 2) throw gqi::domain_error("field \"hbar\" is fixed at 2");
    (void)g.base();
    if (action) action();
  } catch (const gqi::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
