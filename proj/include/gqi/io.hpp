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

#include <string>

#include "gqi/channels.hpp"
#include "gqi/cluster.hpp"
#include "gqi/phase_space.hpp"
#include "gqi/qkd.hpp"
#include "json.hpp"

namespace gqi::io {

using json = nlohmann::json;

namespace detail {

inline const json& field(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw domain_error("missing field \"" + key + "\"");
  return j.at(key);
}

inline double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw domain_error("field \"" + what + "\" must be a number");
  return j.get<double>();
}

}  // namespace detail

inline json to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v(k));
  return a;
}

inline json to_json(const Mat& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    a.push_back(row);
  }
  return a;
}

inline Vec vec_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw domain_error("field \"" + what + "\" must be an array");
  Vec v(j.size());
  for (size_t k = 0; k < j.size(); ++k) v(k) = detail::number(j[k], what + "[" + std::to_string(k) + "]");
  return v;
}

/// Row-major matrix.
inline Mat mat_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw domain_error("field \"" + what + "\" must be a non-empty array of rows");
  const size_t cols = j[0].is_array() ? j[0].size() : 0;
  Mat m(j.size(), cols);
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string row = what + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != cols) throw domain_error("field \"" + row + "\" has the wrong length");
    for (size_t k = 0; k < cols; ++k) m(i, k) = detail::number(j[i][k], row + "[" + std::to_string(k) + "]");
  }
  return m;
}

inline json state_to_json(const GaussianState& st) {
  return {{"hbar", 2}, {"mean", to_json(st.mean)}, {"cov", to_json(st.cov)}};
}

/// Parses and validates a state; the hbar field, when present, must be 2.
inline GaussianState state_from_json(const json& j) {
  if (j.contains("hbar") && detail::number(j.at("hbar"), "hbar") != 2) {
    throw domain_error("field \"hbar\" must be 2");
  }
  Mat cov = mat_from_json(detail::field(j, "cov"), "cov");
  Vec mean = j.contains("mean") ? vec_from_json(j.at("mean"), "mean") : Vec::Zero(cov.rows());
  GaussianState st;
  try {
    st = GaussianState(mean, cov);
  } catch (const shape_error& e) {
    throw domain_error(std::string("field \"cov\": ") + e.what());
  }
  auto v = validate(st);
  if (!v.symmetric_ok) throw domain_error("field \"cov\" is not symmetric");
  if (!v.uncertainty_ok) throw domain_error("field \"cov\" violates the uncertainty principle");
  return st;
}

inline json channel_to_json(const GaussianChannel& ch) {
  return {{"T", to_json(ch.t)}, {"N", to_json(ch.n)}, {"d", to_json(ch.d)}};
}

inline GaussianChannel channel_from_json(const json& j) {
  GaussianChannel ch;
  ch.t = mat_from_json(detail::field(j, "T"), "T");
  ch.n = mat_from_json(detail::field(j, "N"), "N");
  ch.d = j.contains("d") ? vec_from_json(j.at("d"), "d") : Vec::Zero(2);
  if (ch.t.rows() != 2 || ch.t.cols() != 2) throw domain_error("field \"T\" must be 2x2");
  if (ch.n.rows() != 2 || ch.n.cols() != 2) throw domain_error("field \"N\" must be 2x2");
  if (ch.d.size() != 2) throw domain_error("field \"d\" must have length 2");
  auto c = check_channel(ch);
  if (!c.ok) throw domain_error("fields \"T\", \"N\": " + c.reason);
  return ch;
}

inline json graph_to_json(const cluster::ClusterGraph& g) {
  json v = json::array();
  for (double r : g.r) v.push_back({{"r", r}});
  json e = json::array();
  for (const auto& x : g.edges) e.push_back({x.i, x.j, x.g});
  return {{"vertices", v}, {"edges", e}};
}

inline cluster::ClusterGraph graph_from_json(const json& j) {
  cluster::ClusterGraph g;
  const json& v = detail::field(j, "vertices");
  if (!v.is_array()) throw domain_error("field \"vertices\" must be an array");
  for (size_t k = 0; k < v.size(); ++k) {
    g.r.push_back(detail::number(detail::field(v[k], "r"), "vertices[" + std::to_string(k) + "].r"));
  }
  if (j.contains("edges")) {
    const json& e = j.at("edges");
    if (!e.is_array()) throw domain_error("field \"edges\" must be an array");
    for (size_t k = 0; k < e.size(); ++k) {
      const std::string what = "edges[" + std::to_string(k) + "]";
      if (!e[k].is_array() || e[k].size() < 2 || e[k].size() > 3) {
        throw domain_error("field \"" + what + "\" must be [i, j] or [i, j, g]");
      }
      if (!e[k][0].is_number_integer() || !e[k][1].is_number_integer()) {
        throw domain_error("field \"" + what + "\" endpoints must be integers");
      }
      double w = e[k].size() == 3 ? detail::number(e[k][2], what + "[2]") : 1.0;
      g.edges.push_back({e[k][0].get<int>(), e[k][1].get<int>(), w});
    }
  }
  cluster::check_graph(g);
  return g;
}

inline json scenario_to_json(const qkd::Scenario& s) {
  json j = {{"states", qkd::to_string(s.states)},
            {"detection", qkd::to_string(s.detection)},
            {"reconciliation", qkd::to_string(s.reconciliation)},
            {"V", s.V},
            {"tau", s.tau},
            {"chi", s.chi},
            {"beta", s.beta}};
  if (!std::isnan(s.phi)) j["phi"] = s.phi;
  return j;
}

inline qkd::Scenario scenario_from_json(const json& j) {
  qkd::Scenario s;
  auto text = [&](const char* key) {
    const json& f = detail::field(j, key);
    if (!f.is_string()) throw domain_error(std::string("field \"") + key + "\" must be a string");
    return f.get<std::string>();
  };
  if (j.contains("states")) s.states = qkd::parse_states(text("states"));
  if (j.contains("detection")) s.detection = qkd::parse_detection(text("detection"));
  if (j.contains("reconciliation")) s.reconciliation = qkd::parse_reconciliation(text("reconciliation"));
  for (auto [key, dst] : {std::pair<const char*, double*>{"V", &s.V}, {"tau", &s.tau}, {"chi", &s.chi},
                          {"beta", &s.beta}, {"phi", &s.phi}}) {
    if (j.contains(key)) *dst = detail::number(j.at(key), key);
  }
  qkd::check(s);
  return s;
}

}  // namespace gqi::io
