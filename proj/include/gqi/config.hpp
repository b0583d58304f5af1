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
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gqi {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;

inline constexpr const char* kVersion = "1.0.0";

/// Invalid parameter or physically inadmissible input.
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

/// Mismatched dimensions or out-of-range indices.
struct shape_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Ill-conditioned input, failed decomposition, or non-converged solver.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Requested operation has no supported implementation for this input.
struct unsupported_error : std::logic_error {
  using std::logic_error::logic_error;
};

enum class LogBase { two, e };

inline double log_in(double x, LogBase base) {
  return base == LogBase::two ? std::log2(x) : std::log(x);
}

/// Converts a natural-log quantity to the requested base.
inline double from_nats(double nats, LogBase base) {
  return base == LogBase::two ? nats / std::log(2.0) : nats;
}

inline LogBase parse_log_base(const std::string& s) {
  if (s == "2") return LogBase::two;
  if (s == "e") return LogBase::e;
  throw domain_error("log base must be 2 or e, got '" + s + "'");
}

namespace tol {
inline constexpr double validity = 1e-10;
inline constexpr double decomposition = 1e-9;
inline constexpr double symplectic = 1e-9;
inline constexpr double rank = 1e-10;
inline constexpr double spectrum = 1e-7;
}  // namespace tol

inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw domain_error(std::string(what) + " must be finite");
}

}  // namespace gqi
