// Copyright 2026 The robustfo Authors
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

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace robustfo {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr const char* kVersion = "0.3.1";

/// Numerical tolerances shared by every stage of the pipeline.
struct Tolerances {
  double feas = 1e-9;    // primal/dual feasibility, relative
  double act = 1e-8;     // active-set detection on normalized residuals
  double pivot = 1e-10;  // simplex pivot magnitude
};

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A cone/set pairing the pipeline cannot handle exactly.
struct UnsupportedCombination : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The nominal point does not satisfy the nominal constraints.
struct InfeasiblePoint : std::domain_error {
  using std::domain_error::domain_error;
};

struct SingularBasis : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require_dim(Index got, Index want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(want) +
                         ", got " + std::to_string(got));
  }
}

}  // namespace robustfo
