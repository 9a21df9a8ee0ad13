// Copyright 2026 The Bregman Toolkit Authors
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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace bregman {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
/// Row-major so that each data point (a row) is contiguous.
using PointMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using VectorRef = Eigen::Ref<const Vector>;

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NonSymmetric,
  NotPositiveDefinite,
  GradientAtBoundary,
  StepLeavesDomain,
  SecondArgumentNotInterior,
  SecondArgumentHasZero,
  DomainViolation,
  CentroidNotInterior,
  InvalidJoint,
  HessianUnavailable,
  SamplerDomainMismatch,
  RankDeficientProbes,
  EmptyCluster,
  CentroidOnBoundary,
};

std::string_view to_string(ErrorCode code);

/// True for codes that describe a numerical failure (boundary, rank,
/// interior violations) rather than malformed input.
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Default comparison tolerances: max(abs_tol, rel_tol * scale).
inline constexpr double kAbsTol = 1e-10;
inline constexpr double kRelTol = 1e-9;

inline double mixed_tolerance(double scale, double abs_tol = kAbsTol,
                              double rel_tol = kRelTol) {
  return std::max(abs_tol, rel_tol * std::abs(scale));
}

inline bool approx_equal(double a, double b, double abs_tol = kAbsTol,
                         double rel_tol = kRelTol) {
  return std::abs(a - b) <= mixed_tolerance(std::max(std::abs(a), std::abs(b)),
                                            abs_tol, rel_tol);
}

}  // namespace bregman
