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

#include "bregman/information.hpp"

#include <sstream>
#include <utility>

namespace bregman {

namespace {

constexpr double kDistributionTolerance = 1e-12;
constexpr double kJointTolerance = 1e-10;

double x_log_x(double v) { return v > 0.0 ? v * std::log(v) : 0.0; }

bool is_distribution(const auto& v) {
  return v.allFinite() && v.minCoeff() >= 0.0 &&
         std::abs(v.sum() - 1.0) <= kDistributionTolerance;
}

}  // namespace

double jensen_gap_information(const ConvexGenerator& gen, const WeightedDataset& ds) {
  if (ds.dimension() != gen.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "dataset and generator dimensions differ");
  }
  double mean_value = 0.0;
  for (int i = 0; i < ds.size(); ++i) {
    if (!gen.domain().contains(ds.point(i))) {
      std::ostringstream os;
      os << "row " << i << " is outside the domain of " << gen.name();
      throw Error(ErrorCode::DomainViolation, os.str());
    }
    mean_value += ds.weight(i) * gen.value(ds.point(i));
  }
  const Vector y = weighted_mean(ds.weights(), ds.points());
  return mean_value - gen.value(y);
}

double divergence_information(const DivergenceFn& d, const WeightedDataset& ds) {
  if (ds.dimension() != d.domain().dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "dataset and divergence dimensions differ");
  }
  const Vector y = weighted_mean(ds.weights(), ds.points());
  if (!d.domain().in_relative_interior(y)) {
    throw Error(ErrorCode::CentroidNotInterior,
                "centroid is not in the relative interior of " + d.domain().describe());
  }
  double total = 0.0;
  for (int i = 0; i < ds.size(); ++i) {
    total += ds.weight(i) * d(ds.point(i), y);
  }
  return total;
}

double equivalence_gap(const ConvexGenerator& gen, const DivergenceFn& d,
                       const WeightedDataset& ds) {
  return jensen_gap_information(gen, ds) - divergence_information(d, ds);
}

JointDistribution::JointDistribution(Vector row_marginal, Matrix conditionals)
    : row_marginal_(std::move(row_marginal)), conditionals_(std::move(conditionals)) {
  if (row_marginal_.size() == 0 || conditionals_.cols() == 0) {
    throw Error(ErrorCode::InvalidJoint, "joint distribution must be nonempty");
  }
  if (conditionals_.rows() != row_marginal_.size()) {
    throw Error(ErrorCode::InvalidJoint, "one conditional row per marginal entry is required");
  }
  if (!is_distribution(row_marginal_)) {
    throw Error(ErrorCode::InvalidJoint, "row marginal is not a probability vector");
  }
  for (Eigen::Index i = 0; i < conditionals_.rows(); ++i) {
    if (!is_distribution(conditionals_.row(i))) {
      std::ostringstream os;
      os << "conditional row " << i << " is not a probability vector";
      throw Error(ErrorCode::InvalidJoint, os.str());
    }
  }
  if (std::abs(joint_table().sum() - 1.0) > kJointTolerance) {
    throw Error(ErrorCode::InvalidJoint, "joint table does not sum to one");
  }
}

Vector JointDistribution::column_marginal() const {
  Vector y = Vector::Zero(conditionals_.cols());
  for (Eigen::Index i = 0; i < conditionals_.rows(); ++i) {
    y += row_marginal_[i] * conditionals_.row(i).transpose();
  }
  return y;
}

Matrix JointDistribution::joint_table() const {
  return row_marginal_.asDiagonal() * conditionals_;
}

double mutual_information_entropy_reduction(const JointDistribution& j) {
  const Matrix& x = j.conditionals();
  const Vector& mu = j.row_marginal();
  double neg_conditional_entropy = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    if (mu[i] <= 0.0) continue;
    double row = 0.0;
    for (Eigen::Index c = 0; c < x.cols(); ++c) row += x_log_x(x(i, c));
    neg_conditional_entropy += mu[i] * row;
  }
  const Vector y = j.column_marginal();
  double neg_entropy = 0.0;
  for (Eigen::Index c = 0; c < y.size(); ++c) neg_entropy += x_log_x(y[c]);
  return neg_conditional_entropy - neg_entropy;
}

double mutual_information_divergence_form(const JointDistribution& j) {
  const Matrix& x = j.conditionals();
  const Vector& mu = j.row_marginal();
  const Vector y = j.column_marginal();
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    if (mu[i] <= 0.0) continue;
    double kl = 0.0;
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      if (x(i, c) <= 0.0 || y[c] <= 0.0) continue;
      kl += x(i, c) * std::log(x(i, c) / y[c]);
    }
    total += mu[i] * kl;
  }
  return total;
}

}  // namespace bregman
