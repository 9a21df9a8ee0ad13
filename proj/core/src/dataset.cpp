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

#include "bregman/dataset.hpp"

#include <sstream>
#include <utility>

namespace bregman {

WeightedDataset::WeightedDataset(Vector weights, PointMatrix points, ConvexDomain domain)
    : weights_(std::move(weights)), points_(std::move(points)), domain_(domain) {
  if (points_.rows() == 0) {
    throw Error(ErrorCode::InvalidArgument, "dataset needs at least one point");
  }
  if (weights_.size() != points_.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "one weight per point is required");
  }
  if (points_.cols() != domain_.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "point dimension does not match the domain");
  }
  if (!weights_.allFinite() || weights_.minCoeff() < 0.0 ||
      std::abs(weights_.sum() - 1.0) > kWeightSumTolerance) {
    throw Error(ErrorCode::InvalidArgument, "weights must be a probability vector");
  }
  for (Eigen::Index i = 0; i < points_.rows(); ++i) {
    if (!domain_.contains(points_.row(i).transpose())) {
      std::ostringstream os;
      os << "row " << i << " is outside " << domain_.describe();
      throw Error(ErrorCode::DomainViolation, os.str());
    }
  }
}

WeightedDataset WeightedDataset::uniform(PointMatrix points, ConvexDomain domain) {
  const auto n = points.rows();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "dataset needs at least one point");
  Vector weights = Vector::Constant(n, 1.0 / static_cast<double>(n));
  return WeightedDataset(std::move(weights), std::move(points), domain);
}

double WeightedDataset::support_spread() const {
  double spread = 0.0;
  for (Eigen::Index i = 0; i < points_.rows(); ++i) {
    if (weights_[i] <= 0.0) continue;
    for (Eigen::Index j = i + 1; j < points_.rows(); ++j) {
      if (weights_[j] <= 0.0) continue;
      spread = std::max(spread, (points_.row(i) - points_.row(j)).norm());
    }
  }
  return spread;
}

Vector weighted_mean(VectorRef weights, const PointMatrix& points) {
  Vector y = Vector::Zero(points.cols());
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    y += weights[i] * points.row(i).transpose();
  }
  return y;
}

Centroid centroid(const WeightedDataset& ds) {
  Centroid c;
  c.point = weighted_mean(ds.weights(), ds.points());
  c.interior = ds.domain().in_relative_interior(c.point);
  return c;
}

}  // namespace bregman
