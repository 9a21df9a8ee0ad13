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

#include "bregman/domain.hpp"
#include "bregman/types.hpp"

namespace bregman {

/// Probability weights mu over n points (rows of an n x dim matrix) that all
/// belong to one domain. Validated on construction.
class WeightedDataset {
 public:
  static constexpr double kWeightSumTolerance = 1e-12;

  WeightedDataset(Vector weights, PointMatrix points, ConvexDomain domain);

  /// Uniform weights 1/n.
  static WeightedDataset uniform(PointMatrix points, ConvexDomain domain);

  const Vector& weights() const noexcept { return weights_; }
  const PointMatrix& points() const noexcept { return points_; }
  const ConvexDomain& domain() const noexcept { return domain_; }

  int size() const noexcept { return static_cast<int>(points_.rows()); }
  int dimension() const noexcept { return static_cast<int>(points_.cols()); }
  auto point(int i) const { return points_.row(i).transpose(); }
  double weight(int i) const { return weights_[i]; }

  /// Largest distance between rows carrying positive weight.
  double support_spread() const;

 private:
  Vector weights_;
  PointMatrix points_;
  ConvexDomain domain_;
};

struct Centroid {
  Vector point;
  bool interior = false;  // inside the domain's relative interior
};

/// y = sum_i mu_i x_i, plus whether y may serve as a divergence's second
/// argument.
Centroid centroid(const WeightedDataset& ds);

/// The weighted mean only; no domain check.
Vector weighted_mean(VectorRef weights, const PointMatrix& points);

}  // namespace bregman
