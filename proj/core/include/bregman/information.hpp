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

#include "bregman/dataset.hpp"
#include "bregman/divergence.hpp"
#include "bregman/generator.hpp"
#include "bregman/types.hpp"

namespace bregman {

/// Jensen-gap information: sum_i mu_i phi(x_i) - phi(y), y the weighted
/// centroid. Nonnegative for convex phi; zero iff the supported rows agree.
/// Throws DomainViolation if a row lies outside the generator's domain.
double jensen_gap_information(const ConvexGenerator& gen, const WeightedDataset& ds);

/// Divergence information: sum_i mu_i d(x_i, y). Throws CentroidNotInterior
/// unless y is in the relative interior of d's domain.
double divergence_information(const DivergenceFn& d, const WeightedDataset& ds);

/// I_phi - I_d, signed. Vanishes for every dataset exactly when d = d_phi.
double equivalence_gap(const ConvexGenerator& gen, const DivergenceFn& d,
                       const WeightedDataset& ds);

/// Joint law p(a_i, b_j) = mu_i x_ij of two discrete variables: the marginal of
/// A and the conditional rows of B given A.
class JointDistribution {
 public:
  JointDistribution(Vector row_marginal, Matrix conditionals);

  const Vector& row_marginal() const noexcept { return row_marginal_; }
  const Matrix& conditionals() const noexcept { return conditionals_; }
  /// Marginal of B, y_j = sum_i mu_i x_ij.
  Vector column_marginal() const;
  /// The k x l table of p(a_i, b_j).
  Matrix joint_table() const;

 private:
  Vector row_marginal_;
  Matrix conditionals_;
};

/// I(A;B) = H(B) - H(B|A) in nats, with 0 ln 0 = 0.
double mutual_information_entropy_reduction(const JointDistribution& j);

/// I(A;B) = sum_i mu_i KL(x_i || y). Columns with y_j = 0 and rows with
/// mu_i = 0 contribute nothing.
double mutual_information_divergence_form(const JointDistribution& j);

}  // namespace bregman
