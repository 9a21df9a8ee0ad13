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

#include <cstdint>
#include <string_view>
#include <vector>

#include "bregman/dataset.hpp"
#include "bregman/generator.hpp"
#include "bregman/types.hpp"

namespace bregman {

enum class StopReason { FixedPoint, RelativeChange, MaxIterations };

std::string_view to_string(StopReason reason);

struct ClusteringState {
  std::vector<int> assignments;
  PointMatrix centroids;  // k x dim
  double loss = 0.0;      // sum_i mu_i d_phi(x_i, c_{a(i)})
  int iteration = 0;      // completed assign + update rounds
  /// Loss after every half-step: assign, update, assign, update, ...
  std::vector<double> loss_history;
  int empty_cluster_repairs = 0;
  int clamped_centroids = 0;
  StopReason stop = StopReason::MaxIterations;
  int restart = 0;  // which of the restarts produced this state
};

/// Jensen-gap clustering loss: sum over clusters of cluster mass times the
/// cluster's own Jensen-gap information (weights renormalized within the
/// cluster). `centroids` must be the weighted cluster means; throws
/// EmptyCluster if a cluster carries no mass.
double jensen_gap_loss(const ConvexGenerator& gen, const WeightedDataset& ds,
                       const std::vector<int>& assignments, const PointMatrix& centroids);

/// The same loss computed pointwise as sum_i mu_i d_phi(x_i, c_{a(i)}).
double divergence_loss(const ConvexGenerator& gen, const WeightedDataset& ds,
                       const std::vector<int>& assignments, const PointMatrix& centroids);

/// Loss reduction from merging two weighted points into their weighted mean:
///   mu1 phi(x1) + mu2 phi(x2) - (mu1 + mu2) phi(mean).
/// Positive iff x1 != x2 for strictly convex phi.
double merge_decreases_loss_check(const ConvexGenerator& gen, VectorRef x1, VectorRef x2,
                                  double mu1, double mu2);

/// Lloyd-style hard clustering with d_phi as the comparator: assign each point
/// to its nearest centroid (ties to the lowest index), then move each centroid
/// to the weighted mean of its points. Stops at an assignment fixed point,
/// when the relative loss change drops below `rel_tol`, or after `max_iters`.
///
/// Initial centroids are k distinct rows drawn without replacement with
/// probability proportional to mu. An empty cluster takes over the point
/// farthest from its own centroid. Centroids that land on the boundary of a
/// simplex or orthant are pulled inside and counted in `clamped_centroids`.
///
/// The loop runs `restarts` times. Restart 0 seeds its initial centroids with
/// `seed`, restart r > 0 with derive_seed(seed, r); the lowest final loss wins,
/// ties to the lower r.
ClusteringState bregman_lloyd(const ConvexGenerator& gen, const WeightedDataset& ds, int k,
                              std::uint64_t seed, int max_iters = 100, double rel_tol = 1e-10,
                              int restarts = 10);

}  // namespace bregman
