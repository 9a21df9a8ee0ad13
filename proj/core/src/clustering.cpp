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

#include "bregman/clustering.hpp"

#include <limits>
#include <sstream>

#include "bregman/divergence.hpp"
#include "bregman/random.hpp"

namespace bregman {

namespace {

constexpr double kCentroidMatchTolerance = 1e-9;

struct ClusterSums {
  std::vector<double> mass;
  PointMatrix weighted_sum;
};

void validate_assignments(const WeightedDataset& ds, const std::vector<int>& assignments,
                          int k) {
  if (static_cast<int>(assignments.size()) != ds.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one assignment per point is required");
  }
  for (int a : assignments) {
    if (a < 0 || a >= k) throw Error(ErrorCode::InvalidArgument, "assignment out of range");
  }
}

ClusterSums cluster_sums(const WeightedDataset& ds, const std::vector<int>& assignments,
                         int k) {
  ClusterSums sums{std::vector<double>(static_cast<std::size_t>(k), 0.0),
                   PointMatrix::Zero(k, ds.dimension())};
  for (int i = 0; i < ds.size(); ++i) {
    const int a = assignments[static_cast<std::size_t>(i)];
    sums.mass[static_cast<std::size_t>(a)] += ds.weight(i);
    sums.weighted_sum.row(a) += ds.weight(i) * ds.points().row(i);
  }
  return sums;
}

// Pulls a boundary centroid into the relative interior: clamp to twice the
// interior margin and renormalize (simplex) or just clamp (orthant).
bool clamp_into_interior(const ConvexDomain& domain, PointMatrix& centroids, int row) {
  Vector c = centroids.row(row).transpose();
  if (domain.in_relative_interior(c)) return false;
  const double floor = 2.0 * domain.interior_margin();
  switch (domain.kind()) {
    case DomainKind::FullSpace:
      break;
    case DomainKind::PositiveOrthant:
      c = c.cwiseMax(floor);
      break;
    case DomainKind::Simplex:
      c = c.cwiseMax(floor);
      c /= c.sum();
      break;
  }
  if (!domain.in_relative_interior(c)) {
    throw Error(ErrorCode::CentroidOnBoundary, "centroid cannot be moved into the interior");
  }
  centroids.row(row) = c.transpose();
  return true;
}

int count_distinct_supported_rows(const WeightedDataset& ds) {
  int distinct = 0;
  for (int i = 0; i < ds.size(); ++i) {
    if (ds.weight(i) <= 0.0) continue;
    bool seen = false;
    for (int j = 0; j < i && !seen; ++j) {
      seen = ds.weight(j) > 0.0 && ds.points().row(i) == ds.points().row(j);
    }
    if (!seen) ++distinct;
  }
  return distinct;
}

PointMatrix initial_centroids(const WeightedDataset& ds, int k, Rng& rng) {
  PointMatrix centroids(k, ds.dimension());
  std::vector<bool> excluded(static_cast<std::size_t>(ds.size()), false);
  for (int c = 0; c < k; ++c) {
    double total = 0.0;
    for (int i = 0; i < ds.size(); ++i) {
      if (!excluded[static_cast<std::size_t>(i)]) total += ds.weight(i);
    }
    const double target = rng.uniform() * total;
    int pick = -1;
    double running = 0.0;
    for (int i = 0; i < ds.size(); ++i) {
      if (excluded[static_cast<std::size_t>(i)] || ds.weight(i) <= 0.0) continue;
      pick = i;
      running += ds.weight(i);
      if (target < running) break;
    }
    centroids.row(c) = ds.points().row(pick);
    // Exclude every copy of the chosen point so the centroids stay distinct.
    for (int i = 0; i < ds.size(); ++i) {
      if (ds.points().row(i) == ds.points().row(pick)) excluded[static_cast<std::size_t>(i)] = true;
    }
  }
  return centroids;
}

}  // namespace

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::FixedPoint: return "FixedPoint";
    case StopReason::RelativeChange: return "RelativeChange";
    case StopReason::MaxIterations: return "MaxIterations";
  }
  return "Unknown";
}

double jensen_gap_loss(const ConvexGenerator& gen, const WeightedDataset& ds,
                       const std::vector<int>& assignments, const PointMatrix& centroids) {
  const int k = static_cast<int>(centroids.rows());
  validate_assignments(ds, assignments, k);
  const ClusterSums sums = cluster_sums(ds, assignments, k);
  double loss = 0.0;
  for (int c = 0; c < k; ++c) {
    const double mass = sums.mass[static_cast<std::size_t>(c)];
    if (!(mass > 0.0)) {
      std::ostringstream os;
      os << "cluster " << c << " carries no mass";
      throw Error(ErrorCode::EmptyCluster, os.str());
    }
    const Vector mean = sums.weighted_sum.row(c).transpose() / mass;
    const Vector given = centroids.row(c).transpose();
    if ((mean - given).cwiseAbs().maxCoeff() >
        mixed_tolerance(mean.cwiseAbs().maxCoeff(), kCentroidMatchTolerance,
                        kCentroidMatchTolerance)) {
      throw Error(ErrorCode::InvalidArgument, "centroids must be the weighted cluster means");
    }
    // mass * I_phi(mu / mass, cluster) = sum_{i in c} mu_i phi(x_i) - mass phi(mean)
    double weighted_values = 0.0;
    for (int i = 0; i < ds.size(); ++i) {
      if (assignments[static_cast<std::size_t>(i)] == c) {
        weighted_values += ds.weight(i) * gen.value(ds.point(i));
      }
    }
    loss += weighted_values - mass * gen.value(mean);
  }
  return loss;
}

double divergence_loss(const ConvexGenerator& gen, const WeightedDataset& ds,
                       const std::vector<int>& assignments, const PointMatrix& centroids) {
  const int k = static_cast<int>(centroids.rows());
  validate_assignments(ds, assignments, k);
  const DivergenceFn d = bregman_from_generator(gen);
  double loss = 0.0;
  for (int i = 0; i < ds.size(); ++i) {
    const int a = assignments[static_cast<std::size_t>(i)];
    loss += ds.weight(i) * d(ds.point(i), centroids.row(a).transpose());
  }
  return loss;
}

double merge_decreases_loss_check(const ConvexGenerator& gen, VectorRef x1, VectorRef x2,
                                  double mu1, double mu2) {
  if (!(mu1 > 0.0) || !(mu2 > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "merge weights must be positive");
  }
  const double mass = mu1 + mu2;
  const Vector merged = (mu1 / mass) * x1 + (mu2 / mass) * x2;
  return mu1 * gen.value(x1) + mu2 * gen.value(x2) - mass * gen.value(merged);
}

namespace {

ClusteringState lloyd_once(const ConvexGenerator& gen, const DivergenceFn& d,
                           const WeightedDataset& ds, int k, std::uint64_t seed, int max_iters,
                           double rel_tol) {
  const ConvexDomain& domain = gen.domain();
  const int n = ds.size();
  Rng rng(seed);

  ClusteringState state;
  state.centroids = initial_centroids(ds, k, rng);
  for (int c = 0; c < k; ++c) {
    if (clamp_into_interior(domain, state.centroids, c)) ++state.clamped_centroids;
  }

  auto divergence_to = [&](int i, int c) {
    return d(ds.point(i), state.centroids.row(c).transpose());
  };
  auto current_loss = [&] {
    double loss = 0.0;
    for (int i = 0; i < n; ++i) {
      loss += ds.weight(i) * divergence_to(i, state.assignments[static_cast<std::size_t>(i)]);
    }
    return loss;
  };

  std::vector<int> previous;
  double previous_update_loss = std::numeric_limits<double>::quiet_NaN();
  state.assignments.assign(static_cast<std::size_t>(n), 0);

  while (true) {
    // Assignment half-step.
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_value = divergence_to(i, 0);
      for (int c = 1; c < k; ++c) {
        const double value = divergence_to(i, c);
        if (value < best_value) {
          best_value = value;
          best = c;
        }
      }
      state.assignments[static_cast<std::size_t>(i)] = best;
    }

    // Empty-cluster repair: the point farthest from its centroid, among
    // clusters that can spare one, becomes a singleton.
    for (int c = 0; c < k; ++c) {
      ClusterSums sums = cluster_sums(ds, state.assignments, k);
      if (sums.mass[static_cast<std::size_t>(c)] > 0.0) continue;
      std::vector<int> supported(static_cast<std::size_t>(k), 0);
      for (int i = 0; i < n; ++i) {
        if (ds.weight(i) > 0.0) ++supported[static_cast<std::size_t>(state.assignments[static_cast<std::size_t>(i)])];
      }
      int donor = -1;
      double worst = -1.0;
      for (int i = 0; i < n; ++i) {
        const int a = state.assignments[static_cast<std::size_t>(i)];
        if (ds.weight(i) <= 0.0 || supported[static_cast<std::size_t>(a)] < 2) continue;
        const double value = divergence_to(i, a);
        if (value > worst) {
          worst = value;
          donor = i;
        }
      }
      if (donor < 0) throw Error(ErrorCode::EmptyCluster, "no point available to repair an empty cluster");
      state.assignments[static_cast<std::size_t>(donor)] = c;
      state.centroids.row(c) = ds.points().row(donor);
      if (clamp_into_interior(domain, state.centroids, c)) ++state.clamped_centroids;
      ++state.empty_cluster_repairs;
    }

    const double assign_loss = current_loss();
    state.loss_history.push_back(assign_loss);
    state.loss = assign_loss;

    if (state.assignments == previous) {
      state.stop = StopReason::FixedPoint;
      break;
    }
    if (state.iteration >= max_iters) {
      state.stop = StopReason::MaxIterations;
      break;
    }
    previous = state.assignments;

    // Update half-step.
    const ClusterSums sums = cluster_sums(ds, state.assignments, k);
    for (int c = 0; c < k; ++c) {
      const double mass = sums.mass[static_cast<std::size_t>(c)];
      state.centroids.row(c) = sums.weighted_sum.row(c) / mass;
      if (clamp_into_interior(domain, state.centroids, c)) ++state.clamped_centroids;
    }
    ++state.iteration;
    const double update_loss = current_loss();
    state.loss_history.push_back(update_loss);
    state.loss = update_loss;

    if (!std::isnan(previous_update_loss)) {
      const double change = std::abs(previous_update_loss - update_loss);
      if (change <= rel_tol * std::max(std::abs(previous_update_loss),
                                       std::numeric_limits<double>::min())) {
        state.stop = StopReason::RelativeChange;
        break;
      }
    }
    previous_update_loss = update_loss;
  }
  return state;
}

}  // namespace

ClusteringState bregman_lloyd(const ConvexGenerator& gen, const WeightedDataset& ds, int k,
                              std::uint64_t seed, int max_iters, double rel_tol, int restarts) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  if (max_iters < 1) throw Error(ErrorCode::InvalidArgument, "max_iters must be at least 1");
  if (restarts < 1) throw Error(ErrorCode::InvalidArgument, "restarts must be at least 1");
  if (ds.dimension() != gen.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "dataset and generator dimensions differ");
  }
  if (count_distinct_supported_rows(ds) < k) {
    throw Error(ErrorCode::InvalidArgument, "k exceeds the number of distinct weighted rows");
  }

  const DivergenceFn d = bregman_from_generator(gen);
  ClusteringState best;
  for (int r = 0; r < restarts; ++r) {
    const std::uint64_t run_seed = r == 0 ? seed : derive_seed(seed, static_cast<std::uint64_t>(r));
    ClusteringState state = lloyd_once(gen, d, ds, k, run_seed, max_iters, rel_tol);
    state.restart = r;
    if (r == 0 || state.loss < best.loss) best = std::move(state);
  }
  return best;
}

}  // namespace bregman
