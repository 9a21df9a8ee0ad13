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

#include "bregman/certifier.hpp"
#include "bregman/random.hpp"

namespace bregman {

TrialSampler::TrialSampler(ConvexDomain domain_, std::uint64_t seed_, int trials_, int n_min_,
                           int n_max_, double radius_)
    : domain(domain_), seed(seed_), trials(trials_), n_min(n_min_), n_max(n_max_),
      radius(radius_) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
  if (n_min < 1 || n_max < n_min) {
    throw Error(ErrorCode::InvalidArgument, "dataset size range must satisfy 1 <= n_min <= n_max");
  }
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
}

WeightedDataset TrialSampler::sample(int trial) const {
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
  const int n = rng.uniform_int(n_min, n_max);
  Vector weights = sample_flat_dirichlet(rng, n);
  PointMatrix points(n, domain.dimension());
  for (int i = 0; i < n; ++i) points.row(i) = sample_point(domain, rng, radius).transpose();
  return WeightedDataset(std::move(weights), std::move(points), domain);
}

}  // namespace bregman
