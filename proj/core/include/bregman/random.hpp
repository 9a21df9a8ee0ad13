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
#include <random>

#include "bregman/domain.hpp"
#include "bregman/types.hpp"

namespace bregman {

/// Mixes a base seed with a stream index so that every trial owns an
/// independent, order-free random stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// mt19937_64 with distribution code written out here, so a seed yields the
/// same numbers under every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  /// Standard exponential, i.e. Gamma(1, 1).
  double exponential() { return -std::log1p(-uniform()); }

 private:
  std::mt19937_64 engine_;
};

/// Dirichlet(1, ..., 1): uniform on the probability simplex.
Vector sample_flat_dirichlet(Rng& rng, int size);

/// One point from the domain's default law:
///   FullSpace        componentwise uniform on [-radius, radius]
///   PositiveOrthant  componentwise uniform on [interior_margin, radius]
///   Simplex          Dirichlet(1, ..., 1) pulled to at least twice the
///                    interior margin, still summing to one
/// Every law lands in the relative interior.
Vector sample_point(const ConvexDomain& domain, Rng& rng, double radius = 3.0);

/// A direction v with y + c v in the domain for every |c| <= reach. On the
/// simplex v sums to zero. Returns zero only when y sits on the boundary.
Vector sample_feasible_direction(const ConvexDomain& domain, VectorRef y, Rng& rng,
                                 double reach);

}  // namespace bregman
