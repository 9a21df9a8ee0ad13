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

#include "bregman/random.hpp"

#include <limits>

namespace bregman {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Largest t >= 0 with y + t*|v| and y - t*|v| both above `floor`.
double max_symmetric_step(VectorRef y, VectorRef v, double floor) {
  double t = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (v[i] != 0.0) t = std::min(t, (y[i] - floor) / std::abs(v[i]));
  }
  return std::max(t, 0.0);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) throw Error(ErrorCode::InvalidArgument, "uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t r = engine_();
  while (r >= limit) r = engine_();
  return lo + static_cast<int>(r % span);
}

Vector sample_flat_dirichlet(Rng& rng, int size) {
  Vector w(size);
  for (int i = 0; i < size; ++i) w[i] = rng.exponential();
  double total = w.sum();
  // All draws zero has probability 2^-53 per coordinate; fall back to uniform.
  if (!(total > 0.0)) return Vector::Constant(size, 1.0 / size);
  w /= total;
  return w;
}

Vector sample_point(const ConvexDomain& domain, Rng& rng, double radius) {
  const int dim = domain.dimension();
  const double margin = domain.interior_margin();
  Vector x(dim);
  switch (domain.kind()) {
    case DomainKind::FullSpace:
      for (int i = 0; i < dim; ++i) x[i] = rng.uniform(-radius, radius);
      break;
    case DomainKind::PositiveOrthant:
      for (int i = 0; i < dim; ++i) x[i] = rng.uniform(margin, radius);
      break;
    case DomainKind::Simplex: {
      // x -> floor + (1 - dim*floor) x keeps the sum at one and every
      // coordinate at or above floor.
      const double floor = 2.0 * margin;
      x = sample_flat_dirichlet(rng, dim);
      x = (x * (1.0 - dim * floor)).array() + floor;
      break;
    }
  }
  return x;
}

Vector sample_feasible_direction(const ConvexDomain& domain, VectorRef y, Rng& rng,
                                 double reach) {
  const int dim = domain.dimension();
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng.uniform(-1.0, 1.0);
  if (domain.kind() == DomainKind::FullSpace) return v;
  if (domain.kind() == DomainKind::Simplex) v.array() -= v.mean();
  const double t = max_symmetric_step(y, v, domain.interior_margin());
  if (reach > 0.0) v *= std::min(1.0, 0.9 * t / reach);
  return v;
}

}  // namespace bregman
