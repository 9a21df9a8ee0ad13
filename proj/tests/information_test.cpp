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

#include <gtest/gtest.h>

#include <cmath>

#include "bregman/bregman.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace bregman {
namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

PointMatrix column(std::initializer_list<double> values) {
  PointMatrix x(static_cast<Eigen::Index>(values.size()), 1);
  Eigen::Index i = 0;
  for (double v : values) x(i++, 0) = v;
  return x;
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::InvalidArgument;
}

TEST(JensenGap, Examples) {
  const auto line = ConvexDomain::full_space(1);
  const auto sq = make_generator_squared_norm(1);
  const WeightedDataset ds(vec({0.5, 0.5}), column({0.0, 2.0}), line);
  EXPECT_NEAR(jensen_gap_information(sq, ds), 0.5, 1e-15);

  const WeightedDataset constant(vec({0.2, 0.8}), column({1.5, 1.5}), line);
  EXPECT_NEAR(jensen_gap_information(sq, constant), 0.0, 1e-15);

  PointMatrix corners(2, 2);
  corners << 1.0, 0.0, 0.0, 1.0;
  const WeightedDataset pair(vec({0.5, 0.5}), corners, ConvexDomain::simplex(2));
  EXPECT_NEAR(jensen_gap_information(make_generator_negative_entropy(2), pair), std::log(2.0),
              1e-15);
}

TEST(DivergenceInformation, Examples) {
  const auto line = ConvexDomain::full_space(1);
  const WeightedDataset ds(vec({0.5, 0.5}), column({0.0, 2.0}), line);
  const auto sq = bregman_from_generator(make_generator_squared_norm(1));
  EXPECT_NEAR(divergence_information(sq, ds), 0.5, 1e-15);
  EXPECT_NEAR(divergence_information(make_absolute_distance(line), ds), 1.0, 1e-15);
  const WeightedDataset constant(vec({0.3, 0.7}), column({-2.0, -2.0}), line);
  EXPECT_EQ(divergence_information(make_absolute_distance(line), constant), 0.0);
}

TEST(DivergenceInformation, RejectsBoundaryCentroid) {
  PointMatrix x(2, 2);
  x << 1.0, 0.0, 1.0, 0.0;
  const WeightedDataset ds = WeightedDataset::uniform(x, ConvexDomain::simplex(2));
  EXPECT_EQ(code_of([&] { divergence_information(make_kl_divergence(2), ds); }),
            ErrorCode::CentroidNotInterior);
}

TEST(EquivalenceGap, Examples) {
  const auto line = ConvexDomain::full_space(1);
  const auto sq = make_generator_squared_norm(1);
  const WeightedDataset ds(vec({0.5, 0.5}), column({0.0, 2.0}), line);
  EXPECT_NEAR(equivalence_gap(sq, make_absolute_distance(line), ds), -0.5, 1e-15);
  const WeightedDataset single(vec({1.0}), column({4.0}), line);
  EXPECT_EQ(equivalence_gap(sq, make_absolute_distance(line), single), 0.0);
}

TEST(EquivalenceGap, VanishesForBregmanDivergences) {
  for (int dim = 1; dim <= 5; ++dim) {
    for (const auto& named : gen::builtin_generators(dim, 500 + dim)) {
      const auto d = bregman_from_generator(*named.generator);
      Rng rng(derive_seed(31, static_cast<std::uint64_t>(dim)));
      for (int t = 0; t < 200; ++t) {
        const auto ds = gen::random_dataset(named.generator->domain(), rng, rng.uniform_int(1, 8));
        const double i_phi = jensen_gap_information(*named.generator, ds);
        const double gap = equivalence_gap(*named.generator, d, ds);
        EXPECT_LE(std::abs(gap), 1e-9 * (1.0 + std::abs(i_phi))) << named.label;
        EXPECT_GE(i_phi, -1e-12);
      }
    }
  }
}

TEST(EuclideanAgreement, TwoIndependentForms) {
  Rng rng(41);
  for (int t = 0; t < 1000; ++t) {
    const int dim = rng.uniform_int(1, 5);
    const auto ds = gen::random_dataset(ConvexDomain::full_space(dim), rng, rng.uniform_int(1, 8));
    const auto mu = gen::to_vec(ds.weights());
    const auto x = gen::to_rows(ds.points());
    const double lib = 2.0 * jensen_gap_information(make_generator_squared_norm(dim), ds);
    EXPECT_NEAR(lib, oracle::deviation_form(mu, x), 1e-10);
    EXPECT_NEAR(oracle::second_moment_form(mu, x), oracle::deviation_form(mu, x), 1e-10);
  }
}

TEST(JensenGap, TinyGapMeansConstantSupport) {
  Rng rng(43);
  for (int t = 0; t < 500; ++t) {
    const int dim = rng.uniform_int(2, 4);
    for (const auto& named : gen::builtin_generators(dim, 600 + static_cast<std::uint64_t>(t))) {
      const auto domain = named.generator->domain();
      const auto base = gen::random_dataset(domain, rng, 3);
      // Half the trials collapse the rows onto one point.
      PointMatrix x = base.points();
      if (t % 2 == 0) {
        for (int i = 1; i < x.rows(); ++i) x.row(i) = x.row(0);
      }
      const WeightedDataset ds(base.weights(), x, domain);
      const double i_phi = jensen_gap_information(*named.generator, ds);
      EXPECT_GE(i_phi, -1e-12);
      if (i_phi <= 1e-12) {
        EXPECT_LE(ds.support_spread(), 1e-5) << named.label;
      }
    }
  }
}

TEST(MutualInformation, Examples) {
  Matrix correlated(2, 2);
  correlated << 1.0, 0.0, 0.0, 1.0;
  const JointDistribution perfect(vec({0.5, 0.5}), correlated);
  EXPECT_NEAR(mutual_information_entropy_reduction(perfect), std::log(2.0), 1e-15);
  EXPECT_NEAR(mutual_information_divergence_form(perfect), std::log(2.0), 1e-15);

  Matrix product(3, 2);
  product << 0.3, 0.7, 0.3, 0.7, 0.3, 0.7;
  const JointDistribution independent(vec({0.2, 0.3, 0.5}), product);
  EXPECT_NEAR(mutual_information_entropy_reduction(independent), 0.0, 1e-15);
  EXPECT_NEAR(mutual_information_divergence_form(independent), 0.0, 1e-15);

  Matrix noisy(2, 2);
  noisy << 0.75, 0.25, 0.25, 0.75;
  const JointDistribution channel(vec({0.5, 0.5}), noisy);
  const double expected =
      oracle::mutual_information_table({0.5, 0.5}, {{0.75, 0.25}, {0.25, 0.75}});
  EXPECT_NEAR(expected, std::log(2.0) - (0.75 * std::log(4.0 / 3.0) + 0.25 * std::log(4.0)), 1e-15);
  EXPECT_NEAR(mutual_information_entropy_reduction(channel), expected, 1e-14);
  EXPECT_NEAR(mutual_information_divergence_form(channel), expected, 1e-14);
}

TEST(MutualInformation, ZeroColumnsAndRowsAreSkipped) {
  Matrix x(3, 3);
  x << 0.5, 0.5, 0.0, 1.0, 0.0, 0.0, 0.2, 0.8, 0.0;
  const JointDistribution j(vec({0.4, 0.6, 0.0}), x);
  const double expected = oracle::mutual_information_table(
      {0.4, 0.6, 0.0}, {{0.5, 0.5, 0.0}, {1.0, 0.0, 0.0}, {0.2, 0.8, 0.0}});
  EXPECT_NEAR(mutual_information_entropy_reduction(j), expected, 1e-14);
  EXPECT_NEAR(mutual_information_divergence_form(j), expected, 1e-14);
}

TEST(MutualInformation, RandomJointsAgree) {
  Rng rng(47);
  for (int t = 0; t < 1000; ++t) {
    const int k = rng.uniform_int(1, 6), l = rng.uniform_int(1, 6);
    const Vector mu = sample_flat_dirichlet(rng, k);
    Matrix x(k, l);
    for (int i = 0; i < k; ++i) x.row(i) = sample_flat_dirichlet(rng, l).transpose();
    const JointDistribution j(mu, x);
    const double a = mutual_information_entropy_reduction(j);
    const double b = mutual_information_divergence_form(j);
    EXPECT_NEAR(a, b, 1e-10);
    EXPECT_NEAR(a, oracle::mutual_information_table(gen::to_vec(mu), gen::to_rows(x)), 1e-10);
    EXPECT_GE(a, -1e-12);
    EXPECT_GE(b, -1e-12);
  }
}

TEST(MutualInformation, RejectsInvalidJoint) {
  Matrix x(2, 2);
  x << 0.5, 0.6, 0.5, 0.5;
  EXPECT_EQ(code_of([&] { JointDistribution(vec({0.5, 0.5}), x); }), ErrorCode::InvalidJoint);
  Matrix ok(2, 2);
  ok << 0.5, 0.5, 0.5, 0.5;
  EXPECT_EQ(code_of([&] { JointDistribution(vec({0.5, 0.6}), ok); }), ErrorCode::InvalidJoint);
}

}  // namespace
}  // namespace bregman
