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

const double kKlExample = 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0);

TEST(BregmanFromGenerator, Examples) {
  const auto sq = bregman_from_generator(make_generator_squared_norm(2));
  EXPECT_NEAR(sq(vec({1.0, 2.0}), vec({0.0, 0.0})), 2.5, 1e-15);
  EXPECT_EQ(sq(vec({0.3, 0.3}), vec({0.3, 0.3})), 0.0);

  const auto ne = bregman_from_generator(make_generator_negative_entropy(2));
  EXPECT_NEAR(ne(vec({0.5, 0.5}), vec({0.25, 0.75})), kKlExample, 1e-15);
  EXPECT_NEAR(kKlExample, 0.143841, 1e-6);
  EXPECT_NEAR(ne(vec({0.5, 0.5}), vec({0.25, 0.75})),
              oracle::kl({0.5, 0.5}, {0.25, 0.75}), 1e-15);
  EXPECT_EQ(ne.claims_bregman_of()->name(), "negentropy");
}

TEST(BregmanFromGenerator, SecondArgumentMustBeInterior) {
  const auto ne = bregman_from_generator(make_generator_negative_entropy(2));
  EXPECT_EQ(code_of([&] { ne(vec({0.5, 0.5}), vec({1.0, 0.0})); }),
            ErrorCode::SecondArgumentNotInterior);
}

TEST(BregmanFromGenerator, OutlivesItsGenerator) {
  std::optional<DivergenceFn> d;
  {
    const auto g = make_generator_squared_norm(1);
    d = bregman_from_generator(g);
  }
  EXPECT_NEAR((*d)(vec({3.0}), vec({1.0})), 2.0, 1e-15);
}

TEST(KlDivergence, Examples) {
  EXPECT_EQ(kl_divergence(vec({0.5, 0.5}), vec({0.5, 0.5})), 0.0);
  EXPECT_NEAR(kl_divergence(vec({1.0, 0.0}), vec({0.5, 0.5})), std::log(2.0), 1e-15);
  EXPECT_NEAR(kl_divergence(vec({0.5, 0.5}), vec({0.25, 0.75})), kKlExample, 1e-15);
  EXPECT_EQ(code_of([] { kl_divergence(vec({0.5, 0.5}), vec({1.0, 0.0})); }),
            ErrorCode::SecondArgumentHasZero);
}

TEST(KlDivergence, GeneralizedFormAddsMassDifference) {
  const Vector x = vec({1.0, 2.0}), y = vec({2.0, 0.5});
  const double expected = oracle::kl({1.0, 2.0}, {2.0, 0.5}) - 3.0 + 2.5;
  EXPECT_NEAR(kl_divergence(x, y, KlForm::Generalized), expected, 1e-14);
}

TEST(Mahalanobis, Examples) {
  const Matrix eye = Matrix::Identity(2, 2);
  EXPECT_NEAR(squared_mahalanobis(eye, vec({1.0, 2.0}), vec({0.0, 0.0})), 2.5, 1e-12);
  EXPECT_EQ(squared_mahalanobis(eye, vec({1.0, 2.0}), vec({1.0, 2.0})), 0.0);
  Matrix w(2, 2);
  w << 2.0, 0.0, 0.0, 1.0;
  EXPECT_NEAR(squared_mahalanobis(w, vec({1.0, 1.0}), vec({0.0, 1.0})), 1.0, 1e-15);
  const auto generic = bregman_from_generator(make_generator_squared_mahalanobis(eye));
  EXPECT_NEAR(generic(vec({1.0, 2.0}), vec({0.0, 0.0})), 2.5, 1e-12);
}

TEST(ClosedForms, AgreeWithGenericConstruction) {
  Rng rng(21);
  for (int dim = 2; dim <= 5; ++dim) {
    const auto ne = bregman_from_generator(make_generator_negative_entropy(dim));
    const Matrix w = gen::random_pd(rng, dim);
    const auto maha = bregman_from_generator(make_generator_squared_mahalanobis(w));
    const auto simplex = ConvexDomain::simplex(dim);
    const auto full = ConvexDomain::full_space(dim);
    for (int t = 0; t < 1000; ++t) {
      const Vector x = sample_point(simplex, rng), y = sample_point(simplex, rng);
      const double closed = kl_divergence(x, y);
      EXPECT_NEAR(ne(x, y), closed, mixed_tolerance(std::abs(closed), 1e-10, 1e-10));
      EXPECT_NEAR(closed, oracle::kl(gen::to_vec(x), gen::to_vec(y)), 1e-12);

      const Vector a = sample_point(full, rng), b = sample_point(full, rng);
      const double q = squared_mahalanobis(w, a, b);
      EXPECT_NEAR(maha(a, b), q, mixed_tolerance(std::abs(q), 1e-10, 1e-10));
    }
  }
}

TEST(Validity, BuiltinBregmanDivergencesArePositive) {
  for (int dim = 1; dim <= 5; ++dim) {
    for (const auto& named : gen::builtin_generators(dim, 400 + dim)) {
      const auto v = check_divergence_validity(bregman_from_generator(*named.generator), 17, 1000);
      EXPECT_EQ(v.pairs, 1000);
      EXPECT_TRUE(v.valid()) << named.label << " dim " << dim;
      EXPECT_GT(v.min_separated_value, 0.0);
    }
  }
}

TEST(Validity, DetectsNonDivergence) {
  const auto domain = ConvexDomain::full_space(1);
  const DivergenceFn signed_diff("signed", domain,
                                 [](VectorRef x, VectorRef y) { return x[0] - y[0]; });
  EXPECT_FALSE(check_divergence_validity(signed_diff, 1, 200).valid());
}

TEST(Asymmetry, KlIsNotSymmetric) {
  // Bregman divergences need not be symmetric; record one asymmetric pair so
  // nothing downstream quietly relies on symmetry.
  const Vector x = vec({0.9, 0.1}), y = vec({0.5, 0.5});
  EXPECT_GT(std::abs(kl_divergence(x, y) - kl_divergence(y, x)), 1e-3);
}

TEST(LocalMetric, QuadraticGeneratorIsExact) {
  Rng rng(5);
  const Matrix w = gen::random_pd(rng, 3);
  const std::vector<double> scales{1e-1, 1e-2, 1e-3, 1e-4};
  for (const auto& g : {make_generator_squared_mahalanobis(w), make_generator_squared_norm(3)}) {
    for (const auto& s : local_metric_check(g, vec({0.3, -0.2, 1.0}), vec({1.0, 2.0, -1.0}), scales)) {
      EXPECT_LE(s.ratio, 1e-10);
    }
  }
}

TEST(LocalMetric, EntropyRatioShrinksWithScale) {
  const auto g = make_generator_negative_entropy(2);
  std::vector<double> scales;
  for (double s = 1e-1; s >= 0.99e-4; s /= 2.0) scales.push_back(s);
  const auto samples = local_metric_check(g, vec({0.5, 0.5}), vec({1.0, -1.0}), scales);
  for (std::size_t i = 1; i < samples.size(); ++i) {
    EXPECT_LT(samples[i].ratio, samples[i - 1].ratio);
    if (samples[i - 1].scale <= 1e-2) {
      EXPECT_LE(samples[i].ratio, 0.75 * samples[i - 1].ratio);
    }
  }
}

TEST(LocalMetric, ZeroDirectionGivesZeroRatio) {
  const auto g = make_generator_negative_entropy(2);
  for (const auto& s : local_metric_check(g, vec({0.5, 0.5}), vec({0.0, 0.0}), {1e-2, 1e-3})) {
    EXPECT_EQ(s.divergence, 0.0);
    EXPECT_EQ(s.ratio, 0.0);
  }
}

TEST(LocalMetric, Errors) {
  const ConvexGenerator no_hessian(
      "nohess", ConvexDomain::full_space(1), [](VectorRef x) { return x.squaredNorm(); },
      [](VectorRef x) { return Vector(2.0 * x); });
  EXPECT_EQ(code_of([&] { local_metric_check(no_hessian, vec({0.0}), vec({1.0}), {1e-2}); }),
            ErrorCode::HessianUnavailable);
  const auto g = make_generator_negative_entropy(2);
  EXPECT_EQ(code_of([&] { local_metric_check(g, vec({0.5, 0.5}), vec({1.0, -1.0}), {0.9}); }),
            ErrorCode::StepLeavesDomain);
}

TEST(Builders, ScaledAndQuarticVariants) {
  const auto g = make_generator_squared_norm(1);
  const auto base = bregman_from_generator(g);
  const auto doubled = scale_divergence(base, 2.0);
  const auto quartic = add_quartic_term(base, 1e-2);
  const Vector x = vec({3.0}), y = vec({1.0});
  EXPECT_NEAR(doubled(x, y), 4.0, 1e-15);
  EXPECT_NEAR(quartic(x, y), 2.0 + 1e-2 * 16.0, 1e-14);
  EXPECT_EQ(doubled.claims_bregman_of(), nullptr);
  EXPECT_NEAR(make_absolute_distance(ConvexDomain::full_space(1))(x, y), 2.0, 0.0);
}

}  // namespace
}  // namespace bregman
