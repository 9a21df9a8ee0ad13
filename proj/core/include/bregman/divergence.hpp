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
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "bregman/domain.hpp"
#include "bregman/generator.hpp"
#include "bregman/types.hpp"

namespace bregman {

/// A black-box comparison d(x, y) with x in the domain and y in its relative
/// interior. Nothing is assumed about d beyond what the caller checks; in
/// particular d need not be symmetric.
class DivergenceFn {
 public:
  using Formula = std::function<double(VectorRef, VectorRef)>;

  DivergenceFn(std::string name, ConvexDomain domain, Formula formula,
               std::shared_ptr<const ConvexGenerator> claims_bregman_of = nullptr);

  double operator()(VectorRef x, VectorRef y) const { return formula_(x, y); }
  double evaluate(VectorRef x, VectorRef y) const { return formula_(x, y); }

  const std::string& name() const noexcept { return name_; }
  const ConvexDomain& domain() const noexcept { return domain_; }
  /// The generator this divergence was built from, if any.
  const ConvexGenerator* claims_bregman_of() const noexcept { return generator_.get(); }

 private:
  std::string name_;
  ConvexDomain domain_;
  Formula formula_;
  std::shared_ptr<const ConvexGenerator> generator_;
};

/// d(x, y) = phi(x) - phi(y) - grad phi(y).(x - y), evaluated literally.
/// Throws SecondArgumentNotInterior when y is outside the relative interior.
DivergenceFn bregman_from_generator(const ConvexGenerator& gen);

enum class KlForm {
  Simplex,      // sum x_i ln(x_i / y_i)
  Generalized,  // sum x_i ln(x_i / y_i) - x_i + y_i, for the positive orthant
};

/// Kullback-Leibler divergence in nats with 0 ln(0 / y) = 0. Every y_i must be
/// at least `interior_margin` (SecondArgumentHasZero otherwise).
double kl_divergence(VectorRef x, VectorRef y, KlForm form = KlForm::Simplex,
                     double interior_margin = ConvexDomain::kDefaultInteriorMargin);

/// 1/2 (x - y)^T W (x - y): the divergence of 1/2 x^T W x. Users wanting the
/// unhalved quadratic form pass 2W.
double squared_mahalanobis(const Matrix& weight, VectorRef x, VectorRef y);

namespace detail {

// Unchecked kernels shared with the generator factories.
double half_quadratic_form(const Matrix& weight, VectorRef x, VectorRef y);
double half_squared_distance(VectorRef x, VectorRef y);
double generalized_kl_stable(VectorRef x, VectorRef y);
void validate_weight_matrix(const Matrix& weight);

}  // namespace detail

struct MetricSample {
  double scale = 0.0;
  double ratio = 0.0;       // |d - quadratic| / |s delta|^2
  double divergence = 0.0;  // d_phi(x + s delta, x)
  double quadratic = 0.0;   // 1/2 (s delta)^T H (s delta)
};

/// Compares d_phi(x + s delta, x) against the Hessian quadratic form for each
/// scale s. The ratio should vanish as s -> 0. Uses the generator's closed
/// form when it has one, since the generic formula cannot resolve remainders
/// below |phi| * eps.
std::vector<MetricSample> local_metric_check(const ConvexGenerator& gen, VectorRef x,
                                             VectorRef delta,
                                             const std::vector<double>& scales);

struct DivergenceValidity {
  int pairs = 0;
  int negative_values = 0;       // d(x, y) < -1e-12
  int nonzero_self = 0;          // d(y, y) > 1e-12
  int nonpositive_separated = 0; // d(x, y) <= 0 with |x - y| >= 1e-3
  double min_separated_value = 0.0;

  bool valid() const noexcept {
    return negative_values == 0 && nonzero_self == 0 && nonpositive_separated == 0;
  }
};

/// Sampled necessary conditions for "is a divergence" on the domain's
/// default point law.
DivergenceValidity check_divergence_validity(const DivergenceFn& d, std::uint64_t seed,
                                             int pairs = 1000);

// Closed-form and deliberately non-Bregman comparison functions.

DivergenceFn make_kl_divergence(int dimension, KlForm form = KlForm::Simplex);
DivergenceFn make_squared_mahalanobis_divergence(const Matrix& weight);
/// sum_i |x_i - y_i|; for dimension 1 this is |x - y|.
DivergenceFn make_absolute_distance(const ConvexDomain& domain);
/// c * d
DivergenceFn scale_divergence(const DivergenceFn& d, double factor);
/// d + eps |x - y|^4
DivergenceFn add_quartic_term(const DivergenceFn& d, double eps);

}  // namespace bregman
