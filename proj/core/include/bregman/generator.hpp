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
#include <string>

#include "bregman/domain.hpp"
#include "bregman/types.hpp"

namespace bregman {

/// A strictly convex function phi over a ConvexDomain, differentiable on the
/// relative interior.
///
/// Besides value and gradient a generator may carry its Hessian and a
/// closed-form evaluation of its own Bregman divergence. The closed form is
/// only an accuracy aid for small-separation work (the generic formula
/// phi(x) - phi(y) - grad(y).(x - y) loses all digits once d is below
/// |phi| * eps); it never replaces the generic construction elsewhere.
class ConvexGenerator {
 public:
  using ValueFn = std::function<double(VectorRef)>;
  using GradientFn = std::function<Vector(VectorRef)>;
  using HessianFn = std::function<Matrix(VectorRef)>;
  using DivergenceFormula = std::function<double(VectorRef, VectorRef)>;

  ConvexGenerator(std::string name, ConvexDomain domain, ValueFn value, GradientFn gradient,
                  HessianFn hessian = {}, DivergenceFormula closed_form = {});

  const std::string& name() const noexcept { return name_; }
  const ConvexDomain& domain() const noexcept { return domain_; }
  int dimension() const noexcept { return domain_.dimension(); }

  double value(VectorRef x) const;
  Vector gradient(VectorRef x) const;

  bool has_hessian() const noexcept { return static_cast<bool>(hessian_); }
  /// Throws HessianUnavailable when the generator has none.
  Matrix hessian(VectorRef x) const;

  bool has_closed_form_divergence() const noexcept { return static_cast<bool>(closed_form_); }
  double closed_form_divergence(VectorRef x, VectorRef y) const;

  /// The same function viewed on another domain of equal dimension, e.g.
  /// 1/2 |x|^2 restricted to the simplex.
  ConvexGenerator restricted_to(const ConvexDomain& domain) const;

 private:
  void check_dimension(VectorRef x) const;

  std::string name_;
  ConvexDomain domain_;
  ValueFn value_;
  GradientFn gradient_;
  HessianFn hessian_;
  DivergenceFormula closed_form_;
};

/// phi(x) = 1/2 x^T W x on the full space. W must be symmetric within 1e-10
/// and positive-definite.
ConvexGenerator make_generator_squared_mahalanobis(const Matrix& weight);

/// phi(x) = 1/2 |x|^2; defaults to the full space.
ConvexGenerator make_generator_squared_norm(int dimension,
                                            DomainKind kind = DomainKind::FullSpace);

/// phi(x) = sum_i x_i ln x_i with 0 ln 0 = 0. The gradient ln x_i + 1 is only
/// available where every coordinate exceeds the domain's interior margin.
/// `kind` may be Simplex (canonical) or PositiveOrthant.
ConvexGenerator make_generator_negative_entropy(int dimension,
                                                DomainKind kind = DomainKind::Simplex);

/// Max over coordinates of |central difference - gradient component| at an
/// interior point. On the simplex the partial derivatives are those of the
/// ambient formula, so only the coordinates (not the sum) must stay inside.
double check_gradient(const ConvexGenerator& gen, VectorRef x, double step);

struct HessianCheck {
  double asymmetry = 0.0;       // max |H_ij - H_ji|
  double min_eigenvalue = 0.0;  // of the symmetric part
  bool symmetric = false;
  bool positive_definite = false;
};

HessianCheck check_hessian(const ConvexGenerator& gen, VectorRef x);

struct ConvexitySpotCheck {
  int pairs = 0;
  int violations = 0;          // midpoint inequality fails beyond roundoff
  int strict_instances = 0;    // pairs separated by >= 1e-3 with a strict gap
  int separated_pairs = 0;
  double min_midpoint_gap = 0.0;
};

/// Samples interior pairs and tests midpoint convexity. Necessary condition
/// only; a passing check proves nothing.
ConvexitySpotCheck spot_check_convexity(const ConvexGenerator& gen, std::uint64_t seed,
                                        int pairs);

}  // namespace bregman
