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

#include "bregman/generator.hpp"

#include <limits>
#include <sstream>
#include <utility>

#include "bregman/divergence.hpp"
#include "bregman/random.hpp"

namespace bregman {

ConvexGenerator::ConvexGenerator(std::string name, ConvexDomain domain, ValueFn value,
                                 GradientFn gradient, HessianFn hessian,
                                 DivergenceFormula closed_form)
    : name_(std::move(name)),
      domain_(domain),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      hessian_(std::move(hessian)),
      closed_form_(std::move(closed_form)) {
  if (!value_ || !gradient_) {
    throw Error(ErrorCode::InvalidArgument, "generator needs a value and a gradient");
  }
}

void ConvexGenerator::check_dimension(VectorRef x) const {
  if (x.size() != domain_.dimension()) {
    std::ostringstream os;
    os << name_ << ": expected a vector of length " << domain_.dimension() << ", got "
       << x.size();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

double ConvexGenerator::value(VectorRef x) const {
  check_dimension(x);
  return value_(x);
}

Vector ConvexGenerator::gradient(VectorRef x) const {
  check_dimension(x);
  return gradient_(x);
}

Matrix ConvexGenerator::hessian(VectorRef x) const {
  if (!hessian_) {
    throw Error(ErrorCode::HessianUnavailable, name_ + " has no Hessian");
  }
  check_dimension(x);
  return hessian_(x);
}

double ConvexGenerator::closed_form_divergence(VectorRef x, VectorRef y) const {
  if (!closed_form_) {
    throw Error(ErrorCode::InvalidArgument, name_ + " has no closed-form divergence");
  }
  check_dimension(x);
  check_dimension(y);
  return closed_form_(x, y);
}

ConvexGenerator ConvexGenerator::restricted_to(const ConvexDomain& domain) const {
  if (domain.dimension() != domain_.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "restriction must keep the dimension");
  }
  ConvexGenerator copy = *this;
  copy.domain_ = domain;
  return copy;
}

ConvexGenerator make_generator_squared_mahalanobis(const Matrix& weight) {
  detail::validate_weight_matrix(weight);
  const Matrix w = 0.5 * (weight + weight.transpose());
  const int dim = static_cast<int>(w.rows());
  return ConvexGenerator(
      "mahalanobis", ConvexDomain::full_space(dim),
      [w](VectorRef x) { return 0.5 * x.dot(w * x); },
      [w](VectorRef x) -> Vector { return w * x; },
      [w](VectorRef) -> Matrix { return w; },
      [w](VectorRef x, VectorRef y) { return detail::half_quadratic_form(w, x, y); });
}

ConvexGenerator make_generator_squared_norm(int dimension, DomainKind kind) {
  if (dimension < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  return ConvexGenerator(
      "sqnorm", ConvexDomain(kind, dimension),
      [](VectorRef x) { return 0.5 * x.squaredNorm(); },
      [](VectorRef x) -> Vector { return x; },
      [dimension](VectorRef) -> Matrix { return Matrix::Identity(dimension, dimension); },
      [](VectorRef x, VectorRef y) { return detail::half_squared_distance(x, y); });
}

ConvexGenerator make_generator_negative_entropy(int dimension, DomainKind kind) {
  if (dimension < 2) {
    throw Error(ErrorCode::InvalidArgument, "negative entropy needs dimension >= 2");
  }
  if (kind == DomainKind::FullSpace) {
    throw Error(ErrorCode::InvalidArgument, "negative entropy is not defined on the full space");
  }
  const ConvexDomain domain(kind, dimension);
  const double tolerance = domain.membership_tolerance();
  const double margin = domain.interior_margin();
  auto value = [tolerance](VectorRef x) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (x[i] > 0.0) {
        total += x[i] * std::log(x[i]);
      } else if (x[i] < -tolerance) {
        throw Error(ErrorCode::DomainViolation, "negative entropy of a negative coordinate");
      }
    }
    return total;
  };
  auto gradient = [margin](VectorRef x) -> Vector {
    if (x.minCoeff() <= margin) {
      throw Error(ErrorCode::GradientAtBoundary,
                  "negative entropy gradient requested at a boundary point");
    }
    return x.array().log() + 1.0;
  };
  auto hessian = [margin](VectorRef x) -> Matrix {
    if (x.minCoeff() <= margin) {
      throw Error(ErrorCode::GradientAtBoundary,
                  "negative entropy Hessian requested at a boundary point");
    }
    return x.array().inverse().matrix().asDiagonal();
  };
  auto divergence = [margin](VectorRef x, VectorRef y) {
    if (y.minCoeff() < margin) {
      throw Error(ErrorCode::SecondArgumentNotInterior, "KL second argument on the boundary");
    }
    return detail::generalized_kl_stable(x, y);
  };
  return ConvexGenerator("negentropy", domain, value, gradient, hessian, divergence);
}

double check_gradient(const ConvexGenerator& gen, VectorRef x, double step) {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "step must be positive");
  const ConvexDomain& domain = gen.domain();
  if (!domain.in_relative_interior(x)) {
    throw Error(ErrorCode::DomainViolation, "gradient check point is not interior");
  }
  const Vector grad = gen.gradient(x);
  double worst = 0.0;
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    if (domain.kind() != DomainKind::FullSpace && xi - step < domain.interior_margin()) {
      throw Error(ErrorCode::StepLeavesDomain, "finite-difference step leaves the domain");
    }
    probe[i] = xi + step;
    const double forward = gen.value(probe);
    probe[i] = xi - step;
    const double backward = gen.value(probe);
    probe[i] = xi;
    const double central = (forward - backward) / (2.0 * step);
    worst = std::max(worst, std::abs(central - grad[i]));
  }
  return worst;
}

HessianCheck check_hessian(const ConvexGenerator& gen, VectorRef x) {
  const Matrix h = gen.hessian(x);
  HessianCheck result;
  result.asymmetry = (h - h.transpose()).cwiseAbs().maxCoeff();
  result.symmetric = result.asymmetry <= 1e-10;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (h + h.transpose()),
                                               Eigen::EigenvaluesOnly);
  result.min_eigenvalue = solver.eigenvalues().minCoeff();
  result.positive_definite = result.min_eigenvalue > 0.0;
  return result;
}

ConvexitySpotCheck spot_check_convexity(const ConvexGenerator& gen, std::uint64_t seed,
                                        int pairs) {
  ConvexitySpotCheck result;
  result.min_midpoint_gap = std::numeric_limits<double>::infinity();
  Rng rng(seed);
  for (int p = 0; p < pairs; ++p) {
    const Vector a = sample_point(gen.domain(), rng);
    const Vector b = sample_point(gen.domain(), rng);
    const Vector mid = 0.5 * (a + b);
    const double fa = gen.value(a);
    const double fb = gen.value(b);
    const double gap = 0.5 * fa + 0.5 * fb - gen.value(mid);
    const double roundoff = 1e-14 * (1.0 + std::abs(fa) + std::abs(fb));
    ++result.pairs;
    result.min_midpoint_gap = std::min(result.min_midpoint_gap, gap);
    if (gap < -roundoff) ++result.violations;
    if ((a - b).norm() >= 1e-3) {
      ++result.separated_pairs;
      if (gap > roundoff) {
        ++result.strict_instances;
      } else {
        ++result.violations;
      }
    }
  }
  return result;
}

}  // namespace bregman
