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

#include "bregman/divergence.hpp"

#include <limits>
#include <sstream>
#include <utility>

#include "bregman/random.hpp"

namespace bregman {

namespace {

void require_same_size(VectorRef x, VectorRef y) {
  if (x.size() != y.size()) {
    std::ostringstream os;
    os << "argument lengths differ (" << x.size() << " vs " << y.size() << ")";
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

std::string format_factor(double c) {
  std::ostringstream os;
  os.precision(17);
  os << c;
  return os.str();
}

}  // namespace

namespace detail {

void validate_weight_matrix(const Matrix& weight) {
  if (weight.rows() == 0 || weight.rows() != weight.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "weight matrix must be square and nonempty");
  }
  if (!weight.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "weight matrix has non-finite entries");
  }
  if ((weight - weight.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(ErrorCode::NonSymmetric, "weight matrix is not symmetric within 1e-10");
  }
  Eigen::LLT<Matrix> llt(0.5 * (weight + weight.transpose()));
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite, "weight matrix is not positive-definite");
  }
}

double half_quadratic_form(const Matrix& weight, VectorRef x, VectorRef y) {
  const Vector diff = x - y;
  return 0.5 * diff.dot(weight * diff);
}

double half_squared_distance(VectorRef x, VectorRef y) { return 0.5 * (x - y).squaredNorm(); }

// sum_i y_i [(1 + u_i) log1p(u_i) - u_i] with u_i = (x_i - y_i) / y_i, which is
// x_i ln(x_i / y_i) - x_i + y_i rearranged so that nearby arguments do not
// cancel catastrophically.
double generalized_kl_stable(VectorRef x, VectorRef y) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] <= 0.0) {
      total += y[i] - (x[i] < 0.0 ? x[i] : 0.0);
      continue;
    }
    const double u = (x[i] - y[i]) / y[i];
    total += y[i] * ((1.0 + u) * std::log1p(u) - u);
  }
  return total;
}

}  // namespace detail

DivergenceFn::DivergenceFn(std::string name, ConvexDomain domain, Formula formula,
                           std::shared_ptr<const ConvexGenerator> claims_bregman_of)
    : name_(std::move(name)),
      domain_(domain),
      formula_(std::move(formula)),
      generator_(std::move(claims_bregman_of)) {
  if (!formula_) throw Error(ErrorCode::InvalidArgument, "divergence needs a formula");
}

DivergenceFn bregman_from_generator(const ConvexGenerator& gen) {
  auto g = std::make_shared<const ConvexGenerator>(gen);
  auto formula = [g](VectorRef x, VectorRef y) {
    require_same_size(x, y);
    if (!g->domain().in_relative_interior(y)) {
      throw Error(ErrorCode::SecondArgumentNotInterior,
                  "Bregman divergence needs its second argument in the relative interior");
    }
    return g->value(x) - g->value(y) - g->gradient(y).dot(x - y);
  };
  return DivergenceFn("bregman(" + gen.name() + ")", gen.domain(), formula, g);
}

double kl_divergence(VectorRef x, VectorRef y, KlForm form, double interior_margin) {
  require_same_size(x, y);
  constexpr double kTolerance = ConvexDomain::kDefaultMembershipTolerance;
  if (y.size() == 0) return 0.0;
  if (y.minCoeff() < interior_margin) {
    throw Error(ErrorCode::SecondArgumentHasZero,
                "KL divergence needs every coordinate of its second argument positive");
  }
  if (x.minCoeff() < -kTolerance) {
    throw Error(ErrorCode::DomainViolation, "KL first argument has a negative coordinate");
  }
  if (form == KlForm::Generalized) return detail::generalized_kl_stable(x, y);

  if (std::abs(x.sum() - 1.0) > kTolerance || std::abs(y.sum() - 1.0) > kTolerance) {
    throw Error(ErrorCode::DomainViolation, "simplex KL arguments must sum to one");
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) total += x[i] * std::log1p((x[i] - y[i]) / y[i]);
  }
  return total;
}

double squared_mahalanobis(const Matrix& weight, VectorRef x, VectorRef y) {
  detail::validate_weight_matrix(weight);
  require_same_size(x, y);
  if (x.size() != weight.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "weight matrix does not match the vectors");
  }
  return detail::half_quadratic_form(weight, x, y);
}

std::vector<MetricSample> local_metric_check(const ConvexGenerator& gen, VectorRef x,
                                             VectorRef delta,
                                             const std::vector<double>& scales) {
  if (!gen.has_hessian()) {
    throw Error(ErrorCode::HessianUnavailable, gen.name() + " has no Hessian");
  }
  require_same_size(x, delta);
  const ConvexDomain& domain = gen.domain();
  if (!domain.in_relative_interior(x)) {
    throw Error(ErrorCode::DomainViolation, "metric check base point is not interior");
  }
  const Matrix h = gen.hessian(x);
  std::vector<MetricSample> samples;
  samples.reserve(scales.size());
  for (double s : scales) {
    if (!(s > 0.0)) throw Error(ErrorCode::InvalidArgument, "scales must be positive");
    const Vector moved = x + s * delta;
    if (!domain.contains(moved)) {
      throw Error(ErrorCode::StepLeavesDomain, "x + s delta leaves the domain");
    }
    // The perturbation actually realized in floating point.
    const Vector step = moved - x;
    MetricSample sample;
    sample.scale = s;
    const double norm2 = step.squaredNorm();
    if (norm2 == 0.0) {
      samples.push_back(sample);
      continue;
    }
    sample.divergence = gen.has_closed_form_divergence()
                            ? gen.closed_form_divergence(moved, x)
                            : gen.value(moved) - gen.value(x) - gen.gradient(x).dot(step);
    sample.quadratic = 0.5 * step.dot(h * step);
    sample.ratio = std::abs(sample.divergence - sample.quadratic) / norm2;
    samples.push_back(sample);
  }
  return samples;
}

DivergenceValidity check_divergence_validity(const DivergenceFn& d, std::uint64_t seed,
                                             int pairs) {
  DivergenceValidity result;
  result.min_separated_value = std::numeric_limits<double>::infinity();
  Rng rng(seed);
  for (int p = 0; p < pairs; ++p) {
    const Vector x = sample_point(d.domain(), rng);
    const Vector y = sample_point(d.domain(), rng);
    const double dxy = d(x, y);
    const double dyy = d(y, y);
    ++result.pairs;
    if (dxy < -1e-12) ++result.negative_values;
    if (std::abs(dyy) > 1e-12) ++result.nonzero_self;
    if ((x - y).norm() >= 1e-3) {
      result.min_separated_value = std::min(result.min_separated_value, dxy);
      if (!(dxy > 0.0)) ++result.nonpositive_separated;
    }
  }
  return result;
}

DivergenceFn make_kl_divergence(int dimension, KlForm form) {
  const DomainKind kind = form == KlForm::Simplex ? DomainKind::Simplex
                                                  : DomainKind::PositiveOrthant;
  const ConvexDomain domain(kind, dimension);
  const double margin = domain.interior_margin();
  return DivergenceFn(form == KlForm::Simplex ? "kl" : "generalized-kl", domain,
                      [form, margin](VectorRef x, VectorRef y) {
                        return kl_divergence(x, y, form, margin);
                      });
}

DivergenceFn make_squared_mahalanobis_divergence(const Matrix& weight) {
  detail::validate_weight_matrix(weight);
  const Matrix w = weight;
  return DivergenceFn("mahalanobis", ConvexDomain::full_space(static_cast<int>(w.rows())),
                      [w](VectorRef x, VectorRef y) {
                        require_same_size(x, y);
                        return detail::half_quadratic_form(w, x, y);
                      });
}

DivergenceFn make_absolute_distance(const ConvexDomain& domain) {
  return DivergenceFn("abs-distance", domain, [](VectorRef x, VectorRef y) {
    require_same_size(x, y);
    return (x - y).cwiseAbs().sum();
  });
}

DivergenceFn scale_divergence(const DivergenceFn& d, double factor) {
  return DivergenceFn(format_factor(factor) + "*" + d.name(), d.domain(),
                      [d, factor](VectorRef x, VectorRef y) { return factor * d(x, y); });
}

DivergenceFn add_quartic_term(const DivergenceFn& d, double eps) {
  return DivergenceFn(d.name() + "+" + format_factor(eps) + "*|x-y|^4", d.domain(),
                      [d, eps](VectorRef x, VectorRef y) {
                        const double r2 = (x - y).squaredNorm();
                        return d(x, y) + eps * r2 * r2;
                      });
}

}  // namespace bregman
