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

#include "bregman/domain.hpp"

#include <sstream>

namespace bregman {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonSymmetric: return "NonSymmetric";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::GradientAtBoundary: return "GradientAtBoundary";
    case ErrorCode::StepLeavesDomain: return "StepLeavesDomain";
    case ErrorCode::SecondArgumentNotInterior: return "SecondArgumentNotInterior";
    case ErrorCode::SecondArgumentHasZero: return "SecondArgumentHasZero";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::CentroidNotInterior: return "CentroidNotInterior";
    case ErrorCode::InvalidJoint: return "InvalidJoint";
    case ErrorCode::HessianUnavailable: return "HessianUnavailable";
    case ErrorCode::SamplerDomainMismatch: return "SamplerDomainMismatch";
    case ErrorCode::RankDeficientProbes: return "RankDeficientProbes";
    case ErrorCode::EmptyCluster: return "EmptyCluster";
    case ErrorCode::CentroidOnBoundary: return "CentroidOnBoundary";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::GradientAtBoundary:
    case ErrorCode::StepLeavesDomain:
    case ErrorCode::SecondArgumentNotInterior:
    case ErrorCode::SecondArgumentHasZero:
    case ErrorCode::CentroidNotInterior:
    case ErrorCode::HessianUnavailable:
    case ErrorCode::RankDeficientProbes:
    case ErrorCode::CentroidOnBoundary:
      return true;
    default:
      return false;
  }
}

std::string_view to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::FullSpace: return "FullSpace";
    case DomainKind::PositiveOrthant: return "PositiveOrthant";
    case DomainKind::Simplex: return "Simplex";
  }
  return "Unknown";
}

ConvexDomain::ConvexDomain(DomainKind kind, int dimension, double membership_tolerance,
                           double interior_margin)
    : kind_(kind),
      dimension_(dimension),
      membership_tolerance_(membership_tolerance),
      interior_margin_(interior_margin) {
  if (dimension < 1) {
    throw Error(ErrorCode::InvalidArgument, "domain dimension must be >= 1");
  }
  if (!(membership_tolerance >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "membership tolerance must be nonnegative");
  }
  if (!(interior_margin > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "interior margin must be positive");
  }
}

bool ConvexDomain::contains(VectorRef x) const {
  if (x.size() != dimension_ || !x.allFinite()) return false;
  switch (kind_) {
    case DomainKind::FullSpace:
      return true;
    case DomainKind::PositiveOrthant:
      return x.minCoeff() >= -membership_tolerance_;
    case DomainKind::Simplex:
      return x.minCoeff() >= -membership_tolerance_ &&
             std::abs(x.sum() - 1.0) <= membership_tolerance_;
  }
  return false;
}

bool ConvexDomain::in_relative_interior(VectorRef x) const {
  if (!contains(x)) return false;
  if (kind_ == DomainKind::FullSpace) return true;
  return x.minCoeff() >= interior_margin_;
}

double ConvexDomain::scale() const noexcept {
  return kind_ == DomainKind::Simplex ? 1.0 / dimension_ : 1.0;
}

Vector ConvexDomain::center() const {
  switch (kind_) {
    case DomainKind::FullSpace: return Vector::Zero(dimension_);
    case DomainKind::PositiveOrthant: return Vector::Ones(dimension_);
    case DomainKind::Simplex: return Vector::Constant(dimension_, 1.0 / dimension_);
  }
  return Vector::Zero(dimension_);
}

std::string ConvexDomain::describe() const {
  std::ostringstream os;
  os << to_string(kind_) << "(" << dimension_ << ")";
  return os.str();
}

}  // namespace bregman
