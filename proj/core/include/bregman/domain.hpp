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

#include <string>
#include <string_view>

#include "bregman/types.hpp"

namespace bregman {

enum class DomainKind { FullSpace, PositiveOrthant, Simplex };

std::string_view to_string(DomainKind kind);

/// One of three convex sets in R^dim, with a membership test for the set
/// itself and a stricter test for its relative interior.
///
/// The relative interior is made quantitative by `interior_margin`: on the
/// simplex and the positive orthant every coordinate must be at least that
/// large. The full space has no boundary.
class ConvexDomain {
 public:
  static constexpr double kDefaultMembershipTolerance = 1e-9;
  static constexpr double kDefaultInteriorMargin = 1e-8;

  ConvexDomain(DomainKind kind, int dimension,
               double membership_tolerance = kDefaultMembershipTolerance,
               double interior_margin = kDefaultInteriorMargin);

  static ConvexDomain full_space(int dimension) { return {DomainKind::FullSpace, dimension}; }
  static ConvexDomain positive_orthant(int dimension) {
    return {DomainKind::PositiveOrthant, dimension};
  }
  static ConvexDomain simplex(int dimension) { return {DomainKind::Simplex, dimension}; }

  DomainKind kind() const noexcept { return kind_; }
  int dimension() const noexcept { return dimension_; }
  double membership_tolerance() const noexcept { return membership_tolerance_; }
  double interior_margin() const noexcept { return interior_margin_; }

  bool contains(VectorRef x) const;
  bool in_relative_interior(VectorRef x) const;

  /// Characteristic length used to size probe steps: 1 for the unbounded
  /// domains, 1/dim for the simplex.
  double scale() const noexcept;

  /// A canonical interior point (origin, all-ones, or the uniform distribution).
  Vector center() const;

  /// Same kind and dimension.
  bool compatible_with(const ConvexDomain& other) const noexcept {
    return kind_ == other.kind_ && dimension_ == other.dimension_;
  }

  std::string describe() const;

 private:
  DomainKind kind_;
  int dimension_;
  double membership_tolerance_;
  double interior_margin_;
};

}  // namespace bregman
