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
#include <optional>
#include <string_view>
#include <vector>

#include "bregman/dataset.hpp"
#include "bregman/divergence.hpp"
#include "bregman/generator.hpp"
#include "bregman/types.hpp"

namespace bregman {

// Certification: decide by sampling whether a divergence d is the Bregman
// divergence of a given generator phi.
//
// A pair (phi, d) is information-equivalent when the Jensen-gap information
// and the divergence information agree on every weighted dataset; that
// happens exactly when d = d_phi. `certify` samples datasets looking for a
// disagreement. A disagreement refutes d outright. Agreement on every sample
// is evidence, never proof, and the report says so.
//
// The remaining functions probe the intermediate structure that equivalence
// forces on the residual f(x, y) = d(x, y) - phi(x) + phi(y):
//   - sum_i mu_i f(x_i, y) = I_d - I_phi, so it vanishes with the gap;
//   - g_y(v) = f(y + v, y) is odd and positively homogeneous, hence linear;
//   - so f is affine in x: f(x, y) = h1(y).x + h2(y), with h2 = -h1.y;
//   - and h1(y) = -grad phi(y) up to directions normal to the domain.

/// Draws weighted datasets for certification. Trial t uses its own random
/// stream derived from (seed, t), so trial t is the same dataset no matter how
/// many trials run or in what order.
struct TrialSampler {
  ConvexDomain domain;
  std::uint64_t seed = 0;
  int trials = 1000;
  int n_min = 1;
  int n_max = 8;
  double radius = 3.0;  // FullSpace / PositiveOrthant coordinate bound

  TrialSampler(ConvexDomain domain, std::uint64_t seed, int trials = 1000, int n_min = 1,
               int n_max = 8, double radius = 3.0);

  /// n ~ U{n_min..n_max}, mu ~ Dirichlet(1..1), rows from sample_point.
  WeightedDataset sample(int trial) const;
};

enum class Verdict { ConsistentWithBregman, RefutedWithCounterexample };

std::string_view to_string(Verdict verdict);

struct Counterexample {
  int trial = -1;          // first refuting trial index
  int original_size = 0;   // n of that trial before minimization
  bool minimized = false;  // true when shrunk to two points
  Vector weights;
  PointMatrix points;
  double jensen_gap = 0.0;        // I_phi
  double divergence_info = 0.0;   // I_d
  double gap = 0.0;               // I_phi - I_d
  double scaled_gap = 0.0;        // |gap| / (1 + |I_phi| + |I_d|)
};

/// Worst residuals of the structural probes over a set of sampled interior
/// points y, with pass flags at the fixed thresholds below.
struct StructuralDiagnostics {
  static constexpr double kOddnessTolerance = 1e-9;
  static constexpr double kHomogeneityTolerance = 1e-9;
  static constexpr double kAffineFitTolerance = 1e-8;
  static constexpr double kH2Tolerance = 1e-8;
  static constexpr double kGradientRecoveryTolerance = 1e-7;

  int points_probed = 0;
  double oddness = 0.0;
  double homogeneity = 0.0;
  double affine_fit = 0.0;
  double h2_consistency = 0.0;
  double grad_recovery = 0.0;

  bool oddness_ok() const { return oddness <= kOddnessTolerance; }
  bool homogeneity_ok() const { return homogeneity <= kHomogeneityTolerance; }
  bool affine_fit_ok() const { return affine_fit <= kAffineFitTolerance; }
  bool h2_ok() const { return h2_consistency <= kH2Tolerance; }
  /// Only meaningful when the residual is affine.
  bool grad_recovery_ok() const {
    return affine_fit_ok() && grad_recovery <= kGradientRecoveryTolerance;
  }
  bool all_passed() const {
    return oddness_ok() && homogeneity_ok() && affine_fit_ok() && h2_ok() &&
           grad_recovery_ok();
  }
};

struct CertificationReport {
  Verdict verdict = Verdict::ConsistentWithBregman;
  int trials_run = 0;
  double max_abs_gap = 0.0;     // max |I_phi - I_d| over trials
  double max_scaled_gap = 0.0;  // max |gap| / (1 + |I_phi| + |I_d|); compared to tolerance
  double tolerance_used = 0.0;
  std::optional<Counterexample> counterexample;
  StructuralDiagnostics residual_diagnostics;

  /// Sampling can refute but never prove.
  static constexpr std::string_view kConsistentCaveat =
      "sampled verdict: no counterexample found; this is not a proof";
};

struct CertifyOptions {
  int threads = 1;
  bool minimize_counterexample = true;
  int diagnostic_points = 5;  // interior points for the structural probes
};

inline constexpr double kDefaultCertificationTolerance = 1e-8;

/// Throws SamplerDomainMismatch unless sampler, generator and divergence share
/// one domain kind and dimension.
CertificationReport certify(const ConvexGenerator& gen, const DivergenceFn& d,
                            const TrialSampler& sampler,
                            double tol = kDefaultCertificationTolerance,
                            const CertifyOptions& options = {});

/// Recomputes a counterexample's informations from its (mu, X).
Counterexample replay_counterexample(const ConvexGenerator& gen, const DivergenceFn& d,
                                     const Counterexample& ce);

/// f(x, y) = d(x, y) - phi(x) + phi(y).
double residual(const ConvexGenerator& gen, const DivergenceFn& d, VectorRef x, VectorRef y);

/// sum_i mu_i f(x_i, y) at the centroid y; equals I_d - I_phi.
double check_mean_zero_residual(const ConvexGenerator& gen, const DivergenceFn& d,
                                const WeightedDataset& ds);

struct CheckResult {
  double residual = 0.0;
  bool passed = false;
};

/// |g_y(v) + g_y(-v)| with g_y(v) = f(y + v, y). Throws StepLeavesDomain when
/// y + v or y - v is outside the domain.
CheckResult check_g_oddness(const ConvexGenerator& gen, const DivergenceFn& d, VectorRef y,
                            VectorRef v, double tolerance);

/// |g_y(c v) - c g_y(v)|.
double check_g_homogeneity(const ConvexGenerator& gen, const DivergenceFn& d, VectorRef y,
                           VectorRef v, double c);

struct AffineFit {
  Vector h1;
  double h2 = 0.0;
  double max_fit_residual = 0.0;
  double condition_number = 0.0;  // of the column-scaled design
  int rank = 0;
};

/// Least-squares fit of x -> f(x, y) = h1.x + h2 over probe rows. On the
/// simplex h1 is only determined up to multiples of the all-ones vector; the
/// minimum-norm solution is returned. Throws RankDeficientProbes when the
/// probes do not span the domain's affine hull.
AffineFit fit_affine_residual(const ConvexGenerator& gen, const DivergenceFn& d, VectorRef y,
                              const PointMatrix& probes);

/// 2 dim + 2 probes: y +- r e_i (tangent-projected on the simplex, shortened
/// near the boundary) and two random nearby interior points; r = 0.1 * scale.
PointMatrix default_probes(const ConvexDomain& domain, VectorRef y, std::uint64_t seed);

struct GradientRecovery {
  double discrepancy = 0.0;  // |grad phi(y) + h1|_inf, centered on the simplex
  double max_fit_residual = 0.0;
  bool affine = false;       // discrepancy is meaningless when false
};

/// Fits f on default_probes(y) and compares h1 with -grad phi(y).
GradientRecovery check_gradient_recovery(const ConvexGenerator& gen, const DivergenceFn& d,
                                         VectorRef y, std::uint64_t probe_seed = 0,
                                         double affine_tolerance =
                                             StructuralDiagnostics::kAffineFitTolerance);

/// Runs every structural probe at `points` interior points drawn from the
/// generator domain's default law and keeps the worst residual of each.
StructuralDiagnostics probe_structure(const ConvexGenerator& gen, const DivergenceFn& d,
                                      std::uint64_t seed, int points, double radius = 3.0);

struct CentroidMinimizerResult {
  bool passed = true;
  int probes = 0;
  double worst_margin = 0.0;  // min over z of sum mu d(x, z) - sum mu d(x, y)
  std::optional<Vector> violating_point;
};

/// Checks that the centroid minimizes z -> sum_i mu_i d(x_i, z) against
/// `probe_count` random interior z. A violation shows d is not Bregman.
CentroidMinimizerResult check_centroid_minimizer(const DivergenceFn& d,
                                                 const WeightedDataset& ds, int probe_count,
                                                 std::uint64_t seed);

}  // namespace bregman
