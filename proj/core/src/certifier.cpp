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

#include "bregman/certifier.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <limits>
#include <thread>

#include "bregman/information.hpp"
#include "bregman/random.hpp"

namespace bregman {

namespace {

constexpr std::array<double, 5> kHomogeneityFactors = {-2.0, -0.5, 0.0, 0.5, 2.5};

// Salt separating the diagnostic streams from the trial streams.
constexpr std::uint64_t kDiagnosticStream = 0x5eed'd1a6'0000'0000ULL;

struct TrialOutcome {
  double jensen_gap = 0.0;
  double divergence_info = 0.0;
  std::exception_ptr error;
};

double scaled_gap(double jensen_gap, double divergence_info) {
  return std::abs(jensen_gap - divergence_info) /
         (1.0 + std::abs(jensen_gap) + std::abs(divergence_info));
}

Counterexample make_counterexample(const WeightedDataset& ds, double jensen_gap,
                                   double divergence_info) {
  Counterexample ce;
  ce.weights = ds.weights();
  ce.points = ds.points();
  ce.original_size = ds.size();
  ce.jensen_gap = jensen_gap;
  ce.divergence_info = divergence_info;
  ce.gap = jensen_gap - divergence_info;
  ce.scaled_gap = scaled_gap(jensen_gap, divergence_info);
  return ce;
}

// Breadth-first dyadic points of (0, 1): 1/2, 1/4, 3/4, 1/8, ...
std::vector<double> dyadic_weights(int depth) {
  std::vector<double> out;
  for (int level = 1; level <= depth; ++level) {
    const double denom = std::ldexp(1.0, level);
    for (int num = 1; num < (1 << level); num += 2) out.push_back(num / denom);
  }
  return out;
}

// Looks for a two-point refutation built from rows of the original witness.
std::optional<Counterexample> shrink_to_pair(const ConvexGenerator& gen, const DivergenceFn& d,
                                             const WeightedDataset& ds, double tol) {
  const std::vector<double> mus = dyadic_weights(5);
  for (int i = 0; i < ds.size(); ++i) {
    for (int j = i + 1; j < ds.size(); ++j) {
      if ((ds.point(i) - ds.point(j)).norm() == 0.0) continue;
      PointMatrix pair(2, ds.dimension());
      pair.row(0) = ds.points().row(i);
      pair.row(1) = ds.points().row(j);
      for (double mu : mus) {
        Vector weights(2);
        weights << mu, 1.0 - mu;
        WeightedDataset candidate(weights, pair, ds.domain());
        if (!centroid(candidate).interior) continue;
        const double ig = jensen_gap_information(gen, candidate);
        const double id = divergence_information(d, candidate);
        if (scaled_gap(ig, id) > tol) return make_counterexample(candidate, ig, id);
      }
    }
  }
  return std::nullopt;
}

std::vector<TrialOutcome> run_trials(const ConvexGenerator& gen, const DivergenceFn& d,
                                     const TrialSampler& sampler, int threads) {
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(sampler.trials));
  auto work = [&](int begin, int end) {
    for (int t = begin; t < end; ++t) {
      TrialOutcome& out = outcomes[static_cast<std::size_t>(t)];
      try {
        const WeightedDataset ds = sampler.sample(t);
        out.jensen_gap = jensen_gap_information(gen, ds);
        out.divergence_info = divergence_information(d, ds);
      } catch (...) {
        out.error = std::current_exception();
      }
    }
  };
  threads = std::clamp(threads, 1, sampler.trials);
  if (threads == 1) {
    work(0, sampler.trials);
    return outcomes;
  }
  std::vector<std::jthread> pool;
  const int chunk = (sampler.trials + threads - 1) / threads;
  for (int begin = 0; begin < sampler.trials; begin += chunk) {
    pool.emplace_back(work, begin, std::min(sampler.trials, begin + chunk));
  }
  pool.clear();
  return outcomes;
}

double max_symmetric_step(VectorRef y, VectorRef dir, double floor) {
  double t = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (dir[i] != 0.0) t = std::min(t, (y[i] - floor) / std::abs(dir[i]));
  }
  return std::max(t, 0.0);
}

void require_in_domain(const ConvexDomain& domain, VectorRef x) {
  if (!domain.contains(x)) {
    throw Error(ErrorCode::StepLeavesDomain, "probe point leaves " + domain.describe());
  }
}

}  // namespace

std::string_view to_string(Verdict verdict) {
  return verdict == Verdict::ConsistentWithBregman ? "ConsistentWithBregman"
                                                   : "RefutedWithCounterexample";
}

CertificationReport certify(const ConvexGenerator& gen, const DivergenceFn& d,
                            const TrialSampler& sampler, double tol,
                            const CertifyOptions& options) {
  if (!sampler.domain.compatible_with(gen.domain()) ||
      !sampler.domain.compatible_with(d.domain())) {
    throw Error(ErrorCode::SamplerDomainMismatch,
                "sampler domain " + sampler.domain.describe() + " does not match generator " +
                    gen.domain().describe() + " and divergence " + d.domain().describe());
  }
  if (!(tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be nonnegative");

  const std::vector<TrialOutcome> outcomes = run_trials(gen, d, sampler, options.threads);

  CertificationReport report;
  report.tolerance_used = tol;
  report.trials_run = sampler.trials;
  int first_refuting = -1;
  for (int t = 0; t < sampler.trials; ++t) {
    const TrialOutcome& out = outcomes[static_cast<std::size_t>(t)];
    if (out.error) std::rethrow_exception(out.error);
    const double gap = std::abs(out.jensen_gap - out.divergence_info);
    const double scaled = scaled_gap(out.jensen_gap, out.divergence_info);
    report.max_abs_gap = std::max(report.max_abs_gap, gap);
    report.max_scaled_gap = std::max(report.max_scaled_gap, scaled);
    if (first_refuting < 0 && scaled > tol) first_refuting = t;
  }

  if (first_refuting >= 0) {
    const WeightedDataset ds = sampler.sample(first_refuting);
    const TrialOutcome& out = outcomes[static_cast<std::size_t>(first_refuting)];
    Counterexample ce = make_counterexample(ds, out.jensen_gap, out.divergence_info);
    if (options.minimize_counterexample && ds.size() > 2) {
      if (auto pair = shrink_to_pair(gen, d, ds, tol)) {
        ce = *pair;
        ce.original_size = ds.size();
        ce.minimized = true;
      }
    } else {
      ce.minimized = ds.size() <= 2;
    }
    ce.trial = first_refuting;
    report.counterexample = std::move(ce);
    report.verdict = Verdict::RefutedWithCounterexample;
  }

  if (options.diagnostic_points > 0) {
    report.residual_diagnostics = probe_structure(
        gen, d, sampler.seed ^ kDiagnosticStream, options.diagnostic_points, sampler.radius);
  }
  return report;
}

Counterexample replay_counterexample(const ConvexGenerator& gen, const DivergenceFn& d,
                                     const Counterexample& ce) {
  const WeightedDataset ds(ce.weights, ce.points, gen.domain());
  Counterexample out = make_counterexample(ds, jensen_gap_information(gen, ds),
                                           divergence_information(d, ds));
  out.trial = ce.trial;
  out.original_size = ce.original_size;
  out.minimized = ce.minimized;
  return out;
}

double residual(const ConvexGenerator& gen, const DivergenceFn& d, VectorRef x, VectorRef y) {
  return d(x, y) - gen.value(x) + gen.value(y);
}

double check_mean_zero_residual(const ConvexGenerator& gen, const DivergenceFn& d,
                                const WeightedDataset& ds) {
  const Vector y = weighted_mean(ds.weights(), ds.points());
  if (!d.domain().in_relative_interior(y)) {
    throw Error(ErrorCode::CentroidNotInterior, "centroid is not in the relative interior");
  }
  double total = 0.0;
  for (int i = 0; i < ds.size(); ++i) total += ds.weight(i) * residual(gen, d, ds.point(i), y);
  return total;
}

CheckResult check_g_oddness(const ConvexGenerator& gen, const DivergenceFn& d, VectorRef y,
                            VectorRef v, double tolerance) {
  const Vector plus = y + v;
  const Vector minus = y - v;
  require_in_domain(gen.domain(), plus);
  require_in_domain(gen.domain(), minus);
  CheckResult result;
  result.residual = std::abs(residual(gen, d, plus, y) + residual(gen, d, minus, y));
  result.passed = result.residual <= tolerance;
  return result;
}

double check_g_homogeneity(const ConvexGenerator& gen, const DivergenceFn& d, VectorRef y,
                           VectorRef v, double c) {
  const Vector base = y + v;
  const Vector scaled = y + c * v;
  require_in_domain(gen.domain(), base);
  require_in_domain(gen.domain(), scaled);
  return std::abs(residual(gen, d, scaled, y) - c * residual(gen, d, base, y));
}

AffineFit fit_affine_residual(const ConvexGenerator& gen, const DivergenceFn& d, VectorRef y,
                              const PointMatrix& probes) {
  const int dim = gen.dimension();
  const auto m = probes.rows();
  if (probes.cols() != dim || y.size() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "probe dimension does not match the generator");
  }
  const bool on_simplex = gen.domain().kind() == DomainKind::Simplex;
  const int expected_rank = on_simplex ? dim : dim + 1;
  if (m < expected_rank) {
    throw Error(ErrorCode::RankDeficientProbes, "too few probes for an affine fit");
  }

  // Regress on (x - y, 1) so that conditioning does not depend on |y|, then
  // scale columns to unit norm.
  Matrix design(m, dim + 1);
  Vector target(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Vector x = probes.row(i).transpose();
    design.row(i).head(dim) = (x - y).transpose();
    design(i, dim) = 1.0;
    target[i] = residual(gen, d, x, y);
  }
  Vector column_scale = design.colwise().norm().transpose();
  for (Eigen::Index c = 0; c < column_scale.size(); ++c) {
    if (column_scale[c] == 0.0) column_scale[c] = 1.0;
  }
  const Matrix scaled = design * column_scale.cwiseInverse().asDiagonal();

  Eigen::JacobiSVD<Matrix> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  AffineFit fit;
  fit.rank = static_cast<int>(svd.rank());
  if (fit.rank < expected_rank) {
    throw Error(ErrorCode::RankDeficientProbes,
                "probe design does not span the domain's affine hull");
  }
  const auto& sv = svd.singularValues();
  fit.condition_number = sv[0] / sv[fit.rank - 1];
  const Vector coef = column_scale.cwiseInverse().asDiagonal() * svd.solve(target);

  fit.h1 = coef.head(dim);
  // f = h1.(x - y) + b  =>  h2 = b - h1.y
  fit.h2 = coef[dim] - fit.h1.dot(y);
  fit.max_fit_residual = (design * coef - target).cwiseAbs().maxCoeff();
  return fit;
}

PointMatrix default_probes(const ConvexDomain& domain, VectorRef y, std::uint64_t seed) {
  const int dim = domain.dimension();
  const double r = 0.1 * domain.scale();
  const bool bounded = domain.kind() != DomainKind::FullSpace;
  PointMatrix probes(2 * dim + 2, dim);
  for (int i = 0; i < dim; ++i) {
    Vector dir = Vector::Unit(dim, i);
    if (domain.kind() == DomainKind::Simplex) dir.array() -= 1.0 / dim;
    double step = r;
    if (bounded) step = std::min(r, 0.5 * max_symmetric_step(y, dir, domain.interior_margin()));
    probes.row(2 * i) = (y + step * dir).transpose();
    probes.row(2 * i + 1) = (y - step * dir).transpose();
  }
  Rng rng(seed);
  for (int k = 0; k < 2; ++k) {
    Vector w = sample_feasible_direction(domain, y, rng, 1.0);
    const double amax = w.cwiseAbs().maxCoeff();
    if (amax > r) w *= r / amax;
    probes.row(2 * dim + k) = (y + w).transpose();
  }
  return probes;
}

GradientRecovery check_gradient_recovery(const ConvexGenerator& gen, const DivergenceFn& d,
                                         VectorRef y, std::uint64_t probe_seed,
                                         double affine_tolerance) {
  const AffineFit fit = fit_affine_residual(gen, d, y, default_probes(gen.domain(), y, probe_seed));
  Vector mismatch = gen.gradient(y) + fit.h1;
  if (gen.domain().kind() == DomainKind::Simplex) mismatch.array() -= mismatch.mean();
  GradientRecovery result;
  result.discrepancy = mismatch.cwiseAbs().maxCoeff();
  result.max_fit_residual = fit.max_fit_residual;
  result.affine = fit.max_fit_residual <= affine_tolerance;
  return result;
}

StructuralDiagnostics probe_structure(const ConvexGenerator& gen, const DivergenceFn& d,
                                      std::uint64_t seed, int points, double radius) {
  StructuralDiagnostics diag;
  const ConvexDomain& domain = gen.domain();
  double reach = 0.0;
  for (double c : kHomogeneityFactors) reach = std::max(reach, std::abs(c));
  for (int p = 0; p < points; ++p) {
    const std::uint64_t stream = derive_seed(seed, static_cast<std::uint64_t>(p));
    Rng rng(stream);
    const Vector y = sample_point(domain, rng, radius);
    const Vector v = sample_feasible_direction(domain, y, rng, reach);

    diag.oddness = std::max(
        diag.oddness,
        check_g_oddness(gen, d, y, v, StructuralDiagnostics::kOddnessTolerance).residual);
    for (double c : kHomogeneityFactors) {
      diag.homogeneity = std::max(diag.homogeneity, check_g_homogeneity(gen, d, y, v, c));
    }
    const AffineFit fit = fit_affine_residual(gen, d, y, default_probes(domain, y, stream));
    diag.affine_fit = std::max(diag.affine_fit, fit.max_fit_residual);
    diag.h2_consistency = std::max(diag.h2_consistency, std::abs(fit.h2 + fit.h1.dot(y)));
    Vector mismatch = gen.gradient(y) + fit.h1;
    if (domain.kind() == DomainKind::Simplex) mismatch.array() -= mismatch.mean();
    diag.grad_recovery = std::max(diag.grad_recovery, mismatch.cwiseAbs().maxCoeff());
    ++diag.points_probed;
  }
  return diag;
}

CentroidMinimizerResult check_centroid_minimizer(const DivergenceFn& d,
                                                 const WeightedDataset& ds, int probe_count,
                                                 std::uint64_t seed) {
  const Vector y = weighted_mean(ds.weights(), ds.points());
  const double at_centroid = divergence_information(d, ds);
  const ConvexDomain& domain = d.domain();
  CentroidMinimizerResult result;
  result.worst_margin = std::numeric_limits<double>::infinity();
  Rng rng(seed);
  for (int p = 0; p < probe_count; ++p) {
    Vector z;
    if (p % 2 == 0) {
      // Local probe: a shortened feasible step away from the centroid.
      z = y + rng.uniform(0.05, 1.0) * sample_feasible_direction(domain, y, rng, 1.0);
    } else {
      z = sample_point(domain, rng);
    }
    if ((z - y).norm() == 0.0 || !domain.in_relative_interior(z)) continue;
    double total = 0.0;
    for (int i = 0; i < ds.size(); ++i) total += ds.weight(i) * d(ds.point(i), z);
    const double margin = total - at_centroid;
    ++result.probes;
    if (margin < result.worst_margin) result.worst_margin = margin;
    if (margin < -1e-12 && result.passed) {
      result.passed = false;
      result.violating_point = z;
    }
  }
  if (result.probes == 0) result.worst_margin = 0.0;
  return result;
}

}  // namespace bregman
