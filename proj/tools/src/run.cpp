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

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>

#include "bregman/bregman.hpp"
#include "bregman/cli/csv.hpp"
#include "bregman/cli/report.hpp"
#include "bregman/cli/run_config.hpp"

namespace bregman::cli {

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> names{"info", "certify", "mi", "cluster",
                                              "metric-check"};
  return names;
}

const std::vector<std::string>& known_generators() {
  static const std::vector<std::string> names{"sqnorm", "mahalanobis", "negentropy"};
  return names;
}

const std::vector<std::string>& known_divergences() {
  static const std::vector<std::string> names{
      "bregman-of-generator", "kl",           "generalized-kl",
      "sqeuclidean",          "mahalanobis",  "abs-distance",
      "scaled-bregman:<c>",   "bregman-plus-quartic:<eps>"};
  return names;
}

namespace {

const std::vector<std::string> kGenParamKeys{"dim", "W", "domain"};

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& name : names) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

bool contains(const std::vector<std::string>& names, const std::string& name) {
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::optional<double> divergence_parameter(const std::string& name, const std::string& prefix) {
  if (name.rfind(prefix, 0) != 0) return std::nullopt;
  const auto value = parse_number(std::string_view(name).substr(prefix.size()));
  if (!value) throw InputError("bad parameter in divergence '" + name + "'");
  return value;
}

bool is_known_divergence(const std::string& name) {
  if (name.rfind("scaled-bregman:", 0) == 0 || name.rfind("bregman-plus-quartic:", 0) == 0) {
    return true;
  }
  return contains(known_divergences(), name) && name.find('<') == std::string::npos;
}

void validate(const RunConfig& c) {
  if (!contains(known_commands(), c.command)) {
    throw InputError("unknown command '" + c.command + "'; known: " + join_names(known_commands()));
  }
  if (!contains(known_generators(), c.generator)) {
    throw InputError("unknown generator '" + c.generator +
                     "'; known: " + join_names(known_generators()));
  }
  if (!is_known_divergence(c.divergence)) {
    throw InputError("unknown divergence '" + c.divergence +
                     "'; known: " + join_names(known_divergences()));
  }
  for (const auto& [key, value] : c.gen_params) {
    if (!contains(kGenParamKeys, key)) {
      throw InputError("unknown generator parameter '" + key +
                       "'; known: " + join_names(kGenParamKeys));
    }
  }
  if (c.log_base != "nat") throw InputError("--log-base must be 'nat'");
  if (c.trials < 1) throw InputError("--trials must be positive");
  if (!(c.tol > 0.0)) throw InputError("--tol must be positive");
  if (c.k < 1) throw InputError("--k must be positive");
  if (c.max_iters < 1) throw InputError("--max-iters must be positive");
  if (c.restarts < 1) throw InputError("--restarts must be positive");
  if (c.threads < 1) throw InputError("--threads must be positive");
  if (c.n_min < 1 || c.n_max < c.n_min) throw InputError("need 1 <= --n-min <= --n-max");
  if (!(c.radius > 0.0)) throw InputError("--radius must be positive");
  for (double s : c.scales) {
    if (!(s > 0.0)) throw InputError("--scales must be positive");
  }
  const bool needs_input = c.command == "info" || c.command == "mi" || c.command == "cluster";
  if (needs_input && c.input.empty()) throw InputError("command '" + c.command + "' needs --input");
}

std::optional<DomainKind> domain_param(const RunConfig& c) {
  const auto it = c.gen_params.find("domain");
  if (it == c.gen_params.end()) return std::nullopt;
  if (it->second == "full") return DomainKind::FullSpace;
  if (it->second == "orthant") return DomainKind::PositiveOrthant;
  if (it->second == "simplex") return DomainKind::Simplex;
  throw InputError("domain must be full, orthant or simplex");
}

std::optional<int> dim_param(const RunConfig& c) {
  const auto it = c.gen_params.find("dim");
  if (it == c.gen_params.end()) return std::nullopt;
  const auto value = parse_number(it->second);
  if (!value || *value < 1 || *value != static_cast<int>(*value)) {
    throw InputError("dim must be a positive integer");
  }
  return static_cast<int>(*value);
}

Matrix weight_matrix(const RunConfig& c) {
  const auto it = c.gen_params.find("W");
  if (it == c.gen_params.end()) throw InputError("mahalanobis needs --gen-param W=<csv>");
  Matrix w = table_to_matrix(read_csv_file(it->second));
  if (w.rows() == 0 || w.rows() != w.cols()) throw InputError("W must be a square matrix");
  return w;
}

// Everything derived from the config before any computation.
struct Resolved {
  std::optional<WeightedRows> data;
  std::optional<CsvTable> joint;
  std::shared_ptr<const ConvexGenerator> gen;
  std::optional<DivergenceFn> divergence;
};

int infer_dimension(const RunConfig& c, const Resolved& r) {
  if (const auto dim = dim_param(c)) return *dim;
  if (r.data) return static_cast<int>(r.data->points.cols());
  if (!c.point.empty()) return static_cast<int>(c.point.size());
  return 2;
}

std::shared_ptr<const ConvexGenerator> build_generator(const RunConfig& c, int dim) {
  const auto kind = domain_param(c);
  if (c.generator == "sqnorm") {
    return std::make_shared<const ConvexGenerator>(
        make_generator_squared_norm(dim, kind.value_or(DomainKind::FullSpace)));
  }
  if (c.generator == "negentropy") {
    return std::make_shared<const ConvexGenerator>(
        make_generator_negative_entropy(dim, kind.value_or(DomainKind::Simplex)));
  }
  const Matrix w = weight_matrix(c);
  if (dim_param(c) && *dim_param(c) != w.rows()) {
    throw InputError("dim does not match the size of W");
  }
  ConvexGenerator gen = make_generator_squared_mahalanobis(w);
  if (kind && *kind != DomainKind::FullSpace) {
    gen = gen.restricted_to(ConvexDomain(*kind, static_cast<int>(w.rows())));
  }
  return std::make_shared<const ConvexGenerator>(std::move(gen));
}

DivergenceFn build_divergence(const RunConfig& c, const ConvexGenerator& gen) {
  const std::string& name = c.divergence;
  const int dim = gen.dimension();
  if (name == "bregman-of-generator") return bregman_from_generator(gen);
  if (name == "kl") return make_kl_divergence(dim, KlForm::Simplex);
  if (name == "generalized-kl") return make_kl_divergence(dim, KlForm::Generalized);
  if (name == "sqeuclidean") {
    return bregman_from_generator(make_generator_squared_norm(dim, gen.domain().kind()));
  }
  if (name == "mahalanobis") {
    const Matrix w = weight_matrix(c);
    if (w.rows() != dim) throw InputError("W does not match the generator dimension");
    return make_squared_mahalanobis_divergence(w);
  }
  if (name == "abs-distance") return make_absolute_distance(gen.domain());
  if (const auto factor = divergence_parameter(name, "scaled-bregman:")) {
    return scale_divergence(bregman_from_generator(gen), *factor);
  }
  if (const auto eps = divergence_parameter(name, "bregman-plus-quartic:")) {
    return add_quartic_term(bregman_from_generator(gen), *eps);
  }
  throw InputError("unknown divergence '" + name + "'");
}

Resolved resolve(const RunConfig& c) {
  Resolved r;
  if (c.command == "mi") {
    r.joint = read_csv_file(c.input);
    return r;
  }
  if (!c.input.empty()) r.data = split_weights(read_csv_file(c.input), c.weights_column);
  r.gen = build_generator(c, infer_dimension(c, r));
  r.divergence = build_divergence(c, *r.gen);
  if (r.data && r.data->points.cols() != r.gen->dimension()) {
    throw InputError("input has " + std::to_string(r.data->points.cols()) +
                     " coordinates but the generator has dimension " +
                     std::to_string(r.gen->dimension()));
  }
  if (c.command == "metric-check") {
    const auto dim = static_cast<std::size_t>(r.gen->dimension());
    if (!c.point.empty() && c.point.size() != dim) throw InputError("--point has wrong length");
    if (!c.direction.empty() && c.direction.size() != dim) {
      throw InputError("--direction has wrong length");
    }
  }
  return r;
}

void write_config(const RunConfig& c, Report& report) {
  report.set("command", c.command);
  report.set("config.generator", c.generator);
  for (const auto& [key, value] : c.gen_params) report.set("config.gen_param." + key, value);
  report.set("config.divergence", c.divergence);
  report.set("config.input", c.input);
  report.set("config.weights_column", c.weights_column);
  report.set("config.seed", static_cast<unsigned long long>(c.seed));
  report.set("config.trials", c.trials);
  report.set("config.tol", c.tol);
  report.set("config.k", c.k);
  report.set("config.max_iters", c.max_iters);
  report.set("config.restarts", c.restarts);
  report.set("config.log_base", c.log_base);
  report.set("config.threads", c.threads);
  report.set("config.n_min", c.n_min);
  report.set("config.n_max", c.n_max);
  report.set("config.radius", c.radius);
  report.set("config.point", c.point);
  report.set("config.direction", c.direction);
  report.set("config.scales", c.scales);
}

WeightedDataset dataset_of(const Resolved& r) {
  return WeightedDataset(r.data->weights, r.data->points, r.gen->domain());
}

int run_info(const Resolved& r, Report& report) {
  const WeightedDataset ds = dataset_of(r);
  const double i_phi = jensen_gap_information(*r.gen, ds);
  const double i_d = divergence_information(*r.divergence, ds);
  report.set("n", ds.size());
  report.set("dim", ds.dimension());
  report.set("centroid", centroid(ds).point);
  report.set("I_phi", i_phi);
  report.set("I_d", i_d);
  report.set("gap", i_phi - i_d);
  return kExitOk;
}

int run_certify(const RunConfig& c, const Resolved& r, Report& report) {
  const TrialSampler sampler(r.gen->domain(), c.seed, c.trials, c.n_min, c.n_max, c.radius);
  CertifyOptions options;
  options.threads = c.threads;
  const CertificationReport result = certify(*r.gen, *r.divergence, sampler, c.tol, options);

  report.set("verdict", to_string(result.verdict));
  report.set("verdict_note", result.verdict == Verdict::ConsistentWithBregman
                                 ? CertificationReport::kConsistentCaveat
                                 : std::string_view("counterexample found"));
  report.set("trials", result.trials_run);
  report.set("max_abs_gap", result.max_abs_gap);
  report.set("max_scaled_gap", result.max_scaled_gap);
  report.set("tolerance", result.tolerance_used);
  if (const auto& ce = result.counterexample) {
    report.set("counterexample.trial", ce->trial);
    report.set("counterexample.original_n", ce->original_size);
    report.set("counterexample.minimized", ce->minimized);
    report.set("counterexample.mu", ce->weights);
    report.set("counterexample.X", Matrix(ce->points));
    report.set("counterexample.I_phi", ce->jensen_gap);
    report.set("counterexample.I_d", ce->divergence_info);
    report.set("counterexample.gap", ce->gap);
    report.set("counterexample.scaled_gap", ce->scaled_gap);
  }
  const StructuralDiagnostics& diag = result.residual_diagnostics;
  report.set("diagnostics.points", diag.points_probed);
  report.set("diagnostics.oddness", diag.oddness);
  report.set("diagnostics.oddness_ok", diag.oddness_ok());
  report.set("diagnostics.homogeneity", diag.homogeneity);
  report.set("diagnostics.homogeneity_ok", diag.homogeneity_ok());
  report.set("diagnostics.affine_fit", diag.affine_fit);
  report.set("diagnostics.affine_fit_ok", diag.affine_fit_ok());
  report.set("diagnostics.h2_consistency", diag.h2_consistency);
  report.set("diagnostics.h2_consistency_ok", diag.h2_ok());
  report.set("diagnostics.grad_recovery", diag.grad_recovery);
  report.set("diagnostics.grad_recovery_ok", diag.grad_recovery_ok());
  return result.verdict == Verdict::ConsistentWithBregman ? kExitOk : kExitRefuted;
}

int run_mi(const Resolved& r, Report& report) {
  const CsvTable& table = *r.joint;
  if (table.rows.empty()) throw InputError("input has no data rows");
  if (table.columns() < 2) throw InputError("mi input needs a weight column and conditionals");
  const Matrix all = table_to_matrix(table);
  Vector mu = all.col(0);
  if (mu.minCoeff() < 0.0) throw InputError("weights must be nonnegative");
  const double total = mu.sum();
  if (!(total > 0.0)) throw InputError("weights must have a positive sum");
  mu /= total;
  const JointDistribution joint(mu, all.rightCols(all.cols() - 1));
  report.set("rows", static_cast<int>(joint.conditionals().rows()));
  report.set("cols", static_cast<int>(joint.conditionals().cols()));
  report.set("column_marginal", joint.column_marginal());
  report.set("mi_entropy_reduction", mutual_information_entropy_reduction(joint));
  report.set("mi_divergence_form", mutual_information_divergence_form(joint));
  return kExitOk;
}

int run_cluster(const RunConfig& c, const Resolved& r, Report& report) {
  const WeightedDataset ds = dataset_of(r);
  const ClusteringState state = bregman_lloyd(*r.gen, ds, c.k, c.seed, c.max_iters, 1e-10, c.restarts);
  report.set("n", ds.size());
  report.set("dim", ds.dimension());
  report.set("assignments", state.assignments);
  report.set("centroids", Matrix(state.centroids));
  report.set("loss", state.loss);
  report.set("iterations", state.iteration);
  report.set("stop", to_string(state.stop));
  report.set("loss_history", state.loss_history);
  report.set("empty_cluster_repairs", state.empty_cluster_repairs);
  report.set("clamped_centroids", state.clamped_centroids);
  return kExitOk;
}

int run_metric_check(const RunConfig& c, const Resolved& r, Report& report) {
  const ConvexDomain& domain = r.gen->domain();
  const int dim = domain.dimension();
  Vector x = c.point.empty() ? domain.center()
                             : Eigen::Map<const Vector>(c.point.data(), dim).eval();
  Vector delta(dim);
  if (!c.direction.empty()) {
    delta = Eigen::Map<const Vector>(c.direction.data(), dim);
  } else {
    delta.setZero();
    delta[0] = 1.0;
    if (domain.kind() == DomainKind::Simplex && dim > 1) delta[1] = -1.0;
  }
  std::vector<double> scales = c.scales;
  if (scales.empty()) {
    for (double s = 1e-2; s >= 0.99e-4; s /= 2.0) scales.push_back(s);
  }
  const auto samples = local_metric_check(*r.gen, x, delta, scales);
  std::vector<double> out_scales, ratios, divergences, quadratics;
  for (const auto& sample : samples) {
    out_scales.push_back(sample.scale);
    ratios.push_back(sample.ratio);
    divergences.push_back(sample.divergence);
    quadratics.push_back(sample.quadratic);
  }
  report.set("point", x);
  report.set("direction", delta);
  report.set("scales", out_scales);
  report.set("ratios", ratios);
  report.set("divergences", divergences);
  report.set("quadratics", quadratics);
  return kExitOk;
}

int dispatch(const RunConfig& c, const Resolved& r, Report& report) {
  if (c.command == "info") return run_info(r, report);
  if (c.command == "certify") return run_certify(c, r, report);
  if (c.command == "mi") return run_mi(r, report);
  if (c.command == "cluster") return run_cluster(c, r, report);
  return run_metric_check(c, r, report);
}

void error_report(Report& report, std::string_view code, std::string_view message) {
  report.set("status", "error");
  report.set("error.code", code);
  report.set("error.message", message);
}

}  // namespace

ParseResult parse_args(int argc, const char* const* argv, std::ostream& out) {
  ParseResult result;
  RunConfig& c = result.config;
  CLI::App app{"Bregman divergence toolkit"};
  app.set_help_flag("-h,--help", "Print this help and exit");

  std::vector<std::string> gen_params;
  std::string point, direction, scales;
  app.add_option("command", c.command, "info | certify | mi | cluster | metric-check")
      ->required();
  app.add_option("--generator", c.generator, "sqnorm | mahalanobis | negentropy");
  app.add_option("--gen-param", gen_params, "key=value: dim=<n>, W=<csv>, domain=full|orthant|simplex");
  app.add_option("--divergence", c.divergence, "Divergence to evaluate or certify");
  app.add_option("--input", c.input, "CSV data file");
  app.add_option("--weights-column", c.weights_column, "auto | none | <name> | <index>");
  app.add_option("--seed", c.seed, "Random seed");
  app.add_option("--trials", c.trials, "Certification trials");
  app.add_option("--tol", c.tol, "Certification tolerance on the scaled gap");
  app.add_option("--k", c.k, "Number of clusters");
  app.add_option("--max-iters", c.max_iters, "Clustering iteration cap");
  app.add_option("--restarts", c.restarts, "Clustering restarts, best loss kept");
  app.add_option("--output", c.output, "Report path (default: stdout)");
  app.add_option("--log-base", c.log_base, "Logarithm base for informations (nat)");
  app.add_option("--threads", c.threads, "Certification worker threads");
  app.add_option("--n-min", c.n_min, "Smallest sampled dataset size");
  app.add_option("--n-max", c.n_max, "Largest sampled dataset size");
  app.add_option("--radius", c.radius, "Coordinate bound for unbounded domains");
  app.add_option("--point", point, "metric-check base point, comma-separated");
  app.add_option("--direction", direction, "metric-check direction, comma-separated");
  app.add_option("--scales", scales, "metric-check step scales, comma-separated");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    result.help_requested = true;
    return result;
  } catch (const CLI::ParseError& e) {
    throw InputError(e.what());
  }

  for (const auto& entry : gen_params) {
    const std::size_t eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw InputError("--gen-param expects key=value, got '" + entry + "'");
    }
    c.gen_params[entry.substr(0, eq)] = entry.substr(eq + 1);
  }
  c.point = parse_number_list(point);
  c.direction = parse_number_list(direction);
  c.scales = parse_number_list(scales);
  return result;
}

int run(const RunConfig& config, std::ostream& out) {
  Report report;
  int code = kExitOk;
  report.set("status", "ok");
  write_config(config, report);
  try {
    validate(config);
    const Resolved resolved = resolve(config);
    code = dispatch(config, resolved, report);
  } catch (const InputError& e) {
    error_report(report, "InputError", e.what());
    code = kExitInputError;
  } catch (const Error& e) {
    error_report(report, to_string(e.code()), e.what());
    code = is_numerical(e.code()) ? kExitNumericalError : kExitInputError;
  } catch (const std::exception& e) {
    error_report(report, "Internal", e.what());
    code = kExitNumericalError;
  }

  const std::string text = report.render();
  if (config.output.empty()) {
    out << text;
    return code;
  }
  std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
  if (!file || !(file << text)) {
    Report failure;
    error_report(failure, "InputError", "cannot write '" + config.output + "'");
    out << failure.render();
    return kExitInputError;
  }
  return code;
}

}  // namespace bregman::cli
