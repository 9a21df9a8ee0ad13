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
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bregman/bregman.hpp"
#include "bregman/cli/csv.hpp"
#include "bregman/cli/report.hpp"
#include "bregman/cli/run_config.hpp"

namespace bregman::cli {
namespace {

std::string temp_path(const std::string& name) { return ::testing::TempDir() + "bregman_cli_" + name; }

std::string write_file(const std::string& name, const std::string& content) {
  const std::string path = temp_path(name);
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Outcome {
  int code;
  std::string report;
  std::map<std::string, std::string> fields;
};

Outcome run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "bregman-cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  int code = kExitInputError;
  try {
    const auto parsed = parse_args(static_cast<int>(argv.size()), argv.data(), out);
    code = run(parsed.config, out);
  } catch (const InputError&) {
    return {kExitInputError, "", {}};
  }
  return {code, out.str(), parse_report(out.str())};
}

double number(const Outcome& o, const std::string& key) {
  return *parse_number(o.fields.at(key));
}

TEST(Csv, HeaderDetectionAndWeights) {
  std::istringstream in("\xEF\xBB\xBFweight,a,b\n2,0.5,1\n\n6,1.5,-2\n");
  const CsvTable t = read_csv(in);
  ASSERT_TRUE(t.header.has_value());
  EXPECT_EQ(t.rows.size(), 2u);
  const auto w = split_weights(t, "auto");
  EXPECT_DOUBLE_EQ(w.weights[0], 0.25);
  EXPECT_DOUBLE_EQ(w.weights[1], 0.75);
  EXPECT_EQ(w.points.cols(), 2);
  EXPECT_EQ(w.points(1, 1), -2.0);

  const auto none = split_weights(t, "none");
  EXPECT_EQ(none.points.cols(), 3);
  EXPECT_DOUBLE_EQ(none.weights[0], 0.5);
  const auto by_name = split_weights(t, "a");
  EXPECT_EQ(by_name.points(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(by_name.weights[1], 0.75);
}

TEST(Csv, RejectsMalformedInput) {
  std::istringstream ragged("1,2\n3\n");
  EXPECT_THROW(read_csv(ragged), InputError);
  std::istringstream late_text("1,2\nx,y\n");
  EXPECT_THROW(read_csv(late_text), InputError);
  std::istringstream negative("weight,a\n-1,0\n2,1\n");
  EXPECT_THROW(split_weights(read_csv(negative), "auto"), InputError);
  EXPECT_FALSE(parse_number("1,5").has_value());
  EXPECT_FALSE(parse_number("nan").has_value());
  EXPECT_EQ(*parse_number(" +2.5e-1 "), 0.25);
}

TEST(Report, NumbersRoundTrip) {
  Report r;
  const double third = 1.0 / 3.0;
  r.set("x", third);
  r.set("v", std::vector<double>{0.1, -2.0, 1e-300});
  Matrix m(2, 2);
  m << 1.0, 2.0, 3.0, third;
  r.set("m", m);
  const auto fields = parse_report(r.render());
  EXPECT_EQ(*parse_number(fields.at("x")), third);
  const auto v = parse_report_list(fields.at("v"));
  EXPECT_EQ(v[2], 1e-300);
  EXPECT_EQ(parse_report_matrix(fields.at("m")), m);
}

TEST(Run, CertifySquaredNormIsConsistent) {
  const auto o = run_args({"certify", "--generator", "sqnorm", "--gen-param", "dim=2",
                           "--divergence", "bregman-of-generator", "--seed", "42", "--trials",
                           "1000"});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_EQ(o.fields.at("verdict"), "ConsistentWithBregman");
  EXPECT_LE(number(o, "max_abs_gap"), 1e-9);
  EXPECT_EQ(o.fields.at("config.seed"), "42");
  EXPECT_EQ(o.fields.count("counterexample.mu"), 0u);
}

TEST(Run, CertifyAbsoluteDistanceRefutesAndReplays) {
  const std::string out = temp_path("refuted.txt");
  const auto o = run_args({"certify", "--gen-param", "dim=1", "--divergence", "abs-distance",
                           "--seed", "42", "--trials", "100", "--tol", "1e-6", "--output", out});
  EXPECT_EQ(o.code, kExitRefuted);
  EXPECT_TRUE(o.report.empty());

  const auto fields = parse_report(read_file(out));
  EXPECT_EQ(fields.at("verdict"), "RefutedWithCounterexample");
  EXPECT_EQ(fields.at("counterexample.minimized"), "true");
  const auto mu = parse_report_list(fields.at("counterexample.mu"));
  const Matrix x = parse_report_matrix(fields.at("counterexample.X"));
  ASSERT_EQ(mu.size(), 2u);

  // Replay the stored witness with fresh objects.
  const auto g = make_generator_squared_norm(1);
  const WeightedDataset ds(Eigen::Map<const Vector>(mu.data(), 2), x, g.domain());
  const double gap = equivalence_gap(g, make_absolute_distance(g.domain()), ds);
  EXPECT_EQ(gap, *parse_number(fields.at("counterexample.gap")));
  EXPECT_GT(std::abs(gap), 1e-6);
}

TEST(Run, InfoOnSingleRow) {
  const std::string in = write_file("single.csv", "3,4\n");
  const auto o = run_args({"info", "--input", in});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_EQ(number(o, "I_phi"), 0.0);
  EXPECT_EQ(number(o, "I_d"), 0.0);
}

TEST(Run, InfoWithWeightsAndNegentropy) {
  const std::string in = write_file("simplex.csv", "weight,p,q\n1,1,0\n1,0,1\n");
  const auto o = run_args({"info", "--generator", "negentropy", "--input", in});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_NEAR(number(o, "I_phi"), std::log(2.0), 1e-15);
  EXPECT_NEAR(number(o, "I_d"), std::log(2.0), 1e-15);
}

TEST(Run, MutualInformation) {
  const std::string in = write_file("joint.csv", "0.5,1,0\n0.5,0,1\n");
  const auto o = run_args({"mi", "--input", in});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_NEAR(number(o, "mi_entropy_reduction"), std::log(2.0), 1e-15);
  EXPECT_NEAR(number(o, "mi_divergence_form"), std::log(2.0), 1e-15);
}

TEST(Run, ClusterAndMetricCheck) {
  const std::string in = write_file("blobs.csv", "x\n0\n0.2\n0.4\n10\n10.3\n10.5\n");
  const auto c = run_args({"cluster", "--input", in, "--k", "2", "--seed", "5"});
  EXPECT_EQ(c.code, kExitOk);
  const auto labels = parse_report_list(c.fields.at("assignments"));
  ASSERT_EQ(labels.size(), 6u);
  EXPECT_NE(labels[0], labels[5]);

  const auto m = run_args({"metric-check", "--generator", "negentropy", "--gen-param", "dim=2",
                           "--point", "0.5,0.5", "--direction", "1,-1", "--scales",
                           "1e-2,5e-3,2.5e-3"});
  EXPECT_EQ(m.code, kExitOk);
  const auto ratios = parse_report_list(m.fields.at("ratios"));
  ASSERT_EQ(ratios.size(), 3u);
  EXPECT_LT(ratios[2], ratios[0]);
}

TEST(Run, ExitCodes) {
  auto o = run_args({"certify", "--generator", "nope"});
  EXPECT_EQ(o.code, kExitInputError);
  EXPECT_EQ(o.fields.at("status"), "error");
  EXPECT_NE(o.fields.at("error.message").find("negentropy"), std::string::npos);

  o = run_args({"certify", "--divergence", "bogus"});
  EXPECT_EQ(o.code, kExitInputError);
  EXPECT_NE(o.fields.at("error.message").find("bregman-of-generator"), std::string::npos);

  EXPECT_EQ(run_args({"certify", "--log-base", "bits"}).code, kExitInputError);
  EXPECT_EQ(run_args({"explode"}).code, kExitInputError);
  EXPECT_EQ(run_args({"info", "--input", temp_path("missing.csv")}).code, kExitInputError);

  const std::string outside = write_file("outside.csv", "0.7,0.7\n");
  o = run_args({"info", "--generator", "negentropy", "--input", outside});
  EXPECT_EQ(o.code, kExitInputError);
  EXPECT_EQ(o.fields.at("error.code"), "DomainViolation");

  // A vertex of the simplex has no gradient: a numerical failure.
  const std::string vertex = write_file("vertex.csv", "1,0\n1,0\n");
  o = run_args({"info", "--generator", "negentropy", "--input", vertex});
  EXPECT_EQ(o.code, kExitNumericalError);

  o = run_args({"metric-check", "--generator", "negentropy", "--gen-param", "dim=2", "--scales", "0.9"});
  EXPECT_EQ(o.code, kExitNumericalError);
  EXPECT_EQ(o.fields.at("error.code"), "StepLeavesDomain");
}

TEST(Run, SameSeedSameBytes) {
  const std::vector<std::string> args{"certify", "--generator", "negentropy", "--gen-param",
                                      "dim=3", "--divergence", "scaled-bregman:2", "--seed",
                                      "7", "--trials", "200"};
  const auto a = run_args(args), b = run_args(args);
  EXPECT_EQ(a.code, kExitRefuted);
  EXPECT_EQ(a.report, b.report);

  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  const auto c = run_args(threaded);
  EXPECT_EQ(a.fields.at("counterexample.X"), c.fields.at("counterexample.X"));
  EXPECT_EQ(a.fields.at("max_abs_gap"), c.fields.at("max_abs_gap"));
}

TEST(Run, MahalanobisFromFile) {
  const std::string w = write_file("w.csv", "2,0.5\n0.5,1\n");
  const auto o = run_args({"certify", "--generator", "mahalanobis", "--gen-param", "W=" + w,
                           "--divergence", "mahalanobis", "--trials", "300"});
  EXPECT_EQ(o.code, kExitOk);
  const std::string bad = write_file("bad_w.csv", "1,2\n2,1\n");
  EXPECT_EQ(run_args({"certify", "--generator", "mahalanobis", "--gen-param", "W=" + bad}).code,
            kExitInputError);
}

#ifdef BREGMAN_CLI_PATH
TEST(Executable, ExitStatusPropagates) {
  const std::string out = temp_path("exe.txt");
  const std::string cmd = std::string(BREGMAN_CLI_PATH) +
                          " certify --gen-param dim=1 --divergence abs-distance --trials 50 --output " +
                          out;
  const int status = std::system(cmd.c_str());
  ASSERT_NE(status, -1);
  EXPECT_EQ(WEXITSTATUS(status), kExitRefuted);
  EXPECT_EQ(parse_report(read_file(out)).at("status"), "ok");
}
#endif

}  // namespace
}  // namespace bregman::cli
