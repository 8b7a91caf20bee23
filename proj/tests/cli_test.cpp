// Copyright 2026 The ltiproc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ltiproc/cli.hpp"

namespace ltiproc {
namespace {

namespace fs = std::filesystem;

const std::string kData = LTIPROC_DATA_DIR;
const std::string kGolden = LTIPROC_GOLDEN_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ltiproc");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
    s.replace(pos, from.size(), to);
  return s;
}

// Source paths are replaced by placeholders so transcripts are portable.
std::string portable(const std::string& s) {
  return replace_all(replace_all(s, kGolden + "/inputs", "$INPUTS"), kData, "$DATA");
}

std::string expand(const std::string& arg) {
  return replace_all(replace_all(arg, "$INPUTS", kGolden + "/inputs"), "$DATA", kData);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct GoldenCase {
  const char* name;
  std::vector<std::string> args;
  int expected_code;
};

// Transcript: command line, exit code, stdout, stderr.
std::string transcript(const GoldenCase& c, const Outcome& o) {
  std::string s = "$ ltiproc";
  for (const auto& a : c.args) s += " " + a;
  s += "\nexit " + std::to_string(o.code) + "\n--- stdout\n" + portable(o.out) +
       "--- stderr\n" + portable(o.err);
  return s;
}

class GoldenTest : public ::testing::TestWithParam<GoldenCase> {};

TEST_P(GoldenTest, MatchesTranscript) {
  const GoldenCase& c = GetParam();
  std::vector<std::string> args;
  for (const auto& a : c.args) args.push_back(expand(a));
  const Outcome o = run_cli(args);
  EXPECT_EQ(o.code, c.expected_code);
  const std::string actual = transcript(c, o);
  const fs::path path = fs::path(kGolden) / (std::string(c.name) + ".golden");
  if (std::getenv("LTIPROC_UPDATE_GOLDEN") != nullptr) {
    std::ofstream(path, std::ios::binary) << actual;
    GTEST_SKIP() << "rewrote " << path;
  }
  ASSERT_TRUE(fs::exists(path)) << "missing golden file " << path;
  EXPECT_EQ(actual, read_file(path));
}

const GoldenCase kCases[] = {
    {"rank_row", {"rank", "$DATA/ex1_a.mat"}, 0},
    {"rank_deficient", {"rank", "$INPUTS/rank_deficient.mat"}, 0},
    {"unimodular_identity", {"unimodular", "$DATA/id.mat"}, 0},
    {"unimodular_row", {"unimodular", "$DATA/ex1_a.mat"}, 0},
    {"equivalent_unit_multiple", {"equivalent", "$DATA/ex1_a.mat", "$DATA/ex1_a_scaled.mat"}, 0},
    {"equivalent_different", {"equivalent", "$DATA/ex1_a.mat", "$DATA/ex1_b.mat"}, 0},
    {"equivalent_rank_deficient",
     {"equivalent", "$INPUTS/rank_deficient.mat", "$DATA/id.mat"}, 3},
    {"complementary_pair", {"complementary", "$DATA/ex1_a.mat", "$DATA/ex1_b.mat"}, 0},
    {"complementary_self", {"complementary", "$DATA/ex1_a.mat", "$DATA/ex1_a.mat"}, 0},
    {"complementary_mismatch", {"complementary", "$DATA/ex1_a.mat", "$DATA/ar1.mat"}, 3},
    {"interconnect_pair", {"interconnect", "$DATA/ex1_a.mat", "$DATA/ex1_b.mat"}, 0},
    {"interconnect_self", {"interconnect", "$DATA/ex1_a.mat", "$DATA/ex1_a.mat"}, 3},
    {"fullsigma_pair", {"fullsigma", "$DATA/ex1_a.mat", "$DATA/ex1_b.mat"}, 0},
    {"fullsigma_unimodular_pair", {"fullsigma", "$DATA/ex1_full_a.mat", "$DATA/ex1_full_b.mat"}, 0},
    {"spectrum_integrator", {"spectrum", "$DATA/integrator.mat"}, 3},
    {"spectrum_grid_too_small", {"spectrum", "$DATA/ar1.mat", "--grid", "32"}, 1},
    {"distance_ar1_flat", {"distance", "$DATA/ar1.mat", "$DATA/flat.mat"}, 0},
    {"distance_as_density", {"distance", "--as-density", "$DATA/ar1_density.mat", "$DATA/flat.mat"}, 0},
    {"distance_matrix", {"distance", "$DATA/id.mat", "$DATA/ar1.mat"}, 3},
    {"factor_not_parahermitian", {"factor", "--as-density", "$INPUTS/not_parahermitian.mat"}, 3},
    {"factor_root_on_circle", {"factor", "--as-density", "$INPUTS/circle_density.mat"}, 4},
    {"simulate_integrator", {"simulate", "$DATA/integrator.mat"}, 3},
    {"simulate_row", {"simulate", "$DATA/ex1_a.mat"}, 3},
    {"parse_missing_exponent", {"rank", "$INPUTS/bad_exponent.mat"}, 2},
    {"parse_ragged", {"unimodular", "$INPUTS/ragged.mat"}, 2},
    {"missing_file", {"rank", "$DATA/does_not_exist.mat"}, 1},
    {"missing_argument", {"rank"}, 1},
    {"unknown_subcommand", {"transpose", "$DATA/id.mat"}, 1},
    {"no_subcommand", {}, 1},
};

INSTANTIATE_TEST_SUITE_P(Cli, GoldenTest, ::testing::ValuesIn(kCases),
                         [](const auto& info) { return std::string(info.param.name); });

TEST(CliTest, HelpExitsCleanly) {
  const Outcome o = run_cli({"--help"});
  EXPECT_EQ(o.code, 0);
  for (const char* command : {"rank", "unimodular", "equivalent", "complementary", "interconnect",
                              "fullsigma", "spectrum", "factor", "distance", "simulate", "checkspec"})
    EXPECT_NE(o.out.find(command), std::string::npos) << command;
}

TEST(CliTest, SpectrumMatchesAnalyticDensity) {
  const Outcome o = run_cli({"spectrum", kData + "/ar1.mat", "--grid", "64"});
  ASSERT_EQ(o.code, 0) << o.err;
  std::istringstream in(o.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "theta,value");
  int rows = 0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    const double theta = std::stod(line.substr(0, comma));
    const double value = std::stod(line.substr(comma + 1));
    EXPECT_NEAR(theta, 2.0 * std::numbers::pi * rows / 64, 1e-15);
    EXPECT_NEAR(value, 1.0 / (1.25 - std::cos(theta)), 1e-12);
    ++rows;
  }
  EXPECT_EQ(rows, 64);
}

TEST(CliTest, MatrixSpectrumHasComplexColumns) {
  const Outcome o = run_cli({"spectrum", kData + "/id.mat", "--grid", "64"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out.substr(0, o.out.find('\n')), "theta,re_11,im_11,re_12,im_12,re_21,im_21,re_22,im_22");
  EXPECT_NE(o.out.find("\n0,1,0,0,0,0,0,1,0\n"), std::string::npos);
}

// Parses a one-entry "[ ... ]" document produced by the factor command.
LaurentPolynomial scalar_entry(const std::string& text) {
  return parse_matrix(text.front() == '[' ? text : "[ " + text + " ]")(0, 0);
}

TEST(CliTest, FactorPrintsMinimumPhaseFactor) {
  const Outcome o = run_cli({"factor", "--as-density", kData + "/ar1_density.mat"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto doc = nlohmann::json::parse(o.out);
  const LaurentPolynomial num = scalar_entry(doc.at("numerator").get<std::string>());
  const LaurentPolynomial den = scalar_entry(doc.at("denominator").get<std::string>());
  EXPECT_EQ(den, LaurentPolynomial(Rational(1)));
  EXPECT_NEAR(to_double(num.coefficient(0)), 1.0, 1e-12);
  EXPECT_NEAR(to_double(num.coefficient(-1)), -0.5, 1e-12);
  EXPECT_EQ(num.span(), 1);
}

TEST(CliTest, FactorOfKernelDensity) {
  const Outcome o = run_cli({"factor", kData + "/ar1.mat"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto doc = nlohmann::json::parse(o.out);
  const LaurentPolynomial num = scalar_entry(doc.at("numerator").get<std::string>());
  const LaurentPolynomial den = scalar_entry(doc.at("denominator").get<std::string>());
  // 1 / (1 - 0.5 z^-1), in any representation of that rational function.
  for (double theta : {0.0, 1.0, 2.5}) {
    const Complex z = std::polar(1.0, theta);
    EXPECT_NEAR(std::abs(num.evaluate(z) / den.evaluate(z) - 1.0 / (1.0 - 0.5 / z)), 0.0, 1e-12);
  }
}

TEST(CliTest, OutputFileMatchesStdout) {
  const fs::path dir = fs::temp_directory_path() / "ltiproc_cli_test";
  fs::create_directories(dir);
  const std::string file = (dir / "out.txt").string();
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"interconnect", kData + "/ex1_a.mat", kData + "/ex1_b.mat"},
        std::vector<std::string>{"spectrum", kData + "/ar1.mat", "--grid", "64"},
        std::vector<std::string>{"factor", kData + "/ar1.mat"},
        std::vector<std::string>{"simulate", kData + "/ar1.mat", "--len", "32", "--seed", "3"}}) {
    const Outcome direct = run_cli(args);
    std::vector<std::string> with_file = args;
    with_file.push_back("-o");
    with_file.push_back(file);
    const Outcome redirected = run_cli(with_file);
    ASSERT_EQ(redirected.code, 0) << redirected.err;
    EXPECT_TRUE(redirected.out.empty());
    EXPECT_EQ(read_file(file), direct.out) << args.front();
  }
  const Outcome bad = run_cli({"spectrum", kData + "/ar1.mat", "-o", (dir / "no/such/dir.csv").string()});
  EXPECT_EQ(bad.code, 1);
  fs::remove_all(dir);
}

TEST(CliTest, SimulateIsDeterministicAndRecoversNoise) {
  const std::vector<std::string> args{"simulate", kData + "/ar1.mat", "--len", "500", "--burn", "20",
                                      "--seed", "17"};
  const Outcome a = run_cli(args);
  const Outcome b = run_cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::vector<std::string> other = args;
  other.back() = "18";
  EXPECT_NE(run_cli(other).out, a.out);

  // The printed samples satisfy w(t+1) - 0.5 w(t) = e(t) with e from the
  // library's own run of the same configuration.
  std::istringstream in(a.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,w1");
  std::vector<double> w;
  while (std::getline(in, line)) w.push_back(std::stod(line.substr(line.find(',') + 1)));
  ASSERT_EQ(w.size(), 500u);
  const SimulationRun run = simulate_run(LtiProcessModel(kernel_new(parse_matrix("[ z - 1/2 ]"))),
                                         {.length = 500, .burn_in = 20, .seed = 17});
  for (std::size_t t = 0; t + 1 < w.size(); ++t)
    EXPECT_NEAR(w[t + 1] - 0.5 * w[t], run.noise.at(static_cast<std::int64_t>(t), 0), 1e-14);
}

TEST(CliTest, CheckspecReport) {
  const Outcome text = run_cli({"checkspec", kData + "/ar1.mat", "--seed", "7"});
  ASSERT_EQ(text.code, 0) << text.err;
  EXPECT_NE(text.out.find("segments: 1023\n"), std::string::npos);
  EXPECT_NE(text.out.find("segment_length: 256\n"), std::string::npos);

  const Outcome json = run_cli({"checkspec", kData + "/ar1.mat", "--seed", "7", "--json"});
  ASSERT_EQ(json.code, 0) << json.err;
  const auto doc = nlohmann::json::parse(json.out);
  EXPECT_EQ(doc.at("segments").get<int>(), 1023);
  EXPECT_LT(doc.at("mean_relative_error").get<double>(), 0.05);
  EXPECT_GE(doc.at("max_relative_error").get<double>(), doc.at("mean_relative_error").get<double>());

  EXPECT_EQ(run_cli({"checkspec", kData + "/ar1.mat", "--segment", "100"}).code, 3);
  EXPECT_EQ(run_cli({"checkspec", kData + "/ar1.mat", "--len", "64"}).code, 3);
  EXPECT_EQ(run_cli({"checkspec", kData + "/id.mat"}).code, 3);
}

}  // namespace
}  // namespace ltiproc
