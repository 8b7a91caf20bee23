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

#pragma once

// Command-line front end. Exit codes: 0 success (boolean results print
// true/false and still exit 0), 1 usage or I/O error, 2 parse error,
// 3 domain error, 4 numeric failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ltiproc/behavior.hpp"
#include "ltiproc/errors.hpp"
#include "ltiproc/process.hpp"
#include "ltiproc/sim.hpp"
#include "ltiproc/spectral.hpp"
#include "ltiproc/text_format.hpp"

namespace ltiproc::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kParse = 2,
  kDomain = 3,
  kNumeric = 4,
};

inline int exit_code_for(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::usage: return kUsage;
    case ErrorCategory::parse: return kParse;
    case ErrorCategory::domain: return kDomain;
    case ErrorCategory::numeric: return kNumeric;
  }
  return kNumeric;
}

struct ToolConfig {
  double tolerance = 1e-9;
  int grid_size = 1024;
  std::uint64_t seed = 0;
  std::int64_t length = 1024;
  std::int64_t burn_in = 1000;
  int segment_length = 256;
  double overlap = 0.5;
  bool as_density = false;
  bool json = false;
  std::string output;
};

namespace detail {

inline std::string format_g6(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", x);
  return buffer;
}

inline LaurentMatrix load(const std::string& path) {
  try {
    return read_matrix_document(path).matrix;
  } catch (const ParseError& e) {
    throw Error(ErrorCategory::parse, path + ":" + std::to_string(e.line()) + ":" +
                                          std::to_string(e.column()) + ": " + e.message());
  }
}

inline KernelRepresentation load_kernel(const std::string& path) {
  return kernel_new(load(path));
}

/// Kernel file -> density of its process; with as_density the file holds a
/// scalar parahermitian Laurent polynomial phi and the density is rebuilt
/// from its minimum-phase factor.
inline SpectralDensity load_density(const std::string& path, const ToolConfig& cfg) {
  if (!cfg.as_density) return density_from_kernel(load_kernel(path));
  return SpectralDensity(scalar_spectral_factor(RationalMatrix(load(path)), cfg.tolerance));
}

/// Runs `body` with a stream bound to cfg.output, or to `fallback` when no
/// output path was given.
inline void with_output(const ToolConfig& cfg, std::ostream& fallback,
                        const std::function<void(std::ostream&)>& body) {
  if (cfg.output.empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(cfg.output);
  if (!file) throw Error(ErrorCategory::usage, "cannot write '" + cfg.output + "'");
  body(file);
  if (!file) throw Error(ErrorCategory::usage, "failed writing '" + cfg.output + "'");
}

inline const char* boolean(bool b) { return b ? "true" : "false"; }

}  // namespace detail

/// Parses `args` (args[0] is the program name) and runs the subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ToolConfig cfg;
  std::string file1;
  std::string file2;

  CLI::App app{"Kernel representations, interconnection and spectral tools for LTI processes",
               "ltiproc"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--tol", cfg.tolerance, "Numerical tolerance")->check(CLI::NonNegativeNumber);

  auto one_file = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", file1, "Matrix file")->required();
    return sub;
  };
  auto two_files = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file1", file1, "First matrix file")->required();
    sub->add_option("file2", file2, "Second matrix file")->required();
    return sub;
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", cfg.output, "Output path (standard output if omitted)");
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--grid", cfg.grid_size, "Frequency grid size")
        ->check(CLI::Range(64, 1 << 24));
  };
  auto add_sim = [&](CLI::App* sub) {
    sub->add_option("--len", cfg.length, "Trajectory length")->check(CLI::PositiveNumber);
    sub->add_option("--burn", cfg.burn_in, "Burn-in samples")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", cfg.seed, "Noise seed");
  };

  auto* rank_cmd = one_file("rank", "Normal rank of a Laurent polynomial matrix");
  auto* unimodular_cmd = one_file("unimodular", "Is the matrix unimodular");
  auto* equivalent_cmd = two_files("equivalent", "Do two kernels define the same behavior");
  auto* complementary_cmd = two_files("complementary", "Are two processes complementary");
  auto* interconnect_cmd = two_files("interconnect", "Stacked kernel of the interconnection");
  add_output(interconnect_cmd);
  auto* fullsigma_cmd =
      two_files("fullsigma", "Does the interconnection carry the full Borel event algebra");
  auto* spectrum_cmd = one_file("spectrum", "Spectral density of a square stable kernel (CSV)");
  add_grid(spectrum_cmd);
  add_output(spectrum_cmd);
  auto* factor_cmd = one_file("factor", "Minimum-phase factor of a scalar density");
  factor_cmd->add_flag("--as-density", cfg.as_density,
                       "Input is a parahermitian Laurent polynomial, not a kernel");
  add_output(factor_cmd);
  auto* distance_cmd = two_files("distance", "Scale-invariant log-spectral shape distance");
  distance_cmd->add_flag("--as-density", cfg.as_density,
                         "Inputs are parahermitian Laurent polynomials, not kernels");
  add_grid(distance_cmd);
  auto* simulate_cmd = one_file("simulate", "Simulate R(sigma) w = e (CSV)");
  add_sim(simulate_cmd);
  add_output(simulate_cmd);
  auto* checkspec_cmd =
      one_file("checkspec", "Simulate, estimate the spectrum and compare with the density");
  cfg.length = 131072;
  add_sim(checkspec_cmd);
  checkspec_cmd->add_option("--segment", cfg.segment_length, "Welch segment length")
      ->check(CLI::PositiveNumber);
  checkspec_cmd->add_option("--overlap", cfg.overlap, "Welch segment overlap fraction")
      ->check(CLI::Range(0.0, 0.999999));
  checkspec_cmd->add_flag("--json", cfg.json, "Print the report as JSON");

  if (args.size() > 1 && !args[1].empty() && args[1].front() != '-' &&
      app.get_subcommand_no_throw(args[1]) == nullptr) {
    err << "unknown command '" << args[1] << "'\n"
        << "Run with --help for more information.\n";
    return kUsage;
  }

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }
  if (simulate_cmd->parsed() && simulate_cmd->count("--len") == 0) cfg.length = 1024;

  try {
    if (rank_cmd->parsed()) {
      out << normal_rank(detail::load(file1)) << '\n';
    } else if (unimodular_cmd->parsed()) {
      out << detail::boolean(is_unimodular(detail::load(file1))) << '\n';
    } else if (equivalent_cmd->parsed()) {
      const auto k1 = detail::load_kernel(file1);
      const auto k2 = detail::load_kernel(file2);
      out << detail::boolean(behaviors_equivalent(k1, k2)) << '\n';
    } else if (complementary_cmd->parsed()) {
      const auto k1 = detail::load_kernel(file1);
      const auto k2 = detail::load_kernel(file2);
      out << detail::boolean(complementary(k1, k2)) << '\n';
    } else if (interconnect_cmd->parsed()) {
      const LtiProcessModel p1(detail::load_kernel(file1));
      const LtiProcessModel p2(detail::load_kernel(file2));
      const LtiProcessModel joined = interconnect(p1, p2);
      detail::with_output(cfg, out, [&](std::ostream& o) {
        o << "# noise dimension " << joined.noise().dimension << '\n'
          << format_matrix(joined.kernel().matrix()) << '\n';
      });
    } else if (fullsigma_cmd->parsed()) {
      const auto k1 = detail::load_kernel(file1);
      const auto k2 = detail::load_kernel(file2);
      out << detail::boolean(has_full_event_algebra(k1, k2)) << '\n';
    } else if (spectrum_cmd->parsed()) {
      const SpectralDensity d = density_from_kernel(detail::load_kernel(file1));
      const auto values = density_eval(d, cfg.grid_size);
      detail::with_output(cfg, out, [&](std::ostream& o) {
        write_spectrum_csv(o, frequency_grid(cfg.grid_size), values);
      });
    } else if (factor_cmd->parsed()) {
      const SpectralDensity d = detail::load_density(file1, cfg);
      const SpectralFactor w = scalar_spectral_factor(d, cfg.tolerance);
      nlohmann::ordered_json doc;
      doc["numerator"] = format_matrix(w.value().numerator(), CoefficientStyle::decimal);
      doc["denominator"] = format_polynomial(w.value().denominator(), CoefficientStyle::decimal);
      detail::with_output(cfg, out, [&](std::ostream& o) { o << doc.dump(2) << '\n'; });
    } else if (distance_cmd->parsed()) {
      const SpectralDensity d1 = detail::load_density(file1, cfg);
      const SpectralDensity d2 = detail::load_density(file2, cfg);
      out << detail::format_g6(shape_distance(d1, d2, cfg.grid_size)) << '\n';
    } else if (simulate_cmd->parsed()) {
      const LtiProcessModel p(detail::load_kernel(file1));
      const Trajectory w = simulate(p, {cfg.length, cfg.burn_in, cfg.seed});
      detail::with_output(cfg, out, [&](std::ostream& o) { write_trajectory_csv(o, w); });
    } else if (checkspec_cmd->parsed()) {
      const KernelRepresentation k = detail::load_kernel(file1);
      if (k.n() != 1) throw NotScalar("checkspec needs a scalar kernel");
      const SpectralDensity d = density_from_kernel(k);
      const Trajectory w = simulate(LtiProcessModel(k), {cfg.length, cfg.burn_in, cfg.seed});
      const SpectrumEstimate est = welch_spectrum(w, cfg.segment_length, cfg.overlap);
      const SpectrumComparison report = compare_spectrum(est, d);
      if (cfg.json) {
        nlohmann::ordered_json doc;
        doc["segments"] = est.segment_count;
        doc["segment_length"] = est.segment_length;
        doc["mean_relative_error"] = report.mean_relative_error;
        doc["max_relative_error"] = report.max_relative_error;
        out << doc.dump(2) << '\n';
      } else {
        out << "segments: " << est.segment_count << '\n'
            << "segment_length: " << est.segment_length << '\n'
            << "mean_relative_error: " << detail::format_g6(report.mean_relative_error) << '\n'
            << "max_relative_error: " << detail::format_g6(report.max_relative_error) << '\n';
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.category());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kSuccess;
}

}  // namespace ltiproc::cli
