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

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ltiproc/behavior.hpp"
#include "ltiproc/process.hpp"
#include "ltiproc/roots.hpp"
#include "ltiproc/spectral.hpp"

namespace ltiproc {

using Trajectory = Window<double>;

struct SimConfig {
  std::int64_t length = 1024;
  std::int64_t burn_in = 1000;
  std::uint64_t seed = 0;
};

struct StabilityReport {
  bool stable = false;
  std::vector<Complex> roots;  ///< nonzero roots of det R
  double max_modulus = 0.0;
};

/// Stable iff every root of det R lies strictly inside the unit disc
/// (max |root| < 1 - 1e-9).
inline StabilityReport stability_check(const KernelRepresentation& k) {
  if (k.m() != k.n())
    throw NotSquare("kernel is " + std::to_string(k.m()) + "x" + std::to_string(k.n()));
  StabilityReport report;
  report.roots = laurent_roots(determinant(k.matrix()));
  for (const Complex& r : report.roots) report.max_modulus = std::max(report.max_modulus, std::abs(r));
  report.stable = report.max_modulus < 1.0 - 1e-9;
  return report;
}

/// Standard normal samples: std::mt19937_64 feeding the Box-Muller
/// transform, u1 in (0, 1] and u2 in [0, 1) from the top 53 bits of each
/// draw. Both outputs of a pair are used, cosine branch first.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * kScale;
    const double u2 = static_cast<double>(engine_() >> 11) * kScale;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Equivalent kernel U R suited to forward recursion: ordinary polynomial,
/// every row of degree `degree`, and an invertible coefficient of z^degree.
struct RecursionForm {
  LaurentMatrix transform;  ///< U, unimodular
  LaurentMatrix reduced;    ///< U R
  int degree = 0;
};

namespace detail {

// Left null vector c (c^T a = 0) of a square rational matrix, if any.
inline std::optional<std::vector<Rational>> left_null_vector(
    const std::vector<std::vector<Rational>>& a) {
  const int n = static_cast<int>(a.size());
  // Row-reduce a^T; a null vector of a^T is a left null vector of a.
  std::vector<std::vector<Rational>> t(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[j][i] = a[i][j];
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < n && r < n; ++c) {
    int p = -1;
    for (int i = r; i < n; ++i)
      if (t[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(t[p], t[r]);
    const Rational inv = 1 / t[r][c];
    for (auto& x : t[r]) x *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == r || t[i][c] == 0) continue;
      const Rational f = t[i][c];
      for (int j = 0; j < n; ++j) t[i][j] -= f * t[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (r == n) return std::nullopt;
  int free_col = 0;
  for (int c = 0, k = 0; c < n; ++c) {
    if (k < static_cast<int>(pivot_col.size()) && pivot_col[k] == c) {
      ++k;
      continue;
    }
    free_col = c;
    break;
  }
  std::vector<Rational> v(n);
  v[free_col] = 1;
  for (int k = 0; k < static_cast<int>(pivot_col.size()); ++k) v[pivot_col[k]] = -t[k][free_col];
  return v;
}

}  // namespace detail

/// Row reduction of a square full-rank kernel: rows are shifted to ordinary
/// polynomials, then while the leading row coefficient matrix is singular a
/// left null combination lowers the degree of one row. Finally rows are
/// shifted up to a common degree.
inline RecursionForm recursion_form(const KernelRepresentation& k) {
  if (k.m() != k.n())
    throw NotSquare("kernel is " + std::to_string(k.m()) + "x" + std::to_string(k.n()));
  const int n = k.n();
  LaurentMatrix r = k.matrix();
  LaurentMatrix u = LaurentMatrix::identity(n);
  for (int i = 0; i < n; ++i) {
    const int low = r.row_low_exponent(i);
    r.shift_row(i, -low);
    u.shift_row(i, -low);
  }

  // Each pass lowers one row degree; the sum of row degrees is bounded below
  // by deg det R.
  int guard = 0;
  for (int i = 0; i < n; ++i) guard += r.row_high_exponent(i) + 1;
  for (;; --guard) {
    if (guard < 0) throw LeadingCoefficientSingular("row reduction did not terminate");
    std::vector<int> degree(n);
    std::vector<std::vector<Rational>> lead(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i) {
      if (r.row_is_zero(i)) throw LeadingCoefficientSingular("kernel row vanished");
      degree[i] = r.row_high_exponent(i);
      for (int j = 0; j < n; ++j) lead[i][j] = r(i, j).coefficient(degree[i]);
    }
    const auto c = detail::left_null_vector(lead);
    if (!c) break;
    int target = -1;
    for (int i = 0; i < n; ++i)
      if ((*c)[i] != 0 && (target < 0 || degree[i] > degree[target])) target = i;
    LaurentMatrix new_r = r;
    LaurentMatrix new_u = u;
    for (int j = 0; j < n; ++j) {
      new_r(target, j) = LaurentPolynomial();
    }
    for (int j = 0; j < n; ++j) new_u(target, j) = LaurentPolynomial();
    for (int i = 0; i < n; ++i) {
      if ((*c)[i] == 0) continue;
      const auto factor = LaurentPolynomial::monomial((*c)[i], degree[target] - degree[i]);
      for (int j = 0; j < n; ++j) {
        new_r(target, j) += factor * r(i, j);
        new_u(target, j) += factor * u(i, j);
      }
    }
    r = std::move(new_r);
    u = std::move(new_u);
  }

  int top = 0;
  for (int i = 0; i < n; ++i) top = std::max(top, r.row_high_exponent(i));
  for (int i = 0; i < n; ++i) {
    const int lift = top - r.row_high_exponent(i);
    r.shift_row(i, lift);
    u.shift_row(i, lift);
  }
  return {std::move(u), std::move(r), top};
}

/// A simulated trajectory together with the noise that drove it, both on the
/// same time axis: kernel(sigma) trajectory = noise wherever the stencil fits
/// inside the trajectory.
struct SimulationRun {
  Trajectory trajectory;
  Trajectory noise;
};

/// Simulation of R(sigma) w = e with e drawn from `source` (each call yields
/// one standard normal; components of e(t) are drawn in order, t ascending).
///
/// The recursion runs on the row-reduced equivalent U R w = U e from a zero
/// initial window. The trajectory covers t = 0 .. length - 1; the zero start
/// lies burn_in + (recursion degree) + (transform span) samples earlier.
template <class NoiseSource>
SimulationRun simulate_driven(const LtiProcessModel& process, const SimConfig& cfg,
                              NoiseSource&& source) {
  const KernelRepresentation& k = process.kernel();
  if (k.m() != k.n())
    throw NotSquare("only square kernels can be simulated, got " + std::to_string(k.m()) + "x" +
                    std::to_string(k.n()));
  if (cfg.length < 1) throw InvalidArgument("simulation length must be positive");
  if (cfg.burn_in < 0) throw InvalidArgument("burn-in must be nonnegative");
  const StabilityReport stability = stability_check(k);
  if (!stability.stable)
    throw UnstableKernel("det R has a root at |z| = " + std::to_string(stability.max_modulus));

  const int n = k.n();
  const RecursionForm form = recursion_form(k);
  const LaurentMatrix u_inverse = unimodular_inverse(form.transform);
  const int degree = form.degree;
  const std::int64_t transform_span =
      (u_inverse.high_exponent() - u_inverse.low_exponent()) +
      (form.transform.high_exponent() - form.transform.low_exponent());
  const std::int64_t lead_in = cfg.burn_in + degree + transform_span;
  const std::int64_t tail = degree + transform_span + k.stencil_width() + 1;

  // Recursion times s in [t0, t_end - degree]; w defined on [t0, t_end].
  const std::int64_t t0 = -lead_in;
  const std::int64_t t_end = cfg.length - 1 + tail;
  const std::int64_t noise_lo = t0 + std::min(0, form.transform.low_exponent());
  const std::int64_t noise_hi = t_end + std::max(0, form.transform.high_exponent());

  std::vector<double> noise(static_cast<std::size_t>((noise_hi - noise_lo + 1) * n));
  for (double& x : noise) x = source();
  const Window<double> e(noise_lo, n, std::move(noise));

  // Filtered noise e' = U(sigma) e.
  struct Tap {
    int row, col, shift;
    double value;
  };
  std::vector<Tap> u_taps;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const LaurentPolynomial& p = form.transform(i, j);
      if (p.is_zero()) continue;
      for (int x = p.low_exponent(); x <= p.high_exponent(); ++x)
        if (p.coefficient(x) != 0) u_taps.push_back({i, j, x, to_double(p.coefficient(x))});
    }

  std::vector<Eigen::MatrixXd> coeffs(degree + 1);
  for (int i = 0; i <= degree; ++i) coeffs[i] = form.reduced.coefficient_matrix(i);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lead(coeffs[degree]);

  std::vector<double> w(static_cast<std::size_t>((t_end - t0 + 1) * n), 0.0);
  auto w_at = [&](std::int64_t t) { return w.data() + (t - t0) * n; };
  Eigen::VectorXd rhs(n);
  for (std::int64_t s = t0; s + degree <= t_end; ++s) {
    rhs.setZero();
    for (const Tap& tap : u_taps) rhs(tap.row) += tap.value * e.at(s + tap.shift, tap.col);
    for (int i = 0; i < degree; ++i)
      rhs -= coeffs[i] * Eigen::Map<const Eigen::VectorXd>(w_at(s + i), n);
    Eigen::Map<Eigen::VectorXd>(w_at(s + degree), n) = lead.solve(rhs);
  }

  std::vector<double> out(w_at(0), w_at(cfg.length));
  for (double x : out)
    if (!std::isfinite(x)) throw NumericError("simulation produced a non-finite sample");
  return {Trajectory(0, n, std::move(out)), e};
}

inline SimulationRun simulate_run(const LtiProcessModel& process, const SimConfig& cfg) {
  NormalStream stream(cfg.seed);
  return simulate_driven(process, cfg, stream);
}

/// Trajectory of R(sigma) w = e, e unit white Gaussian noise seeded by
/// cfg.seed. Identical inputs give bit-identical output.
inline Trajectory simulate(const LtiProcessModel& process, const SimConfig& cfg) {
  return simulate_run(process, cfg).trajectory;
}

/// e = R(sigma) w on every time step whose stencil fits in the trajectory.
inline Trajectory residual_noise(const KernelRepresentation& k, const Trajectory& w) {
  return apply_shift(k, w);
}

/// Welch estimate on the uniform grid theta_k = 2 pi k / segment_length.
struct SpectrumEstimate {
  std::vector<double> grid;
  std::vector<Eigen::MatrixXcd> values;
  int segment_count = 0;
  int segment_length = 0;

  bool is_scalar() const { return !values.empty() && values.front().rows() == 1; }

  std::vector<double> scalar_values() const {
    if (!is_scalar()) throw NotScalar("spectrum estimate is matrix-valued");
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(v(0, 0).real());
    return out;
  }
};

/// Hann-windowed averaged periodogram. Each segment's DFT is scaled by
/// 1 / sum(h^2), so unit-variance white noise has expected estimate 1 at
/// every frequency: the estimate targets Phi(e^{j theta}) =
/// sum_tau r(tau) e^{-j tau theta}, without a 1/(2 pi) factor.
inline SpectrumEstimate welch_spectrum(const Trajectory& w, int segment_length,
                                       double overlap_fraction = 0.5) {
  if (segment_length < 2 || (segment_length & (segment_length - 1)) != 0)
    throw InvalidArgument("segment length must be a power of two >= 2");
  if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0))
    throw InvalidArgument("overlap fraction must lie in [0, 1)");
  if (segment_length > w.length())
    throw SegmentTooLong(std::to_string(segment_length) + " > trajectory length " +
                         std::to_string(w.length()));

  const int n = w.dimension();
  const int len = segment_length;
  const auto step = std::max<std::int64_t>(
      1, len - static_cast<std::int64_t>(std::floor(overlap_fraction * len)));

  std::vector<double> hann(len);
  double energy = 0.0;
  for (int i = 0; i < len; ++i) {
    hann[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / len));
    energy += hann[i] * hann[i];
  }

  SpectrumEstimate est;
  est.segment_length = len;
  est.grid = frequency_grid(len);
  est.values.assign(len, Eigen::MatrixXcd::Zero(n, n));

  Eigen::FFT<double> fft;
  std::vector<Complex> in(len);
  std::vector<std::vector<Complex>> spectra(n);
  for (std::int64_t begin = 0; begin + len <= w.length(); begin += step) {
    for (int c = 0; c < n; ++c) {
      for (int i = 0; i < len; ++i) in[i] = hann[i] * w.at(w.start_time() + begin + i, c);
      fft.fwd(spectra[c], in);
    }
    for (int f = 0; f < len; ++f)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) est.values[f](a, b) += spectra[a][f] * std::conj(spectra[b][f]);
    ++est.segment_count;
  }
  const double norm = 1.0 / (energy * est.segment_count);
  for (auto& v : est.values) v *= norm;
  return est;
}

struct SpectrumComparison {
  double mean_relative_error = 0.0;
  double max_relative_error = 0.0;
};

/// |estimate - reference| / reference, pointwise on a shared grid.
inline SpectrumComparison compare_spectrum(const SpectrumEstimate& est,
                                           const std::vector<double>& reference) {
  const std::vector<double> values = est.scalar_values();
  if (values.size() != reference.size())
    throw GridMismatch(std::to_string(values.size()) + " estimate points vs " +
                       std::to_string(reference.size()) + " reference points");
  SpectrumComparison report;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double rel = std::abs(values[k] - reference[k]) / reference[k];
    report.mean_relative_error += rel;
    report.max_relative_error = std::max(report.max_relative_error, rel);
  }
  report.mean_relative_error /= static_cast<double>(values.size());
  return report;
}

inline SpectrumComparison compare_spectrum(const SpectrumEstimate& est, const SpectralDensity& d) {
  if (!d.is_scalar()) throw NotScalar("reference density is matrix-valued");
  if (!est.is_scalar()) throw GridMismatch("matrix-valued estimate against a scalar density");
  return compare_spectrum(est, density_values(d, est.segment_length));
}

namespace detail {

inline std::string format_g17(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

}  // namespace detail

/// Header "t,w1,...,wn", one row per step.
inline void write_trajectory_csv(std::ostream& out, const Trajectory& w) {
  out << "t";
  for (int c = 0; c < w.dimension(); ++c) out << ",w" << (c + 1);
  out << '\n';
  for (std::int64_t t = w.start_time(); t <= w.end_time(); ++t) {
    out << t;
    for (int c = 0; c < w.dimension(); ++c) out << ',' << detail::format_g17(w.at(t, c));
    out << '\n';
  }
}

/// "theta,value" for scalar spectra, otherwise "theta,re_11,im_11,re_12,...".
inline void write_spectrum_csv(std::ostream& out, const std::vector<double>& grid,
                               const std::vector<Eigen::MatrixXcd>& values) {
  const Eigen::Index n = values.empty() ? 1 : values.front().rows();
  out << "theta";
  if (n == 1) {
    out << ",value";
  } else {
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b)
        out << ",re_" << (a + 1) << (b + 1) << ",im_" << (a + 1) << (b + 1);
  }
  out << '\n';
  for (std::size_t k = 0; k < values.size(); ++k) {
    out << detail::format_g17(grid[k]);
    if (n == 1) {
      out << ',' << detail::format_g17(values[k](0, 0).real());
    } else {
      for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b)
          out << ',' << detail::format_g17(values[k](a, b).real()) << ','
              << detail::format_g17(values[k](a, b).imag());
    }
    out << '\n';
  }
}

}  // namespace ltiproc
