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

#include <string>
#include <utility>

#include "ltiproc/behavior.hpp"

namespace ltiproc {

/// Zero-mean Gaussian white noise with identity covariance in R^dimension.
struct NoiseSpec {
  int dimension = 1;
};

/// LTI process R(sigma) w = e: a kernel together with the law of e. The
/// probability measure on trajectories is the image of the noise law under
/// the kernel and is never materialized.
class LtiProcessModel {
 public:
  explicit LtiProcessModel(KernelRepresentation kernel)
      : kernel_(std::move(kernel)), noise_{kernel_.m()} {}

  LtiProcessModel(KernelRepresentation kernel, NoiseSpec noise)
      : kernel_(std::move(kernel)), noise_(noise) {
    if (noise_.dimension != kernel_.m())
      throw DimensionMismatch("noise dimension " + std::to_string(noise_.dimension) +
                              " does not match kernel row count " +
                              std::to_string(kernel_.m()));
  }

  const KernelRepresentation& kernel() const { return kernel_; }
  const NoiseSpec& noise() const { return noise_; }

 private:
  KernelRepresentation kernel_;
  NoiseSpec noise_;
};

namespace detail {

inline void require_same_signal_dimension(const KernelRepresentation& a,
                                          const KernelRepresentation& b) {
  if (a.n() != b.n())
    throw SignalDimensionMismatch(std::to_string(a.n()) + " vs " + std::to_string(b.n()));
}

}  // namespace detail

/// The stacked kernel [R1; R2] has full row normal rank m + p.
inline bool complementary(const KernelRepresentation& k1, const KernelRepresentation& k2) {
  detail::require_same_signal_dimension(k1, k2);
  if (k1.m() + k2.m() > k1.n()) return false;
  return normal_rank(vstack(k1.matrix(), k2.matrix())) == k1.m() + k2.m();
}

/// Interconnection of two independent processes: stacked kernel, block noise.
/// Independence of the two noise sources is assumed, not checked.
inline LtiProcessModel interconnect(const LtiProcessModel& p1, const LtiProcessModel& p2) {
  detail::require_same_signal_dimension(p1.kernel(), p2.kernel());
  if (!complementary(p1.kernel(), p2.kernel()))
    throw NotComplementary("stacked kernel does not have full row normal rank");
  KernelRepresentation stacked = kernel_new(vstack(p1.kernel().matrix(), p2.kernel().matrix()));
  const int noise_dim = p1.noise().dimension + p2.noise().dimension;
  return LtiProcessModel(std::move(stacked), NoiseSpec{noise_dim});
}

/// The interconnection carries every Borel event iff the stacked kernel is
/// square and unimodular.
inline bool has_full_event_algebra(const KernelRepresentation& k1,
                                   const KernelRepresentation& k2) {
  detail::require_same_signal_dimension(k1, k2);
  return is_unimodular(vstack(k1.matrix(), k2.matrix()));
}

inline bool has_full_event_algebra(const LtiProcessModel& p1, const LtiProcessModel& p2) {
  return has_full_event_algebra(p1.kernel(), p2.kernel());
}

}  // namespace ltiproc
