// Copyright 2026 The bangbang Authors
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

#include <algorithm>
#include <cmath>
#include <vector>

#include "bangbang/error.hpp"
#include "bangbang/numerics.hpp"

namespace bangbang {

/// Complex hyperspherical coordinates of a unit vector in C^N with the
/// global phase removed:
///
///   c_1 = cos t_1
///   c_n = exp(i p_{n-1}) sin t_1 ... sin t_{n-1} cos t_n      (1 < n < N)
///   c_N = exp(i p_{N-1}) sin t_1 ... sin t_{N-1}
///
/// with 0 <= t_n <= pi/2 and -pi < p_n <= pi.
struct HypersphericalCoords {
  std::vector<double> theta;
  std::vector<double> phi;

  int dim() const { return static_cast<int>(theta.size()) + 1; }
};

/// Computes coordinates of c after renormalizing it and rotating away the
/// phase of c_1.
///
/// cos t_n = |c_n| / s_{n-1} where s_{n-1} = |(c_n, ..., c_N)| is the running
/// sine product. The angle is evaluated as atan2(s_n, |c_n|) from suffix
/// norms, which stays accurate where the acos argument approaches 1. Where
/// s_{n-1} vanishes the remaining amplitudes are all zero and the leftover
/// angles are set to 0.
inline HypersphericalCoords to_hyperspherical(const ComplexVector& c) {
  const auto n = static_cast<int>(c.size());
  if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "hyperspherical coordinates need dim >= 2");
  const double norm = c.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw Error(ErrorCode::NotUnit, "zero or non-finite vector");

  ComplexVector v = c / norm;
  // std::arg(0) == 0, so a vanishing first component applies no rotation.
  v *= std::polar(1.0, -std::arg(v(0)));

  // tail[k] = |(v_k, ..., v_{n-1})|
  std::vector<double> tail(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = n - 1; k >= 0; --k) tail[k] = std::hypot(tail[k + 1], std::abs(v(k)));

  HypersphericalCoords h;
  h.theta.assign(static_cast<std::size_t>(n - 1), 0.0);
  h.phi.assign(static_cast<std::size_t>(n - 1), 0.0);
  for (int k = 1; k < n; ++k) {
    if (tail[k] < kNegligible) break;  // components k.. are zero; angles stay 0
    h.phi[k - 1] = wrap_phase(std::arg(v(k)));
    h.theta[k - 1] = std::clamp(std::atan2(tail[k], std::abs(v(k - 1))), 0.0, kPi / 2);
  }
  return h;
}

/// Unit vector with the given coordinates; the first component is real and
/// nonnegative.
inline ComplexVector from_hyperspherical(const HypersphericalCoords& h) {
  const int n = h.dim();
  ComplexVector v(n);
  double s = 1.0;
  for (int k = 0; k < n - 1; ++k) {
    const double amplitude = s * std::cos(h.theta[k]);
    v(k) = k == 0 ? Complex(amplitude, 0.0) : std::polar(amplitude, h.phi[k - 1]);
    s *= std::sin(h.theta[k]);
  }
  v(n - 1) = std::polar(s, h.phi[n - 2]);
  return v;
}

}  // namespace bangbang
