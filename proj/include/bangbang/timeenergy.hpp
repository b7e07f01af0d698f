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
#include <optional>

#include "bangbang/error.hpp"
#include "bangbang/schedule.hpp"
#include "bangbang/transfer.hpp"

namespace bangbang {

/// Time-energy performance J = lambda * t_f + E of a schedule, where
/// E = sum over steps of (sum of squared amplitudes) * duration.
///
/// The bound fields hold the worst case over all transfers of the same
/// dimension at the schedule's nominal amplitude L. They are left empty for
/// schedules the transfer bounds do not cover (unitary synthesis and
/// nonnegative-time schedules).
struct TimeEnergyReport {
  double lambda = 0.0;
  double t_f = 0.0;
  double energy = 0.0;
  double J = 0.0;
  double product = 0.0;
  std::optional<double> t_f_bound;
  std::optional<double> J_bound;
  std::optional<double> E_bound;
  std::optional<double> product_bound;
};

inline void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::NonpositiveLambda, "lambda must be positive, got " + std::to_string(lambda));
  }
}

inline void check_amplitude(double amplitude) {
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
    throw Error(ErrorCode::NonpositiveAmplitude, "amplitude must be positive, got " + std::to_string(amplitude));
  }
}

/// Worst-case duration of a strictly sequential transfer: (6N - 7) pi / 2L.
inline double sequential_time_bound(int n, double amplitude) { return (6.0 * n - 7.0) * kPi / (2.0 * amplitude); }

/// Worst-case duration with concurrent phase blocks: (2N + 3) pi / 2L.
inline double concurrent_time_bound(int n, double amplitude) { return (2.0 * n + 3.0) * kPi / (2.0 * amplitude); }

/// Worst-case t_f * E at the optimal amplitude: (6N - 7)^2 pi^2 / 4.
inline double time_energy_product_bound(int n) {
  const double k = 6.0 * n - 7.0;
  return k * k * kPi * kPi / 4.0;
}

inline double optimal_amplitude(double lambda) {
  check_lambda(lambda);
  return std::sqrt(lambda);
}

inline TimeEnergyReport evaluate_cost(const Schedule& s, double lambda) {
  check_lambda(lambda);
  TimeEnergyReport r;
  r.lambda = lambda;
  for (const auto& step : s.steps) {
    double power = 0.0;
    for (const auto& p : step.pulses) power += p.amplitude * p.amplitude;
    r.t_f += step.duration();
    r.energy += power * step.duration();
  }
  r.J = lambda * r.t_f + r.energy;
  r.product = r.t_f * r.energy;

  if (s.meta.source == "transfer" && !s.meta.nonnegative_time && s.meta.amplitude > 0.0) {
    const double L = s.meta.amplitude;
    const double sequential = sequential_time_bound(s.dim, L);
    r.t_f_bound = s.meta.concurrent ? concurrent_time_bound(s.dim, L) : sequential;
    r.E_bound = L * L * sequential;
    r.J_bound = lambda * *r.t_f_bound + *r.E_bound;
    r.product_bound = *r.t_f_bound * *r.E_bound;
  }
  return r;
}

/// Duration of the sequence with every rotation run one after another at
/// amplitude L: sum |angle| / L.
inline double sequential_time(const RotationSequence& seq, double amplitude) {
  check_amplitude(amplitude);
  double total = 0.0;
  for (const auto& r : seq.rotations) total += std::abs(r.angle);
  return total / amplitude;
}

/// Duration with the leading and trailing phase blocks run concurrently:
/// each block costs max |angle| / L instead of the sum.
inline double concurrent_time(const RotationSequence& seq, double amplitude) {
  check_amplitude(amplitude);
  double total = 0.0;
  for (const auto& step : compress_concurrent(seq).steps) {
    double largest = 0.0;
    for (const auto& r : step) largest = std::max(largest, std::abs(r.angle));
    total += largest;
  }
  return total / amplitude;
}

/// t_f * E at the optimal amplitude, (sum |angle|)^2; independent of lambda.
inline double time_energy_product(const RotationSequence& seq) {
  double total = 0.0;
  for (const auto& r : seq.rotations) total += std::abs(r.angle);
  return total * total;
}

inline TimeEnergyReport sequential_cost(const RotationSequence& seq, double lambda) {
  return evaluate_cost(to_schedule(sequential_groups(seq), AmplitudeRule::time_energy_optimal(lambda)), lambda);
}

/// Cost with concurrent phase blocks: each block lasts max|phi| / sqrt(lambda)
/// and its channels run at phi_n / t, the smallest amplitudes that fit; all
/// other pulses use sqrt(lambda).
inline TimeEnergyReport concurrent_cost(const RotationSequence& seq, double lambda) {
  return evaluate_cost(to_schedule(compress_concurrent(seq), AmplitudeRule::time_energy_optimal(lambda)), lambda);
}

}  // namespace bangbang
